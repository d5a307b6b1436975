#pragma once

#include <cstdint>
#include <random>

namespace pyrafast {

/// Deterministic random source. std::mt19937_64 itself is specified
/// bit-exactly; the distribution helpers here replace the standard
/// distribution objects, whose outputs are implementation-defined, so the
/// same seed produces the same stream on every platform and compiler.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    /// Uniform double in [lo, hi).
    double uniform_real(double lo, double hi) {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    bool chance(double p) { return uniform_real(0.0, 1.0) < p; }

  private:
    std::mt19937_64 gen_;
};

}  // namespace pyrafast
