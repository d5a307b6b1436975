#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pyrafast/fast.hpp"
#include "pyrafast/image.hpp"

namespace pyrafast {

/// zeta^n by repeated multiplication. Keeps scale factors bit-identical
/// across platforms; std::pow may differ in the last ulp between libms.
inline double scale_power(double zeta, int n) {
    double f = 1.0;
    for (int i = 0; i < n; ++i) f *= zeta;
    return f;
}

/// Multiscale image stack. levels[0] is the native image; level n has
/// dimensions floor(native / zeta^n) in both axes.
struct Pyramid {
    std::vector<GrayImage> levels;
    double scale_factor = 1.0;

    int num_scales() const { return static_cast<int>(levels.size()); }
    const GrayImage& native() const { return levels.front(); }
};

/// Build an num_scales-level pyramid with per-level scale factor zeta.
///
/// Every level is resampled bilinearly from the native image (not from the
/// previous level), so repeated downscaling does not compound rounding.
/// Throws std::invalid_argument if zeta <= 1, num_scales < 1, or any level
/// would fall below kMinDetectSize on either side (the message names the
/// first offending level).
inline Pyramid build_pyramid(const GrayImage& native, double zeta, int num_scales) {
    if (num_scales < 1)
        throw std::invalid_argument("build_pyramid: num_scales must be >= 1");
    if (zeta <= 1.0)
        throw std::invalid_argument("build_pyramid: scale factor must be > 1.0");
    if (native.width <= 0 || native.height <= 0)
        throw std::invalid_argument("build_pyramid: empty native image");

    Pyramid pyr;
    pyr.scale_factor = zeta;
    pyr.levels.reserve(static_cast<std::size_t>(num_scales));
    for (int n = 0; n < num_scales; ++n) {
        const double f = scale_power(zeta, n);
        const int w = static_cast<int>(native.width / f);
        const int h = static_cast<int>(native.height / f);
        if (w < kMinDetectSize || h < kMinDetectSize)
            throw std::invalid_argument(
                "build_pyramid: level " + std::to_string(n) + " is " + std::to_string(w) +
                "x" + std::to_string(h) + ", below the " + std::to_string(kMinDetectSize) +
                "x" + std::to_string(kMinDetectSize) + " minimum");
        if (n == 0)
            pyr.levels.push_back(native);
        else
            pyr.levels.push_back(resize_bilinear(native, w, h));
    }
    return pyr;
}

}  // namespace pyrafast
