#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pyrafast/keypoint.hpp"

namespace pyrafast {

/// Exact rational, kept reduced with a positive denominator.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Ratio of(std::int64_t n, std::int64_t d) {
        if (d <= 0) throw std::invalid_argument("Ratio: denominator must be positive");
        const std::int64_t g = std::gcd(n, d);
        return Ratio{n / g, d / g};
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
    bool operator==(const Ratio&) const = default;
};

/// SIMT execution geometry the cost model is evaluated against.
struct GpuSpec {
    int warp_size = 32;   ///< threads per warp (W)
    int block_x = 128;    ///< max threads along x in one block
};

inline void validate(const GpuSpec& g) {
    if (g.warp_size < 1)
        throw std::invalid_argument("GpuSpec: warp_size must be >= 1");
    if (g.block_x < g.warp_size || g.block_x % g.warp_size != 0)
        throw std::invalid_argument("GpuSpec: block_x must be a positive multiple of warp_size");
}

/// Thread-allocation schemes for per-cell reduction.
enum class CullingScheme { Mlpt, Log2, NaiveBlockPerCell, Tewa };

inline const char* to_string(CullingScheme s) {
    switch (s) {
        case CullingScheme::Mlpt: return "MLPT";
        case CullingScheme::Log2: return "LOG2";
        case CullingScheme::NaiveBlockPerCell: return "NAIVE_BLOCK_PER_CELL";
        case CullingScheme::Tewa: return "TEWA";
    }
    return "?";
}

/// Thread/warp accounting for one scheme on one cell size.
///
/// `total_threads` is the thread count the scheme launches for its unit of
/// work: one cell for MLPT/LOG2/naive, one packed warp for TEWA (where it
/// equals n_ta, the active threads). `eta_w` is n_ta / (W * n_w).
struct CullingPlan {
    CullingScheme scheme = CullingScheme::Mlpt;
    CellConfig cell;
    int n_max = 0;            ///< locations per thread cap (0 when not applicable)
    int n_t = 0;              ///< threads per cell column (0 when not applicable)
    int threads_per_cell = 0;
    int total_threads = 0;
    int n_ta = 0;             ///< threads doing useful work
    int n_w = 0;              ///< warps occupied
    int passes = 1;           ///< sequential reduction passes
    Ratio eta_w;              ///< warp efficiency, exact
    std::string note;         ///< discrepancy flag against published figures
};

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

/// Warp efficiency of n_ta active threads spread over n_w warps.
inline Ratio warp_efficiency(int n_ta, int n_w, const GpuSpec& gpu = {}) {
    validate(gpu);
    if (n_w < 1 || n_ta < 0)
        throw std::invalid_argument("warp_efficiency: need n_w >= 1 and n_ta >= 0");
    if (n_ta > gpu.warp_size * n_w)
        throw std::invalid_argument("warp_efficiency: " + std::to_string(n_ta) +
                                    " active threads cannot occupy only " +
                                    std::to_string(n_w) + " warps");
    return Ratio::of(n_ta, static_cast<std::int64_t>(gpu.warp_size) * n_w);
}

/// Multiple-locations-per-thread: each of the n_t threads per column scans a
/// vertical chunk of at most n_max rows, one pass, then one thread per
/// column folds the n_t partials.
inline CullingPlan plan_mlpt(const CellConfig& cell, int n_max, const GpuSpec& gpu = {}) {
    validate(cell);
    validate(gpu);
    if (n_max < 1)
        throw std::invalid_argument("plan_mlpt: n_max must be >= 1");
    CullingPlan p;
    p.scheme = CullingScheme::Mlpt;
    p.cell = cell;
    p.n_max = n_max;
    p.n_t = ceil_div(cell.cell_h, n_max);
    if (p.n_t < 1) p.n_t = 1;
    p.threads_per_cell = cell.cell_w * p.n_t;
    p.total_threads = p.threads_per_cell;
    p.n_ta = p.threads_per_cell;
    p.n_w = ceil_div(p.total_threads, gpu.warp_size);
    p.passes = 1;  // plus the final per-column combine
    p.eta_w = warp_efficiency(p.n_ta, p.n_w, gpu);
    return p;
}

/// Tree reduction: ceil(c_h / 2) threads per column, log2(c_h) halving passes.
inline CullingPlan plan_log2(const CellConfig& cell, const GpuSpec& gpu = {}) {
    validate(cell);
    validate(gpu);
    if (cell.cell_h < 2)
        throw std::invalid_argument("plan_log2: degenerate cell, need cell_h >= 2");
    CullingPlan p;
    p.scheme = CullingScheme::Log2;
    p.cell = cell;
    p.n_t = ceil_div(cell.cell_h, 2);
    p.threads_per_cell = cell.cell_w * p.n_t;
    p.total_threads = p.threads_per_cell;
    p.n_ta = p.threads_per_cell;
    p.n_w = ceil_div(p.total_threads, gpu.warp_size);
    p.passes = 0;
    while ((1 << p.passes) < cell.cell_h) ++p.passes;
    p.eta_w = warp_efficiency(p.n_ta, p.n_w, gpu);
    return p;
}

/// One thread per cell pixel, one block per cell.
inline CullingPlan plan_naive(const CellConfig& cell, const GpuSpec& gpu = {}) {
    validate(cell);
    validate(gpu);
    CullingPlan p;
    p.scheme = CullingScheme::NaiveBlockPerCell;
    p.cell = cell;
    p.threads_per_cell = cell.cell_h * cell.cell_w;
    p.total_threads = p.threads_per_cell;
    p.n_ta = p.threads_per_cell;
    p.n_w = ceil_div(p.total_threads, gpu.warp_size);
    p.passes = 1;
    p.eta_w = warp_efficiency(p.n_ta, p.n_w, gpu);
    return p;
}

/// Thread-efficient warp allocation: cells use MLPT-sized thread groups and
/// as many whole cells as fit are packed into one warp. Cells wider than a
/// block cannot be packed and are rejected.
inline CullingPlan plan_tewa(const CellConfig& cell, int n_max, const GpuSpec& gpu = {}) {
    validate(cell);
    validate(gpu);
    if (n_max < 1)
        throw std::invalid_argument("plan_tewa: n_max must be >= 1");
    CullingPlan p;
    p.scheme = CullingScheme::Tewa;
    p.cell = cell;
    p.n_max = n_max;
    p.n_t = ceil_div(cell.cell_h, n_max);
    if (p.n_t < 1) p.n_t = 1;
    p.threads_per_cell = cell.cell_w * p.n_t;
    if (p.threads_per_cell > gpu.block_x)
        throw std::invalid_argument("plan_tewa: cell needs " +
                                    std::to_string(p.threads_per_cell) +
                                    " threads, exceeding block capacity " +
                                    std::to_string(gpu.block_x));
    if (p.threads_per_cell <= gpu.warp_size) {
        const int cells_per_warp = gpu.warp_size / p.threads_per_cell;
        p.n_ta = cells_per_warp * p.threads_per_cell;
        p.n_w = 1;
    } else {
        p.n_ta = p.threads_per_cell;
        p.n_w = ceil_div(p.threads_per_cell, gpu.warp_size);
    }
    p.total_threads = p.n_ta;
    p.passes = 1;
    p.eta_w = warp_efficiency(p.n_ta, p.n_w, gpu);
    return p;
}

namespace detail {

inline std::string fmt_pct(const Ratio& r) {
    std::ostringstream os;
    const double pct = r.value() * 100.0;
    os.precision(1);
    os << std::fixed << pct;
    return os.str();
}

}  // namespace detail

/// Render plans as an aligned text table plus CSV. CSV columns:
/// scheme,c_h,c_w,n_max,n_t,threads,n_w,passes,eta_w_exact,eta_w_pct,note
struct PlanReport {
    std::string text;
    std::string csv;
};

inline PlanReport report(std::span<const CullingPlan> plans, const GpuSpec& gpu = {}) {
    validate(gpu);
    static constexpr const char* kCols[] = {"scheme", "c_h", "c_w", "n_max", "n_t",
                                            "threads", "n_w", "passes", "eta_w_exact",
                                            "eta_w_pct", "note"};
    std::vector<std::vector<std::string>> rows;
    rows.emplace_back(std::begin(kCols), std::end(kCols));
    for (const CullingPlan& p : plans) {
        rows.push_back({to_string(p.scheme), std::to_string(p.cell.cell_h),
                        std::to_string(p.cell.cell_w),
                        p.n_max > 0 ? std::to_string(p.n_max) : "-",
                        p.n_t > 0 ? std::to_string(p.n_t) : "-",
                        std::to_string(p.total_threads), std::to_string(p.n_w),
                        std::to_string(p.passes),
                        std::to_string(p.n_ta) + "/" +
                            std::to_string(static_cast<std::int64_t>(gpu.warp_size) * p.n_w),
                        detail::fmt_pct(p.eta_w), p.note});
    }

    PlanReport rep;
    std::vector<std::size_t> widths(rows[0].size(), 0);
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i)
            widths[i] = std::max(widths[i], r[i].size());
    std::ostringstream text;
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            text << r[i];
            if (i + 1 < r.size())
                text << std::string(widths[i] - r[i].size() + 2, ' ');
        }
        text << '\n';
    }
    rep.text = text.str();

    std::ostringstream csv;
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            // note fields may contain commas; quote them
            const bool quote = r[i].find(',') != std::string::npos;
            if (quote) csv << '"';
            csv << r[i];
            if (quote) csv << '"';
            if (i + 1 < r.size()) csv << ',';
        }
        csv << '\n';
    }
    rep.csv = csv.str();
    return rep;
}

/// LOG2-vs-MLPT comparison rows for the standard 32-column cells. The two
/// small-cell MLPT rows carry published thread/warp figures that the model
/// does not reproduce; they are emitted with a note flagging the difference
/// rather than silently adjusted.
inline std::vector<CullingPlan> log2_vs_mlpt_rows(const GpuSpec& gpu = {}) {
    std::vector<CullingPlan> plans;
    plans.push_back(plan_log2(CellConfig{20, 32}, gpu));
    {
        CullingPlan p = plan_mlpt(CellConfig{20, 32}, 5, gpu);
        p.note = "published: 160 threads / 5 warps (N_t*c_w = 128 as modeled)";
        plans.push_back(p);
    }
    plans.push_back(plan_log2(CellConfig{50, 32}, gpu));
    {
        CullingPlan p = plan_mlpt(CellConfig{50, 32}, 5, gpu);
        p.note = "published: N_t = 4 (ceil(50/5) = 10 as modeled)";
        plans.push_back(p);
    }
    plans.push_back(plan_log2(CellConfig{100, 32}, gpu));
    plans.push_back(plan_mlpt(CellConfig{100, 32}, 10, gpu));
    return plans;
}

/// Naive-vs-TEWA efficiency rows for small square cells.
inline std::vector<CullingPlan> naive_vs_tewa_rows(int n_max = 10, const GpuSpec& gpu = {}) {
    std::vector<CullingPlan> plans;
    for (int side : {3, 5, 7}) {
        plans.push_back(plan_naive(CellConfig{side, side}, gpu));
        plans.push_back(plan_tewa(CellConfig{side, side}, n_max, gpu));
    }
    return plans;
}

}  // namespace pyrafast
