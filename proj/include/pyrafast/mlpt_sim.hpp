#pragma once

#include <cstdint>
#include <vector>

#include "pyrafast/culling.hpp"
#include "pyrafast/warp_model.hpp"

namespace pyrafast {

namespace detail {

/// Partial argmax candidate carried through the reduction phases.
struct MlptEntry {
    std::int32_t value = 0;  // 0 means empty (non-corner)
    int x = 0;
    int y = 0;
};

/// Total order matching feature_cull: larger response wins, ties go to the
/// smaller (y, x). Being a total order makes the reduction associative and
/// commutative, so any thread schedule produces the same winner.
inline bool mlpt_better(const MlptEntry& a, const MlptEntry& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
}

}  // namespace detail

/// CPU execution of the MLPT per-cell reduction on one cell.
///
/// Mirrors the thread layout of plan_mlpt: each of the N_t "threads" in a
/// column scans a vertical chunk of at most n_max rows; one combine step
/// folds the per-chunk partials into a column maximum; a strided horizontal
/// reduction folds the column maxima into the cell winner. Returns an entry
/// with value 0 when the cell holds no corner.
inline detail::MlptEntry mlpt_cull_cell(const CrfMatrix& crf, int x0, int y0, int x1, int y1,
                                        int n_max) {
    const int n_t = ceil_div(y1 - y0, n_max);
    const int width = x1 - x0;

    // Phase 1: vertical chunk scan, one partial per (thread, column).
    std::vector<detail::MlptEntry> partial(static_cast<std::size_t>(n_t) * width);
    for (int t = 0; t < n_t; ++t) {
        const int cy0 = y0 + t * n_max;
        const int cy1 = cy0 + n_max < y1 ? cy0 + n_max : y1;
        for (int x = x0; x < x1; ++x) {
            detail::MlptEntry e;
            for (int y = cy0; y < cy1; ++y) {
                const std::int32_t v = crf.at(x, y);
                if (v > 0 && (e.value == 0 || detail::mlpt_better({v, x, y}, e)))
                    e = {v, x, y};
            }
            partial[static_cast<std::size_t>(t) * width + (x - x0)] = e;
        }
    }

    // Phase 2: per-column combine of the n_t partials.
    std::vector<detail::MlptEntry> col(static_cast<std::size_t>(width));
    for (int x = 0; x < width; ++x) {
        detail::MlptEntry e;
        for (int t = 0; t < n_t; ++t) {
            const detail::MlptEntry& c = partial[static_cast<std::size_t>(t) * width + x];
            if (c.value > 0 && (e.value == 0 || detail::mlpt_better(c, e)))
                e = c;
        }
        col[static_cast<std::size_t>(x)] = e;
    }

    // Phase 3: strided horizontal reduction over the column maxima.
    for (int stride = 1; stride < width; stride *= 2) {
        for (int x = 0; x + stride < width; x += 2 * stride) {
            const detail::MlptEntry& rhs = col[static_cast<std::size_t>(x + stride)];
            detail::MlptEntry& lhs = col[static_cast<std::size_t>(x)];
            if (rhs.value > 0 && (lhs.value == 0 || detail::mlpt_better(rhs, lhs)))
                lhs = rhs;
        }
    }
    return width > 0 ? col[0] : detail::MlptEntry{};
}

/// Feature culling executed through the MLPT reduction on every cell.
/// Produces exactly the same keypoints as feature_cull.
inline std::vector<Keypoint> mlpt_feature_cull(const CrfMatrix& crf, const CellConfig& cell,
                                               int n_max, int level = 0) {
    validate(cell);
    if (n_max < 1)
        throw std::invalid_argument("mlpt_feature_cull: n_max must be >= 1");
    std::vector<Keypoint> out;
    for (int cy = 0; cy < crf.height; cy += cell.cell_h) {
        const int y1 = cy + cell.cell_h < crf.height ? cy + cell.cell_h : crf.height;
        for (int cx = 0; cx < crf.width; cx += cell.cell_w) {
            const int x1 = cx + cell.cell_w < crf.width ? cx + cell.cell_w : crf.width;
            const detail::MlptEntry e = mlpt_cull_cell(crf, cx, cy, x1, y1, n_max);
            if (e.value > 0)
                out.push_back(Keypoint{e.x, e.y, level, e.value});
        }
    }
    return out;
}

}  // namespace pyrafast
