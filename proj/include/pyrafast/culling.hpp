#pragma once

#include <vector>

#include "pyrafast/fast.hpp"
#include "pyrafast/keypoint.hpp"

namespace pyrafast {

/// Feature culling: keep at most one corner per grid cell.
///
/// The response matrix is tiled into cell_h x cell_w cells anchored at the
/// top-left corner; cells at the right/bottom edges may be partial and are
/// culled the same way. Each cell contributes its maximum-response pixel
/// (zero responses are non-corners and never contribute). Ties go to the
/// smallest (y, x) in row-major order. Output follows cell scan order
/// (cell rows top to bottom, cells left to right within a row).
inline std::vector<Keypoint> feature_cull(const CrfMatrix& crf, const CellConfig& cell,
                                          int level = 0) {
    validate(cell);
    std::vector<Keypoint> out;
    for (int cy = 0; cy < crf.height; cy += cell.cell_h) {
        const int y_end = cy + cell.cell_h < crf.height ? cy + cell.cell_h : crf.height;
        for (int cx = 0; cx < crf.width; cx += cell.cell_w) {
            const int x_end = cx + cell.cell_w < crf.width ? cx + cell.cell_w : crf.width;
            std::int32_t best = 0;
            int bx = 0, by = 0;
            for (int y = cy; y < y_end; ++y) {
                const std::int32_t* row = &crf.responses[static_cast<std::size_t>(y) * crf.width];
                for (int x = cx; x < x_end; ++x) {
                    // Strict > keeps the first maximum in scan order, which
                    // is the smallest (y, x).
                    if (row[x] > best) {
                        best = row[x];
                        bx = x;
                        by = y;
                    }
                }
            }
            if (best > 0)
                out.push_back(Keypoint{bx, by, level, best});
        }
    }
    return out;
}

}  // namespace pyrafast
