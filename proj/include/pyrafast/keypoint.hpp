#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>

namespace pyrafast {

/// A detected corner. Coordinates are pixel positions in the level's own
/// frame; `level` indexes the pyramid level the detection came from.
struct Keypoint {
    int x = 0;
    int y = 0;
    int level = 0;
    std::int32_t response = 0;

    bool operator==(const Keypoint& o) const {
        return x == o.x && y == o.y && level == o.level && response == o.response;
    }
};

/// Canonical output order: by level, then row, then column. The response
/// tiebreak never fires for detector output (one response per pixel and
/// level) but keeps the order total for arbitrary keypoint lists.
inline bool keypoint_order(const Keypoint& a, const Keypoint& b) {
    return std::tuple(a.level, a.y, a.x, a.response) <
           std::tuple(b.level, b.y, b.x, b.response);
}

/// Grid-cell dimensions for per-cell culling (rows x columns).
struct CellConfig {
    int cell_h = 32;
    int cell_w = 32;
};

inline void validate(const CellConfig& c) {
    if (c.cell_h < 1 || c.cell_w < 1)
        throw std::invalid_argument("CellConfig: cell dimensions must be >= 1, got " +
                                    std::to_string(c.cell_h) + "x" + std::to_string(c.cell_w));
}

/// Square suppression-window side for the sparse NMS stage; must be odd so
/// the window centers on the candidate pixel.
struct NmsConfig {
    int q = 3;
};

inline void validate(const NmsConfig& c) {
    if (c.q < 1 || c.q % 2 == 0)
        throw std::invalid_argument("NmsConfig: window side must be odd and >= 1, got " +
                                    std::to_string(c.q));
}

}  // namespace pyrafast
