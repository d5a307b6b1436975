#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "pyrafast/image.hpp"

namespace pyrafast {

/// Segment-test corner detector with a bounded arc-length acceptance band.
///
/// A candidate pixel is compared against the 16 pixels of the radius-3
/// Bresenham circle around it. Circle pixels are labeled bright / similar /
/// dark relative to the center with threshold `epsilon`, and the candidate
/// is a corner when the longest circular run of same-label (bright or dark)
/// pixels falls inside [p_min, p_max]. The upper bound rejects blob-like
/// responses (isolated specks light up the whole circle); setting
/// p_max = 16 disables it and recovers the classic lower-bound-only rule.
struct DetectorParams {
    int epsilon = 20;
    int p_min = 9;
    int p_max = 13;

    static constexpr int kSegmentLength = 16;

    /// True when the upper arc bound is active (p_max below the full circle).
    bool bounded() const { return p_max < kSegmentLength; }

    /// Classic lower-bound-only rule: runs of p_min or more accept.
    static DetectorParams classic(int eps = 20, int pmin = 9) {
        return DetectorParams{eps, pmin, kSegmentLength};
    }
};

inline void validate(const DetectorParams& p) {
    if (p.epsilon < 1 || p.epsilon > 255)
        throw std::invalid_argument("DetectorParams: epsilon must be in [1,255], got " +
                                    std::to_string(p.epsilon));
    if (p.p_min < 1 || p.p_min > p.p_max || p.p_max > DetectorParams::kSegmentLength)
        throw std::invalid_argument("DetectorParams: need 1 <= p_min <= p_max <= 16, got [" +
                                    std::to_string(p.p_min) + "," + std::to_string(p.p_max) +
                                    "]");
}

enum class PixelLabel : std::uint8_t { Bright, Similar, Dark };

/// Label a circle pixel relative to the center intensity.
/// Bright means the circle pixel exceeds the center by more than epsilon,
/// dark means it falls below by more than epsilon; a difference of exactly
/// epsilon is still similar.
inline PixelLabel label_pixel(int center, int circle, int epsilon) {
    const int d = center - circle;
    if (d < -epsilon) return PixelLabel::Bright;
    if (d > epsilon) return PixelLabel::Dark;
    return PixelLabel::Similar;
}

inline constexpr int kCircleRadius = 3;

/// Smallest image side the detector accepts: the radius-3 circle needs a
/// 3-pixel border on each side plus the center row/column.
inline constexpr int kMinDetectSize = 2 * kCircleRadius + 1;

/// Radius-3 Bresenham circle offsets (x, y). Index 0 is the topmost pixel;
/// indices advance clockwise with y growing downward.
inline constexpr std::array<std::array<int, 2>, 16> kCircleOffsets = {{
    {0, -3}, {1, -3}, {2, -2}, {3, -1}, {3, 0}, {3, 1}, {2, 2}, {1, 3},
    {0, 3}, {-1, 3}, {-2, 2}, {-3, 1}, {-3, 0}, {-3, -1}, {-2, -2}, {-1, -3},
}};

/// Bright/dark membership of the 16 circle pixels, bit i = circle index i.
struct SegmentMasks {
    std::uint16_t bright = 0;
    std::uint16_t dark = 0;
};

/// Compute the bright/dark masks around `center`, a pointer to the candidate
/// pixel inside an image with row stride `stride` (the full 7x7 neighborhood
/// must be in bounds).
inline SegmentMasks compute_masks(const std::uint8_t* center, std::ptrdiff_t stride,
                                  int epsilon) {
    SegmentMasks m;
    const int c = *center;
    const int lo = c - epsilon;
    const int hi = c + epsilon;
    for (int i = 0; i < 16; ++i) {
        const int v = center[kCircleOffsets[i][1] * stride + kCircleOffsets[i][0]];
        if (v > hi)
            m.bright |= static_cast<std::uint16_t>(1u << i);
        else if (v < lo)
            m.dark |= static_cast<std::uint16_t>(1u << i);
    }
    return m;
}

inline SegmentMasks compute_masks(const GrayImage& img, int x, int y, int epsilon) {
    if (x < kCircleRadius || y < kCircleRadius || x >= img.width - kCircleRadius ||
        y >= img.height - kCircleRadius)
        throw std::out_of_range("compute_masks: circle around (" + std::to_string(x) + "," +
                                std::to_string(y) + ") leaves the image");
    return compute_masks(img.row(y) + x, img.width, epsilon);
}

/// Length of the longest circular run of set bits in a 16-bit mask.
inline int max_circular_run(std::uint16_t mask) {
    if (mask == 0xFFFF) return 16;
    // Each AND with the 1-bit rotation shortens every run by one; the number
    // of iterations until the mask clears is the longest run length.
    int n = 0;
    while (mask != 0) {
        mask &= static_cast<std::uint16_t>((mask << 1) | (mask >> 15));
        ++n;
    }
    return n;
}

/// Corner acceptance table over all 2^16 single-label masks.
/// corner[m] is 1 when p_min <= max_circular_run(m) <= p_max; run[m] keeps
/// the run length itself for diagnostics and tests.
struct CornerLut {
    std::vector<std::uint8_t> corner;
    std::vector<std::uint8_t> run;
    int p_min = 0;
    int p_max = 0;

    bool accepts(std::uint16_t mask) const { return corner[mask] != 0; }
};

inline CornerLut build_lut(const DetectorParams& p) {
    validate(p);
    CornerLut lut;
    lut.p_min = p.p_min;
    lut.p_max = p.p_max;
    lut.corner.resize(1u << 16);
    lut.run.resize(1u << 16);
    for (std::uint32_t m = 0; m < (1u << 16); ++m) {
        const int r = max_circular_run(static_cast<std::uint16_t>(m));
        lut.run[m] = static_cast<std::uint8_t>(r);
        lut.corner[m] = (r >= p.p_min && r <= p.p_max) ? 1 : 0;
    }
    return lut;
}

/// Corner response: sum of |center - circle| over all 16 circle pixels,
/// regardless of labels. Flat neighborhoods score 0; the maximum is 16*255.
inline int corner_response(const std::uint8_t* center, std::ptrdiff_t stride) {
    const int c = *center;
    int sum = 0;
    for (int i = 0; i < 16; ++i)
        sum += std::abs(c - center[kCircleOffsets[i][1] * stride + kCircleOffsets[i][0]]);
    return sum;
}

inline int corner_response(const GrayImage& img, int x, int y) {
    if (x < kCircleRadius || y < kCircleRadius || x >= img.width - kCircleRadius ||
        y >= img.height - kCircleRadius)
        throw std::out_of_range("corner_response: circle around (" + std::to_string(x) + "," +
                                std::to_string(y) + ") leaves the image");
    return corner_response(img.row(y) + x, img.width);
}

/// Dense per-pixel corner responses; 0 marks non-corners. Same dimensions
/// as the source image, with the 3-pixel border always zero.
struct CrfMatrix {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> responses;

    CrfMatrix() = default;
    CrfMatrix(int w, int h)
        : width(w), height(h),
          responses(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0) {}

    std::int32_t at(int x, int y) const {
        return responses[static_cast<std::size_t>(y) * width + x];
    }
    std::int32_t& at(int x, int y) {
        return responses[static_cast<std::size_t>(y) * width + x];
    }
};

/// Run the segment test on every interior pixel. A pixel is a corner when
/// either its bright mask or its dark mask passes the LUT; its response is
/// the full-circle absolute-difference sum. The LUT must have been built
/// with the same [p_min, p_max] band as `params`.
inline CrfMatrix detect_crf(const GrayImage& img, const DetectorParams& params,
                            const CornerLut& lut) {
    validate(params);
    if (img.width < kMinDetectSize || img.height < kMinDetectSize)
        throw std::invalid_argument("detect_crf: image " + std::to_string(img.width) + "x" +
                                    std::to_string(img.height) + " is below the " +
                                    std::to_string(kMinDetectSize) + "x" +
                                    std::to_string(kMinDetectSize) + " minimum");
    CrfMatrix crf(img.width, img.height);
    const std::ptrdiff_t stride = img.width;
    for (int y = kCircleRadius; y < img.height - kCircleRadius; ++y) {
        const std::uint8_t* row = img.row(y);
        std::int32_t* out = &crf.at(0, y);
        for (int x = kCircleRadius; x < img.width - kCircleRadius; ++x) {
            const SegmentMasks m = compute_masks(row + x, stride, params.epsilon);
            if (lut.accepts(m.bright) || lut.accepts(m.dark))
                out[x] = corner_response(row + x, stride);
        }
    }
    return crf;
}

inline CrfMatrix detect_crf(const GrayImage& img, const DetectorParams& params) {
    return detect_crf(img, params, build_lut(params));
}

}  // namespace pyrafast
