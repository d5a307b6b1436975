#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pyrafast {

/// 8-bit single-channel image, row-major, no padding.
///
/// Coordinates are (x, y) with x indexing columns and y indexing rows;
/// the origin is the top-left pixel and y grows downward.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("GrayImage: dimensions must be positive, got " +
                                        std::to_string(w) + "x" + std::to_string(h));
        data.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
    }

    std::size_t size() const { return data.size(); }

    bool in_bounds(int x, int y) const {
        return x >= 0 && y >= 0 && x < width && y < height;
    }

    std::uint8_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }

    const std::uint8_t* row(int y) const {
        return data.data() + static_cast<std::size_t>(y) * width;
    }
    std::uint8_t* row(int y) {
        return data.data() + static_cast<std::size_t>(y) * width;
    }

    bool operator==(const GrayImage& o) const {
        return width == o.width && height == o.height && data == o.data;
    }
};

/// Resample `src` to out_w x out_h with bilinear interpolation.
///
/// Sample positions use the pixel-center convention: output pixel (x, y)
/// reads the source at ((x + 0.5) * sx - 0.5, (y + 0.5) * sy - 0.5) where
/// sx, sy are the width/height ratios. Border samples clamp. A constant
/// image stays constant at every size.
inline GrayImage resize_bilinear(const GrayImage& src, int out_w, int out_h) {
    if (out_w <= 0 || out_h <= 0)
        throw std::invalid_argument("resize_bilinear: output dimensions must be positive");
    GrayImage dst(out_w, out_h);
    const double sx = static_cast<double>(src.width) / out_w;
    const double sy = static_cast<double>(src.height) / out_h;
    for (int y = 0; y < out_h; ++y) {
        double fy = (y + 0.5) * sy - 0.5;
        if (fy < 0.0) fy = 0.0;
        if (fy > src.height - 1) fy = src.height - 1;
        const int y0 = static_cast<int>(fy);
        const int y1 = y0 + 1 < src.height ? y0 + 1 : y0;
        const double wy = fy - y0;
        const std::uint8_t* r0 = src.row(y0);
        const std::uint8_t* r1 = src.row(y1);
        std::uint8_t* out = dst.row(y);
        for (int x = 0; x < out_w; ++x) {
            double fx = (x + 0.5) * sx - 0.5;
            if (fx < 0.0) fx = 0.0;
            if (fx > src.width - 1) fx = src.width - 1;
            const int x0 = static_cast<int>(fx);
            const int x1 = x0 + 1 < src.width ? x0 + 1 : x0;
            const double wx = fx - x0;
            const double top = r0[x0] + (r0[x1] - r0[x0]) * wx;
            const double bot = r1[x0] + (r1[x1] - r1[x0]) * wx;
            const double v = top + (bot - top) * wy;
            out[x] = static_cast<std::uint8_t>(v + 0.5);
        }
    }
    return dst;
}

}  // namespace pyrafast
