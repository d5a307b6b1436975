#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pyrafast/image.hpp"
#include "pyrafast/rng.hpp"

namespace pyrafast {

struct PointF {
    double x = 0.0;
    double y = 0.0;
};

/// Scene generation knobs. Defaults are tuned so that polygon corners are
/// well-formed FAST targets (vertex angles away from straight and from
/// needle-thin) and noise specks are the blob-like responses a bounded arc
/// test is designed to reject.
struct SceneSpec {
    int width = 256;
    int height = 256;
    int n_polygons = 5;
    int n_noise = 60;
    std::uint8_t background = 16;

    // polygon half-extents along the two edge directions, pixels
    double min_extent = 10.0;
    double max_extent = 20.0;
    // vertex angles stay in [deg_min, 180 - deg_min]
    double angle_margin_deg = 65.0;
    // minimum foreground-background contrast; must comfortably exceed the
    // detector threshold for corners to label
    int min_contrast = 60;

    int max_attempts = 400;
};

/// Spec with polygon extents proportional to the frame, so the same density
/// fits small and large scenes alike.
inline SceneSpec scene_spec_for(int width, int height, int n_polygons, int n_noise) {
    SceneSpec spec;
    spec.width = width;
    spec.height = height;
    spec.n_polygons = n_polygons;
    spec.n_noise = n_noise;
    const double side = static_cast<double>(std::min(width, height));
    spec.min_extent = std::max(4.0, side / 26.0);
    spec.max_extent = std::max(spec.min_extent + 2.0, side / 13.0);
    return spec;
}

/// A generated test scene with exact ground truth.
struct SyntheticScene {
    GrayImage image;
    std::vector<PointF> gt_corners;      ///< polygon vertices, scene frame
    std::vector<PointF> noise_points;    ///< centers of injected specks
    std::uint8_t background = 16;
};

namespace detail {

/// Parallelogram: center c, edge vectors u and v; the interior is
/// {c + a*u + b*v : |a| <= 1, |b| <= 1}.
struct Para {
    double cx, cy;
    double ux, uy;
    double vx, vy;
    std::uint8_t intensity;

    double radius() const {
        return std::sqrt(ux * ux + uy * uy) + std::sqrt(vx * vx + vy * vy);
    }
    bool contains(double px, double py) const {
        const double dx = px - cx, dy = py - cy;
        const double det = ux * vy - uy * vx;
        const double a = (dx * vy - dy * vx) / det;
        const double b = (ux * dy - uy * dx) / det;
        return a >= -1.0 && a <= 1.0 && b >= -1.0 && b <= 1.0;
    }
};

}  // namespace detail

/// Generate a deterministic synthetic scene: rotated parallelograms on a
/// uniform background plus isolated 1-2 pixel bright specks.
///
/// All content stays inside the central disc, so the scene can later be
/// rotated by any angle about its center without pushing ground truth out
/// of frame. Polygons do not overlap; specks keep clear of polygons, of
/// each other, and stay >= 10 px away from every ground-truth corner.
/// Throws std::runtime_error when the requested density cannot be placed
/// (overcrowded spec).
inline SyntheticScene generate_scene(std::uint64_t seed, const SceneSpec& spec = {}) {
    if (spec.width < 64 || spec.height < 64)
        throw std::invalid_argument("generate_scene: scene must be at least 64x64");
    if (spec.n_polygons < 0 || spec.n_noise < 0)
        throw std::invalid_argument("generate_scene: negative counts");
    if (spec.min_extent < 4.0 || spec.max_extent < spec.min_extent)
        throw std::invalid_argument("generate_scene: bad extent range");
    if (spec.angle_margin_deg < 15.0 || spec.angle_margin_deg > 90.0)
        throw std::invalid_argument("generate_scene: angle margin out of range");
    if (spec.background + spec.min_contrast + 40 > 255)
        throw std::invalid_argument(
            "generate_scene: background too bright for the requested contrast");

    constexpr double kPi = 3.14159265358979323846;
    Rng rng(seed);
    SyntheticScene scene;
    scene.background = spec.background;
    scene.image = GrayImage(spec.width, spec.height, spec.background);

    const double ccx = (spec.width - 1) * 0.5;
    const double ccy = (spec.height - 1) * 0.5;
    const double safe_radius = std::min(spec.width, spec.height) * 0.5 - 5.0;

    // --- polygons -----------------------------------------------------
    std::vector<detail::Para> polys;
    for (int i = 0; i < spec.n_polygons; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < spec.max_attempts && !placed; ++attempt) {
            const double ea = rng.uniform_real(spec.min_extent, spec.max_extent);
            const double eb = rng.uniform_real(spec.min_extent, spec.max_extent);
            const double theta = rng.uniform_real(0.0, kPi);
            const double phi = rng.uniform_real(spec.angle_margin_deg * kPi / 180.0,
                                                (180.0 - spec.angle_margin_deg) * kPi / 180.0);
            detail::Para p;
            p.ux = ea * std::cos(theta);
            p.uy = ea * std::sin(theta);
            p.vx = eb * std::cos(theta + phi);
            p.vy = eb * std::sin(theta + phi);
            p.intensity = static_cast<std::uint8_t>(
                rng.uniform_int(spec.background + spec.min_contrast + 40, 255));
            const double r = p.radius();
            if (r + 2.0 > safe_radius) continue;
            const double place_r = rng.uniform_real(0.0, safe_radius - r - 2.0);
            const double place_a = rng.uniform_real(0.0, 2.0 * kPi);
            p.cx = ccx + place_r * std::cos(place_a);
            p.cy = ccy + place_r * std::sin(place_a);

            bool clear = true;
            for (const auto& q : polys) {
                const double d = std::hypot(p.cx - q.cx, p.cy - q.cy);
                if (d < p.radius() + q.radius() + 10.0) {
                    clear = false;
                    break;
                }
            }
            if (!clear) continue;
            polys.push_back(p);
            placed = true;
        }
        if (!placed)
            throw std::runtime_error("generate_scene: could not place polygon " +
                                     std::to_string(i) + "; scene spec is overcrowded");
    }

    for (const auto& p : polys) {
        // rasterize over the bounding box only
        const double r = p.radius();
        const int x0 = std::max(0, static_cast<int>(std::floor(p.cx - r)));
        const int x1 = std::min(spec.width - 1, static_cast<int>(std::ceil(p.cx + r)));
        const int y0 = std::max(0, static_cast<int>(std::floor(p.cy - r)));
        const int y1 = std::min(spec.height - 1, static_cast<int>(std::ceil(p.cy + r)));
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x)
                if (p.contains(x, y))
                    scene.image.at(x, y) = p.intensity;
        scene.gt_corners.push_back({p.cx - p.ux - p.vx, p.cy - p.uy - p.vy});
        scene.gt_corners.push_back({p.cx + p.ux - p.vx, p.cy + p.uy - p.vy});
        scene.gt_corners.push_back({p.cx + p.ux + p.vx, p.cy + p.uy + p.vy});
        scene.gt_corners.push_back({p.cx - p.ux + p.vx, p.cy - p.uy + p.vy});
    }

    // --- noise specks ---------------------------------------------------
    // Each speck is 1-2 bright pixels on pure background, isolated from
    // polygons and other specks, so its detector circle is entirely dark:
    // a full-circle run that the classic rule accepts and a bounded rule
    // rejects.
    const std::uint8_t speck_val = 230;
    for (int i = 0; i < spec.n_noise; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < spec.max_attempts && !placed; ++attempt) {
            const double pr = rng.uniform_real(0.0, safe_radius - 6.0);
            const double pa = rng.uniform_real(0.0, 2.0 * kPi);
            const int x = static_cast<int>(std::floor(ccx + pr * std::cos(pa) + 0.5));
            const int y = static_cast<int>(std::floor(ccy + pr * std::sin(pa) + 0.5));
            const bool two_px = rng.chance(0.5);

            bool clear = true;
            for (const auto& p : polys) {
                if (std::hypot(x - p.cx, y - p.cy) < p.radius() + 12.0) {
                    clear = false;
                    break;
                }
            }
            if (clear)
                for (const auto& g : scene.gt_corners)
                    if (std::hypot(x - g.x, y - g.y) < 10.0) {
                        clear = false;
                        break;
                    }
            if (clear)
                for (const auto& n : scene.noise_points)
                    if (std::hypot(x - n.x, y - n.y) < 10.0) {
                        clear = false;
                        break;
                    }
            if (!clear) continue;

            scene.image.at(x, y) = speck_val;
            if (two_px) scene.image.at(x + 1, y) = speck_val;
            scene.noise_points.push_back({static_cast<double>(x), static_cast<double>(y)});
            placed = true;
        }
        if (!placed)
            throw std::runtime_error("generate_scene: could not place noise speck " +
                                     std::to_string(i) + "; scene spec is overcrowded");
    }
    return scene;
}

/// Rotate a scene by `angle_deg` (counterclockwise in image coordinates)
/// about the image center. The raster is resampled bilinearly with
/// out-of-frame samples filled with the scene background; ground-truth
/// corners and noise points get the exact coordinate transform, dropping
/// any that leave the frame.
inline SyntheticScene rotate_scene(const SyntheticScene& scene, double angle_deg) {
    constexpr double kPi = 3.14159265358979323846;
    const double a = angle_deg * kPi / 180.0;
    const double c = std::cos(a), s = std::sin(a);
    const int w = scene.image.width, h = scene.image.height;
    const double cx = (w - 1) * 0.5, cy = (h - 1) * 0.5;

    SyntheticScene out;
    out.background = scene.background;
    out.image = GrayImage(w, h, scene.background);

    // inverse map: for each output pixel, sample the source
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double dx = x - cx, dy = y - cy;
            const double sx = c * dx + s * dy + cx;   // R(-a) * d
            const double sy = -s * dx + c * dy + cy;
            if (sx < 0.0 || sy < 0.0 || sx > w - 1 || sy > h - 1) continue;
            const int x0 = static_cast<int>(sx);
            const int y0 = static_cast<int>(sy);
            const int x1 = x0 + 1 < w ? x0 + 1 : x0;
            const int y1 = y0 + 1 < h ? y0 + 1 : y0;
            const double fx = sx - x0, fy = sy - y0;
            const double top = scene.image.at(x0, y0) +
                               (scene.image.at(x1, y0) - scene.image.at(x0, y0)) * fx;
            const double bot = scene.image.at(x0, y1) +
                               (scene.image.at(x1, y1) - scene.image.at(x0, y1)) * fx;
            out.image.at(x, y) = static_cast<std::uint8_t>(top + (bot - top) * fy + 0.5);
        }
    }

    auto fwd = [&](const PointF& p) {
        const double dx = p.x - cx, dy = p.y - cy;
        return PointF{c * dx - s * dy + cx, s * dx + c * dy + cy};
    };
    for (const auto& g : scene.gt_corners) {
        const PointF q = fwd(g);
        if (q.x >= 0.0 && q.y >= 0.0 && q.x <= w - 1 && q.y <= h - 1)
            out.gt_corners.push_back(q);
    }
    for (const auto& n : scene.noise_points) {
        const PointF q = fwd(n);
        if (q.x >= 0.0 && q.y >= 0.0 && q.x <= w - 1 && q.y <= h - 1)
            out.noise_points.push_back(q);
    }
    return out;
}

}  // namespace pyrafast
