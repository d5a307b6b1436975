#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pyrafast/aggregation.hpp"
#include "pyrafast/keypoint.hpp"
#include "pyrafast/pyramid.hpp"
#include "pyrafast/synthetic.hpp"

namespace pyrafast {

struct RepeatabilityResult {
    double angle_deg = 0.0;
    int matches = 0;
    int detections = 0;
    int ground_truth = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Greedy one-to-one matching of detections against ground truth within
/// `radius` pixels. Candidate pairs are taken closest-first (ties by
/// detection index, then ground-truth index), and each side matches at most
/// once, so duplicated detections around one corner count a single hit.
inline RepeatabilityResult repeatability(const std::vector<Keypoint>& detections,
                                         const std::vector<PointF>& gt, double radius = 3.0) {
    if (radius <= 0.0)
        throw std::invalid_argument("repeatability: radius must be positive");

    struct Pair {
        double d2;
        int det, g;
    };
    std::vector<Pair> pairs;
    const double r2 = radius * radius;
    for (int i = 0; i < static_cast<int>(detections.size()); ++i) {
        for (int j = 0; j < static_cast<int>(gt.size()); ++j) {
            const double dx = detections[i].x - gt[j].x;
            const double dy = detections[i].y - gt[j].y;
            const double d2 = dx * dx + dy * dy;
            if (d2 <= r2) pairs.push_back({d2, i, j});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.d2 != b.d2) return a.d2 < b.d2;
        if (a.det != b.det) return a.det < b.det;
        return a.g < b.g;
    });

    std::vector<char> det_used(detections.size(), 0), gt_used(gt.size(), 0);
    int matches = 0;
    for (const Pair& p : pairs) {
        if (det_used[p.det] || gt_used[p.g]) continue;
        det_used[p.det] = 1;
        gt_used[p.g] = 1;
        ++matches;
    }

    RepeatabilityResult r;
    r.matches = matches;
    r.detections = static_cast<int>(detections.size());
    r.ground_truth = static_cast<int>(gt.size());
    r.precision = r.detections > 0 ? static_cast<double>(matches) / r.detections : 0.0;
    r.recall = r.ground_truth > 0 ? static_cast<double>(matches) / r.ground_truth : 0.0;
    r.f1 = (r.precision + r.recall) > 0.0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    return r;
}

/// Detection stack used by the rotation sweep and the noise study.
struct SweepConfig {
    DetectorParams params;          ///< corner rule under test
    int num_scales = 1;
    double zeta = 1.2;
    CellConfig cell{16, 16};
    NmsConfig nms{3};
    double match_radius = 3.0;
};

/// Run the full detection chain on one scene and return the keypoints in
/// native coordinates.
inline std::vector<Keypoint> detect_on_scene(const SyntheticScene& scene,
                                             const SweepConfig& cfg) {
    const Pyramid pyr = cfg.num_scales > 1
                            ? build_pyramid(scene.image, cfg.zeta, cfg.num_scales)
                            : Pyramid{{scene.image}, cfg.zeta};
    const PycaResult res = pyca_pipeline(pyr, cfg.params, cfg.cell, cfg.nms);
    if (cfg.num_scales == 1) return res.keypoints;
    std::vector<Keypoint> native;
    native.reserve(res.keypoints.size());
    for (const Keypoint& kp : res.keypoints) {
        const PixelCoord p =
            project_to_native(kp, cfg.zeta, scene.image.width, scene.image.height);
        native.push_back(Keypoint{p.x, p.y, kp.level, kp.response});
    }
    return native;
}

/// Repeatability as a function of in-plane rotation: rotate the scene, rerun
/// detection, and score against the rotated ground truth.
inline std::vector<RepeatabilityResult> rotation_sweep(const SyntheticScene& scene,
                                                       const std::vector<double>& angles_deg,
                                                       const SweepConfig& cfg) {
    std::vector<RepeatabilityResult> out;
    out.reserve(angles_deg.size());
    for (double angle : angles_deg) {
        const SyntheticScene rotated = rotate_scene(scene, angle);
        const std::vector<Keypoint> det = detect_on_scene(rotated, cfg);
        RepeatabilityResult r = repeatability(det, rotated.gt_corners, cfg.match_radius);
        r.angle_deg = angle;
        out.push_back(r);
    }
    return out;
}

/// Standard sweep angles: -175 to 175 degrees in 25-degree steps.
inline std::vector<double> default_sweep_angles() {
    std::vector<double> a;
    for (int deg = -175; deg <= 175; deg += 25) a.push_back(static_cast<double>(deg));
    return a;
}

}  // namespace pyrafast
