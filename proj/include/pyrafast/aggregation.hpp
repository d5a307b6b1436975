#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pyrafast/culling.hpp"
#include "pyrafast/fast.hpp"
#include "pyrafast/keypoint.hpp"
#include "pyrafast/pyramid.hpp"

namespace pyrafast {

struct PixelCoord {
    int x = 0;
    int y = 0;
    bool operator==(const PixelCoord&) const = default;
};

/// Map a level-n keypoint to native coordinates: scale by zeta^n, round
/// half-up, clamp into the native raster.
inline PixelCoord project_to_native(const Keypoint& kp, double zeta, int native_w,
                                    int native_h) {
    const double f = scale_power(zeta, kp.level);
    int x = static_cast<int>(std::floor(kp.x * f + 0.5));
    int y = static_cast<int>(std::floor(kp.y * f + 0.5));
    x = std::clamp(x, 0, native_w - 1);
    y = std::clamp(y, 0, native_h - 1);
    return PixelCoord{x, y};
}

/// Cross-level score aggregation at native resolution.
///
/// k_r sums the responses of every keypoint projecting to a pixel; k_l
/// counts the distinct pyramid levels among them. Both are dense H x W
/// matrices (zero where nothing landed). `occupancy` realizes the sparse
/// native-pixel -> contributing-keypoints map; only occupied pixels ever
/// take part in suppression.
struct AggregationScores {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> k_r;
    std::vector<std::uint8_t> k_l;

    struct Occupant {
        std::uint64_t level_mask = 0;  // bit n set when level n contributed
        std::vector<Keypoint> contributors;
    };
    std::unordered_map<std::int64_t, Occupant> occupancy;

    std::int64_t key(int x, int y) const {
        return static_cast<std::int64_t>(y) * width + x;
    }
    std::int32_t k_r_at(int x, int y) const {
        return k_r[static_cast<std::size_t>(y) * width + x];
    }
    int k_l_at(int x, int y) const {
        return k_l[static_cast<std::size_t>(y) * width + x];
    }
};

/// Project every per-level keypoint to the native raster and accumulate
/// scores. `per_level[n]` must hold the detections of pyramid level n (the
/// keypoints' own `level` field drives the projection).
inline AggregationScores aggregate_scores(const std::vector<std::vector<Keypoint>>& per_level,
                                          double zeta, int native_w, int native_h) {
    if (native_w <= 0 || native_h <= 0)
        throw std::invalid_argument("aggregate_scores: bad native dimensions");
    if (per_level.size() > 64)
        throw std::invalid_argument("aggregate_scores: more than 64 levels unsupported");
    AggregationScores s;
    s.width = native_w;
    s.height = native_h;
    s.k_r.assign(static_cast<std::size_t>(native_w) * native_h, 0);
    s.k_l.assign(static_cast<std::size_t>(native_w) * native_h, 0);
    for (const auto& kps : per_level) {
        for (const Keypoint& kp : kps) {
            const PixelCoord p = project_to_native(kp, zeta, native_w, native_h);
            const std::size_t idx = static_cast<std::size_t>(p.y) * native_w + p.x;
            auto& occ = s.occupancy[s.key(p.x, p.y)];
            occ.contributors.push_back(kp);
            occ.level_mask |= std::uint64_t{1} << kp.level;
            s.k_r[idx] += kp.response;
            s.k_l[idx] = static_cast<std::uint8_t>(std::popcount(occ.level_mask));
        }
    }
    return s;
}

/// Sparse cross-scale non-maximum suppression.
///
/// A pixel p survives unless some other occupied pixel r in the q x q window
/// centered on p strictly beats it on summed response and at least ties it
/// on level count (k_r[r] > k_r[p] and k_l[r] >= k_l[p]). Decisions are a
/// single pass over the original scores: suppressed pixels still suppress
/// their neighbors. Surviving pixels return all of their contributing
/// keypoints, sorted by (level, y, x).
inline std::vector<Keypoint> sparse_nms(const AggregationScores& s, const NmsConfig& cfg) {
    validate(cfg);
    const int half = cfg.q / 2;
    std::vector<Keypoint> out;
    for (const auto& [key, occ] : s.occupancy) {
        const int px = static_cast<int>(key % s.width);
        const int py = static_cast<int>(key / s.width);
        const std::int32_t pr = s.k_r_at(px, py);
        const int pl = s.k_l_at(px, py);
        bool suppressed = false;
        const int y0 = std::max(0, py - half), y1 = std::min(s.height - 1, py + half);
        const int x0 = std::max(0, px - half), x1 = std::min(s.width - 1, px + half);
        for (int y = y0; y <= y1 && !suppressed; ++y) {
            for (int x = x0; x <= x1; ++x) {
                if (x == px && y == py) continue;
                if (s.k_l_at(x, y) == 0) continue;  // unoccupied
                if (s.k_r_at(x, y) > pr && s.k_l_at(x, y) >= pl) {
                    suppressed = true;
                    break;
                }
            }
        }
        if (!suppressed)
            out.insert(out.end(), occ.contributors.begin(), occ.contributors.end());
    }
    std::sort(out.begin(), out.end(), keypoint_order);
    return out;
}

/// Full multiscale chain output.
struct PycaResult {
    std::vector<Keypoint> keypoints;        ///< NMS survivors, (level, y, x)-sorted
    std::vector<std::size_t> fc_counts;     ///< per-level counts before aggregation
    AggregationScores scores;
};

/// detect -> cull per level, project + aggregate, suppress.
///
/// The cell dimensions are used as-is on every level, so coarser levels
/// have proportionally fewer cells. With `parallel` set, per-level
/// detection and culling run on separate threads; the result is
/// bit-identical to the serial path.
inline PycaResult pyca_pipeline(const Pyramid& pyr, const DetectorParams& params,
                                const CellConfig& cell, const NmsConfig& nms,
                                bool parallel = false) {
    validate(params);
    validate(cell);
    validate(nms);
    if (pyr.levels.empty())
        throw std::invalid_argument("pyca_pipeline: empty pyramid");

    const CornerLut lut = build_lut(params);
    const int n_levels = pyr.num_scales();
    std::vector<std::vector<Keypoint>> per_level(static_cast<std::size_t>(n_levels));

    auto run_level = [&](int n) {
        const CrfMatrix crf = detect_crf(pyr.levels[n], params, lut);
        return feature_cull(crf, cell, n);
    };

    if (parallel && n_levels > 1) {
        std::vector<std::future<std::vector<Keypoint>>> futs;
        futs.reserve(static_cast<std::size_t>(n_levels));
        for (int n = 0; n < n_levels; ++n)
            futs.push_back(std::async(std::launch::async, run_level, n));
        for (int n = 0; n < n_levels; ++n)
            per_level[n] = futs[n].get();
    } else {
        for (int n = 0; n < n_levels; ++n)
            per_level[n] = run_level(n);
    }

    PycaResult res;
    res.fc_counts.reserve(per_level.size());
    for (const auto& kps : per_level)
        res.fc_counts.push_back(kps.size());
    res.scores = aggregate_scores(per_level, pyr.scale_factor, pyr.native().width,
                                  pyr.native().height);
    res.keypoints = sparse_nms(res.scores, nms);
    return res;
}

}  // namespace pyrafast
