#pragma once

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pyrafast/aggregation.hpp"
#include "pyrafast/culling.hpp"
#include "pyrafast/fast.hpp"
#include "pyrafast/pyramid.hpp"

namespace pyrafast {

struct BenchConfig {
    DetectorParams params;
    int num_scales = 4;
    double zeta = 1.2;
    CellConfig cell{16, 16};
    NmsConfig nms{3};
    int repeats = 5;
};

struct StageTiming {
    std::string stage;
    double median_ms = 0.0;
    double p95_ms = 0.0;
};

/// Wall-clock profile of the detection chain. Timings are reported as-is
/// with no pass/fail thresholds: absolute numbers depend on the host and
/// are not comparable across machines, unlike the feature counts, which are
/// deterministic for a given input.
struct BenchReport {
    std::vector<StageTiming> stages;
    std::vector<std::size_t> features_per_frame;

    std::string csv() const {
        std::ostringstream os;
        os << "stage,median_ms,p95_ms\n";
        for (const auto& s : stages)
            os << s.stage << ',' << s.median_ms << ',' << s.p95_ms << '\n';
        os << "\nframe,features\n";
        for (std::size_t i = 0; i < features_per_frame.size(); ++i)
            os << i << ',' << features_per_frame[i] << '\n';
        return os.str();
    }
};

namespace detail {

inline StageTiming summarize(const std::string& name, std::vector<double> samples_ms) {
    StageTiming t;
    t.stage = name;
    if (samples_ms.empty()) return t;
    std::sort(samples_ms.begin(), samples_ms.end());
    const std::size_t n = samples_ms.size();
    t.median_ms = n % 2 == 1 ? samples_ms[n / 2]
                             : 0.5 * (samples_ms[n / 2 - 1] + samples_ms[n / 2]);
    // nearest-rank 95th percentile
    std::size_t rank = static_cast<std::size_t>(std::ceil(0.95 * n));
    if (rank == 0) rank = 1;
    t.p95_ms = samples_ms[rank - 1];
    return t;
}

}  // namespace detail

/// Time each stage of the chain (pyramid build, corner detection, per-cell
/// culling, aggregation + suppression) over `cfg.repeats` runs per frame.
/// Feature counts come from the final run and are repeat-independent.
inline BenchReport bench_pipeline(const std::vector<GrayImage>& frames,
                                  const BenchConfig& cfg = {}) {
    if (cfg.repeats < 3)
        throw std::invalid_argument("bench_pipeline: need at least 3 repeats, got " +
                                    std::to_string(cfg.repeats));
    validate(cfg.params);
    validate(cfg.cell);
    validate(cfg.nms);

    using clock = std::chrono::steady_clock;
    auto ms = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };

    std::vector<double> t_pyr, t_crf, t_fc, t_pfa;
    BenchReport rep;
    const CornerLut lut = build_lut(cfg.params);

    for (const GrayImage& frame : frames) {
        std::size_t last_count = 0;
        for (int r = 0; r < cfg.repeats; ++r) {
            const auto t0 = clock::now();
            const Pyramid pyr = build_pyramid(frame, cfg.zeta, cfg.num_scales);
            const auto t1 = clock::now();
            std::vector<CrfMatrix> crfs;
            crfs.reserve(pyr.levels.size());
            for (const GrayImage& lvl : pyr.levels)
                crfs.push_back(detect_crf(lvl, cfg.params, lut));
            const auto t2 = clock::now();
            std::vector<std::vector<Keypoint>> per_level;
            per_level.reserve(crfs.size());
            for (int n = 0; n < static_cast<int>(crfs.size()); ++n)
                per_level.push_back(feature_cull(crfs[n], cfg.cell, n));
            const auto t3 = clock::now();
            const AggregationScores scores =
                aggregate_scores(per_level, cfg.zeta, frame.width, frame.height);
            const std::vector<Keypoint> kps = sparse_nms(scores, cfg.nms);
            const auto t4 = clock::now();

            t_pyr.push_back(ms(t0, t1));
            t_crf.push_back(ms(t1, t2));
            t_fc.push_back(ms(t2, t3));
            t_pfa.push_back(ms(t3, t4));
            last_count = kps.size();
        }
        rep.features_per_frame.push_back(last_count);
    }

    rep.stages.push_back(detail::summarize("pyramid", t_pyr));
    rep.stages.push_back(detail::summarize("crf", t_crf));
    rep.stages.push_back(detail::summarize("fc", t_fc));
    rep.stages.push_back(detail::summarize("pfa", t_pfa));
    return rep;
}

}  // namespace pyrafast
