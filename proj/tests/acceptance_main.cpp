// Release gate. Each numbered check below re-derives one gating requirement
// from first principles — exhaustive oracles, full parameter sweeps, seeded
// corpora — and prints a single [PASS]/[FAIL] line. The process exits
// nonzero if any check fails.
//
// Unlike the unit suite, nothing here is sampled down: corpus sizes, sweep
// ranges, and time budgets are the contract, pinned in this file.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pyrafast/aggregation.hpp"
#include "pyrafast/bench.hpp"
#include "pyrafast/buffer_pool.hpp"
#include "pyrafast/culling.hpp"
#include "pyrafast/fast.hpp"
#include "pyrafast/pyramid.hpp"
#include "pyrafast/repeatability.hpp"
#include "pyrafast/rng.hpp"
#include "pyrafast/synthetic.hpp"
#include "pyrafast/warp_model.hpp"

using namespace pyrafast;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

// Deterministic corpus: walk seeds upward and keep the first `count` scenes
// whose random layout fits the spec. The generator rejects overcrowded
// layouts loudly; rejections are seed-specific and rare (a few percent), so
// the walk is short — but a generator that rejects nearly everything should
// still fail the gate, hence the hard cap.
std::vector<SyntheticScene> corpus(int count, const SceneSpec& spec, int& skipped) {
    std::vector<SyntheticScene> out;
    out.reserve(static_cast<std::size_t>(count));
    skipped = 0;
    for (std::uint64_t seed = 1; static_cast<int>(out.size()) < count; ++seed) {
        if (skipped > count)
            throw std::runtime_error("corpus: generator rejected more layouts than it "
                                     "accepted; scene spec is unusable");
        try {
            out.push_back(generate_scene(seed, spec));
        } catch (const std::runtime_error&) {
            ++skipped;
        }
    }
    return out;
}

// 1. The corner LUT must agree with a direct per-start run scan on all 65536
//    circle masks — run length and accept decision alike, for the bounded
//    band and for the classic (no upper bound) band — inside a 1 s budget.
Outcome lut_exhaustive() {
    const auto t0 = std::chrono::steady_clock::now();
    const DetectorParams bounded{};
    const DetectorParams classic = DetectorParams::classic();
    const CornerLut lut_b = build_lut(bounded);
    const CornerLut lut_c = build_lut(classic);
    int mism = 0;
    for (std::uint32_t m = 0; m <= 0xFFFF; ++m) {
        const auto mask = static_cast<std::uint16_t>(m);
        const int run = oracle::max_circular_run(mask);
        if (lut_b.run[mask] != run || lut_c.run[mask] != run) ++mism;
        if (lut_b.accepts(mask) != (run >= bounded.p_min && run <= bounded.p_max))
            ++mism;
        if (lut_c.accepts(mask) != (run >= classic.p_min && run <= classic.p_max))
            ++mism;
    }
    const double ms = ms_since(t0);
    std::ostringstream os;
    os << "65536 masks x 2 bands, " << mism << " mismatches, " << std::fixed
       << std::setprecision(0) << ms << " ms (budget 1000)";
    return {mism == 0 && ms < 1000.0, os.str()};
}

// 2. Warp accounting, one block per cell vs packed warps, against the
//    published efficiency table: active threads and warp counts must match
//    exactly, efficiencies as exact rationals.
Outcome packed_warp_table() {
    struct Row {
        int side;
        int nv_ta, nv_w;
        Ratio nv_eta;
        int tw_ta, tw_w;
        Ratio tw_eta;
    };
    const Row rows[] = {
        {3, 9, 1, Ratio::of(9, 32), 30, 1, Ratio::of(30, 32)},
        {5, 25, 1, Ratio::of(25, 32), 30, 1, Ratio::of(30, 32)},
        {7, 49, 2, Ratio::of(49, 64), 28, 1, Ratio::of(28, 32)},
    };
    int bad = 0;
    for (const Row& r : rows) {
        const CullingPlan nv = plan_naive(CellConfig{r.side, r.side});
        const CullingPlan tw = plan_tewa(CellConfig{r.side, r.side}, 10);
        if (nv.n_ta != r.nv_ta || nv.n_w != r.nv_w || !(nv.eta_w == r.nv_eta)) ++bad;
        if (tw.n_ta != r.tw_ta || tw.n_w != r.tw_w || !(tw.eta_w == r.tw_eta)) ++bad;
    }
    std::ostringstream os;
    os << "cells 3x3/5x5/7x7, both schemes: " << (6 - bad)
       << "/6 rows exact (threads, warps, eta as rationals)";
    return {bad == 0, os.str()};
}

// 3. Reduction thread table: the three two-per-thread rows and the 100x32
//    chunked row must match the published totals exactly; the two rows whose
//    published cells are internally inconsistent must carry an explicit flag
//    next to the modeled numbers, never silently adjusted ones.
Outcome thread_table_rows() {
    const std::vector<CullingPlan> rows = log2_vs_mlpt_rows();
    const auto find = [&rows](CullingScheme s, int ch) -> const CullingPlan* {
        for (const CullingPlan& p : rows)
            if (p.scheme == s && p.cell.cell_h == ch) return &p;
        return nullptr;
    };
    const CullingPlan* l20 = find(CullingScheme::Log2, 20);
    const CullingPlan* l50 = find(CullingScheme::Log2, 50);
    const CullingPlan* l100 = find(CullingScheme::Log2, 100);
    const CullingPlan* m20 = find(CullingScheme::Mlpt, 20);
    const CullingPlan* m50 = find(CullingScheme::Mlpt, 50);
    const CullingPlan* m100 = find(CullingScheme::Mlpt, 100);
    bool ok = l20 && l50 && l100 && m20 && m50 && m100;
    if (ok) {
        ok = ok && l20->total_threads == 320 && l20->n_w == 10;
        ok = ok && l50->total_threads == 800 && l50->n_w == 25;
        ok = ok && l100->total_threads == 1600 && l100->n_w == 50;
        ok = ok && m100->total_threads == 320 && m100->n_w == 10 && m100->note.empty();
        // modeled numbers for the flagged rows, with the flag present
        ok = ok && m20->total_threads == 128 && m20->n_w == 4 && !m20->note.empty();
        ok = ok && m50->total_threads == 320 && m50->n_w == 10 && !m50->note.empty();
    }
    return {ok,
            "3 reduction rows + 100x32 chunked row exact; 20x32 and 50x32 chunked "
            "rows flagged against published figures"};
}

// 4. Grid culling must equal a brute-force per-cell argmax (explicit
//    comparator, no scan-order shortcuts) over 1000 seeded random response
//    maps and five cell shapes, inside a 10 s budget.
Outcome culling_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const int sides[] = {3, 5, 7, 15, 32};
    Rng rng(1234);
    int checked = 0, bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const int w = rng.uniform_int(33, 128);
        const int h = rng.uniform_int(33, 128);
        const CrfMatrix crf = oracle::random_crf(rng, w, h);
        for (const int side : sides) {
            std::vector<Keypoint> got = feature_cull(crf, CellConfig{side, side}, 2);
            std::vector<Keypoint> want = oracle::reference_cull(crf, side, side, 2);
            std::sort(got.begin(), got.end(), keypoint_order);
            std::sort(want.begin(), want.end(), keypoint_order);
            if (!(got == want)) ++bad;
            ++checked;
        }
    }
    const double ms = ms_since(t0);
    std::ostringstream os;
    os << checked << " maps x cells, " << bad << " mismatches, " << std::fixed
       << std::setprecision(0) << ms << " ms (budget 10000)";
    return {bad == 0 && ms < 10000.0, os.str()};
}

// 5. Pyramid aggregation invariants on 200 seeded four-level scenes: the
//    survivors equal a dense reference built from the independent per-cell
//    argmax, the final count never exceeds the per-level total, and the
//    threaded path is bit-identical to the serial one.
Outcome pipeline_invariants() {
    const SceneSpec spec = scene_spec_for(128, 128, 3, 20);
    const DetectorParams params{};
    const CellConfig cell{16, 16};
    const NmsConfig nms{3};
    const double zeta = 1.2;
    const CornerLut lut = build_lut(params);
    int bad_oracle = 0, bad_threads = 0, bad_count = 0;
    int skipped = 0;
    for (const SyntheticScene& scene : corpus(200, spec, skipped)) {
        const Pyramid pyr = build_pyramid(scene.image, zeta, 4);
        const PycaResult serial = pyca_pipeline(pyr, params, cell, nms, false);
        const PycaResult threaded = pyca_pipeline(pyr, params, cell, nms, true);
        if (!(serial.keypoints == threaded.keypoints)) ++bad_threads;

        std::size_t total_fc = 0;
        for (const std::size_t c : serial.fc_counts) total_fc += c;
        if (serial.keypoints.size() > total_fc) ++bad_count;

        std::vector<std::vector<Keypoint>> per_level;
        for (int n = 0; n < pyr.num_scales(); ++n) {
            const CrfMatrix crf = detect_crf(pyr.levels[n], params, lut);
            per_level.push_back(oracle::reference_cull(crf, cell.cell_h, cell.cell_w, n));
        }
        const oracle::DenseAgg agg = oracle::reference_aggregate(
            per_level, zeta, scene.image.width, scene.image.height);
        const std::vector<Keypoint> want = oracle::reference_nms(agg, nms.q);
        if (!(serial.keypoints == want)) ++bad_oracle;
    }
    std::ostringstream os;
    os << "200 scenes (" << skipped << " layouts re-rolled): " << bad_oracle
       << " dense-reference mismatches, " << bad_count << " count increases, "
       << bad_threads << " serial/threaded diffs";
    return {bad_oracle == 0 && bad_threads == 0 && bad_count == 0, os.str()};
}

// 6. Rotation study on a 50-scene noisy corpus: the arc-length upper bound
//    must win on mean F1 at every sweep angle, and by a mean margin of at
//    least 0.2. Absolute scores are corpus-specific and not asserted.
Outcome rotation_margin() {
    const std::vector<double> angles = default_sweep_angles();
    SweepConfig bounded;
    SweepConfig classic;
    classic.params = DetectorParams::classic();
    const int n_scenes = 50;
    std::vector<double> f1_b(angles.size(), 0.0), f1_c(angles.size(), 0.0);
    int skipped = 0;
    for (const SyntheticScene& scene : corpus(n_scenes, SceneSpec{}, skipped)) {
        const auto rb = rotation_sweep(scene, angles, bounded);
        const auto rc = rotation_sweep(scene, angles, classic);
        for (std::size_t i = 0; i < angles.size(); ++i) {
            f1_b[i] += rb[i].f1;
            f1_c[i] += rc[i].f1;
        }
    }
    std::size_t won = 0;
    double margin_sum = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double mb = f1_b[i] / n_scenes;
        const double mc = f1_c[i] / n_scenes;
        if (mb > mc) ++won;
        margin_sum += mb - mc;
    }
    const double mean_margin = margin_sum / static_cast<double>(angles.size());
    std::ostringstream os;
    os << n_scenes << " scenes x " << angles.size() << " angles: bounded wins " << won
       << "/" << angles.size() << ", mean F1 margin " << std::fixed
       << std::setprecision(3) << mean_margin << " (need >= 0.200)";
    return {won == angles.size() && mean_margin >= 0.2, os.str()};
}

// 7. Injected specks across the same corpus: the bounded rule must produce
//    zero response on at least 95% of them while the classic rule fires on
//    more than half.
Outcome speck_rates() {
    const DetectorParams bounded{};
    const DetectorParams classic = DetectorParams::classic();
    const CornerLut lut_b = build_lut(bounded);
    const CornerLut lut_c = build_lut(classic);
    long total = 0, zero_b = 0, pos_c = 0;
    int skipped = 0;
    for (const SyntheticScene& scene : corpus(50, SceneSpec{}, skipped)) {
        const CrfMatrix crf_b = detect_crf(scene.image, bounded, lut_b);
        const CrfMatrix crf_c = detect_crf(scene.image, classic, lut_c);
        for (const PointF& p : scene.noise_points) {
            const int x = static_cast<int>(p.x), y = static_cast<int>(p.y);
            ++total;
            if (crf_b.at(x, y) == 0) ++zero_b;
            if (crf_c.at(x, y) > 0) ++pos_c;
        }
    }
    const double rate_b = static_cast<double>(zero_b) / static_cast<double>(total);
    const double rate_c = static_cast<double>(pos_c) / static_cast<double>(total);
    std::ostringstream os;
    os << total << " specks: bounded silent on " << std::fixed << std::setprecision(1)
       << 100.0 * rate_b << "% (need >= 95), classic fires on " << 100.0 * rate_c
       << "% (need > 50)";
    return {rate_b >= 0.95 && rate_c > 0.5, os.str()};
}

// 8. Chunked culling must never demand more warp work than the two-per-thread
//    reduction anywhere in the documented parameter space (cell heights
//    {3,5,7,15,20,32,50,100}, widths 3..32, chunk sizes 1..10). The reduction
//    re-runs its warps once per pass, so demand is warps x passes; per-launch
//    warp counts are additionally dominated once a thread covers two or more
//    locations (at chunk size 1 the chunked kernel degenerates to one thread
//    per location and can occupy more warps per launch).
Outcome chunked_dominance() {
    const int heights[] = {3, 5, 7, 15, 20, 32, 50, 100};
    int combos = 0, demand_viol = 0, launch_combos = 0, launch_viol = 0;
    for (const int ch : heights) {
        for (int cw = 3; cw <= 32; ++cw) {
            const CullingPlan lg = plan_log2(CellConfig{ch, cw});
            for (int n_max = 1; n_max <= 10; ++n_max) {
                const CullingPlan ml = plan_mlpt(CellConfig{ch, cw}, n_max);
                ++combos;
                if (ml.n_w * ml.passes > lg.n_w * lg.passes) ++demand_viol;
                if (n_max >= 2) {
                    ++launch_combos;
                    if (ml.n_w > lg.n_w) ++launch_viol;
                }
            }
        }
    }
    std::ostringstream os;
    os << combos << " configs: " << demand_viol
       << " warp-demand violations; per-launch warps dominated in "
       << (launch_combos - launch_viol) << "/" << launch_combos
       << " configs with chunk >= 2";
    return {demand_viol == 0 && launch_viol == 0, os.str()};
}

// 9. Buffer pool growth contract under 10^4 random request/release ops over
//    four slots: capacity never shrinks, always covers the high-water
//    request, and real allocations stay within the geometric bound implied
//    by 1.5x growth.
Outcome pool_contract() {
    BufferPool pool;
    const std::string slots[] = {"crf", "scores", "mask", "scratch"};
    Rng rng(7);
    std::map<std::string, std::size_t> high_water, prev_cap;
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const std::string& slot = slots[rng.uniform_int(0, 3)];
        const auto size = static_cast<std::size_t>(rng.uniform_int(1, 200000));
        {
            BufferHandle h = pool.request(slot, size);
            h.bytes()[0] = static_cast<std::uint8_t>(i);
        }
        high_water[slot] = std::max(high_water[slot], size);
        const std::size_t cap = pool.capacity(slot);
        if (cap < prev_cap[slot]) ++bad;
        if (cap < high_water[slot]) ++bad;
        prev_cap[slot] = cap;
    }
    std::size_t total_allocs = 0;
    for (const auto& [slot, high] : high_water) {
        const auto bound = static_cast<std::size_t>(
            std::ceil(std::log(static_cast<double>(high)) / std::log(1.5)) + 1.0);
        total_allocs += pool.alloc_events(slot);
        if (pool.alloc_events(slot) > bound) ++bad;
    }
    std::ostringstream os;
    os << "10000 ops over 4 slots, " << total_allocs << " real allocations, " << bad
       << " contract violations";
    return {bad == 0, os.str()};
}

// 10. Wall-clock throughput and trajectory-accuracy comparisons from the
//     published evaluation need the original GPU hardware and a complete
//     visual-odometry stack; at desk scale they are replaced by the property
//     gates above plus this unthresholded stage-timing report.
Outcome desk_scale_statement() {
    const SyntheticScene scene = generate_scene(3, scene_spec_for(160, 160, 4, 24));
    BenchConfig cfg;
    cfg.repeats = 3;
    const BenchReport rep = bench_pipeline({scene.image}, cfg);
    std::ostringstream os;
    os << "hardware-bound figures out of scope; stage medians (ms):";
    for (const StageTiming& s : rep.stages)
        os << ' ' << s.stage << ' ' << std::fixed << std::setprecision(2)
           << s.median_ms;
    return {rep.stages.size() == 4 && !rep.features_per_frame.empty(), os.str()};
}

}  // namespace

int main() {
    struct Gate {
        const char* name;
        Outcome (*run)();
    };
    const Gate gates[] = {
        {"corner lut equals the exhaustive run-length oracle", lut_exhaustive},
        {"packed-warp efficiency table reproduced exactly", packed_warp_table},
        {"reduction thread table reproduced, discrepant rows flagged",
         thread_table_rows},
        {"grid culling equals the brute-force per-cell argmax", culling_oracle},
        {"pyramid aggregation invariants hold on seeded scenes",
         pipeline_invariants},
        {"bounded arc rule beats the classic rule across the rotation sweep",
         rotation_margin},
        {"injected specks suppressed by the bounded rule, caught by classic",
         speck_rates},
        {"chunked culling never demands more warp work than the reduction",
         chunked_dominance},
        {"buffer pool capacity is monotone and allocations stay geometric",
         pool_contract},
        {"hardware-bound published figures substituted by property gates",
         desk_scale_statement},
    };

    int failed = 0;
    int idx = 0;
    for (const Gate& g : gates) {
        ++idx;
        Outcome out;
        try {
            out = g.run();
        } catch (const std::exception& e) {
            out = {false, std::string("unexpected exception: ") + e.what()};
        }
        if (!out.ok) ++failed;
        std::cout << (out.ok ? "[PASS] " : "[FAIL] ") << std::setw(2) << idx << ' '
                  << g.name << " :: " << out.detail << '\n';
    }
    std::cout << (10 - failed) << " of 10 gates passed\n";
    return failed == 0 ? 0 : 1;
}
