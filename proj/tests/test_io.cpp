#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "pyrafast/bench.hpp"
#include "pyrafast/keypoint_io.hpp"
#include "pyrafast/synthetic.hpp"

using namespace pyrafast;

TEST_CASE("io: keypoint text round-trips", "[io]") {
    const std::vector<KeypointRecord> records = {
        {0, 10, 20, 150, 150, 1},
        {2, 5, 6, 80, 230, 3},
    };
    const std::string text = to_text(records);
    CHECK(text == "0 10 20 150 150 1\n2 5 6 80 230 3\n");
    CHECK(parse_text(text) == records);
    CHECK(parse_text("").empty());
    CHECK_THROWS_AS(parse_text("1 2 3\n"), std::runtime_error);
}

TEST_CASE("io: csv has a header and one row per keypoint", "[io]") {
    const std::vector<KeypointRecord> records = {{1, 3, 4, 99, 99, 1}};
    const std::string csv = to_csv(records);
    CHECK(csv == "level,x,y,response,k_r,k_l\n1,3,4,99,99,1\n");
}

TEST_CASE("io: records carry the aggregate scores of their pixel", "[io]") {
    const SyntheticScene scene = generate_scene(17, SceneSpec{256, 256, 4, 0});
    const Pyramid pyr = build_pyramid(scene.image, 1.2, 3);
    const PycaResult res =
        pyca_pipeline(pyr, DetectorParams{}, CellConfig{16, 16}, NmsConfig{3});
    const auto records = make_records(res, pyr.scale_factor);
    REQUIRE(records.size() == res.keypoints.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].level == res.keypoints[i].level);
        CHECK(records[i].response == res.keypoints[i].response);
        CHECK(records[i].k_r >= records[i].response);
        CHECK(records[i].k_l >= 1);
    }
}

TEST_CASE("bench: stage timings and deterministic feature counts", "[bench]") {
    const SyntheticScene scene = generate_scene(2, scene_spec_for(128, 128, 2, 5));
    BenchConfig cfg;
    cfg.repeats = 3;
    cfg.num_scales = 2;
    const BenchReport rep = bench_pipeline({scene.image, scene.image}, cfg);
    REQUIRE(rep.stages.size() == 4);
    CHECK(rep.stages[0].stage == "pyramid");
    CHECK(rep.stages[3].stage == "pfa");
    for (const auto& st : rep.stages) {
        CHECK(st.median_ms >= 0.0);
        CHECK(st.p95_ms >= st.median_ms);
    }
    REQUIRE(rep.features_per_frame.size() == 2);
    CHECK(rep.features_per_frame[0] == rep.features_per_frame[1]);

    const std::string csv = rep.csv();
    CHECK(csv.find("stage,median_ms,p95_ms") == 0);
    CHECK(csv.find("frame,features") != std::string::npos);
}

TEST_CASE("bench: too few repeats and empty input", "[bench]") {
    BenchConfig cfg;
    cfg.repeats = 2;
    CHECK_THROWS_AS(bench_pipeline({}, cfg), std::invalid_argument);
    cfg.repeats = 3;
    const BenchReport rep = bench_pipeline({}, cfg);
    CHECK(rep.features_per_frame.empty());
    for (const auto& st : rep.stages) CHECK(st.median_ms == 0.0);
}
