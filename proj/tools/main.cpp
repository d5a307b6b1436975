// Command-line front end: detection, rotation-repeatability evaluation,
// stage benchmarking, and the warp cost-model tables.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pyrafast/aggregation.hpp"
#include "pyrafast/bench.hpp"
#include "pyrafast/keypoint_io.hpp"
#include "pyrafast/pgm.hpp"
#include "pyrafast/pyramid.hpp"
#include "pyrafast/repeatability.hpp"
#include "pyrafast/synthetic.hpp"
#include "pyrafast/warp_model.hpp"

namespace {

struct Dims {
    int a = 0, b = 0;
};

// "16x16" -> {16, 16}
Dims parse_dims(const std::string& s, const char* what) {
    const auto pos = s.find('x');
    if (pos == std::string::npos || pos == 0 || pos + 1 >= s.size())
        throw CLI::ValidationError(std::string(what) + " must look like 16x16, got '" + s +
                                   "'");
    return Dims{std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 1))};
}

// "a:step:b" or "v1,v2,v3"
std::vector<double> parse_angles(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        const auto p1 = s.find(':');
        const auto p2 = s.find(':', p1 + 1);
        if (p2 == std::string::npos)
            throw CLI::ValidationError("--angles range must be start:step:end");
        const double start = std::stod(s.substr(0, p1));
        const double step = std::stod(s.substr(p1 + 1, p2 - p1 - 1));
        const double end = std::stod(s.substr(p2 + 1));
        if (step <= 0.0) throw CLI::ValidationError("--angles step must be positive");
        for (double a = start; a <= end + 1e-9; a += step) out.push_back(a);
    } else {
        std::size_t pos = 0;
        while (pos < s.size()) {
            const auto comma = s.find(',', pos);
            const auto len = comma == std::string::npos ? std::string::npos : comma - pos;
            out.push_back(std::stod(s.substr(pos, len)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    if (out.empty()) throw CLI::ValidationError("--angles produced no values");
    return out;
}

// Applies `key=value` lines from a config file to any option of `cmd` that
// was not given on the command line, so explicit flags win over the file.
void apply_config(CLI::App& cmd, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    const auto strip = [](const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = strip(line);
        if (text.empty() || text[0] == '#') continue;
        const auto where = path + ":" + std::to_string(line_no);
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(where + ": expected key=value, got '" + text + "'");
        const std::string key = strip(text.substr(0, eq));
        const std::string value = strip(text.substr(eq + 1));
        CLI::Option* opt = cmd.get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw std::runtime_error(where + ": unknown key '" + key + "'");
        if (opt->count() > 0) continue;  // the command line takes precedence
        opt->add_result(value);
        opt->run_callback();
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded segment-test corner detection with pyramidal culling "
                 "and aggregation"};
    app.require_subcommand(1);

    // ---- detect ----------------------------------------------------------
    auto* detect = app.add_subcommand("detect", "Detect corners in a PGM image");
    std::string image_path, cell_str = "32x32", out_path;
    int scales = 4, pmin = 9, pmax = 13, eps = 20, nms_q = 3;
    double zeta = 1.2;
    bool classic = false, csv = false, parallel = false;
    detect->add_option("image", image_path, "input image (PGM, P5 or P2)")->required();
    detect->add_option("--scales", scales, "pyramid levels")->capture_default_str();
    detect->add_option("--zeta", zeta, "per-level scale factor")->capture_default_str();
    detect->add_option("--cell", cell_str, "culling cell HxW")->capture_default_str();
    detect->add_option("--pmin", pmin, "minimum arc length")->capture_default_str();
    detect->add_option("--pmax", pmax, "maximum arc length")->capture_default_str();
    detect->add_option("--eps", eps, "intensity threshold")->capture_default_str();
    detect->add_option("--nms", nms_q, "suppression window side (odd)")
        ->capture_default_str();
    detect->add_flag("--classic", classic, "disable the upper arc bound (pmax = 16)");
    detect->add_flag("--csv", csv, "emit CSV instead of plain text");
    detect->add_flag("--parallel", parallel, "detect pyramid levels on threads");
    detect->add_option("--out", out_path, "write to file instead of stdout");
    std::string detect_config;
    detect->add_option("--config", detect_config,
                       "key=value file of defaults; explicit flags win");

    // ---- eval-rotate -----------------------------------------------------
    auto* eval = app.add_subcommand(
        "eval-rotate", "Rotation repeatability on seeded synthetic scenes");
    std::uint64_t seed = 1;
    int scenes = 10, polygons = 5, noise = 60;
    std::string mode = "bounded", angles_str = "-175:25:175", size_str = "256x256";
    std::string eval_cell = "16x16", eval_out;
    double match_radius = 3.0;
    eval->add_option("--seed", seed, "base scene seed")->capture_default_str();
    eval->add_option("--scenes", scenes, "number of scenes")->capture_default_str();
    eval->add_option("--mode", mode, "corner rule: bounded or classic")
        ->check(CLI::IsMember({"bounded", "classic"}))
        ->capture_default_str();
    eval->add_option("--angles", angles_str, "start:step:end or comma list")
        ->capture_default_str();
    eval->add_option("--polygons", polygons, "polygons per scene")->capture_default_str();
    eval->add_option("--noise", noise, "noise specks per scene")->capture_default_str();
    eval->add_option("--size", size_str, "scene WxH")->capture_default_str();
    eval->add_option("--cell", eval_cell, "culling cell HxW")->capture_default_str();
    eval->add_option("--radius", match_radius, "match radius in pixels")
        ->capture_default_str();
    eval->add_option("--out", eval_out, "write CSV to file instead of stdout");
    std::string eval_config;
    eval->add_option("--config", eval_config,
                     "key=value file of defaults; explicit flags win");

    // ---- bench -----------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "Stage timings of the detection chain");
    std::vector<std::string> bench_images;
    int repeats = 5, bench_scales = 4;
    std::uint64_t bench_seed = 1;
    std::string bench_cell = "16x16", bench_out;
    double bench_zeta = 1.2;
    bench->add_option("images", bench_images, "input PGM frames (default: synthetic)");
    bench->add_option("--repeats", repeats, "timed repetitions per frame (>= 3)")
        ->capture_default_str();
    bench->add_option("--scales", bench_scales, "pyramid levels")->capture_default_str();
    bench->add_option("--zeta", bench_zeta, "per-level scale factor")
        ->capture_default_str();
    bench->add_option("--cell", bench_cell, "culling cell HxW")->capture_default_str();
    bench->add_option("--seed", bench_seed, "seed for the synthetic frame")
        ->capture_default_str();
    bench->add_option("--out", bench_out, "write CSV to file instead of stdout");
    std::string bench_config;
    bench->add_option("--config", bench_config,
                      "key=value file of defaults; explicit flags win");

    // ---- warp-model --------------------------------------------------------
    auto* warp = app.add_subcommand("warp-model", "Thread/warp cost model tables");
    int table = 1;
    bool warp_csv = false;
    std::string warp_out;
    warp->add_option("--table", table, "1 = LOG2 vs MLPT, 2 = naive vs TEWA")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    warp->add_flag("--csv", warp_csv, "emit CSV instead of the aligned table");
    warp->add_option("--out", warp_out, "write to file instead of stdout");
    std::string warp_config;
    warp->add_option("--config", warp_config,
                     "key=value file of defaults; explicit flags win");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!detect_config.empty()) apply_config(*detect, detect_config);
        if (!eval_config.empty()) apply_config(*eval, eval_config);
        if (!bench_config.empty()) apply_config(*bench, bench_config);
        if (!warp_config.empty()) apply_config(*warp, warp_config);

        if (*detect) {
            const pyrafast::GrayImage img = pyrafast::load_pgm_file(image_path);
            pyrafast::DetectorParams params{eps, pmin, classic ? 16 : pmax};
            const Dims cell = parse_dims(cell_str, "--cell");
            const pyrafast::Pyramid pyr =
                scales > 1 ? pyrafast::build_pyramid(img, zeta, scales)
                           : pyrafast::Pyramid{{img}, zeta};
            const pyrafast::PycaResult res = pyrafast::pyca_pipeline(
                pyr, params, pyrafast::CellConfig{cell.a, cell.b},
                pyrafast::NmsConfig{nms_q}, parallel);
            const auto records = pyrafast::make_records(res, pyr.scale_factor);
            emit(csv ? pyrafast::to_csv(records) : pyrafast::to_text(records), out_path);
        } else if (*eval) {
            const Dims size = parse_dims(size_str, "--size");
            const Dims cell = parse_dims(eval_cell, "--cell");
            const std::vector<double> angles = parse_angles(angles_str);
            pyrafast::SweepConfig cfg;
            cfg.params = mode == "classic" ? pyrafast::DetectorParams::classic()
                                           : pyrafast::DetectorParams{};
            cfg.cell = pyrafast::CellConfig{cell.a, cell.b};
            cfg.match_radius = match_radius;

            std::vector<std::vector<pyrafast::RepeatabilityResult>> per_scene;
            for (int i = 0; i < scenes; ++i) {
                const pyrafast::SyntheticScene scene = pyrafast::generate_scene(
                    seed + static_cast<std::uint64_t>(i),
                    pyrafast::scene_spec_for(size.a, size.b, polygons, noise));
                per_scene.push_back(pyrafast::rotation_sweep(scene, angles, cfg));
            }
            std::ostringstream os;
            os << "angle,precision,recall,f1\n";
            for (std::size_t a = 0; a < angles.size(); ++a) {
                double p = 0, r = 0, f = 0;
                for (const auto& sweep : per_scene) {
                    p += sweep[a].precision;
                    r += sweep[a].recall;
                    f += sweep[a].f1;
                }
                const double n = static_cast<double>(per_scene.size());
                os << angles[a] << ',' << p / n << ',' << r / n << ',' << f / n << '\n';
            }
            emit(os.str(), eval_out);
        } else if (*bench) {
            std::vector<pyrafast::GrayImage> frames;
            for (const auto& path : bench_images)
                frames.push_back(pyrafast::load_pgm_file(path));
            if (frames.empty())
                frames.push_back(
                    pyrafast::generate_scene(bench_seed,
                                             pyrafast::scene_spec_for(512, 512, 8, 40))
                        .image);
            const Dims cell = parse_dims(bench_cell, "--cell");
            pyrafast::BenchConfig cfg;
            cfg.repeats = repeats;
            cfg.num_scales = bench_scales;
            cfg.zeta = bench_zeta;
            cfg.cell = pyrafast::CellConfig{cell.a, cell.b};
            emit(pyrafast::bench_pipeline(frames, cfg).csv(), bench_out);
        } else if (*warp) {
            const auto plans = table == 1 ? pyrafast::log2_vs_mlpt_rows()
                                          : pyrafast::naive_vs_tewa_rows();
            const pyrafast::PlanReport rep = pyrafast::report(plans);
            emit(warp_csv ? rep.csv : rep.text, warp_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
