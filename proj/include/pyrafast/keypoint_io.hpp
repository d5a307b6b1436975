#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pyrafast/aggregation.hpp"
#include "pyrafast/keypoint.hpp"

namespace pyrafast {

/// One output record: a surviving keypoint plus the aggregate scores of the
/// native pixel it projected to.
struct KeypointRecord {
    int level = 0;
    int x = 0;
    int y = 0;
    std::int32_t response = 0;
    std::int64_t k_r = 0;
    int k_l = 0;

    bool operator==(const KeypointRecord&) const = default;
};

/// Attach aggregate scores to the pipeline survivors.
inline std::vector<KeypointRecord> make_records(const PycaResult& res, double zeta) {
    std::vector<KeypointRecord> out;
    out.reserve(res.keypoints.size());
    for (const Keypoint& kp : res.keypoints) {
        const PixelCoord p = project_to_native(kp, zeta, res.scores.width, res.scores.height);
        out.push_back(KeypointRecord{kp.level, kp.x, kp.y, kp.response,
                                     res.scores.k_r_at(p.x, p.y), res.scores.k_l_at(p.x, p.y)});
    }
    return out;
}

/// Plain text, one keypoint per line: "level x y response k_r k_l".
inline std::string to_text(const std::vector<KeypointRecord>& records) {
    std::ostringstream os;
    for (const auto& r : records)
        os << r.level << ' ' << r.x << ' ' << r.y << ' ' << r.response << ' ' << r.k_r << ' '
           << r.k_l << '\n';
    return os.str();
}

/// CSV with a header row, same fields as the text format.
inline std::string to_csv(const std::vector<KeypointRecord>& records) {
    std::ostringstream os;
    os << "level,x,y,response,k_r,k_l\n";
    for (const auto& r : records)
        os << r.level << ',' << r.x << ',' << r.y << ',' << r.response << ',' << r.k_r << ','
           << r.k_l << '\n';
    return os.str();
}

/// Parse the text format back. Blank lines are ignored; anything else that
/// does not scan as six numbers is an error.
inline std::vector<KeypointRecord> parse_text(const std::string& text) {
    std::vector<KeypointRecord> out;
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        KeypointRecord r;
        if (!(ls >> r.level >> r.x >> r.y >> r.response >> r.k_r >> r.k_l))
            throw std::runtime_error("keypoint text: malformed line " +
                                     std::to_string(lineno) + ": '" + line + "'");
        out.push_back(r);
    }
    return out;
}

}  // namespace pyrafast
