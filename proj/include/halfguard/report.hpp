#pragma once

#include <optional>
#include <sstream>
#include <string>

#include "halfguard/classify.hpp"

namespace halfguard {

/// One solve run, flattened for the text, CSV and JSON writers. `bound` is
/// the guarantee the algorithm claims next to its answer; `opt` and `ratio`
/// appear only when the exact solver ran too. A failed run keeps its row:
/// `error` carries the message and `covered` stays false.
struct RunReport {
    std::string instance;
    std::string class_flags;
    std::string algorithm;
    std::size_t guard_count = 0;
    long bound = 0;
    std::optional<long> opt;
    std::optional<double> ratio;
    bool covered = false;
    double wall_time_secs = 0;
    std::string error;
};

inline std::string class_flag_string(const PolygonClass& c) {
    std::string s;
    auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!s.empty()) s += ' ';
        s += name;
    };
    add(c.simple, "simple");
    add(c.orthogonal, "orthogonal");
    add(c.x_monotone, "x-monotone");
    add(c.y_monotone, "y-monotone");
    add(c.staircase, "staircase");
    add(c.monotone_mountain, "monotone-mountain");
    add(c.spiral, "spiral");
    return s;
}

namespace report_detail {

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace report_detail

inline std::string run_report_csv_header() {
    return "instance,class_flags,algorithm,guard_count,bound,opt,ratio,covered,wall_time_secs,error";
}

inline std::string run_report_csv_row(const RunReport& r) {
    using report_detail::csv_quote;
    std::ostringstream os;
    os << csv_quote(r.instance) << ',' << csv_quote(r.class_flags) << ',' << r.algorithm << ','
       << r.guard_count << ',' << r.bound << ',';
    if (r.opt) os << *r.opt;
    os << ',';
    if (r.ratio) os << *r.ratio;
    os << ',' << (r.covered ? "true" : "false") << ',' << r.wall_time_secs << ','
       << csv_quote(r.error);
    return os.str();
}

}  // namespace halfguard
