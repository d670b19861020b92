#pragma once

// CSV and JSON serialization for convergence reports. Numbers are written in
// scientific notation with 40 significant digits so independent runs diff
// cleanly; CSV is comma-separated with LF endings and a fixed header.

#include <string>
#include <vector>

#include <json.hpp>

#include "limitlab/convergence.hpp"

namespace limitlab {

inline const char* csv_header() { return "experiment,n,c,value,target,abs_error,rel_error\n"; }

namespace detail {
inline std::string c_field(const ConvergenceReport& r) {
    if (!r.c) return "";
    if (r.c->is_inf()) return "inf";
    return r.c->str(40);
}
}  // namespace detail

inline void append_csv(std::string& out, const ConvergenceReport& r) {
    std::string c = detail::c_field(r);
    std::string target = r.target.str(40);
    for (const auto& row : r.rows) {
        out += r.spec_name;
        out += ',';
        out += std::to_string(row.n);
        out += ',';
        out += c;
        out += ',';
        out += row.value.str(40);
        out += ',';
        out += target;
        out += ',';
        out += row.abs_error.str(40);
        out += ',';
        out += row.rel_error.str(40);
        out += '\n';
    }
}

inline std::string to_csv(const std::vector<ConvergenceReport>& reports) {
    std::string out = csv_header();
    for (const auto& r : reports) append_csv(out, r);
    return out;
}

inline nlohmann::ordered_json to_json(const ConvergenceReport& r) {
    nlohmann::ordered_json j;
    j["experiment"] = r.spec_name;
    j["target"] = r.target.str(40);
    j["c"] = r.c ? nlohmann::ordered_json(detail::c_field(r)) : nlohmann::ordered_json(nullptr);
    j["precision_bits"] = r.precision_bits;
    j["flags"] = r.flags;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json jr;
        jr["n"] = row.n;
        jr["value"] = row.value.str(40);
        jr["abs_error"] = row.abs_error.str(40);
        jr["rel_error"] = row.rel_error.str(40);
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    if (r.rate_estimate) {
        j["rate_estimate"] = {{"slope", r.rate_estimate->slope.str(40)},
                              {"r_squared", r.rate_estimate->r_squared.str(40)}};
    } else {
        j["rate_estimate"] = nullptr;
    }
    j["aitken_limit"] =
        r.aitken_limit ? nlohmann::ordered_json(r.aitken_limit->str(40)) : nlohmann::ordered_json(nullptr);
    return j;
}

inline std::string to_json_string(const std::vector<ConvergenceReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
}

}  // namespace limitlab
