#include "heckesign/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace heckesign {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string report_to_text(const ExperimentReport& r) {
    std::ostringstream out;
    out << "report " << r.id << "\n";
    for (const auto& [k, v] : r.params) out << "param " << k << " " << v << "\n";
    out << "observed";
    for (double v : r.observed) out << " " << format_double(v);
    out << "\nexpected";
    for (double v : r.expected) out << " " << format_double(v);
    out << "\ndeviation " << format_double(r.deviation);
    out << "\ntolerance " << format_double(r.tolerance);
    out << "\nverdict " << (r.verdict ? "pass" : "fail") << "\n";
    out << "end\n";
    return out.str();
}

ExperimentReport report_from_text(const std::string& text) {
    ExperimentReport r;
    std::istringstream in(text);
    std::string line;
    bool have_id = false, have_end = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "report") {
            ls >> r.id;
            have_id = true;
        } else if (tag == "param") {
            std::string k;
            ls >> k;
            std::string v;
            std::getline(ls, v);
            if (!v.empty() && v.front() == ' ') v.erase(0, 1);
            r.params.emplace_back(k, v);
        } else if (tag == "observed") {
            double v;
            while (ls >> v) r.observed.push_back(v);
        } else if (tag == "expected") {
            double v;
            while (ls >> v) r.expected.push_back(v);
        } else if (tag == "deviation") {
            ls >> r.deviation;
        } else if (tag == "tolerance") {
            ls >> r.tolerance;
        } else if (tag == "verdict") {
            std::string v;
            ls >> v;
            r.verdict = (v == "pass");
        } else if (tag == "end") {
            have_end = true;
            break;
        } else if (!tag.empty()) {
            throw std::invalid_argument("report_from_text: unknown tag " + tag);
        }
    }
    if (!have_id || !have_end) throw std::invalid_argument("report_from_text: malformed report");
    return r;
}

std::string report_to_json(const ExperimentReport& r) {
    nlohmann::json j;
    j["id"] = r.id;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    j["observed"] = r.observed;
    j["expected"] = r.expected;
    j["deviation"] = r.deviation;
    j["verdict"] = r.verdict ? "pass" : "fail";
    return j.dump();
}

} // namespace heckesign
