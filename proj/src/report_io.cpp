#include "sos/report_io.hpp"

#include <cstdio>

namespace sos {

namespace {

nlohmann::json opt_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

} // namespace

nlohmann::json to_json(const SolutionReport& report) {
    nlohmann::json j;
    auto& roots = j["roots"] = nlohmann::json::array();
    for (const auto& r : report.roots) roots.push_back({{"h2", r.h2}, {"l2", r.l2}});
    j["residuals"] = report.residuals;
    j["derivatives"] = report.derivatives;
    auto& stab = j["stability"] = nlohmann::json::array();
    for (auto s : report.stability) stab.push_back(to_string(s));
    j["labels"] = report.labels;
    j["regime_note"] = report.regime_note;
    if (report.has_h_star) j["h_star"] = report.h_star;
    if (report.cross_check_count >= 0) j["cross_check_count"] = report.cross_check_count;
    if (report.positive_l2_count >= 0) j["positive_l2_count"] = report.positive_l2_count;
    return j;
}

nlohmann::json to_json(const CriticalSet& cs) {
    nlohmann::json j;
    j["theta_c"] = cs.theta_c;
    j["zeta"] = cs.zeta;
    j["discriminant"] = cs.discriminant_value;
    j["x1"] = opt_json(cs.x1);
    j["x2"] = opt_json(cs.x2);
    j["eta1"] = opt_json(cs.eta1);
    j["eta2"] = opt_json(cs.eta2);
    j["c_star_1"] = opt_json(cs.c_star_1);
    j["c_star_2"] = opt_json(cs.c_star_2);
    j["convention"] = to_string(cs.convention);
    j["c_star_order_flipped"] = cs.c_star_order_flipped;
    return j;
}

nlohmann::json to_json(const RegimeReport& report) {
    nlohmann::json j;
    j["regime"] = to_string(report.regime);
    j["N_predicted"] = report.n_solutions_predicted;
    j["N_found"] = report.n_solutions_found;
    j["theorem_applied"] = report.theorem_applied;
    j["criticals"] = report.criticals ? to_json(*report.criticals) : nlohmann::json(nullptr);
    auto& tags = j["family_tags"] = nlohmann::json::array();
    for (auto t : report.family_tags) tags.push_back(to_string(t));
    j["solutions"] = to_json(report.solutions);
    return j;
}

std::string format_machine(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_human(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace sos
