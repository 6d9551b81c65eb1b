#include "dimsob/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "dimsob/error.hpp"

namespace dimsob {

using nlohmann::json;

void VerificationReport::decide() {
    margin = rhs - lhs;
    vacuous = std::isinf(rhs) && rhs > 0.0;
    pass = vacuous || lhs <= rhs + budget();
    if (!pass && violations == 0) violations = 1;
}

double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

namespace {

json num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round12(x);
}

json num_map(const std::map<std::string, double>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[k] = num(v);
    return j;
}

json report_json(const VerificationReport& r) {
    json j;
    j["check"] = r.check;
    j["lhs"] = num(r.lhs);
    j["rhs"] = num(r.rhs);
    j["margin"] = num(r.margin);
    j["mc_halfwidth"] = num(r.mc_halfwidth);
    j["quad_budget"] = num(r.quad_budget);
    j["disc_slack"] = num(r.disc_slack);
    j["pass"] = r.pass;
    j["vacuous"] = r.vacuous;
    j["checks"] = r.checks;
    j["violations"] = r.violations;
    j["strict_violations"] = r.strict_violations;
    j["config"] = r.config;
    j["constants"] = num_map(r.constants);
    j["notes"] = r.notes;
    return j;
}

std::string csv_num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

std::string to_json(const ReportEnvelope& env, bool include_wall_clock) {
    json j;
    j["schema"] = kReportSchema;
    j["tool_version"] = kToolVersion;
    j["command"] = env.command;
    j["argv"] = env.argv;
    j["seed"] = env.seed;
    j["passed"] = env.passed;
    j["total"] = env.total;
    json reps = json::array();
    for (const auto& r : env.reports) reps.push_back(report_json(r));
    j["reports"] = reps;
    json cons = json::array();
    for (const auto& c : env.constants) cons.push_back({{"kind", c.kind}, {"n", c.n}, {"value", num(c.value)}});
    j["constants"] = cons;
    json sw = json::array();
    for (const auto& s : env.sweep) {
        json row{{"n", s.n},
                 {"lhs", num(s.lhs)},
                 {"gradient_norm", num(s.gradient_norm)},
                 {"ratio", num(s.ratio)},
                 {"constant", num(s.constant)},
                 {"max_so_far", num(s.max_so_far)},
                 {"mc_halfwidth", num(s.mc_halfwidth)},
                 {"ok", s.ok}};
        if (!s.error.empty()) row["error"] = s.error;
        sw.push_back(row);
    }
    j["sweep"] = sw;
    j["values"] = num_map(env.values);
    j["summary"] = num_map(env.summary_values);
    if (include_wall_clock) j["wall_clock_s"] = num(env.wall_clock_s);
    return j.dump(2) + "\n";
}

std::string to_csv(const ReportEnvelope& env) {
    std::ostringstream out;
    if (!env.sweep.empty()) {
        out << "n,ratio,constant,max_so_far\n";
        for (const auto& s : env.sweep)
            out << s.n << ',' << csv_num(s.ratio) << ',' << csv_num(s.constant) << ',' << csv_num(s.max_so_far) << '\n';
    } else if (!env.constants.empty()) {
        out << "kind,n,value\n";
        for (const auto& c : env.constants) out << c.kind << ',' << c.n << ',' << csv_num(c.value) << '\n';
    } else if (!env.reports.empty()) {
        out << "check,lhs,rhs,margin,budget,pass,vacuous\n";
        for (const auto& r : env.reports)
            out << r.check << ',' << csv_num(r.lhs) << ',' << csv_num(r.rhs) << ',' << csv_num(r.margin) << ','
                << csv_num(r.budget()) << ',' << (r.pass ? 1 : 0) << ',' << (r.vacuous ? 1 : 0) << '\n';
    } else {
        out << "name,value\n";
        for (const auto& [k, v] : env.values) out << k << ',' << csv_num(v) << '\n';
    }
    return out.str();
}

void emit(const ReportEnvelope& env, ReportFormat format, const std::string& path) {
    std::string text = format == ReportFormat::json ? to_json(env) : to_csv(env);
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
    if (!f) throw Error("write failed for '" + path + "'");
}

}  // namespace dimsob
