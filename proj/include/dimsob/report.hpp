#pragma once

#include <map>
#include <string>
#include <vector>

namespace dimsob {

// One inequality check. pass <=> lhs <= rhs + mc_halfwidth + quad_budget + disc_slack.
struct VerificationReport {
    std::string check;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    double mc_halfwidth = 0.0;
    double quad_budget = 0.0;
    double disc_slack = 0.0;
    bool pass = false;
    bool vacuous = false;  // rhs infinite: passes but carries no evidence
    int checks = 1;
    int violations = 0;
    int strict_violations = 0;  // violations with the slack terms removed
    std::map<std::string, std::string> config;
    std::map<std::string, double> constants;
    std::vector<std::string> notes;

    double budget() const { return mc_halfwidth + quad_budget + disc_slack; }
    // Fills margin and pass from the stored numbers.
    void decide();
};

struct ConstantRow {
    std::string kind;
    int n = 0;
    double value = 0.0;
};

struct SweepRow {
    int n = 0;
    double lhs = 0.0;
    double gradient_norm = 0.0;
    double ratio = 0.0;
    double constant = 0.0;
    double max_so_far = 0.0;
    double mc_halfwidth = 0.0;
    bool ok = true;
    std::string error;
};

struct ReportEnvelope {
    std::string command;
    std::vector<std::string> argv;
    unsigned long long seed = 0;
    std::vector<VerificationReport> reports;
    std::vector<ConstantRow> constants;
    std::vector<SweepRow> sweep;
    std::map<std::string, double> values;
    std::map<std::string, double> summary_values;
    double wall_clock_s = 0.0;
    int passed = 0;
    int total = 0;
};

inline constexpr const char* kReportSchema = "dimsob.report/1";
inline constexpr const char* kToolVersion = "1.0.0";

enum class ReportFormat { json, csv };

// x rounded to 12 significant digits
double round12(double x);

std::string to_json(const ReportEnvelope& env, bool include_wall_clock = true);
std::string to_csv(const ReportEnvelope& env);
// Writes to path ("-" or empty for stdout); throws Error when the path is unwritable.
void emit(const ReportEnvelope& env, ReportFormat format, const std::string& path);

}  // namespace dimsob
