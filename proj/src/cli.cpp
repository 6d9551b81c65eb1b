#include "dimsob/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "dimsob/error.hpp"
#include "dimsob/harness.hpp"
#include "dimsob/oracle.hpp"
#include "dimsob/parallel.hpp"
#include "dimsob/report.hpp"

namespace dimsob {

namespace {

std::pair<int, int> parse_range(const std::string& s) {
    auto pos = s.find("..");
    try {
        if (pos == std::string::npos) {
            int n = std::stoi(s);
            return {n, n};
        }
        return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
    } catch (const std::exception&) {
        throw InvalidArgument("bad range '" + s + "' (expected A..B)");
    }
}

std::uint64_t env_seed() {
    const char* s = std::getenv("DIMSOB_SEED");
    if (!s || !*s) return 0;
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw InvalidArgument("DIMSOB_SEED is not an unsigned integer");
    }
}

// Two columns: right breakpoint, value on the step ending there. A non-numeric first line is a header.
StepProfile read_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read profile '" + path + "'");
    std::vector<WeightedSample::Entry> entries;
    std::string line;
    double prev = 0.0;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double b, v;
        if (!(ls >> b >> v)) {
            if (first) {
                first = false;
                continue;
            }
            throw InvalidArgument("profile: malformed line '" + line + "'");
        }
        first = false;
        if (!(b > prev) || b > 1.0) throw InvalidArgument("profile: breakpoints must increase within (0,1]");
        entries.push_back({v, b - prev});
        prev = b;
    }
    if (entries.empty() || std::fabs(prev - 1.0) > 1e-12) throw InvalidArgument("profile: last breakpoint must be 1");
    return decreasing_rearrangement(WeightedSample::make(std::move(entries)));
}

struct Common {
    std::string format;
    std::string out = "-";
    unsigned jobs = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", c.out, "output path, - for stdout");
    app->add_option("--jobs", c.jobs, "worker threads (default: hardware concurrency)");
    app->add_option("--seed", c.seed, "master seed (default: DIMSOB_SEED or 0)");
}

struct ExperimentFlags {
    std::string theorem = "main1";
    std::string space = "lp:2";
    std::string geometry = "ball";
    std::string family;
    std::string n_range = "2..10";
    int n = 3;
    int part = 1;
    int k = 1;
    std::size_t samples = 100000;
    std::size_t steps = 512;
    std::size_t mc_bins = 1024;
    double quad_tol = 1e-8;
};

void add_experiment(CLI::App* app, ExperimentFlags& f, bool sweep) {
    app->add_option("--theorem", f.theorem, "main1|main2|teo01|ordenk|inclusion|esfera");
    app->add_option("--space", f.space, "space: lp:P, lorentz:P,Q, lambda:EXPR, marcinkiewicz:EXPR, orlicz:NAME, xklog:BASE,K");
    app->add_option("--geometry", f.geometry, "rn|ball|sphere|cube");
    app->add_option("--family", f.family, "radial:SHAPE[+OFFSET] or tensor:MODE:SHAPE");
    if (sweep)
        app->add_option("--n-range", f.n_range, "A..B");
    else
        app->add_option("--n", f.n, "dimension");
    app->add_option("--part", f.part, "teo01: 1|2, esfera: 1|2|3");
    app->add_option("--k", f.k, "ordenk order");
    app->add_option("--samples", f.samples, "Monte Carlo samples (cube)");
    app->add_option("--steps", f.steps, "radial panel resolution");
    app->add_option("--mc-bins", f.mc_bins, "bins for Monte Carlo profiles");
    app->add_option("--quad-tol", f.quad_tol, "relative quadrature budget");
}

ExperimentConfig to_config(const ExperimentFlags& f, std::uint64_t seed) {
    ExperimentConfig c;
    c.theorem = parse_theorem(f.theorem);
    c.space = SpaceSpec::parse(f.space);
    c.geometry = parse_geometry(f.geometry);
    std::string fam = f.family;
    if (fam.empty()) fam = c.geometry == Geometry::cube ? "tensor:first:identity" : "radial:linear";
    c.family = Family::parse(fam);
    c.n = f.n;
    c.part = f.part;
    c.k = f.k;
    c.samples = f.samples;
    c.steps = f.steps;
    c.mc_bins = f.mc_bins;
    c.quad_tol = f.quad_tol;
    c.seed = seed;
    return c;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for rearrangement-invariant Sobolev inequalities"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Common common;

    auto* cons = app.add_subcommand("constants", "transference constants by dimension");
    std::string kind = "rn", n_range = "1..10";
    double curvature = 1.0;
    cons->add_option("--kind", kind, "rn|ball|sphere|manifold");
    cons->add_option("--n-range", n_range, "A..B");
    cons->add_option("--curvature", curvature, "manifold Ricci bound k > 0");
    add_common(cons, common);

    auto* norm = app.add_subcommand("norm", "norm of a profile read from a two-column CSV");
    std::string space = "lp:2", profile_path;
    norm->add_option("--space", space, "space");
    norm->add_option("--profile", profile_path, "breakpoint,value CSV")->required();
    add_common(norm, common);

    ExperimentFlags vf, sf;
    auto* ver = app.add_subcommand("verify", "verify one inequality on one configuration");
    add_experiment(ver, vf, false);
    add_common(ver, common);

    auto* sw = app.add_subcommand("sweep", "dimension sweep of the normalized left-hand side");
    add_experiment(sw, sf, true);
    add_common(sw, common);

    auto* orc = app.add_subcommand("oracle", "property suites against brute-force oracles");
    std::string suite = "1d";
    int trials = 100;
    orc->add_option("--suite", suite, "1d|2d|norms")->check(CLI::IsMember({"1d", "2d", "norms"}));
    orc->add_option("--trials", trials, "number of random cases");
    add_common(orc, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto start = std::chrono::steady_clock::now();
    ReportEnvelope env;
    for (int i = 1; i < argc; ++i) env.argv.push_back(argv[i]);
    ReportFormat format = ReportFormat::json;
    try {
        std::uint64_t seed = env_seed();
        for (auto* sub : {cons, norm, ver, sw, orc})
            if (sub->parsed() && sub->count("--seed") > 0) seed = common.seed;
        env.seed = seed;
        unsigned jobs = common.jobs == 0 ? default_jobs() : common.jobs;
        bool ok = true;

        if (cons->parsed()) {
            env.command = "constants";
            format = ReportFormat::csv;
            auto gk = parse_geometry_kind(kind);
            auto [lo, hi] = parse_range(n_range);
            if (lo < 1 || hi < lo) throw InvalidArgument("n-range must satisfy 1 <= A <= B");
            for (int n = lo; n <= hi; ++n) env.constants.push_back({to_string(gk), n, geometry_constant(gk, n, curvature)});
            env.values["limit"] = geometry_limit(gk, curvature);
        } else if (norm->parsed()) {
            env.command = "norm";
            auto X = SpaceSpec::parse(space);
            auto p = read_profile(profile_path);
            if (!p.nonnegative()) throw InvalidArgument("profile values must be non-negative");
            env.values["norm"] = ri_norm(X, p);
            env.values["fundamental_half"] = fundamental_function(X, 0.5);
        } else if (ver->parsed()) {
            env.command = "verify";
            auto c = to_config(vf, seed);
            auto rep = verify(c);
            ok = rep.pass;
            env.reports.push_back(rep);
        } else if (sw->parsed()) {
            env.command = "sweep";
            format = ReportFormat::csv;
            auto c = to_config(sf, seed);
            auto [lo, hi] = parse_range(sf.n_range);
            auto res = dimension_sweep(c, lo, hi, jobs);
            env.sweep = res.rows;
            env.values["uniform_bound"] = res.uniform_bound;
            env.values["operator_bound"] = res.operator_bound;
            ok = res.pass;
            for (const auto& r : res.rows)
                if (!r.ok) std::cerr << "n = " << r.n << ": " << r.error << "\n";
        } else if (orc->parsed()) {
            env.command = "oracle";
            if (trials < 1) throw InvalidArgument("trials must be >= 1");
            auto res = run_oracle_suite(suite, trials, seed, jobs);
            env.reports = res.reports;
            env.summary_values["passed"] = res.passed;
            env.summary_values["total"] = res.total;
            ok = res.passed == res.total;
            std::cerr << "oracle " << suite << ": " << res.passed << "/" << res.total << " passed\n";
        }

        env.total = int(env.reports.size());
        for (const auto& r : env.reports) env.passed += r.pass ? 1 : 0;
        if (!common.format.empty()) format = common.format == "csv" ? ReportFormat::csv : ReportFormat::json;
        env.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        emit(env, format, common.out);
        return ok ? 0 : 1;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace dimsob
