#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "yuleperc/analytics.hpp"
#include "yuleperc/report_io.hpp"
#include "yuleperc/stats.hpp"
#include "yuleperc/verify.hpp"
#include "yuleperc/version.hpp"

namespace {

using namespace yuleperc;

// Flag values shared by the subcommands.  Presence of optional flags is
// read back through CLI11 option counts.
struct Args {
    std::string regime = "bounded";
    std::uint64_t n = 0;
    std::uint64_t ell = 1;
    double a = 1.0;
    double lambda = 1.0;
    double b = 0.0;
    double gamma = 0.5;
    double p = 0.1;
    std::uint64_t x = 2;
    std::string stat = "count_exceeding:2";
    std::uint64_t replicates = 10000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string sampler = "chain";
    std::string format = "json";
    std::string out;
    std::string report_path = "report.json";
    std::string csv_path;
    std::string grid;
    std::string scenario;
};

Regime make_regime(const Args& args) {
    if (args.regime == "bounded")
        return BoundedRegime{args.ell, args.a};
    if (args.regime == "critical")
        return CriticalRegime{args.a};
    if (args.regime == "intermediate" || args.regime == "intermediate:loglog")
        return IntermediateRegime{Schedule::LogLogOverLog};
    if (args.regime == "intermediate:power")
        return IntermediateRegime{Schedule::Power, args.gamma};
    return ExplicitRegime{args.p};
}

// "count_exceeding:X" (alias "exceed:X"), "count_equal:L" (alias
// "equal:L"), "largest", "root_cluster" (alias "root"), "tau".
std::optional<Statistic> parse_statistic(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    std::uint64_t value = 0;
    if (colon != std::string::npos) {
        try {
            size_t used = 0;
            const std::string tail = text.substr(colon + 1);
            value = std::stoull(tail, &used);
            if (used != tail.size())
                return std::nullopt;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (head == "count_exceeding" || head == "exceed")
        return colon == std::string::npos ? std::nullopt
                                          : std::optional<Statistic>(
                                                StatCountExceeding{value});
    if (head == "count_equal" || head == "equal")
        return colon == std::string::npos
                   ? std::nullopt
                   : std::optional<Statistic>(StatCountEqual{value});
    if (colon != std::string::npos)
        return std::nullopt;
    if (head == "largest")
        return Statistic{StatLargest{}};
    if (head == "root_cluster" || head == "root")
        return Statistic{StatRootCluster{}};
    if (head == "tau")
        return Statistic{StatTauRescaled{}};
    return std::nullopt;
}

RunManifest make_manifest(const std::string& command,
                          std::vector<std::pair<std::string, std::string>>
                              parameters,
                          std::uint64_t seed) {
    RunManifest manifest;
    manifest.command = command;
    manifest.parameters = std::move(parameters);
    manifest.version = YULEPERC_VERSION;
    manifest.master_seed = seed;
    manifest.timestamp = iso8601_utc_now();
    return manifest;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

int run_predict(const Args& args, const CLI::App& sub) {
    const Regime regime = make_regime(args);
    const std::optional<double> p_override =
        sub.count("--p") && args.regime != "explicit"
            ? std::optional<double>(args.p)
            : std::nullopt;
    std::optional<double> b;
    if (sub.count("--b"))
        b = args.b;
    else if (std::holds_alternative<CriticalRegime>(regime)) {
        // Default to the fractional part of the real threshold, the
        // subsequence the finite n at hand actually sits on.
        const double y = threshold_y(args.n, args.a, args.lambda);
        b = y - std::floor(y);
    }
    const Prediction prediction =
        predict(regime, args.n, args.lambda, b, p_override);

    std::vector<std::pair<std::string, std::string>> echo{
        {"regime", args.regime}, {"n", std::to_string(args.n)}};
    if (args.regime == "bounded") {
        echo.emplace_back("ell", std::to_string(args.ell));
        echo.emplace_back("a", format_double(args.a));
    }
    if (args.regime == "critical")
        echo.emplace_back("a", format_double(args.a));
    if (args.regime == "intermediate:power")
        echo.emplace_back("gamma", format_double(args.gamma));
    echo.emplace_back("lambda", format_double(args.lambda));
    if (b)
        echo.emplace_back("b", format_double(*b));
    if (sub.count("--p"))
        echo.emplace_back("p", format_double(args.p));
    echo.emplace_back("format", args.format);

    RunManifest manifest = make_manifest("predict", std::move(echo), 0);
    manifest.outputs = {args.out.empty() ? "-" : args.out};
    if (args.format == "csv") {
        emit(prediction_csv(prediction, manifest), args.out);
    } else {
        emit(prediction_document(prediction, manifest).dump(2) + "\n",
             args.out);
    }
    return 0;
}

int run_simulate(const Args& args) {
    const std::optional<Statistic> statistic = parse_statistic(args.stat);
    if (!statistic) {
        std::cerr << "error: unknown statistic '" << args.stat << "'\n";
        return 2;
    }
    if (args.sampler != "chain" && args.sampler != "rrt") {
        std::cerr << "error: unknown sampler '" << args.sampler << "'\n";
        return 2;
    }

    McConfig config;
    config.n = args.n;
    config.p = args.p;
    config.statistic = *statistic;
    config.replicates = args.replicates;
    config.master_seed = args.seed;
    config.threads = args.threads;
    config.sampler = args.sampler == "rrt" ? SamplerKind::RrtPercolation
                                           : SamplerKind::JumpChain;
    if (std::holds_alternative<StatTauRescaled>(*statistic))
        config.references.ks_exp1 = true;
    const McReport report = run_mc(config);

    RunManifest manifest = make_manifest(
        "simulate",
        {{"n", std::to_string(args.n)},
         {"p", format_double(args.p)},
         {"stat", statistic_name(*statistic)},
         {"reps", std::to_string(args.replicates)},
         {"seed", std::to_string(args.seed)},
         {"threads", std::to_string(args.threads)},
         {"sampler", args.sampler}},
        args.seed);
    manifest.outputs = {args.report_path};
    if (!args.csv_path.empty())
        manifest.outputs.push_back(args.csv_path);

    write_text_file(args.report_path,
                    report_document(report, manifest).dump(2) + "\n");
    if (!args.csv_path.empty())
        write_text_file(args.csv_path, replicates_csv(report, manifest));

    std::cout << "wrote " << args.report_path << " (mean="
              << format_double(report.mean) << ", replicates="
              << args.replicates << ")\n";
    return 0;
}

int run_verify(const Args& args, const CLI::App& sub) {
    const bool has_n = sub.count("--n") > 0;
    const bool has_p = sub.count("--p") > 0;
    const bool has_reps = sub.count("--reps") > 0;
    const bool has_seed = sub.count("--seed") > 0;

    ScenarioReport report;
    if (args.scenario == "bounded") {
        BoundedOptions opt;
        if (sub.count("--ell"))
            opt.ell = args.ell;
        if (sub.count("--a"))
            opt.a = args.a;
        if (has_n)
            opt.n = args.n;
        if (has_reps)
            opt.replicates = args.replicates;
        if (has_seed)
            opt.master_seed = args.seed;
        opt.threads = args.threads;
        report = verify_bounded(opt);
    } else if (args.scenario == "critical") {
        CriticalOptions opt;
        if (sub.count("--a"))
            opt.a = args.a;
        if (has_n)
            opt.n = args.n;
        if (has_reps)
            opt.replicates = args.replicates;
        if (has_seed)
            opt.master_seed = args.seed;
        opt.threads = args.threads;
        report = verify_critical(opt);
    } else if (args.scenario == "intermediate") {
        IntermediateOptions opt;
        if (sub.count("--lambda"))
            opt.lambda = args.lambda;
        if (has_n)
            opt.n = args.n;
        if (has_reps)
            opt.replicates = args.replicates;
        if (has_seed)
            opt.master_seed = args.seed;
        opt.threads = args.threads;
        report = verify_intermediate(opt);
    } else if (args.scenario == "divergence") {
        DivergenceOptions opt;
        if (sub.count("--ell"))
            opt.ell = args.ell;
        if (sub.count("--a"))
            opt.a = args.a;
        if (has_reps)
            opt.replicates = args.replicates;
        if (has_seed)
            opt.master_seed = args.seed;
        opt.threads = args.threads;
        report = verify_divergence(opt);
    } else if (args.scenario == "sandwich") {
        SandwichOptions opt;
        if (sub.count("--ell"))
            opt.ell = args.ell;
        if (sub.count("--a"))
            opt.a = args.a;
        if (has_n)
            opt.n = args.n;
        report = verify_sandwich(opt);
    } else if (args.scenario == "main-term-identity") {
        report = verify_main_term_identity();
    } else if (args.scenario == "stirling") {
        report = verify_stirling();
    } else if (args.scenario == "ancestral") {
        AncestralOptions opt;
        if (has_n)
            opt.mc_n = args.n;
        if (has_p)
            opt.mc_p = args.p;
        if (has_reps)
            opt.replicates = args.replicates;
        if (has_seed)
            opt.master_seed = args.seed;
        opt.threads = args.threads;
        report = verify_ancestral(opt);
    } else if (args.scenario == "tau") {
        TauOptions opt;
        if (has_n)
            opt.n = args.n;
        if (has_reps)
            opt.replicates = args.replicates;
        if (has_seed)
            opt.master_seed = args.seed;
        opt.threads = args.threads;
        report = verify_tau(opt);
    } else if (args.scenario == "lecam") {
        LecamOptions opt;
        if (has_reps)
            opt.vectors = args.replicates;
        if (has_seed)
            opt.master_seed = args.seed;
        report = verify_lecam(opt);
    } else { // oracle-equivalence, guarded by the flag validator
        OracleEquivalenceOptions opt;
        if (has_n)
            opt.n = args.n;
        if (has_p)
            opt.p = args.p;
        if (sub.count("--x"))
            opt.x = args.x;
        if (has_reps)
            opt.replicates = args.replicates;
        if (has_seed)
            opt.master_seed = args.seed;
        opt.threads = args.threads;
        report = verify_oracle_equivalence(opt);
    }
    print_report(std::cout, report);
    return report.all_passed() ? 0 : 1;
}

int run_sweep(const Args& args, const CLI::App& sub) {
    // --grid log:LO:HI:COUNT, geometric spacing rounded to integers.
    std::vector<std::string> parts;
    {
        std::string token;
        for (const char c : args.grid) {
            if (c == ':') {
                parts.push_back(token);
                token.clear();
            } else {
                token += c;
            }
        }
        parts.push_back(token);
    }
    std::uint64_t count = 0;
    double lo = 0.0;
    double hi = 0.0;
    bool ok = parts.size() == 4 && parts[0] == "log";
    if (ok) {
        try {
            lo = std::stod(parts[1]);
            hi = std::stod(parts[2]);
            count = std::stoull(parts[3]);
        } catch (const std::exception&) {
            ok = false;
        }
    }
    if (!ok || !(lo >= 2.0) || !(hi >= lo)) {
        std::cerr << "error: --grid expects log:LO:HI:COUNT with 2 <= LO <= HI\n";
        return 2;
    }
    if (count == 0) {
        std::cerr << "error: empty grid\n";
        return 2;
    }

    std::vector<std::uint64_t> ns;
    for (std::uint64_t i = 0; i < count; ++i) {
        const double t =
            count == 1 ? 0.0
                       : static_cast<double>(i) / static_cast<double>(count - 1);
        const double value =
            std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
        const auto n = static_cast<std::uint64_t>(std::llround(value));
        if (ns.empty() || ns.back() != n)
            ns.push_back(n);
    }

    std::optional<Statistic> stat_override;
    if (sub.count("--stat")) {
        stat_override = parse_statistic(args.stat);
        if (!stat_override) {
            std::cerr << "error: unknown statistic '" << args.stat << "'\n";
            return 2;
        }
        if (std::holds_alternative<StatTauRescaled>(*stat_override)) {
            std::cerr << "error: sweep needs an integer-valued statistic\n";
            return 2;
        }
    }

    const Regime regime = make_regime(args);
    std::vector<SweepRow> rows;
    for (const std::uint64_t n : ns) {
        std::optional<double> b;
        if (std::holds_alternative<CriticalRegime>(regime)) {
            const double y = threshold_y(n, args.a, args.lambda);
            b = y - std::floor(y);
        }
        const Prediction pred = predict(regime, n, args.lambda, b);
        McConfig config;
        config.n = n;
        config.p = pred.p;
        config.statistic = stat_override
                               ? *stat_override
                               : Statistic{StatCountExceeding{pred.threshold}};
        config.replicates = args.replicates;
        config.master_seed = args.seed;
        config.threads = args.threads;
        config.references.poisson_lambda = pred.intensity;
        const McReport mc = run_mc(config);
        rows.push_back(SweepRow{n, pred.p, pred.threshold, pred.intensity,
                                mc.mean, mc.distances.at("tv_poisson")});
    }

    RunManifest manifest = make_manifest(
        "sweep",
        {{"regime", args.regime},
         {"grid", args.grid},
         {"stat", stat_override ? statistic_name(*stat_override)
                                : std::string("count_exceeding:<threshold>")},
         {"lambda", format_double(args.lambda)},
         {"reps", std::to_string(args.replicates)},
         {"seed", std::to_string(args.seed)},
         {"threads", std::to_string(args.threads)}},
        args.seed);
    manifest.outputs = {args.out.empty() ? "-" : args.out};
    emit(sweep_csv(rows, manifest), args.out);
    if (!args.out.empty())
        std::cout << "wrote " << args.out << " (" << rows.size()
                  << " grid points)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Args args;
    CLI::App app{"Yule process with neutral mutations: cluster-count "
                 "predictions, Monte Carlo simulation, verification"};
    app.require_subcommand(1);

    const std::vector<std::string> regimes{"bounded", "critical",
                                           "intermediate",
                                           "intermediate:loglog",
                                           "intermediate:power", "explicit"};

    CLI::App* predict_cmd =
        app.add_subcommand("predict", "Closed-form prediction for a regime");
    predict_cmd->add_option("--regime", args.regime, "Mutation schedule")
        ->required()
        ->check(CLI::IsMember(regimes));
    predict_cmd->add_option("--n", args.n, "Population size")->required();
    predict_cmd->add_option("--ell", args.ell, "Bounded regime size ell");
    predict_cmd->add_option("--a", args.a, "Schedule constant a");
    predict_cmd->add_option("--lambda", args.lambda, "Target intensity");
    predict_cmd->add_option("--b", args.b,
                            "Critical fractional part (default {y_n})");
    predict_cmd->add_option("--gamma", args.gamma,
                            "Exponent for intermediate:power");
    predict_cmd->add_option("--p", args.p,
                            "Explicit clone probability (overrides the "
                            "schedule)");
    predict_cmd->add_option("--format", args.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    predict_cmd->add_option("--out", args.out, "Write here instead of stdout");

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Monte Carlo run of one statistic");
    simulate_cmd->add_option("--n", args.n, "Population size")->required();
    simulate_cmd->add_option("--p", args.p, "Clone probability")->required();
    simulate_cmd->add_option(
        "--stat", args.stat,
        "exceed:X | equal:L | largest | root | tau");
    simulate_cmd->add_option("--reps", args.replicates, "Replicates");
    simulate_cmd->add_option("--seed", args.seed, "Master seed");
    simulate_cmd->add_option("--threads", args.threads,
                             "Worker threads (0 = auto)");
    simulate_cmd->add_option("--sampler", args.sampler, "chain or rrt");
    simulate_cmd->add_option("--report", args.report_path,
                             "Report JSON path");
    simulate_cmd->add_option("--csv", args.csv_path,
                             "Optional per-replicate CSV path");

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Check one verification scenario, exit 0 iff it passes");
    verify_cmd
        ->add_option("scenario", args.scenario,
                     "bounded | critical | intermediate | divergence | "
                     "sandwich | ancestral | tau | lecam | "
                     "oracle-equivalence | main-term-identity | stirling")
        ->required()
        ->check(CLI::IsMember({"bounded", "critical", "intermediate",
                               "divergence", "sandwich", "ancestral", "tau",
                               "lecam", "oracle-equivalence",
                               "main-term-identity", "stirling"}));
    verify_cmd->add_option("--n", args.n, "Population size");
    verify_cmd->add_option("--p", args.p, "Clone probability");
    verify_cmd->add_option("--x", args.x, "Count threshold");
    verify_cmd->add_option("--ell", args.ell, "Bounded regime size ell");
    verify_cmd->add_option("--a", args.a, "Schedule constant a");
    verify_cmd->add_option("--lambda", args.lambda, "Target intensity");
    verify_cmd->add_option("--reps", args.replicates,
                           "Replicates (lecam: number of q-vectors)");
    verify_cmd->add_option("--seed", args.seed, "Master seed");
    verify_cmd->add_option("--threads", args.threads,
                           "Worker threads (0 = auto)");

    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Prediction vs simulation over a grid of n, CSV output");
    sweep_cmd->add_option("--regime", args.regime, "Mutation schedule")
        ->required()
        ->check(CLI::IsMember(regimes));
    sweep_cmd->add_option("--grid", args.grid, "log:LO:HI:COUNT")->required();
    sweep_cmd->add_option("--ell", args.ell, "Bounded regime size ell");
    sweep_cmd->add_option("--a", args.a, "Schedule constant a");
    sweep_cmd->add_option("--lambda", args.lambda, "Target intensity");
    sweep_cmd->add_option("--gamma", args.gamma,
                          "Exponent for intermediate:power");
    sweep_cmd->add_option("--p", args.p,
                          "Clone probability for --regime explicit");
    sweep_cmd->add_option("--stat", args.stat,
                          "Statistic override (default exceed:threshold)");
    sweep_cmd->add_option("--reps", args.replicates, "Replicates per point");
    sweep_cmd->add_option("--seed", args.seed, "Master seed");
    sweep_cmd->add_option("--threads", args.threads,
                          "Worker threads (0 = auto)");
    sweep_cmd->add_option("--out", args.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (predict_cmd->parsed())
            return run_predict(args, *predict_cmd);
        if (simulate_cmd->parsed())
            return run_simulate(args);
        if (verify_cmd->parsed())
            return run_verify(args, *verify_cmd);
        if (sweep_cmd->parsed())
            return run_sweep(args, *sweep_cmd);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
