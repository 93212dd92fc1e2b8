#include "lo/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "lo/errors.hpp"
#include "lo/report.hpp"
#include "lo/suites.hpp"

namespace lo {

namespace {

struct CommonOptions {
    std::string out_path;    // empty: stdout
    std::string trace_path;  // empty: no trace
    bool timing = false;     // excluded by default so reports are byte-stable
};

struct InstanceOptions {
    std::string kind = "ap";
    std::size_t n = 0;
    std::string value = "1";
    std::string bound = "10";
    std::uint64_t seed = 0;
    std::string gap_literal;  // JSON, for gap-sample instances
    std::string in_path;      // instance file overrides the generator
};

Word load_instance(const InstanceOptions& io, std::optional<Density>& file_mu,
                   const Limits& limits) {
    if (!io.in_path.empty()) {
        std::ifstream in(io.in_path);
        if (!in) throw DomainError("cannot open instance file " + io.in_path);
        Json j = Json::parse(in);
        ParsedInstance parsed = instance_from_json(j);
        file_mu = parsed.mu;
        return parsed.word;
    }
    InstanceSpec spec;
    spec.kind = instance_kind_from_string(io.kind);
    spec.n = io.n;
    spec.value = Int(io.value);
    spec.bound = Int(io.bound);
    spec.seed = io.seed;
    if (spec.kind == InstanceKind::GapSample) {
        if (io.gap_literal.empty())
            throw DomainError("gap-sample instances need --gap '<json>'");
        spec.gap = gap_from_json(Json::parse(io.gap_literal));
    }
    return generate_instance(spec, limits);
}

void add_instance_options(CLI::App* cmd, InstanceOptions& io) {
    cmd->add_option("--instance", io.kind,
                    "instance family: all_equal | ap | dissociated | gap_sample | random");
    cmd->add_option("--n", io.n, "instance length");
    cmd->add_option("--value", io.value, "step value for all_equal");
    cmd->add_option("--bound", io.bound, "magnitude bound for random instances");
    cmd->add_option("--seed", io.seed, "generator seed");
    cmd->add_option("--gap", io.gap_literal, "GAP literal for gap_sample");
    cmd->add_option("--in", io.in_path, "instance JSON file ({\"steps\":[...],\"mu\":\"p/q\"})");
}

void add_config_options(CLI::App* cmd, InverseConfig& cfg, std::string& mu_str) {
    cmd->add_option("--mu", mu_str, "step density p/q in (0,1]");
    cmd->add_option("--d", cfg.d, "rank parameter d");
    cmd->add_option("--k", cfg.k, "growth parameter k");
    auto rat_opt = [cmd](const std::string& name, Rat& target, const std::string& help) {
        cmd->add_option_function<std::string>(
            name, [&target](const std::string& s) { target = rat_from_string(s); }, help);
    };
    rat_opt("--K", cfg.big_k, "badness threshold K");
    rat_opt("--c0", cfg.c0, "precondition constant C0");
    rat_opt("--eps", cfg.eps, "volume exponent epsilon");
    rat_opt("--slack", cfg.slack, "analysis slack multiplier");
    rat_opt("--c-min", cfg.c_min, "per-step comparison floor");
    rat_opt("--embed-budget", cfg.embed_budget, "embedding cardinality ratio budget");
    cmd->add_option("--step-cap", cfg.step_cap_mult, "iteration budget multiplier");
    cmd->add_option("--a-max", cfg.a_max, "progression step search cap");
    cmd->add_option("--m-max", cfg.m_max, "iterated sumset search cap");
    cmd->add_option("--l-min-div", cfg.l_min_div, "minimum progression length divisor");
    cmd->add_option_function<std::string>(
        "--c-max", [&cfg](const std::string& s) { cfg.c_max = Int(s); }, "scaling cap");
    cmd->add_option("--guard", cfg.limits.enum_guard, "enumeration guard");
    cmd->add_option("--support-cap", cfg.limits.support_cap, "walk support cap");
}

void emit(const Json& report, const CommonOptions& common, std::ostream& out) {
    std::string text = report.dump(2);
    text += '\n';
    if (common.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(common.out_path, std::ios::binary);
        if (!f) throw DomainError("cannot open output file " + common.out_path);
        f << text;
    }
}

void emit_trace(const std::vector<TraceStep>& trace, const CommonOptions& common) {
    if (common.trace_path.empty() || trace.empty()) return;
    std::ofstream f(common.trace_path, std::ios::binary);
    if (!f) throw DomainError("cannot open trace file " + common.trace_path);
    f << trace_to_jsonl(trace);
}

Json make_report(const std::vector<std::string>& args, const InverseConfig& cfg,
                 Json results, std::size_t checks, std::size_t failures,
                 Json ratio_records = Json::array()) {
    return Json{{"command", args},
                {"config", config_to_json(cfg)},
                {"results", std::move(results)},
                {"ratio_records", std::move(ratio_records)},
                {"summary",
                 Json{{"pass", failures == 0}, {"checks", checks}, {"failures", failures}}}};
}

Json suite_to_json(const SuiteOutcome& s) {
    Json ratios = Json::array();
    for (const auto& r : s.ratios) ratios.push_back(ratio_record_to_json(r));
    // ratio percentiles, exact order statistics over the recorded ratios
    Json percentiles;
    if (!s.ratios.empty()) {
        std::vector<Rat> sorted;
        for (const auto& r : s.ratios) sorted.push_back(r.ratio);
        std::sort(sorted.begin(), sorted.end());
        auto pick = [&](std::size_t num, std::size_t den) {
            return rat_to_string(sorted[num * (sorted.size() - 1) / den]);
        };
        percentiles = Json{{"p50", pick(1, 2)}, {"p90", pick(9, 10)}, {"max", pick(1, 1)}};
    }
    Json j{{"suite", s.name},
           {"cases", s.cases},
           {"failures", s.failures},
           {"pass", s.pass()},
           {"failure_notes", s.failure_notes}};
    if (!s.ratios.empty()) {
        j["ratio_percentiles"] = percentiles;
        j["ratios"] = ratios;
    }
    if (s.max_abs_error > 0.0)
        j["quadrature"] = Json{{"max_abs_error", s.max_abs_error}, {"approximate", true}};
    return j;
}

void emit_ratio_jsonl(const std::vector<RatioRecord>& ratios, const std::string& path) {
    if (path.empty() || ratios.empty()) return;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open trace file " + path);
    for (const auto& r : ratios) f << ratio_record_to_json(r).dump() << '\n';
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact concentration and inverse-structure toolkit for integer walks"};
    app.set_config("--config", "", "TOML-style key = value configuration file");
    app.fallthrough();

    InverseConfig cfg;
    std::string mu_str = "1/2";
    CommonOptions common;
    InstanceOptions io;

    if (const char* guard_env = std::getenv("LO_GUARD")) {
        cfg.limits.enum_guard = std::strtoull(guard_env, nullptr, 10);
    }

    app.add_option("--out", common.out_path, "write the report JSON here instead of stdout");
    app.add_option("--trace", common.trace_path, "write trace JSONL here");
    app.add_flag("--timing", common.timing,
                 "include wall-clock timing (reports are then not byte-stable)");

    // prob: exact concentration probability
    auto* prob = app.add_subcommand("prob", "exact concentration probability of an instance");
    add_instance_options(prob, io);
    add_config_options(prob, cfg, mu_str);

    // dist: full walk distribution
    auto* dist = app.add_subcommand("dist", "exact walk distribution of an instance");
    add_instance_options(dist, io);
    add_config_options(dist, cfg, mu_str);

    // gap tools
    auto* gap_cmd = app.add_subcommand("gap", "GAP inspection tools");
    std::string gap_literal;
    std::string gap_mode = "metrics";
    std::string gap_t = "1";
    std::string bad_x;
    gap_cmd->add_option("mode", gap_mode, "metrics | check | embed");
    gap_cmd->add_option("--gap", gap_literal, "GAP literal JSON")->required();
    gap_cmd->add_option("--t", gap_t, "dilation parameter t");
    gap_cmd->add_option("--x", bad_x, "element to test for badness (mode check)");
    add_config_options(gap_cmd, cfg, mu_str);

    // inverse
    auto* inv = app.add_subcommand("inverse", "run the GAP-growing inverse algorithm");
    add_instance_options(inv, io);
    add_config_options(inv, cfg, mu_str);

    // strong-inverse
    auto* sinv = app.add_subcommand("strong-inverse",
                                    "inverse run with parameters derived from the exponent");
    std::string a_str = "1";
    std::string s_eps_str = "1/10";
    sinv->add_option("--A", a_str, "concentration exponent A (rational)");
    sinv->add_option("--s-eps", s_eps_str, "exponent slack epsilon (rational, < 1/2)");
    add_instance_options(sinv, io);
    add_config_options(sinv, cfg, mu_str);

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite_name;
    std::size_t suite_cases = 100;
    std::uint64_t suite_seed = 1;
    verify->add_option("suite", suite_name,
                       "lemma3.1 | sandwich | forward | halasz | classical | comparison | "
                       "dichotomy | oracle | fourier")
        ->required();
    verify->add_option("--cases", suite_cases, "number of random cases");
    verify->add_option("--seed", suite_seed, "suite seed");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "ratio sweeps over an instance range");
    std::string sweep_suite = "classical";
    std::size_t sweep_from = 10, sweep_to = 50;
    sweep->add_option("suite", sweep_suite, "classical | comparison");
    sweep->add_option("--n-from", sweep_from, "first instance size");
    sweep->add_option("--n-to", sweep_to, "last instance size");

    // generate
    auto* gen = app.add_subcommand("generate", "emit an instance file");
    std::string instance_out;
    gen->add_option("--instance-out", instance_out,
                    "also write the bare instance JSON ({\"steps\":...,\"mu\":...}) here");
    add_instance_options(gen, io);
    add_config_options(gen, cfg, mu_str);

    app.require_subcommand(1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help and friends
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        Density mu(rat_from_string(mu_str));
        cfg.mu = mu;
        std::optional<Density> file_mu;
        Json report;
        std::vector<TraceStep> trace;

        if (prob->parsed()) {
            Word v = load_instance(io, file_mu, cfg.limits);
            if (file_mu) cfg.mu = *file_mu;
            ConcentrationResult r = concentration(v, cfg.mu, cfg.limits);
            report = make_report(args, cfg, Json{{"concentration", concentration_to_json(r)}},
                                 0, 0);
        } else if (dist->parsed()) {
            Word v = load_instance(io, file_mu, cfg.limits);
            if (file_mu) cfg.mu = *file_mu;
            WalkDistribution d = walk_distribution(v, cfg.mu, cfg.limits);
            report = make_report(args, cfg,
                                 Json{{"distribution", walk_distribution_to_json(d)}}, 0, 0);
        } else if (gap_cmd->parsed()) {
            Gap q = gap_from_json(Json::parse(gap_literal));
            Rat t = rat_from_string(gap_t);
            Json results;
            std::size_t failures = 0;
            if (gap_mode == "metrics") {
                GapMetrics m = gap_metrics(q, t, cfg.limits);
                ElementSet e = enumerate_gap(q, cfg.limits);
                results = Json{{"volume", m.volume.get_str()},
                               {"cardinality", e.size()},
                               {"proper", m.proper},
                               {"t_proper", m.t_proper}};
                if (e.size() <= 100'000) results["elements"] = element_set_to_json(e);
            } else if (gap_mode == "check") {
                if (bad_x.empty()) throw DomainError("gap check needs --x");
                bool bad = is_bad(Int(bad_x), q, Int(cfg.k), cfg.big_k, cfg.limits);
                results = Json{{"x", bad_x}, {"bad", bad}};
            } else if (gap_mode == "embed") {
                Int t_int = ceil_rat(t);
                EmbedResult e = embed_proper(q, t_int, cfg.embed_budget, cfg.limits);
                results = Json{{"gap", gap_to_json(e.gap)},
                               {"cardinality_ratio", rat_to_string(e.cardinality_ratio)},
                               {"rank_dropped", e.rank_dropped},
                               {"was_t_proper", e.was_t_proper}};
            } else {
                throw DomainError("unknown gap mode: " + gap_mode);
            }
            report = make_report(args, cfg, results, gap_mode == "metrics" ? 1 : 0, failures);
        } else if (inv->parsed()) {
            Word v = load_instance(io, file_mu, cfg.limits);
            if (file_mu) cfg.mu = *file_mu;
            InverseResult r = run_inverse(v, cfg);
            VerificationReport check = verify_result(v, r, cfg);
            trace = r.trace;
            std::size_t failures = 0;
            for (const auto& c : check.checks)
                if (!c.pass) ++failures;
            report = make_report(args, cfg,
                                 Json{{"inverse", inverse_result_to_json(r)},
                                      {"verify", verification_to_json(check)}},
                                 check.checks.size(), failures);
        } else if (sinv->parsed()) {
            Word v = load_instance(io, file_mu, cfg.limits);
            if (file_mu) cfg.mu = *file_mu;
            Rat s_eps = rat_from_string(s_eps_str);
            StrongInverseResult r =
                strong_inverse(v, rat_from_string(a_str), s_eps, cfg.mu, cfg);
            trace = r.base.trace;
            InverseConfig effective = cfg;
            effective.d = r.d;
            effective.k = r.k;
            effective.eps = s_eps;
            VerificationReport check = verify_result(v, r.base, effective);
            std::size_t failures = 0;
            for (const auto& c : r.base.verification.checks)
                if (!c.pass) ++failures;
            for (const auto& c : check.checks)
                if (!c.pass) ++failures;
            report = make_report(args, cfg,
                                 Json{{"strong_inverse", strong_inverse_result_to_json(r)},
                                      {"verify", verification_to_json(check)}},
                                 r.base.verification.checks.size() + check.checks.size(),
                                 failures);
        } else if (verify->parsed()) {
            SuiteOutcome s = run_suite_by_name(suite_name, suite_cases, suite_seed);
            Json ratios = Json::array();
            for (const auto& rr : s.ratios) ratios.push_back(ratio_record_to_json(rr));
            report = make_report(args, cfg, suite_to_json(s), s.cases, s.failures, ratios);
            emit_ratio_jsonl(s.ratios, common.trace_path);
        } else if (sweep->parsed()) {
            SuiteOutcome s;
            if (sweep_suite == "classical") {
                s = classical_suite(sweep_from, sweep_to);
            } else if (sweep_suite == "comparison") {
                s = comparison_suite(sweep_from, sweep_to);
            } else {
                throw DomainError("unknown sweep suite: " + sweep_suite);
            }
            Json ratios = Json::array();
            for (const auto& rr : s.ratios) ratios.push_back(ratio_record_to_json(rr));
            report = make_report(args, cfg, suite_to_json(s), s.cases, s.failures, ratios);
            emit_ratio_jsonl(s.ratios, common.trace_path);
        } else if (gen->parsed()) {
            Word v = load_instance(io, file_mu, cfg.limits);
            Json instance = instance_to_json(v, cfg.mu);
            if (!instance_out.empty()) {
                std::ofstream f(instance_out, std::ios::binary);
                if (!f) throw DomainError("cannot open instance file " + instance_out);
                f << instance.dump(2) << '\n';
            }
            report = make_report(args, cfg, Json{{"instance", std::move(instance)}}, 0, 0);
        }

        if (common.timing) {
            auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - started)
                               .count();
            report["timing"] = Json{{"elapsed_ms", elapsed}};
        }
        emit(report, common, out);
        emit_trace(trace, common);
        bool pass = report.at("summary").at("pass").get<bool>();
        return pass ? 0 : 1;
    } catch (const ResourceError& e) {
        err << "resource guard: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        err << "search budget: " << e.what() << " (failed postcondition: "
            << e.failed_postcondition << ")\n";
        return 1;
    } catch (const CheckError& e) {
        err << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const Json::exception& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace lo
