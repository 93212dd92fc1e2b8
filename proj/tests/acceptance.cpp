// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Every comparison is exact except the quadrature error
// bound, which is the one deliberately floating-point contract.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lo/cli.hpp"
#include "lo/instances.hpp"
#include "lo/inverse.hpp"
#include "lo/oracle.hpp"
#include "lo/suites.hpp"

using namespace lo;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const std::string& label, bool pass, double seconds,
            double budget_s, const std::string& detail = "") {
    bool in_budget = seconds <= budget_s;
    bool ok = pass && in_budget;
    if (!ok) ++g_failures;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << label
              << " (" << seconds << " s, budget " << budget_s << " s)";
    if (!pass && !detail.empty()) std::cout << " -- " << detail;
    if (!in_budget) std::cout << " -- over time budget";
    std::cout << "\n" << std::flush;
}

std::string first_note(const SuiteOutcome& s) {
    return s.failure_notes.empty() ? "" : s.failure_notes.front();
}

void criterion_oracle_equivalence() {
    Timer t;
    SuiteOutcome s = oracle_equivalence_suite(200, 101);
    report(1, "walk distributions equal brute-force enumeration (200 seeded words)",
           s.pass(), t.seconds(), 60.0, first_note(s));
}

void criterion_fourier() {
    Timer t;
    SuiteOutcome s = fourier_suite(50, 202);
    report(2, "quadrature within 1e-9 of exact point masses (50 instances)", s.pass(),
           t.seconds(), 30.0, first_note(s));
}

void criterion_extremal_identity() {
    Timer t;
    bool pass = true;
    std::string detail;
    const Rat bound = frac(20, 64);
    // exhaustive over {1,2,3}^6
    for (long a = 1; a <= 3 && pass; ++a)
        for (long b = 1; b <= 3 && pass; ++b)
            for (long c = 1; c <= 3 && pass; ++c)
                for (long d = 1; d <= 3 && pass; ++d)
                    for (long e = 1; e <= 3 && pass; ++e)
                        for (long f = 1; f <= 3 && pass; ++f) {
                            Word v{a, b, c, d, e, f};
                            Rat p = concentration(v, Density(1, 1)).value;
                            if (p > bound) {
                                pass = false;
                                detail = "bound exceeded";
                            }
                            bool all_equal = a == b && b == c && c == d && d == e && e == f;
                            if (all_equal && p != bound) {
                                pass = false;
                                detail = "equality missed on an all-equal word";
                            }
                        }
    if (concentration(all_equal_word(10, 7), Density(1, 1)).value != frac(252, 1024)) {
        pass = false;
        detail = "n=10 all-equal value wrong";
    }
    report(3, "extremal identity over {1,2,3}^6 plus the n=10 closed form", pass,
           t.seconds(), 10.0, detail);
}

void criterion_lemma31() {
    Timer t;
    SuiteOutcome s = lemma31_suite(500, 303);
    report(4, "word-calculus properties, 500 seeded cases, exact", s.pass(), t.seconds(),
           120.0, first_note(s));
}

void criterion_forward() {
    Timer t;
    SuiteOutcome s = forward_suite(100, 404);
    report(5, "forward bound with explicit constant, 100 seeded pairs", s.pass(),
           t.seconds(), 120.0, first_note(s));
}

void criterion_sandwich() {
    Timer t;
    SuiteOutcome s = sandwich_suite(200, 505);
    std::string detail = first_note(s);
    if (s.pass() && !s.ratios.empty()) {
        std::vector<Rat> sorted;
        for (const auto& r : s.ratios) sorted.push_back(r.ratio);
        std::sort(sorted.begin(), sorted.end());
        detail = "ratio p50 = " + rat_to_string(sorted[sorted.size() / 2]) +
                 ", max = " + rat_to_string(sorted.back());
        std::cout << "  intersection two-sided " << detail << "\n";
    }
    report(6, "intersection inequalities on 200 seeded GAP pairs", s.pass(), t.seconds(),
           60.0, first_note(s));
}

struct InverseCase {
    std::string label;
    Word word;
    InverseConfig cfg;
};

bool check_trace_invariants(const InverseResult& res, const InverseConfig& cfg,
                            std::string& why) {
    long proper = 0;
    for (std::size_t i = 0; i < res.trace.size(); ++i) {
        const TraceStep& s = res.trace[i];
        if (s.potential > 1) {
            why = "potential above 1 at step " + std::to_string(i);
            return false;
        }
        if (s.proper_step) ++proper;
        if (i + 1 < res.trace.size()) {
            const TraceStep& nx = res.trace[i + 1];
            if (Rat(nx.gap_cardinality) < cfg.big_k * Rat(s.gap_cardinality)) {
                why = "cardinality growth below K at step " + std::to_string(i);
                return false;
            }
        }
    }
    if (proper > cfg.d - 1) {
        why = "more than d-1 proper steps";
        return false;
    }
    if (!res.trace.empty() && res.trace.back().rank > cfg.d - 1) {
        why = "stopping rank above d-1";
        return false;
    }
    // step budget: K^steps <= k^(cap*d)
    std::size_t steps = res.trace.size() - 1;
    if (steps > 1 &&
        rpow(cfg.big_k, steps) >
            Rat(ipow(Int(cfg.k), static_cast<unsigned long>(cfg.step_cap_mult * cfg.d)))) {
        why = "termination cap exceeded";
        return false;
    }
    if (res.final_gap.rank() > static_cast<std::size_t>(cfg.d - 1)) {
        why = "final rank above d-1";
        return false;
    }
    return true;
}

void criterion_inverse_runs() {
    Timer t;
    std::vector<InverseCase> cases;
    {
        InverseCase c;
        c.label = "all_equal(100, 5)";
        c.word = all_equal_word(100, 5);
        c.cfg.d = 2;
        c.cfg.k = 5;
        c.cfg.big_k = 2;
        c.cfg.c0 = 1;
        c.cfg.mu = Density(1, 2);
        cases.push_back(c);
    }
    {
        InverseCase c;
        c.label = "ap(100)";
        c.word = ap_word(100);
        c.cfg.d = 2;
        c.cfg.k = 9;
        c.cfg.big_k = 8;
        c.cfg.c0 = Rat(1, 10);
        c.cfg.mu = Density(1, 1);
        cases.push_back(c);
    }
    {
        InverseCase c;
        c.label = "gap_sample(200) from a rank-2 GAP";
        InstanceSpec spec;
        spec.kind = InstanceKind::GapSample;
        spec.gap = Gap({Rat(3), Rat(3)}, {Int(1), Int(10)});
        spec.n = 200;
        spec.seed = 2026;
        c.word = generate_instance(spec);
        c.cfg.d = 4;
        c.cfg.k = 12;
        c.cfg.big_k = 8;
        c.cfg.c0 = 1;
        c.cfg.mu = Density(1, 2);
        cases.push_back(c);
    }

    bool pass = true;
    std::string detail;
    for (const auto& c : cases) {
        try {
            InverseResult res = run_inverse(c.word, c.cfg);
            std::string why;
            if (!check_trace_invariants(res, c.cfg, why)) {
                pass = false;
                detail = c.label + ": " + why;
                break;
            }
            VerificationReport rep = verify_result(c.word, res, c.cfg);
            if (!rep.all_passed()) {
                for (const auto& chk : rep.checks)
                    if (!chk.pass) detail = c.label + ": " + chk.name;
                pass = false;
                break;
            }
            std::cout << "  " << c.label << ": steps = " << res.trace.size() - 1
                      << ", rank = " << res.final_gap.rank() << ", C = "
                      << res.scaling.get_str() << ", contained = " << res.contained.size()
                      << ", exceptional = " << res.exceptional.size() << "\n";
        } catch (const std::exception& e) {
            pass = false;
            detail = c.label + ": " + e.what();
            break;
        }
    }
    report(7, "end-to-end inverse runs with verified trace invariants", pass, t.seconds(),
           600.0, detail);
}

void criterion_dichotomy_and_sweeps() {
    Timer t;
    SuiteOutcome dich = dichotomy_suite();
    SuiteOutcome cls = classical_suite(10, 50);
    SuiteOutcome cmpr = comparison_suite(10, 50);
    bool pass = dich.pass() && cls.pass() && cmpr.pass();
    std::string detail = first_note(dich);
    if (detail.empty()) detail = first_note(cls);
    if (detail.empty()) detail = first_note(cmpr);
    report(8, "dichotomy branches and classical/comparison ratio sweeps", pass, t.seconds(),
           300.0, detail);
}

std::string run_capture(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return std::to_string(code) + "\n" + out.str() + err.str();
}

void criterion_determinism() {
    Timer t;
    bool pass = true;
    std::string detail;
    std::vector<std::vector<std::string>> commands = {
        {"prob", "--instance", "ap", "--n", "30", "--mu", "1"},
        {"dist", "--instance", "random", "--n", "10", "--bound", "15", "--seed", "9",
         "--mu", "1/3"},
        {"verify", "lemma3.1", "--cases", "60", "--seed", "17"},
        {"verify", "sandwich", "--cases", "40", "--seed", "23"},
        {"inverse", "--instance", "all_equal", "--n", "100", "--value", "5", "--mu", "1/2",
         "--k", "5", "--K", "2", "--c0", "1"},
        {"generate", "--instance", "gap_sample", "--n", "25", "--seed", "5", "--gap",
         R"({"dims": ["3","3"], "steps": ["1","10"]})"},
    };
    for (const auto& cmd : commands) {
        std::string first = run_capture(cmd);
        std::string second = run_capture(cmd);
        if (first != second) {
            pass = false;
            detail = "output differs for: " + cmd[0];
            break;
        }
        if (first.empty() || first[0] != '0') {
            pass = false;
            detail = "command failed: " + cmd[0] + " -> " + first.substr(0, 120);
            break;
        }
    }
    // traces must be byte-identical too
    if (pass) {
        const char* path = "/tmp/lo_acceptance_trace.jsonl";
        std::vector<std::string> cmd = {"inverse", "--instance", "ap",    "--n",
                                        "50",      "--mu",       "1",     "--k",
                                        "7",       "--K",        "8",     "--c0",
                                        "1/10",    "--trace",    path};
        auto read_trace = [&]() {
            std::ifstream f(path, std::ios::binary);
            std::ostringstream buf;
            buf << f.rdbuf();
            return buf.str();
        };
        run_capture(cmd);
        std::string first = read_trace();
        run_capture(cmd);
        std::string second = read_trace();
        std::remove(path);
        if (first.empty() || first != second) {
            pass = false;
            detail = "trace files differ or are empty";
        }
    }
    report(9, "byte-identical reports and traces under identical seeds", pass, t.seconds(),
           300.0, detail);
}

} // namespace

int main() {
    std::cout << "acceptance suite\n";
    Timer total;
    criterion_oracle_equivalence();
    criterion_fourier();
    criterion_extremal_identity();
    criterion_lemma31();
    criterion_forward();
    criterion_sandwich();
    criterion_inverse_runs();
    criterion_dichotomy_and_sweeps();
    criterion_determinism();
    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT") << " ("
              << total.seconds() << " s total)\n";
    return g_failures == 0 ? 0 : 1;
}
