// Seeded verification drivers: each one runs a family of exact checks and
// returns a structured outcome.  The CLI `verify` and `sweep` commands and
// the acceptance suite are thin wrappers around these.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lo/limits.hpp"
#include "lo/numeric.hpp"
#include "lo/oracle.hpp"

namespace lo {

struct SuiteOutcome {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> failure_notes;
    std::vector<RatioRecord> ratios;
    double max_abs_error = 0.0;  // quadrature suites only; flagged approximate

    bool pass() const { return failures == 0; }
    void fail(std::string note) {
        ++failures;
        if (failure_notes.size() < 16) failure_notes.push_back(std::move(note));
    }
};

// walk_distribution against the exhaustive 3^n enumeration; words with
// n <= 12, entries in [-20, 20], densities in {1, 1/2, 1/3}
SuiteOutcome oracle_equivalence_suite(std::size_t cases, std::uint64_t seed);

// quadrature against the exact point mass, 2^16 nodes, |error| <= 1e-9
SuiteOutcome fourier_suite(std::size_t cases, std::uint64_t seed);

// all six word-calculus properties plus the crude bound, exactly
SuiteOutcome lemma31_suite(std::size_t cases, std::uint64_t seed);

// forward bound with the explicit constant on sampled (Q, v) pairs
SuiteOutcome forward_suite(std::size_t cases, std::uint64_t seed);

// both proof-level intersection inequalities on random GAP pairs;
// the two-sided ratios are recorded for the report
SuiteOutcome sandwich_suite(std::size_t cases, std::uint64_t seed);

// relation-count invariances and the ratio trend against the concentration
SuiteOutcome halasz_suite(std::size_t cases, std::uint64_t seed);

// central-binomial bound, equality on all-equal words, and the
// distinct-entries ratio trend over ap(n), n in [n_from, n_to]
SuiteOutcome classical_suite(std::size_t n_from, std::size_t n_to);

// random-walk comparison ratio trend over ap(n)
SuiteOutcome comparison_suite(std::size_t n_from, std::size_t n_to);

// progression dichotomy on the named families
SuiteOutcome dichotomy_suite();

SuiteOutcome run_suite_by_name(const std::string& name, std::size_t cases,
                               std::uint64_t seed);

} // namespace lo
