#pragma once

#include <stdexcept>
#include <string>

namespace lo {

// Violated precondition (bad inputs, unmet hypotheses).  Messages carry the
// exact offending quantities as decimal strings.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A configured guard (support cap, enumeration guard, pair guard) tripped.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A bounded search (proper embedding, certificate search) ran out of budget.
// carries which postcondition could not be met by the best candidate.
struct BudgetError : std::runtime_error {
    std::string failed_postcondition;
    std::string best_candidate;
    BudgetError(const std::string& what, std::string post, std::string cand)
        : std::runtime_error(what),
          failed_postcondition(std::move(post)),
          best_candidate(std::move(cand)) {}
};

// A runtime-checked identity or inequality that is a theorem failed; this is
// either a bug or a falsified claim, and both must stop the run.
struct CheckError : std::logic_error {
    explicit CheckError(const std::string& what) : std::logic_error(what) {}
};

} // namespace lo
