// The GAP-growing inverse engine: grow a symmetric GAP step by step while the
// word still has many elements whose adjunction genuinely enlarges it, then
// certify the surviving elements into a dilate of the stopping GAP.  Every
// growth invariant of the analysis is asserted at runtime with exact
// arithmetic, and the finished result is re-verifiable from scratch.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lo/gap.hpp"
#include "lo/limits.hpp"
#include "lo/numeric.hpp"
#include "lo/walk.hpp"
#include "lo/word.hpp"

namespace lo {

struct InverseConfig {
    long d = 2;              // target rank parameter; output rank <= d-1
    Rat eps = Rat(1, 2);     // volume-bound exponent
    Density mu{1, 2};
    long k = 4;              // growth parameter; k >= 2 and k^2 <= n
    Rat big_k = 8;           // badness threshold K >= 2
    Rat c0 = 16;             // concentration precondition constant
    Rat c_min = Rat(1, 64);  // per-step comparison constant floor
    Rat slack = 10;          // multiplicative slack on analysis bounds
    long step_cap_mult = 10; // iteration budget multiplier
    long a_max = 8;          // progression step search cap
    long m_max = 4;          // iterated sumset search cap
    long l_min_div = 4;      // minimum progression half-length = ceil(k / l_min_div)
    Int c_max = 1'000'000;   // cap on the final scaling integer
    Rat embed_budget = 32;   // cardinality ratio budget for proper embeddings
    Rat eps_exp_slack = 4;   // epsilon multiplier in the strong-theorem volume exponent
    Limits limits;

    void validate() const;
    Int l_min() const;
};

// State before step i+1 plus the decision taken there.  The stopping record
// carries the final bad count and no chosen value.
struct TraceStep {
    std::size_t index = 0;
    long rank = 0;
    Int gap_cardinality = 1;
    Rat potential;            // F_i = |Q_i| * P(v^i; Q_i), always <= 1
    std::size_t bad_count = 0;
    std::optional<Int> chosen;
    bool proper_step = false;
    bool embedded = false;
};

// Witness that a good element sits inside a bounded dilate of the stopping
// GAP: the m-fold iterated sumset of its compatibility set contains the
// progression {j*a : |j| <= l}, re-verified by enumeration.
struct GoodCertificate {
    std::size_t index = 0;
    Int value;
    long a = 1;
    long l = 0;
    long m = 1;
};

struct CheckRecord {
    std::string name;
    bool pass = false;
    std::string lhs;
    std::string rhs;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(std::string name, bool pass, std::string lhs = "", std::string rhs = "") {
        checks.push_back({std::move(name), pass, std::move(lhs), std::move(rhs)});
    }
};

struct InverseResult {
    Gap final_gap;
    Int scaling = 1;   // C: contained elements satisfy C*v_i in (final_gap)_{C/k}
    Int step_gcd = 1;  // gcd of the certificate progression steps
    std::vector<std::size_t> contained;    // sorted original indices
    std::vector<std::size_t> exceptional;  // sorted original indices
    std::vector<TraceStep> trace;
    std::vector<GoodCertificate> certificates;
    VerificationReport verification;

    Density run_mu{1, 2};
    bool mu_reduced = false;
    Rat p_original;  // P(v) at the requested density
    Rat p_run;       // P(v) at the working density
    Gap stop_gap;
    std::vector<Rat> f_ratios;  // F_{i+1} / F_i, the empirical growth constants
    std::vector<Rat> p_ratios;  // P(v^{i+1};Q_{i+1}) / P(v^i;Q_i)
};

struct SelectResult {
    Int v0;
    Rat score;  // P(remaining . v0^[k^2]; Q)
};

// Choose, among the distinct values of the removed coordinates, the one whose
// k^2-fold repetition keeps the generalized concentration maximal.  Ties go
// to smaller |v0| and then smaller v0.  The maximum provably dominates
// P(removed+remaining; Q) when mu <= 1/2; that inequality is asserted.
SelectResult select_step_value(const Word& removed, const Word& remaining, const Gap& q,
                               const InverseConfig& cfg,
                               const std::optional<Rat>& whole_word_value = std::nullopt);

// Certificate search for one element; nullopt means rejection (the element is
// counted exceptional).
std::optional<GoodCertificate> refine_good(const Int& x, const Gap& q_t,
                                           const InverseConfig& cfg);

struct FinalizeResult {
    Gap gap;
    Int scaling = 1;
    Int step_gcd = 1;
};

// Unify the certificate progressions, pick the smallest verifying scaling C
// from the candidate ladder, embed the C-dilate of the stopping GAP properly,
// and re-verify C*x in Q_{C/k} for every certified element before returning.
FinalizeResult finalize_gap(const Gap& q_t, const std::vector<GoodCertificate>& certs,
                            const InverseConfig& cfg);

InverseResult run_inverse(const Word& v, const InverseConfig& cfg);

struct StrongInverseResult {
    InverseResult base;  // final_gap and containment as produced by run_inverse
    long d = 0;
    long k = 0;
    Gap pruned;        // final gap with dimensions below k removed
    Gap output;        // the 1/k dilate of the pruned gap
    bool output_proper = false;
};

// Driver with the rank/growth parameters derived from the concentration
// exponent: d = floor(2A)+1, k = floor(n^{1/2-eps}); dimensions smaller than
// k are pruned from the final GAP before the 1/k dilation.
StrongInverseResult strong_inverse(const Word& v, const Rat& a_exponent, const Rat& eps,
                                   const Density& mu, const InverseConfig& base_cfg);

// Independent re-check of a finished result: rank and volume bounds,
// exceptional budget, per-element containment, and the (reported, never
// fatal) steps-divide property.
VerificationReport verify_result(const Word& v, const InverseResult& result,
                                 const InverseConfig& cfg);

} // namespace lo
