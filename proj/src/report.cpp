#include "lo/report.hpp"

#include "lo/errors.hpp"

namespace lo {

Json gap_to_json(const Gap& q) {
    Json dims = Json::array();
    for (const Rat& n : q.dims) dims.push_back(rat_to_string(n));
    Json steps = Json::array();
    for (const Int& s : q.steps) steps.push_back(s.get_str());
    return Json{{"dims", dims}, {"steps", steps}};
}

Gap gap_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("steps"))
        throw DomainError("GAP literal must be an object with dims and steps arrays");
    std::vector<Rat> dims;
    for (const auto& d : j.at("dims")) dims.push_back(rat_from_string(d.get<std::string>()));
    std::vector<Int> steps;
    for (const auto& s : j.at("steps")) steps.emplace_back(s.get<std::string>());
    return Gap(std::move(dims), std::move(steps));
}

Json element_set_to_json(const ElementSet& e) {
    Json arr = Json::array();
    for (const Int& x : e.elems) arr.push_back(x.get_str());
    return arr;
}

Json walk_distribution_to_json(const WalkDistribution& d) {
    Json counts = Json::array();
    for (const auto& [value, count] : d.counts)
        counts.push_back(Json{{"value", value.get_str()}, {"count", count.get_str()}});
    return Json{{"base", d.base.get_str()},
                {"power", d.power},
                {"denominator", d.denominator().get_str()},
                {"support_size", d.support_size()},
                {"counts", counts}};
}

Json concentration_to_json(const ConcentrationResult& r) {
    Json witnesses = Json::array();
    for (const Int& w : r.witnesses) witnesses.push_back(w.get_str());
    return Json{{"value", rat_to_string(r.value)},
                {"numerator", r.value.get_num().get_str()},
                {"denominator", r.value.get_den().get_str()},
                {"witnesses", witnesses}};
}

Json ratio_record_to_json(const RatioRecord& r) {
    return Json{{"instance", r.instance},
                {"lhs", rat_to_string(r.lhs)},
                {"rhs", rat_to_string(r.rhs)},
                {"ratio", rat_to_string(r.ratio)}};
}

Json trace_step_to_json(const TraceStep& s) {
    Json j{{"index", s.index},
           {"rank", s.rank},
           {"gap_cardinality", s.gap_cardinality.get_str()},
           {"potential", rat_to_string(s.potential)},
           {"bad_count", s.bad_count},
           {"proper_step", s.proper_step},
           {"embedded", s.embedded}};
    if (s.chosen) j["chosen"] = s.chosen->get_str();
    return j;
}

Json verification_to_json(const VerificationReport& rep) {
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json j{{"name", c.name}, {"pass", c.pass}};
        if (!c.lhs.empty()) j["lhs"] = c.lhs;
        if (!c.rhs.empty()) j["rhs"] = c.rhs;
        checks.push_back(j);
    }
    return Json{{"all_passed", rep.all_passed()}, {"checks", checks}};
}

Json inverse_result_to_json(const InverseResult& r) {
    Json trace = Json::array();
    for (const auto& s : r.trace) trace.push_back(trace_step_to_json(s));
    Json certs = Json::array();
    for (const auto& c : r.certificates)
        certs.push_back(Json{{"index", c.index},
                             {"value", c.value.get_str()},
                             {"a", c.a},
                             {"l", c.l},
                             {"m", c.m}});
    Json f_ratios = Json::array();
    for (const Rat& x : r.f_ratios) f_ratios.push_back(rat_to_string(x));
    Json p_ratios = Json::array();
    for (const Rat& x : r.p_ratios) p_ratios.push_back(rat_to_string(x));
    return Json{{"final_gap", gap_to_json(r.final_gap)},
                {"scaling", r.scaling.get_str()},
                {"step_gcd", r.step_gcd.get_str()},
                {"contained", r.contained},
                {"exceptional", r.exceptional},
                {"contained_count", r.contained.size()},
                {"exceptional_count", r.exceptional.size()},
                {"trace", trace},
                {"certificates", certs},
                {"p_original", rat_to_string(r.p_original)},
                {"p_run", rat_to_string(r.p_run)},
                {"run_mu", rat_to_string(r.run_mu.value())},
                {"mu_reduced", r.mu_reduced},
                {"stop_gap", gap_to_json(r.stop_gap)},
                {"f_ratios", f_ratios},
                {"p_ratios", p_ratios},
                {"verification", verification_to_json(r.verification)}};
}

Json strong_inverse_result_to_json(const StrongInverseResult& r) {
    return Json{{"d", r.d},
                {"k", r.k},
                {"pruned_gap", gap_to_json(r.pruned)},
                {"output_gap", gap_to_json(r.output)},
                {"output_proper", r.output_proper},
                {"base", inverse_result_to_json(r.base)}};
}

Json word_to_json(const Word& w) {
    Json arr = Json::array();
    for (const Int& x : w.entries) arr.push_back(x.get_str());
    return arr;
}

Json config_to_json(const InverseConfig& cfg) {
    return Json{{"d", cfg.d},
                {"eps", rat_to_string(cfg.eps)},
                {"mu", rat_to_string(cfg.mu.value())},
                {"k", cfg.k},
                {"K", rat_to_string(cfg.big_k)},
                {"c0", rat_to_string(cfg.c0)},
                {"c_min", rat_to_string(cfg.c_min)},
                {"slack", rat_to_string(cfg.slack)},
                {"step_cap_mult", cfg.step_cap_mult},
                {"a_max", cfg.a_max},
                {"m_max", cfg.m_max},
                {"l_min_div", cfg.l_min_div},
                {"c_max", cfg.c_max.get_str()},
                {"embed_budget", rat_to_string(cfg.embed_budget)},
                {"eps_exp_slack", rat_to_string(cfg.eps_exp_slack)},
                {"enum_guard", cfg.limits.enum_guard},
                {"support_cap", cfg.limits.support_cap}};
}

ParsedInstance instance_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("steps"))
        throw DomainError("instance file must be an object with a steps array");
    ParsedInstance out;
    for (const auto& s : j.at("steps")) out.word.entries.emplace_back(s.get<std::string>());
    if (j.contains("mu")) out.mu = Density(rat_from_string(j.at("mu").get<std::string>()));
    return out;
}

Json instance_to_json(const Word& w, const std::optional<Density>& mu) {
    Json j{{"steps", word_to_json(w)}};
    if (mu) j["mu"] = rat_to_string(mu->value());
    return j;
}

std::string trace_to_jsonl(const std::vector<TraceStep>& trace) {
    std::string out;
    for (const auto& s : trace) {
        out += trace_step_to_json(s).dump();
        out += '\n';
    }
    return out;
}

} // namespace lo
