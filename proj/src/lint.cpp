/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "tcsynth/lint.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace tcsynth {

const char* severity_name(Severity s) { return s == Severity::error ? "error" : "warning"; }

namespace {

void collect_in_mode_vars(const Term& constraint, const Environment& env,
                          std::set<std::string>& out) {
    if (!constraint.is_const())
        return;
    const ClassInfo* cls = env.find_class(constraint.name());
    for (std::size_t i = 0; i < constraint.args().size(); ++i) {
        bool in_mode = true;
        if (cls && i < cls->params.size())
            in_mode = !cls->params[i].out;
        if (!in_mode)
            continue;
        for (const std::string& v : free_vars(constraint.args()[i]))
            out.insert(v);
    }
}

} // namespace

std::vector<LintFinding> lint_dangerous(const InstanceInfo& inst, const Environment& env) {
    std::set<std::string> needed;
    for (const Binder& b : inst.binders)
        if (b.style == BinderStyle::inst_arg)
            collect_in_mode_vars(b.type, env, needed);

    std::set<std::string> determined;
    collect_in_mode_vars(inst.head, env, determined);

    std::vector<std::string> undetermined;
    for (const Binder& b : inst.binders) {
        if (!b.name)
            continue;
        if (needed.count(*b.name) && !determined.count(*b.name))
            undetermined.push_back(*b.name);
    }
    if (undetermined.empty())
        return {};

    LintFinding finding;
    finding.linter = "dangerous_instance";
    finding.subject = inst.name;
    finding.severity = Severity::error;
    finding.undetermined = undetermined;
    finding.message = "instance leaves ";
    for (std::size_t i = 0; i < undetermined.size(); ++i) {
        if (i > 0)
            finding.message += ", ";
        finding.message += undetermined[i];
    }
    finding.message += " undetermined: the head fixes no in-mode occurrence";
    return {finding};
}

namespace {

std::string chain_key(const Term& t) {
    // Class name suffices: the chains fails_quickly reports are over
    // maximally-general goals, one shape per class.
    return t.is_const() ? t.name() : render_term(t);
}

std::vector<std::string> compress_cycle(const std::vector<Term>& chain) {
    std::vector<std::string> keys;
    keys.reserve(chain.size());
    for (const Term& t : chain)
        keys.push_back(chain_key(t));
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = i + 1; j < keys.size(); ++j)
            if (keys[i] == keys[j])
                return std::vector<std::string>(keys.begin() + static_cast<long>(i),
                                                keys.begin() + static_cast<long>(j) + 1);
    // No syntactic repetition: report the tail of the chain.
    std::size_t start = keys.size() > 8 ? keys.size() - 8 : 0;
    return std::vector<std::string>(keys.begin() + static_cast<long>(start), keys.end());
}

} // namespace

std::vector<LintFinding> lint_fails_quickly(const Environment& env, const SynthConfig& budget) {
    std::vector<LintFinding> findings;
    for (const std::string& name : env.class_order()) {
        const ClassInfo* cls = env.find_class(name);
        if (!cls->is_class)
            continue;
        std::vector<Term> args;
        for (std::size_t i = 0; i < cls->arity(); ++i)
            args.push_back(Term::var("x" + std::to_string(i + 1)));
        Term goal = Term::constant(name, std::move(args));
        SynthOutcome outcome = synthesize(goal, env, {}, budget);
        const auto* failure = std::get_if<SynthFailure>(&outcome);
        if (!failure)
            continue; // found an instance quickly, fine
        if (failure->kind == SynthErrorKind::not_found ||
            failure->kind == SynthErrorKind::ill_formed)
            continue; // definitive fast failure
        LintFinding finding;
        finding.linter = "fails_quickly";
        finding.subject = name;
        finding.severity = Severity::error;
        finding.cycle = compress_cycle(failure->chain);
        finding.message = "general goal '" + render_term(goal) + "' diverges (" +
                          synth_error_name(failure->kind) + " after " +
                          std::to_string(failure->stats.applied) + " applications)";
        if (!finding.cycle.empty()) {
            finding.message += ": ";
            for (std::size_t i = 0; i < finding.cycle.size(); ++i) {
                if (i > 0)
                    finding.message += " -> ";
                finding.message += finding.cycle[i];
            }
        }
        findings.push_back(std::move(finding));
    }
    return findings;
}

Term field_value(const Environment& env, const ClassInfo& cls, const std::string& field,
                 const Term& instance_term) {
    auto it = cls.accessors.find(field);
    if (it == cls.accessors.end())
        return Term::constant(cls.name + "::" + field, {instance_term});
    return nf(subst_vars(it->second, {{"h", instance_term}}), env);
}

std::vector<LintFinding> lint_diamond(const Environment& env, const Term& goal,
                                      const SynthConfig& cfg) {
    std::vector<LintFinding> findings;
    const ClassInfo* cls = goal.is_const() ? env.find_class(goal.name()) : nullptr;
    if (!cls)
        return findings;

    Enumeration enumeration = synth_enumerate(goal, env, {}, cfg);
    if (enumeration.truncated) {
        LintFinding finding;
        finding.linter = "diamond";
        finding.subject = render_term(goal);
        finding.severity = Severity::warning;
        finding.message = "enumeration budget exceeded, diamond check incomplete";
        findings.push_back(std::move(finding));
    }

    std::vector<std::string> data_fields;
    for (const ClassField& f : cls->flat_fields)
        if (f.kind == FieldKind::data)
            data_fields.push_back(f.name);

    const auto& sols = enumeration.solutions;
    for (std::size_t i = 0; i < sols.size(); ++i) {
        for (std::size_t j = i + 1; j < sols.size(); ++j) {
            for (const std::string& field : data_fields) {
                Term v1 = field_value(env, *cls, field, sols[i].term);
                Term v2 = field_value(env, *cls, field, sols[j].term);
                if (v1 == v2)
                    continue;
                LintFinding finding;
                finding.linter = "diamond";
                finding.subject = render_term(goal);
                finding.severity = Severity::error;
                finding.field = field;
                finding.pair = {render_term(sols[i].term), render_term(sols[j].term)};
                finding.message = "field '" + field + "' differs between " +
                                  render_term(sols[i].term) + " (" + render_term(v1) + ") and " +
                                  render_term(sols[j].term) + " (" + render_term(v2) + ")";
                findings.push_back(std::move(finding));
            }
        }
    }
    return findings;
}

std::string findings_to_json(const std::vector<LintFinding>& findings, bool pretty) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const LintFinding& f : findings) {
        nlohmann::ordered_json item;
        item["linter"] = f.linter;
        item["subject"] = f.subject;
        item["severity"] = severity_name(f.severity);
        item["message"] = f.message;
        nlohmann::ordered_json data = nlohmann::ordered_json::object();
        if (!f.undetermined.empty())
            data["undetermined"] = f.undetermined;
        if (!f.cycle.empty())
            data["cycle"] = f.cycle;
        if (!f.field.empty())
            data["field"] = f.field;
        if (!f.pair.empty())
            data["pair"] = f.pair;
        item["data"] = data;
        out.push_back(item);
    }
    return pretty ? out.dump(2) : out.dump();
}

std::string findings_to_text(const std::vector<LintFinding>& findings) {
    std::string out;
    for (const LintFinding& f : findings) {
        out += std::string(severity_name(f.severity)) + ": " + f.linter + ": " + f.subject +
               ": " + f.message + "\n";
    }
    return out;
}

bool has_errors(const std::vector<LintFinding>& findings) {
    return std::any_of(findings.begin(), findings.end(),
                       [](const LintFinding& f) { return f.severity == Severity::error; });
}

} // namespace tcsynth
