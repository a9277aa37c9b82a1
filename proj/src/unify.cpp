/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "tcsynth/unify.hpp"

namespace tcsynth {

namespace {

constexpr int kMaxHeadSteps = 1000;
constexpr int kMaxNfDepth = 256;

// Positional binding of a declaration's named non-implicit binders to the
// argument list of an applied constant.
std::unordered_map<std::string, Term> bind_fills(const std::vector<Binder>& binders,
                                                 const std::vector<Term>& args) {
    std::unordered_map<std::string, Term> map;
    std::size_t ai = 0;
    for (const Binder& b : binders) {
        if (b.style == BinderStyle::implicit_arg)
            continue;
        if (ai >= args.size())
            break;
        if (b.name)
            map.emplace(*b.name, args[ai]);
        ++ai;
    }
    return map;
}

bool vars_covered(const Term& t, const std::unordered_map<std::string, Term>& map) {
    for (const std::string& v : free_vars(t))
        if (!map.count(v))
            return false;
    return true;
}

Term whnf_core(Term t, const Environment& env, const Substitution* subst) {
    for (int step = 0; step < kMaxHeadSteps; ++step) {
        if (subst)
            t = subst->resolve_head(t);
        if (!t.is_const())
            return t;
        const std::string& name = t.name();

        if ((name == "add" || name == "mul") && t.args().size() == 2) {
            Term a = whnf_core(t.args()[0], env, subst);
            Term b = whnf_core(t.args()[1], env, subst);
            if (a.is_nat() && b.is_nat())
                return name == "add" ? Term::nat(a.value() + b.value())
                                     : Term::nat(a.value() * b.value());
            return t;
        }

        if (const DefInfo* def = env.find_def(name);
            def && def->body && t.args().size() == def->explicit_arity) {
            std::unordered_map<std::string, Term> map;
            std::size_t ai = 0;
            for (const Binder& b : def->binders)
                if (b.style == BinderStyle::explicit_arg && b.name)
                    map.emplace(*b.name, t.args()[ai++]);
            if (!vars_covered(*def->body, map))
                return t;
            Term next = subst_vars(*def->body, map);
            if (next == t)
                return t;
            t = std::move(next);
            continue;
        }

        if (const ProjConst* proj = env.find_projection(name); proj && t.args().size() == 1) {
            Term inner = whnf_core(t.args()[0], env, subst);
            if (!inner.is_const())
                return t;
            const InstanceInfo* inst = env.find_instance(inner.name());
            if (!inst || !inst->assigns)
                return t;
            const Term* assign = nullptr;
            for (const auto& [field, value] : *inst->assigns)
                if (field == proj->field) {
                    assign = &value;
                    break;
                }
            if (!assign)
                return t;
            auto map = bind_fills(inst->binders, inner.args());
            if (!vars_covered(*assign, map))
                return t;
            Term next = subst_vars(*assign, map);
            Term current = Term::constant(name, {inner});
            if (next == current || next == t)
                return t; // projection of an opaque record, stuck
            t = std::move(next);
            continue;
        }

        return t;
    }
    return t;
}

Term nf_core(const Term& t, const Environment& env, const Substitution* subst, int depth) {
    Term head = whnf_core(t, env, subst);
    if (!head.is_const() || head.args().empty() || depth > kMaxNfDepth)
        return head;
    std::vector<Term> args;
    args.reserve(head.args().size());
    for (const Term& a : head.args())
        args.push_back(nf_core(a, env, subst, depth + 1));
    return Term::constant(head.name(), std::move(args));
}

bool bind_meta(unsigned id, const Term& t, Substitution& subst) {
    if (occurs_in(id, t, subst))
        return false;
    subst.bind(id, t);
    return true;
}

} // namespace

Term whnf(const Term& t, const Environment& env) { return whnf_core(t, env, nullptr); }

Term whnf(const Term& t, const Environment& env, const Substitution& subst) {
    return whnf_core(t, env, &subst);
}

Term nf(const Term& t, const Environment& env) { return nf_core(t, env, nullptr, 0); }

Term nf(const Term& t, const Environment& env, const Substitution& subst) {
    return nf_core(t, env, &subst, 0);
}

bool unify(const Term& a0, const Term& b0, const Environment& env, Substitution& subst) {
    Term a = whnf_core(a0, env, &subst);
    Term b = whnf_core(b0, env, &subst);
    if (a.is_meta() && b.is_meta() && a.meta_id() == b.meta_id())
        return true;
    if (a.is_meta())
        return bind_meta(a.meta_id(), b, subst);
    if (b.is_meta())
        return bind_meta(b.meta_id(), a, subst);
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case TermKind::var:
        return a.name() == b.name();
    case TermKind::nat_lit:
        return a.value() == b.value();
    case TermKind::constant: {
        if (a.name() != b.name() || a.args().size() != b.args().size())
            return false;
        for (std::size_t i = 0; i < a.args().size(); ++i)
            if (!unify(a.args()[i], b.args()[i], env, subst))
                return false;
        return true;
    }
    case TermKind::meta:
        break;
    }
    return false;
}

std::optional<Substitution> unify(const Term& a, const Term& b, const Environment& env,
                                  const Substitution& subst) {
    Substitution out = subst;
    if (unify(a, b, env, out))
        return out;
    return std::nullopt;
}

} // namespace tcsynth
