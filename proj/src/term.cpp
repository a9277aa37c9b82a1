/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "tcsynth/term.hpp"

namespace tcsynth {

Term Term::constant(std::string name, std::vector<Term> args) {
    auto rep = std::make_shared<Rep>();
    rep->kind = TermKind::constant;
    rep->name = std::move(name);
    rep->args = std::move(args);
    return Term(std::move(rep));
}

Term Term::var(std::string name) {
    auto rep = std::make_shared<Rep>();
    rep->kind = TermKind::var;
    rep->name = std::move(name);
    return Term(std::move(rep));
}

Term Term::meta(unsigned id) {
    auto rep = std::make_shared<Rep>();
    rep->kind = TermKind::meta;
    rep->meta = id;
    return Term(std::move(rep));
}

Term Term::nat(Nat value) {
    auto rep = std::make_shared<Rep>();
    rep->kind = TermKind::nat_lit;
    rep->value = std::move(value);
    return Term(std::move(rep));
}

bool Term::operator==(const Term& other) const {
    if (rep_ == other.rep_)
        return true;
    if (rep_->kind != other.rep_->kind)
        return false;
    switch (rep_->kind) {
    case TermKind::var:
        return rep_->name == other.rep_->name;
    case TermKind::meta:
        return rep_->meta == other.rep_->meta;
    case TermKind::nat_lit:
        return rep_->value == other.rep_->value;
    case TermKind::constant:
        if (rep_->name != other.rep_->name || rep_->args.size() != other.rep_->args.size())
            return false;
        for (std::size_t i = 0; i < rep_->args.size(); ++i)
            if (!(rep_->args[i] == other.rep_->args[i]))
                return false;
        return true;
    }
    return false;
}

std::uint64_t term_size(const Term& t) {
    if (!t.is_const())
        return 1;
    std::uint64_t total = 1;
    for (const Term& a : t.args())
        total += term_size(a);
    return total;
}

namespace {

bool is_arith_head(const std::string& name) { return name == "add" || name == "mul"; }

void render(const Term& t, std::string& out, bool atom_position) {
    switch (t.kind()) {
    case TermKind::var:
        out += t.name();
        return;
    case TermKind::meta:
        out += "?m" + std::to_string(t.meta_id());
        return;
    case TermKind::nat_lit:
        out += t.value().str();
        return;
    case TermKind::constant:
        break;
    }
    if (is_arith_head(t.name()) && t.args().size() == 2) {
        if (atom_position)
            out += "(";
        render(t.args()[0], out, true);
        out += t.name() == "add" ? " + " : " * ";
        render(t.args()[1], out, true);
        if (atom_position)
            out += ")";
        return;
    }
    if (t.args().empty()) {
        out += t.name();
        return;
    }
    if (atom_position)
        out += "(";
    out += t.name();
    for (const Term& a : t.args()) {
        out += " ";
        render(a, out, true);
    }
    if (atom_position)
        out += ")";
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
    if (t.is_var()) {
        for (const std::string& seen : out)
            if (seen == t.name())
                return;
        out.push_back(t.name());
        return;
    }
    if (t.is_const())
        for (const Term& a : t.args())
            collect_vars(a, out);
}

} // namespace

std::string render_term(const Term& t) {
    std::string out;
    render(t, out, false);
    return out;
}

std::vector<std::string> free_vars(const Term& t) {
    std::vector<std::string> out;
    collect_vars(t, out);
    return out;
}

bool contains_meta(const Term& t) {
    if (t.is_meta())
        return true;
    if (t.is_const())
        for (const Term& a : t.args())
            if (contains_meta(a))
                return true;
    return false;
}

Term subst_vars(const Term& t, const std::unordered_map<std::string, Term>& map) {
    if (t.is_var()) {
        auto it = map.find(t.name());
        return it == map.end() ? t : it->second;
    }
    if (!t.is_const() || t.args().empty())
        return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const Term& a : t.args()) {
        args.push_back(subst_vars(a, map));
        if (args.back() != a)
            changed = true;
    }
    if (!changed)
        return t;
    return Term::constant(t.name(), std::move(args));
}

const Term* Substitution::lookup(unsigned id) const {
    auto it = bindings_.find(id);
    return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(unsigned id, Term t) {
    // Callers bind only unbound metas; a rebind would corrupt the trail.
    bindings_.emplace(id, std::move(t));
    trail_.push_back(id);
}

void Substitution::rollback(std::size_t mark) {
    while (trail_.size() > mark) {
        bindings_.erase(trail_.back());
        trail_.pop_back();
    }
}

Term Substitution::apply(const Term& t) const {
    switch (t.kind()) {
    case TermKind::var:
    case TermKind::nat_lit:
        return t;
    case TermKind::meta: {
        const Term* bound = lookup(t.meta_id());
        return bound ? apply(*bound) : t;
    }
    case TermKind::constant:
        break;
    }
    if (t.args().empty())
        return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const Term& a : t.args()) {
        args.push_back(apply(a));
        if (args.back() != a)
            changed = true;
    }
    if (!changed)
        return t;
    return Term::constant(t.name(), std::move(args));
}

Term Substitution::resolve_head(Term t) const {
    while (t.is_meta()) {
        const Term* bound = lookup(t.meta_id());
        if (!bound)
            return t;
        t = *bound;
    }
    return t;
}

bool occurs_in(unsigned id, const Term& t, const Substitution& subst) {
    Term head = subst.resolve_head(t);
    if (head.is_meta())
        return head.meta_id() == id;
    if (head.is_const())
        for (const Term& a : head.args())
            if (occurs_in(id, a, subst))
                return true;
    return false;
}

} // namespace tcsynth
