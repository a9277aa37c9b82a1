/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcsynth/nat.hpp"

namespace tcsynth {

enum class TermKind {
    constant, // named head applied to arguments
    var,      // rigid named variable
    meta,     // unification metavariable
    nat_lit,  // numeric literal
};

// Immutable first-order term. Cheap to copy (shared representation).
class Term {
public:
    Term() : Term(constant("_")) {}

    static Term constant(std::string name, std::vector<Term> args = {});
    static Term var(std::string name);
    static Term meta(unsigned id);
    static Term nat(Nat value);
    static Term nat(std::uint64_t value) { return nat(Nat(value)); }

    TermKind kind() const { return rep_->kind; }
    bool is_const() const { return rep_->kind == TermKind::constant; }
    bool is_var() const { return rep_->kind == TermKind::var; }
    bool is_meta() const { return rep_->kind == TermKind::meta; }
    bool is_nat() const { return rep_->kind == TermKind::nat_lit; }

    const std::string& name() const { return rep_->name; }
    const std::vector<Term>& args() const { return rep_->args; }
    unsigned meta_id() const { return rep_->meta; }
    const Nat& value() const { return rep_->value; }

    // Structural equality.
    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }

private:
    struct Rep {
        TermKind kind;
        std::string name;       // constant / var
        std::vector<Term> args; // constant
        unsigned meta = 0;      // meta
        Nat value;              // nat_lit
    };

    explicit Term(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    std::shared_ptr<const Rep> rep_;
};

// Node count: 1 for var/meta/literal, 1 + sum of argument sizes for constants.
std::uint64_t term_size(const Term& t);

// Lean-flavoured rendering ("char_p (zmod 4) (2 + 2)").
std::string render_term(const Term& t);

// All rigid variable names occurring in t, in first-occurrence order.
std::vector<std::string> free_vars(const Term& t);

bool contains_meta(const Term& t);

// Replace variables by name. Unmapped variables are kept.
Term subst_vars(const Term& t, const std::unordered_map<std::string, Term>& map);

// Metavariable bindings with a trail for backtracking. Passed by value in the
// pure API; the synthesizer mutates one in place and rolls back on failure.
class Substitution {
public:
    bool contains(unsigned id) const { return bindings_.count(id) > 0; }
    const Term* lookup(unsigned id) const;

    // Record id -> t. The caller is responsible for the occurs-check.
    void bind(unsigned id, Term t);

    std::size_t mark() const { return trail_.size(); }
    void rollback(std::size_t mark);

    // Replace every bound meta recursively until none remains.
    Term apply(const Term& t) const;

    // Follow meta bindings at the head only.
    Term resolve_head(Term t) const;

    std::size_t size() const { return bindings_.size(); }

private:
    std::unordered_map<unsigned, Term> bindings_;
    std::vector<unsigned> trail_;
};

// Occurs-check modulo the substitution: does meta `id` occur in t once all
// bound metas in t are resolved?
bool occurs_in(unsigned id, const Term& t, const Substitution& subst);

} // namespace tcsynth
