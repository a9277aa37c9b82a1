/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tcsynth/term.hpp"

namespace tcsynth {

enum class BinderStyle {
    explicit_arg, // (x : T)
    implicit_arg, // {x : T}
    inst_arg,     // [T] or [h : T]
};

struct Binder {
    std::optional<std::string> name; // instance binders may be anonymous
    Term type;
    BinderStyle style = BinderStyle::explicit_arg;
    bool out = false; // type was written `out_param T`
};

enum class FieldKind { data, proof };

struct FieldDecl {
    std::string name;
    Term type;
    FieldKind kind = FieldKind::proof;
};

// `class` and `structure` share a shape; only `class` registers candidates.
struct ClassCmd {
    std::string name;
    bool is_class = true;
    std::vector<Binder> binders; // params and constraint binders, source order
    std::vector<Term> parents;   // extends list
    std::vector<FieldDecl> fields;
    unsigned line = 0;
};

using Assigns = std::vector<std::pair<std::string, Term>>;

struct InstanceCmd {
    std::string name; // generated when anonymous
    bool anonymous = false;
    std::vector<Binder> binders;
    Term head;
    unsigned priority = 1000;
    bool explicit_priority = false;
    std::optional<Assigns> assigns; // nullopt = opaque body
    unsigned line = 0;
};

struct DefBody {
    // Exactly one of these is meaningful: a reducible term, field assignments,
    // or opaque (both empty).
    std::optional<Term> term;
    std::optional<Assigns> assigns;
};

struct DefCmd {
    std::string name;
    std::vector<Binder> binders;
    std::optional<Term> result_type;
    DefBody body;
    unsigned line = 0;
};

struct SetOptionCmd {
    std::string name;
    bool bool_value = false;
    std::optional<std::uint64_t> nat_value; // set when the value was numeric
    unsigned line = 0;
};

struct AttributeCmd {
    std::string target; // promoted to an instance
    unsigned line = 0;
};

struct SynthCmd {
    Term goal;
    unsigned line = 0;
};

// `letI name : head [:= value]` — a local instance visible to later goals.
struct LetICmd {
    std::string name;
    Term head;
    std::optional<Term> value;
    unsigned line = 0;
};

using Command =
    std::variant<SetOptionCmd, ClassCmd, InstanceCmd, DefCmd, AttributeCmd, SynthCmd, LetICmd>;

struct SourceFile {
    std::string path;
    std::vector<Command> commands;
};

unsigned command_line(const Command& cmd);

} // namespace tcsynth
