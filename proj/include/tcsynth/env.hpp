/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcsynth/ast.hpp"

namespace tcsynth {

struct EnvError {
    std::string kind;    // ConflictingField, AmbiguousField, UnknownParent, ...
    std::string subject; // declaration or field involved
    std::string file;
    unsigned line = 0;
    std::string detail;

    std::string message() const;
};

struct ParamInfo {
    std::string name;
    bool out = false;
};

struct ClassField {
    std::string name;
    FieldKind kind = FieldKind::proof;
    Term type;          // over the class's param variables
    std::string origin; // class that declared the field
    bool subobject = false;
};

struct ClassInfo {
    std::string name;
    bool is_class = true;
    bool old_mode = false;
    std::vector<ParamInfo> params;
    std::vector<Binder> constraint_binders; // instance binders on the class itself
    std::vector<Term> parents;
    std::vector<ClassField> own_fields;

    // Leaf fields after flattening the whole ancestry.
    std::vector<ClassField> flat_fields;
    // What the record itself stores: either the flat set (old mode) or the
    // embedded first parent plus copied/own fields (new mode).
    std::vector<ClassField> immediate_fields;
    // Transitive `extends` ancestry, left-to-right, first occurrence kept.
    std::vector<std::string> ancestors;
    // Leaf-field accessor templates over Var("h") (h = the instance value).
    std::unordered_map<std::string, Term> accessors;

    unsigned decl_index = 0;
    unsigned line = 0;

    std::size_t arity() const { return params.size(); }
    const ClassField* find_flat(const std::string& field) const;
};

enum class Provenance { user, projection };

struct InstanceInfo {
    std::string name;
    std::vector<Binder> binders;
    Term head;
    std::string head_class;
    unsigned priority = 1000;
    Provenance provenance = Provenance::user;
    std::optional<Assigns> assigns; // nullopt = opaque
    unsigned decl_index = 0;
    unsigned line = 0;
};

struct DefInfo {
    std::string name;
    std::vector<Binder> binders;
    std::optional<Term> result_type;
    std::optional<Term> body; // reducible definitions unfold in whnf
    std::optional<Assigns> assigns;
    std::size_t explicit_arity = 0;
    unsigned line = 0;
};

// A registered field-projection constant `<class>.<field>`, arity 1: it takes
// the instance value and evaluates to the field assignment.
struct ProjConst {
    std::string class_name;
    std::string field;
};

struct LocalInstance {
    std::string name;
    Term head;
};

using LocalInstances = std::vector<LocalInstance>;

struct OptionOverrides {
    std::optional<std::uint64_t> fuel;
    std::optional<std::uint64_t> max_depth;
    std::optional<bool> tabled;
};

// A `#synth` goal together with the local instances and options in scope at
// its position in the source.
struct SynthJob {
    Term goal;
    std::string file;
    unsigned line = 0;
    LocalInstances locals;
    OptionOverrides opts;
};

class Environment {
public:
    const ClassInfo* find_class(const std::string& name) const;
    const InstanceInfo* find_instance(const std::string& name) const;
    const DefInfo* find_def(const std::string& name) const;
    const ProjConst* find_projection(const std::string& name) const;

    // Candidate list for a class, priority descending then declaration order.
    // Valid only after freeze().
    const std::vector<const InstanceInfo*>& candidates(const std::string& cls) const;

    const std::vector<std::string>& class_order() const { return class_order_; }
    const std::vector<std::string>& instance_order() const { return instance_order_; }

    bool frozen() const { return frozen_; }
    void freeze();

private:
    friend class EnvBuilder;

    std::unordered_map<std::string, ClassInfo> classes_;
    std::deque<InstanceInfo> instances_;
    std::unordered_map<std::string, InstanceInfo*> instance_index_;
    std::unordered_map<std::string, DefInfo> defs_;
    std::unordered_map<std::string, ProjConst> projections_;
    std::unordered_map<std::string, std::vector<const InstanceInfo*>> candidates_;
    std::vector<std::string> class_order_;
    std::vector<std::string> instance_order_;
    bool frozen_ = false;
};

// Transitive `extends` ancestors of a class (binder-expressed superclasses
// excluded), left-to-right, duplicates dropped.
std::vector<std::string> ancestor_closure(const Environment& env, const std::string& cls);

// Processes commands in order, building one Environment and collecting the
// `#synth` jobs. Stops at the first error.
class EnvBuilder {
public:
    EnvBuilder();

    // Returns the error that stopped processing, if any.
    std::optional<EnvError> add_file(const SourceFile& file);

    Environment take_env();
    std::vector<SynthJob> take_jobs();
    const LocalInstances& locals() const { return locals_; }
    const OptionOverrides& options() const { return options_; }

private:
    std::optional<EnvError> add_command(const Command& cmd, const std::string& file);
    std::optional<EnvError> register_class(const ClassCmd& cmd, const std::string& file);
    std::optional<EnvError> register_instance(const InstanceCmd& cmd, const std::string& file);
    std::optional<EnvError> register_def(const DefCmd& cmd, const std::string& file);
    std::optional<EnvError> apply_attribute(const AttributeCmd& cmd, const std::string& file);
    std::optional<EnvError> check_name_free(const std::string& name, const std::string& file,
                                            unsigned line) const;
    std::optional<EnvError> validate_class_apps(const Term& t, const std::string& file,
                                                unsigned line) const;
    void generate_projections(ClassInfo& cls);

    Environment env_;
    std::vector<SynthJob> jobs_;
    LocalInstances locals_;
    OptionOverrides options_;
    bool old_structure_cmd_ = false;
    unsigned decl_counter_ = 0;
};

} // namespace tcsynth
