/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "tcsynth/env.hpp"

#include <algorithm>

namespace tcsynth {

namespace {
const std::string kSelf = "h"; // placeholder variable in accessor templates
const std::vector<const InstanceInfo*> kNoCandidates;

Term self_var() { return Term::var(kSelf); }

Term proj_call(const std::string& proj_name, Term arg) {
    return Term::constant(proj_name, {std::move(arg)});
}

// Instantiate a field type declared over `params` at the argument list `args`.
Term instantiate(const Term& type, const std::vector<ParamInfo>& params,
                 const std::vector<Term>& args) {
    std::unordered_map<std::string, Term> map;
    for (std::size_t i = 0; i < params.size() && i < args.size(); ++i)
        map.emplace(params[i].name, args[i]);
    return subst_vars(type, map);
}

} // namespace

std::string EnvError::message() const {
    std::string out = file.empty() ? "" : file + ":" + std::to_string(line) + ": ";
    out += kind + ": " + subject;
    if (!detail.empty())
        out += ": " + detail;
    return out;
}

const ClassField* ClassInfo::find_flat(const std::string& field) const {
    for (const ClassField& f : flat_fields)
        if (f.name == field)
            return &f;
    return nullptr;
}

const ClassInfo* Environment::find_class(const std::string& name) const {
    auto it = classes_.find(name);
    return it == classes_.end() ? nullptr : &it->second;
}

const InstanceInfo* Environment::find_instance(const std::string& name) const {
    auto it = instance_index_.find(name);
    return it == instance_index_.end() ? nullptr : it->second;
}

const DefInfo* Environment::find_def(const std::string& name) const {
    auto it = defs_.find(name);
    return it == defs_.end() ? nullptr : &it->second;
}

const ProjConst* Environment::find_projection(const std::string& name) const {
    auto it = projections_.find(name);
    return it == projections_.end() ? nullptr : &it->second;
}

const std::vector<const InstanceInfo*>& Environment::candidates(const std::string& cls) const {
    auto it = candidates_.find(cls);
    return it == candidates_.end() ? kNoCandidates : it->second;
}

void Environment::freeze() {
    candidates_.clear();
    for (const std::string& name : instance_order_) {
        const InstanceInfo* inst = find_instance(name);
        candidates_[inst->head_class].push_back(inst);
    }
    for (auto& [cls, list] : candidates_) {
        std::stable_sort(list.begin(), list.end(),
                         [](const InstanceInfo* a, const InstanceInfo* b) {
                             if (a->priority != b->priority)
                                 return a->priority > b->priority;
                             return a->decl_index < b->decl_index;
                         });
    }
    frozen_ = true;
}

std::vector<std::string> ancestor_closure(const Environment& env, const std::string& cls) {
    const ClassInfo* info = env.find_class(cls);
    return info ? info->ancestors : std::vector<std::string>{};
}

EnvBuilder::EnvBuilder() = default;

Environment EnvBuilder::take_env() {
    env_.freeze();
    return std::move(env_);
}

std::vector<SynthJob> EnvBuilder::take_jobs() { return std::move(jobs_); }

std::optional<EnvError> EnvBuilder::check_name_free(const std::string& name,
                                                    const std::string& file,
                                                    unsigned line) const {
    const char* clash = nullptr;
    if (env_.classes_.count(name))
        clash = "a class";
    else if (env_.instance_index_.count(name))
        clash = "an instance";
    else if (env_.defs_.count(name))
        clash = "a definition";
    else if (env_.projections_.count(name))
        clash = "a field projection";
    if (!clash)
        return std::nullopt;
    return EnvError{"DuplicateName", name, file, line,
                    std::string("already declared as ") + clash};
}

std::optional<EnvError> EnvBuilder::validate_class_apps(const Term& t, const std::string& file,
                                                        unsigned line) const {
    if (t.is_const()) {
        const ClassInfo* cls = env_.find_class(t.name());
        if (cls && t.args().size() != cls->arity())
            return EnvError{"ArityMismatch", t.name(), file, line,
                            "expects " + std::to_string(cls->arity()) + " argument(s), got " +
                                std::to_string(t.args().size()) + " in '" + render_term(t) + "'"};
        for (const Term& a : t.args())
            if (auto err = validate_class_apps(a, file, line))
                return err;
    }
    return std::nullopt;
}

std::optional<EnvError> EnvBuilder::add_file(const SourceFile& file) {
    for (const Command& cmd : file.commands)
        if (auto err = add_command(cmd, file.path))
            return err;
    return std::nullopt;
}

std::optional<EnvError> EnvBuilder::add_command(const Command& cmd, const std::string& file) {
    if (const auto* opt = std::get_if<SetOptionCmd>(&cmd)) {
        if (opt->name == "old_structure_cmd") {
            if (opt->nat_value)
                return EnvError{"BadOptionValue", opt->name, file, opt->line, "expects a bool"};
            old_structure_cmd_ = opt->bool_value;
        } else if (opt->name == "synth.fuel") {
            if (!opt->nat_value)
                return EnvError{"BadOptionValue", opt->name, file, opt->line, "expects a number"};
            options_.fuel = *opt->nat_value;
        } else if (opt->name == "synth.max_depth") {
            if (!opt->nat_value)
                return EnvError{"BadOptionValue", opt->name, file, opt->line, "expects a number"};
            options_.max_depth = *opt->nat_value;
        } else if (opt->name == "synth.tabled") {
            if (opt->nat_value)
                return EnvError{"BadOptionValue", opt->name, file, opt->line, "expects a bool"};
            options_.tabled = opt->bool_value;
        } else {
            return EnvError{"UnknownOption", opt->name, file, opt->line, ""};
        }
        return std::nullopt;
    }
    if (const auto* cls = std::get_if<ClassCmd>(&cmd))
        return register_class(*cls, file);
    if (const auto* inst = std::get_if<InstanceCmd>(&cmd))
        return register_instance(*inst, file);
    if (const auto* def = std::get_if<DefCmd>(&cmd))
        return register_def(*def, file);
    if (const auto* attr = std::get_if<AttributeCmd>(&cmd))
        return apply_attribute(*attr, file);
    if (const auto* synth = std::get_if<SynthCmd>(&cmd)) {
        jobs_.push_back(SynthJob{synth->goal, file, synth->line, locals_, options_});
        return std::nullopt;
    }
    if (const auto* local = std::get_if<LetICmd>(&cmd)) {
        if (auto err = validate_class_apps(local->head, file, local->line))
            return err;
        locals_.push_back(LocalInstance{local->name, local->head});
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<EnvError> EnvBuilder::register_class(const ClassCmd& cmd, const std::string& file) {
    if (auto err = check_name_free(cmd.name, file, cmd.line))
        return err;

    ClassInfo cls;
    cls.name = cmd.name;
    cls.is_class = cmd.is_class;
    cls.old_mode = old_structure_cmd_;
    cls.decl_index = decl_counter_++;
    cls.line = cmd.line;
    cls.parents = cmd.parents;

    for (const Binder& b : cmd.binders) {
        if (b.style == BinderStyle::inst_arg) {
            cls.constraint_binders.push_back(b);
            if (auto err = validate_class_apps(b.type, file, cmd.line))
                return err;
        } else {
            cls.params.push_back(ParamInfo{*b.name, b.out});
        }
    }
    for (const FieldDecl& f : cmd.fields)
        cls.own_fields.push_back(ClassField{f.name, f.kind, f.type, cls.name, false});

    // Resolve parents and the ancestor closure.
    std::vector<const ClassInfo*> parent_infos;
    for (const Term& p : cmd.parents) {
        if (!p.is_const() || !env_.find_class(p.name()))
            return EnvError{"UnknownParent", render_term(p), file, cmd.line,
                            "in class " + cls.name};
        if (auto err = validate_class_apps(p, file, cmd.line))
            return err;
        parent_infos.push_back(env_.find_class(p.name()));
    }
    for (std::size_t i = 0; i < parent_infos.size(); ++i) {
        auto add_anc = [&](const std::string& a) {
            if (std::find(cls.ancestors.begin(), cls.ancestors.end(), a) == cls.ancestors.end())
                cls.ancestors.push_back(a);
        };
        add_anc(parent_infos[i]->name);
        for (const std::string& a : parent_infos[i]->ancestors)
            add_anc(a);
    }

    // Field flattening.
    auto merge_old = [&](const ClassField& f) -> std::optional<EnvError> {
        for (const ClassField& existing : cls.flat_fields) {
            if (existing.name == f.name) {
                if (existing.type == f.type)
                    return std::nullopt; // duplicate, skip
                return EnvError{"ConflictingField", f.name, file, cmd.line,
                                "in class " + cls.name + ": inherited as " +
                                    render_term(existing.type) + " and " + render_term(f.type)};
            }
        }
        cls.flat_fields.push_back(f);
        return std::nullopt;
    };

    if (cls.old_mode || parent_infos.empty()) {
        for (std::size_t i = 0; i < parent_infos.size(); ++i) {
            const ClassInfo* P = parent_infos[i];
            for (const ClassField& f : P->flat_fields) {
                ClassField inst = f;
                inst.type = instantiate(f.type, P->params, cmd.parents[i].args());
                if (auto err = merge_old(inst))
                    return err;
            }
        }
        for (const ClassField& f : cls.own_fields)
            if (auto err = merge_old(f))
                return err;
        cls.immediate_fields = cls.flat_fields;
    } else {
        // New structure mode: embed the first parent, copy the rest.
        const ClassInfo* P1 = parent_infos[0];
        ClassField subobj;
        subobj.name = "to_" + P1->name;
        subobj.kind = FieldKind::data;
        subobj.type = cmd.parents[0];
        subobj.origin = cls.name;
        subobj.subobject = true;
        cls.immediate_fields.push_back(subobj);
        for (const ClassField& f : P1->flat_fields) {
            ClassField inst = f;
            inst.type = instantiate(f.type, P1->params, cmd.parents[0].args());
            cls.flat_fields.push_back(inst);
        }
        std::vector<std::string> covered;
        covered.push_back(P1->name);
        covered.insert(covered.end(), P1->ancestors.begin(), P1->ancestors.end());
        auto is_covered = [&](const std::string& c) {
            return std::find(covered.begin(), covered.end(), c) != covered.end();
        };
        for (std::size_t i = 1; i < parent_infos.size(); ++i) {
            const ClassInfo* Pi = parent_infos[i];
            for (const ClassField& f : Pi->flat_fields) {
                if (is_covered(f.origin))
                    continue; // shared ancestor field, one copy suffices
                ClassField inst = f;
                inst.type = instantiate(f.type, Pi->params, cmd.parents[i].args());
                for (const ClassField& existing : cls.flat_fields)
                    if (existing.name == inst.name)
                        return EnvError{"AmbiguousField", inst.name, file, cmd.line,
                                        "in class " + cls.name + ": inherited from " +
                                            existing.origin + " and " + inst.origin};
                cls.flat_fields.push_back(inst);
                cls.immediate_fields.push_back(inst);
            }
            if (!is_covered(Pi->name))
                covered.push_back(Pi->name);
            for (const std::string& a : Pi->ancestors)
                if (!is_covered(a))
                    covered.push_back(a);
        }
        for (const ClassField& f : cls.own_fields) {
            for (const ClassField& existing : cls.flat_fields)
                if (existing.name == f.name)
                    return EnvError{"AmbiguousField", f.name, file, cmd.line,
                                    "in class " + cls.name + ": also inherited from " +
                                        existing.origin};
            cls.flat_fields.push_back(f);
            cls.immediate_fields.push_back(f);
        }
    }

    // Leaf accessors.
    if (cls.old_mode || parent_infos.empty()) {
        for (const ClassField& f : cls.flat_fields)
            cls.accessors[f.name] = proj_call(cls.name + "." + f.name, self_var());
    } else {
        for (const ClassField& f : cls.immediate_fields)
            if (!f.subobject)
                cls.accessors[f.name] = proj_call(cls.name + "." + f.name, self_var());
        const ClassInfo* P1 = parent_infos[0];
        Term base = proj_call(cls.name + ".to_" + P1->name, self_var());
        for (const ClassField& f : P1->flat_fields) {
            if (cls.accessors.count(f.name))
                continue;
            auto it = P1->accessors.find(f.name);
            if (it != P1->accessors.end())
                cls.accessors[f.name] = subst_vars(it->second, {{kSelf, base}});
        }
    }

    // Register field projection constants for the record's own slots.
    for (const ClassField& f : cls.immediate_fields) {
        std::string pname = cls.name + "." + f.name;
        if (auto err = check_name_free(pname, file, cmd.line))
            return err;
        env_.projections_.emplace(pname, ProjConst{cls.name, f.name});
    }

    env_.class_order_.push_back(cls.name);
    auto [it, ok] = env_.classes_.emplace(cls.name, std::move(cls));
    if (it->second.is_class)
        generate_projections(it->second);
    return std::nullopt;
}

// Route from a class to an ancestor through embedded subobjects only.
// Returns a term over Var("h"), or nothing when no embedded path exists.
static std::optional<Term> embedded_access(const Environment& env, const ClassInfo& cls,
                                           const std::string& target) {
    if (cls.name == target)
        return self_var();
    if (cls.old_mode || cls.parents.empty())
        return std::nullopt;
    const ClassInfo* P1 = env.find_class(cls.parents[0].name());
    if (!P1)
        return std::nullopt;
    bool reachable = P1->name == target ||
                     std::find(P1->ancestors.begin(), P1->ancestors.end(), target) !=
                         P1->ancestors.end();
    if (!reachable)
        return std::nullopt;
    auto inner = embedded_access(env, *P1, target);
    if (!inner)
        return std::nullopt;
    Term base = proj_call(cls.name + ".to_" + P1->name, self_var());
    return subst_vars(*inner, {{kSelf, base}});
}

void EnvBuilder::generate_projections(ClassInfo& cls) {
    for (std::size_t i = 0; i < cls.parents.size(); ++i) {
        const Term& parent = cls.parents[i];
        const ClassInfo* P = env_.find_class(parent.name());
        InstanceInfo inst;
        inst.name = cls.name + ".to_" + P->name;
        inst.head = parent;
        inst.head_class = P->name;
        inst.priority = 100;
        inst.provenance = Provenance::projection;
        inst.decl_index = decl_counter_++;
        inst.line = cls.line;
        for (const ParamInfo& p : cls.params)
            inst.binders.push_back(
                Binder{p.name, Term::constant("Type"), BinderStyle::implicit_arg, p.out});
        std::vector<Term> param_vars;
        for (const ParamInfo& p : cls.params)
            param_vars.push_back(Term::var(p.name));
        inst.binders.push_back(Binder{kSelf, Term::constant(cls.name, param_vars),
                                      BinderStyle::inst_arg, false});

        bool embedded = !cls.old_mode && i == 0;
        Assigns assigns;
        if (embedded) {
            Term base = proj_call(inst.name, self_var());
            for (const ClassField& g : P->immediate_fields)
                assigns.emplace_back(g.name, proj_call(P->name + "." + g.name, base));
        } else {
            for (const ClassField& g : P->immediate_fields) {
                if (g.subobject) {
                    std::string target = g.type.name();
                    auto route = embedded_access(env_, cls, target);
                    assigns.emplace_back(g.name,
                                         route ? *route
                                               : Term::constant(cls.name + "::" + P->name + "." +
                                                                g.name));
                } else {
                    auto it = cls.accessors.find(g.name);
                    assigns.emplace_back(g.name, it != cls.accessors.end()
                                                     ? it->second
                                                     : Term::constant(cls.name + "::" + P->name +
                                                                      "." + g.name));
                }
            }
        }
        inst.assigns = std::move(assigns);

        // The embedded first parent's projection shares its name with the
        // subobject field; both views are intentional.
        if (!env_.instance_index_.count(inst.name)) {
            env_.instances_.push_back(std::move(inst));
            InstanceInfo* stored = &env_.instances_.back();
            env_.instance_index_.emplace(stored->name, stored);
            env_.instance_order_.push_back(stored->name);
        }
    }
}

std::optional<EnvError> EnvBuilder::register_instance(const InstanceCmd& cmd,
                                                      const std::string& file) {
    if (auto err = check_name_free(cmd.name, file, cmd.line))
        return err;
    Term head = cmd.head;
    if (!head.is_const())
        return EnvError{"UnknownClass", render_term(head), file, cmd.line,
                        "instance head is not a class application"};
    const ClassInfo* cls = env_.find_class(head.name());
    if (!cls || !cls->is_class)
        return EnvError{"UnknownClass", head.name(), file, cmd.line,
                        "in instance " + cmd.name};
    if (auto err = validate_class_apps(head, file, cmd.line))
        return err;
    for (const Binder& b : cmd.binders)
        if (auto err = validate_class_apps(b.type, file, cmd.line))
            return err;
    if (cmd.assigns)
        for (const auto& [field, value] : *cmd.assigns)
            if (!cls->find_flat(field))
                return EnvError{"UnknownField", field, file, cmd.line,
                                "class " + cls->name + " has no such field"};

    InstanceInfo inst;
    inst.name = cmd.name;
    inst.binders = cmd.binders;
    inst.head = head;
    inst.head_class = cls->name;
    inst.priority = cmd.priority;
    inst.provenance = Provenance::user;
    inst.assigns = cmd.assigns;
    inst.decl_index = decl_counter_++;
    inst.line = cmd.line;
    env_.instances_.push_back(std::move(inst));
    InstanceInfo* stored = &env_.instances_.back();
    env_.instance_index_.emplace(stored->name, stored);
    env_.instance_order_.push_back(stored->name);
    return std::nullopt;
}

std::optional<EnvError> EnvBuilder::register_def(const DefCmd& cmd, const std::string& file) {
    if (auto err = check_name_free(cmd.name, file, cmd.line))
        return err;
    DefInfo def;
    def.name = cmd.name;
    def.binders = cmd.binders;
    def.result_type = cmd.result_type;
    def.body = cmd.body.term;
    def.assigns = cmd.body.assigns;
    def.line = cmd.line;
    for (const Binder& b : cmd.binders) {
        if (auto err = validate_class_apps(b.type, file, cmd.line))
            return err;
        if (b.style == BinderStyle::explicit_arg)
            ++def.explicit_arity;
    }
    if (cmd.result_type)
        if (auto err = validate_class_apps(*cmd.result_type, file, cmd.line))
            return err;
    env_.defs_.emplace(cmd.name, std::move(def));
    return std::nullopt;
}

std::optional<EnvError> EnvBuilder::apply_attribute(const AttributeCmd& cmd,
                                                    const std::string& file) {
    const DefInfo* def = env_.find_def(cmd.target);
    if (!def)
        return EnvError{"UnknownDecl", cmd.target, file, cmd.line,
                        "attribute [instance] target is not a definition"};
    if (env_.instance_index_.count(cmd.target))
        return EnvError{"DuplicateName", cmd.target, file, cmd.line,
                        "already registered as an instance"};
    if (!def->result_type || !def->result_type->is_const() ||
        !env_.find_class(def->result_type->name()))
        return EnvError{"UnknownClass", cmd.target, file, cmd.line,
                        "definition's result type is not a class application"};

    InstanceInfo inst;
    inst.name = def->name;
    inst.binders = def->binders;
    inst.head = *def->result_type;
    inst.head_class = def->result_type->name();
    inst.priority = 1000;
    inst.provenance = Provenance::user;
    inst.assigns = def->assigns;
    inst.decl_index = decl_counter_++;
    inst.line = cmd.line;
    env_.instances_.push_back(std::move(inst));
    InstanceInfo* stored = &env_.instances_.back();
    env_.instance_index_.emplace(stored->name, stored);
    env_.instance_order_.push_back(stored->name);
    return std::nullopt;
}

} // namespace tcsynth
