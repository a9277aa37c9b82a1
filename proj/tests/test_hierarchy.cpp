/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "tcsynth/lint.hpp"

using namespace tcsynth;
using tcsynth::testing::build;
using tcsynth::testing::build_corpus_file;

namespace {

std::vector<std::string> field_names(const std::vector<ClassField>& fields) {
    std::vector<std::string> out;
    for (const ClassField& f : fields)
        out.push_back(f.name);
    return out;
}

std::optional<EnvError> build_error(const std::string& source) {
    ParseResult parsed = parse_file(source, "<test>");
    REQUIRE(std::holds_alternative<SourceFile>(parsed));
    EnvBuilder builder;
    return builder.add_file(std::get<SourceFile>(parsed));
}

} // namespace

TEST_CASE("old-structure flattening copies ancestor fields and skips duplicates") {
    auto built = build_corpus_file("03_comm_monoid.tc");
    const ClassInfo* monoid = built.env.find_class("monoid");
    REQUIRE(monoid != nullptr);
    CHECK(field_names(monoid->flat_fields) ==
          std::vector<std::string>{"mul", "mul_assoc", "one", "one_mul", "mul_one"});
    // old mode stores the flat set directly
    CHECK(field_names(monoid->immediate_fields) == field_names(monoid->flat_fields));
}

TEST_CASE("a parentless class keeps its own fields only") {
    auto built = build("class has_mul (α : Type) := (mul : fn2 α, data)");
    const ClassInfo* cls = built.env.find_class("has_mul");
    CHECK(field_names(cls->flat_fields) == std::vector<std::string>{"mul"});
}

TEST_CASE("conflicting field types are an error in old mode") {
    auto err = build_error("set_option old_structure_cmd true\n"
                           "class left (α : Type) := (payload : fn1 α, data)\n"
                           "class right (α : Type) := (payload : fn2 α, data)\n"
                           "class both (α : Type) extends left α, right α");
    REQUIRE(err.has_value());
    CHECK(err->kind == "ConflictingField");
    CHECK(err->subject == "payload");
}

TEST_CASE("identical duplicate fields are skipped in old mode") {
    auto err = build_error("set_option old_structure_cmd true\n"
                           "class left (α : Type) := (payload : fn1 α, data)\n"
                           "class right (α : Type) := (payload : fn1 α, data)\n"
                           "class both (α : Type) extends left α, right α");
    CHECK(!err.has_value());
}

TEST_CASE("duplicate leaf names across unrelated parents are ambiguous in new mode") {
    auto err = build_error("class left (α : Type) := (payload : fn1 α, data)\n"
                           "class right (α : Type) := (payload : fn1 α, data)\n"
                           "class both (α : Type) extends left α, right α");
    REQUIRE(err.has_value());
    CHECK(err->kind == "AmbiguousField");
    CHECK(err->subject == "payload");
}

TEST_CASE("unknown parents are rejected") {
    auto err = build_error("class child (α : Type) extends missing α");
    REQUIRE(err.has_value());
    CHECK(err->kind == "UnknownParent");
}

TEST_CASE("new mode embeds the first parent and copies the remaining fields") {
    auto built = build_corpus_file("03_comm_monoid_new.tc");
    const ClassInfo* cm = built.env.find_class("comm_monoid");
    REQUIRE(cm != nullptr);
    REQUIRE(!cm->immediate_fields.empty());
    CHECK(cm->immediate_fields[0].name == "to_monoid");
    CHECK(cm->immediate_fields[0].subobject);
    CHECK(cm->immediate_fields[0].kind == FieldKind::data);
    CHECK(cm->immediate_fields[0].type ==
          Term::constant("monoid", {Term::var("M")}));
    // comm_semigroup shares semigroup with monoid, so only mul_comm is copied
    CHECK(field_names(cm->immediate_fields) ==
          std::vector<std::string>{"to_monoid", "mul_comm"});

    // brute-force check of the shared-ancestor field arithmetic: the copied
    // set must be exactly comm_semigroup's flat fields minus those whose
    // origin lies in monoid's closure
    const ClassInfo* cs = built.env.find_class("comm_semigroup");
    const ClassInfo* monoid = built.env.find_class("monoid");
    std::vector<std::string> expected_copied;
    for (const ClassField& f : cs->flat_fields) {
        bool shared = f.origin == monoid->name ||
                      std::find(monoid->ancestors.begin(), monoid->ancestors.end(), f.origin) !=
                          monoid->ancestors.end();
        if (!shared)
            expected_copied.push_back(f.name);
    }
    CHECK(expected_copied == std::vector<std::string>{"mul_comm"});
}

TEST_CASE("the flattened diamond holds each shared-ancestor field exactly once") {
    auto built = build_corpus_file("03_comm_monoid.tc");
    for (const char* name : {"monoid", "comm_monoid"}) {
        const ClassInfo* cls = built.env.find_class(name);
        auto names = field_names(cls->flat_fields);
        auto sorted = names;
        std::sort(sorted.begin(), sorted.end());
        CHECK_MESSAGE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                      (std::string(name) + " has duplicate flattened fields"));
    }
}

TEST_CASE("flattening is idempotent") {
    // A field-less old-mode child of an already-flattened class must carry
    // exactly the parent's flat field set, in order.
    auto built = build("set_option old_structure_cmd true\n"
                       "class has_one (α : Type) := (one : fn0 α, data)\n"
                       "class has_mul (α : Type) := (mul : fn2 α, data)\n"
                       "class monoid (M : Type) extends has_one M, has_mul M := (one_mul : prop)\n"
                       "class again (M : Type) extends monoid M");
    const ClassInfo* monoid = built.env.find_class("monoid");
    const ClassInfo* again = built.env.find_class("again");
    CHECK(field_names(again->flat_fields) == field_names(monoid->flat_fields));
    for (std::size_t i = 0; i < again->flat_fields.size(); ++i)
        CHECK(again->flat_fields[i].type == monoid->flat_fields[i].type);
}

TEST_CASE("flattening is deterministic across rebuilds") {
    auto a = build_corpus_file("03_comm_monoid.tc");
    auto b = build_corpus_file("03_comm_monoid.tc");
    for (const std::string& name : a.env.class_order()) {
        const ClassInfo* ca = a.env.find_class(name);
        const ClassInfo* cb = b.env.find_class(name);
        REQUIRE(cb != nullptr);
        CHECK(field_names(ca->flat_fields) == field_names(cb->flat_fields));
    }
}

TEST_CASE("projection instances cover direct parents with the stated shape") {
    auto built = build("class add_group (A : Type) := (neg : fn1 A, data)\n"
                       "class add_comm_group (A : Type) extends add_group A := (comm : prop)");
    const InstanceInfo* proj = built.env.find_instance("add_comm_group.to_add_group");
    REQUIRE(proj != nullptr);
    CHECK(proj->priority == 100);
    CHECK(proj->provenance == Provenance::projection);
    CHECK(proj->head == Term::constant("add_group", {Term::var("A")}));
    REQUIRE(proj->binders.size() == 2);
    CHECK(proj->binders.front().style == BinderStyle::implicit_arg);
    CHECK(proj->binders.back().style == BinderStyle::inst_arg);
    CHECK(proj->binders.back().type == Term::constant("add_comm_group", {Term::var("A")}));
}

TEST_CASE("binder-expressed superclasses generate no projections") {
    auto built = build_corpus_file("04_module.tc");
    CHECK(built.env.find_instance("module.to_distrib_mul_action") != nullptr);
    // the [semiring R] and [add_comm_monoid M] constraints are not parents
    CHECK(built.env.find_instance("module.to_semiring") == nullptr);
    // parentless classes generate nothing
    CHECK(built.env.find_instance("monoid.to_") == nullptr);
    const ClassInfo* monoid = built.env.find_class("monoid");
    CHECK(monoid->parents.empty());
}

TEST_CASE("ancestor closure follows extends only") {
    auto built = build_corpus_file("03_comm_monoid.tc");
    CHECK(ancestor_closure(built.env, "comm_monoid") ==
          std::vector<std::string>{"monoid", "semigroup", "has_mul", "mul_one_class", "has_one",
                                   "comm_semigroup"});
    CHECK(ancestor_closure(built.env, "comm_monoid").size() == 6);
    CHECK(ancestor_closure(built.env, "has_mul").empty());

    auto acg = build("class add_group (A : Type)\n"
                     "class add_comm_group (A : Type) extends add_group A");
    CHECK(ancestor_closure(acg.env, "add_comm_group") == std::vector<std::string>{"add_group"});
    CHECK(ancestor_closure(acg.env, "nope").empty());
}

TEST_CASE("candidate lists order by priority then declaration") {
    auto built = build("class C (α : Type)\n"
                       "@[priority 50] instance low : C nat := opaque\n"
                       "instance first : C nat := opaque\n"
                       "@[priority 2000] instance top : C nat := opaque\n"
                       "instance second : C nat := opaque\n");
    const auto& candidates = built.env.candidates("C");
    REQUIRE(candidates.size() == 4);
    CHECK(candidates[0]->name == "top");
    CHECK(candidates[1]->name == "first");
    CHECK(candidates[2]->name == "second");
    CHECK(candidates[3]->name == "low");
}

TEST_CASE("generated projections are dangerous exactly when the parent loses a param") {
    // the parent determines only A, so B stays undetermined
    auto built = build("class single (A : Type) := (x : fn0 A, data)\n"
                       "class pair_thing (A B : Type) extends single A");
    const InstanceInfo* proj = built.env.find_instance("pair_thing.to_single");
    REQUIRE(proj != nullptr);
    auto findings = lint_dangerous(*proj, built.env);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].undetermined == std::vector<std::string>{"B"});

    // with all child params in the parent term the projection is clean
    auto ok = build("class single (A B : Type) := (x : fn0 A, data)\n"
                    "class pair_thing (A B : Type) extends single A B");
    auto clean = lint_dangerous(*ok.env.find_instance("pair_thing.to_single"), ok.env);
    CHECK(clean.empty());
}

TEST_CASE("duplicate declarations are rejected") {
    auto err = build_error("class C (α : Type)\nclass C (β : Type)");
    REQUIRE(err.has_value());
    CHECK(err->kind == "DuplicateName");

    auto err2 = build_error("class C (α : Type)\n"
                            "instance foo : C nat := opaque\n"
                            "instance foo : C int := opaque");
    REQUIRE(err2.has_value());
    CHECK(err2->kind == "DuplicateName");
}

TEST_CASE("class applications are arity-checked") {
    auto err = build_error("class C (α : Type)\ninstance foo : C nat int := opaque");
    REQUIRE(err.has_value());
    CHECK(err->kind == "ArityMismatch");
}

TEST_CASE("instance assignments must name flattened fields") {
    auto err = build_error("class C (α : Type) := (x : fn0 α, data)\n"
                           "instance foo : C nat := { y := nat.zero }");
    REQUIRE(err.has_value());
    CHECK(err->kind == "UnknownField");
}

TEST_CASE("environment freezing produces stable candidate tables") {
    auto built = build_corpus_file("02_pointwise.tc");
    CHECK(built.env.frozen());
    CHECK(built.env.candidates("monoid").size() == 2);
    CHECK(built.env.candidates("unknown_class").empty());
}
