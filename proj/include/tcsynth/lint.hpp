/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once

#include <string>
#include <vector>

#include "tcsynth/synth.hpp"

namespace tcsynth {

enum class Severity { error, warning };

struct LintFinding {
    std::string linter;
    std::string subject;
    Severity severity = Severity::error;
    std::string message;

    // Structured payload, serialized under "data".
    std::vector<std::string> undetermined; // dangerous_instance
    std::vector<std::string> cycle;        // fails_quickly: class cycle path
    std::string field;                     // diamond: differing data field
    std::vector<std::string> pair;         // diamond: the two instance terms
};

// Flags instances that leave a binder variable undetermined: the variable is
// required by an in-mode position of a recursive constraint but appears in no
// in-mode position of the head.
std::vector<LintFinding> lint_dangerous(const InstanceInfo& inst, const Environment& env);

// Runs every registered class's maximally-general goal and reports the ones
// whose search diverges instead of failing fast.
std::vector<LintFinding> lint_fails_quickly(const Environment& env, const SynthConfig& budget);

// Enumerates all derivations of a goal and compares the data fields of each
// pair of distinct solutions; proof fields are ignored.
std::vector<LintFinding> lint_diamond(const Environment& env, const Term& goal,
                                      const SynthConfig& cfg);

// The value of `field` of the instance denoted by `instance_term`, viewed at
// `cls`: the class accessor applied and normalized. Opaque assignments stay
// as stuck projection chains, which compare equal only to themselves.
Term field_value(const Environment& env, const ClassInfo& cls, const std::string& field,
                 const Term& instance_term);

const char* severity_name(Severity s);

// JSON array with stable key order, matching the documented schema.
std::string findings_to_json(const std::vector<LintFinding>& findings, bool pretty = false);

// One line per finding, for human output.
std::string findings_to_text(const std::vector<LintFinding>& findings);

bool has_errors(const std::vector<LintFinding>& findings);

} // namespace tcsynth
