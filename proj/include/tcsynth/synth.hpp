/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tcsynth/env.hpp"
#include "tcsynth/unify.hpp"

namespace tcsynth {

struct SynthConfig {
    std::uint64_t fuel = 20000;     // candidate-application budget
    std::uint64_t max_depth = 64;   // subgoal nesting limit
    bool tabled = false;

    SynthConfig with(const OptionOverrides& opts) const {
        SynthConfig out = *this;
        if (opts.fuel)
            out.fuel = *opts.fuel;
        if (opts.max_depth)
            out.max_depth = *opts.max_depth;
        if (opts.tabled)
            out.tabled = *opts.tabled;
        return out;
    }
};

struct SynthStats {
    std::uint64_t applied = 0;    // candidate applications attempted
    std::uint64_t unified = 0;    // head unifications that succeeded
    std::uint64_t backtracks = 0; // head-unified candidates later abandoned
    std::uint64_t max_depth = 0;  // deepest subgoal visited (root = 1)
    std::uint64_t size = 0;       // term_size of the result, 0 on failure
};

struct SynthResult {
    Term term;              // instance constant applied to its binder fills
    Term instantiated_goal; // the prepared goal with all out metas resolved
    SynthStats stats;
};

enum class SynthErrorKind {
    not_found,      // search space exhausted, definitive failure
    fuel_exhausted, // application budget hit, divergence suspected
    depth_exceeded, // nesting limit hit
    ill_formed,     // goal head unknown or metas in in-mode positions
};

struct SynthFailure {
    SynthErrorKind kind = SynthErrorKind::not_found;
    SynthStats stats;
    std::vector<Term> chain; // deepest in-progress subgoal chain
    std::string detail;
};

using SynthOutcome = std::variant<SynthResult, SynthFailure>;

const char* synth_error_name(SynthErrorKind kind);

struct PreparedGoal {
    Term goal;
    std::vector<Term> fresh_metas;
};

// Replace every out-mode argument position with a fresh metavariable.
// Returns nothing when the head is not a registered class.
std::optional<PreparedGoal> prepare_goal(const Term& goal, const Environment& env,
                                         unsigned first_meta_id = 0);

// Depth-first backtracking search for the first instance deriving `goal`.
SynthOutcome synthesize(const Term& goal, const Environment& env, const LocalInstances& locals,
                        const SynthConfig& cfg);

struct Enumeration {
    std::vector<SynthResult> solutions; // deduplicated, discovery order
    bool truncated = false;             // budget hit before exhausting the space
    SynthStats stats;
};

// Exhaustive backtracking enumeration of all derivations (up to budget).
Enumeration synth_enumerate(const Term& goal, const Environment& env,
                            const LocalInstances& locals, const SynthConfig& cfg,
                            std::size_t max_solutions = 64);

// Soundness oracle: does instantiating the result's head declaration with the
// result's arguments produce a head unifying with the goal?
bool check_result(const Term& goal, const SynthResult& result, const Environment& env,
                  const LocalInstances& locals = {});

} // namespace tcsynth
