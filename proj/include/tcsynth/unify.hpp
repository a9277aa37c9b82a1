/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once

#include <optional>

#include "tcsynth/env.hpp"

namespace tcsynth {

// Weak head normal form. `add`/`mul` on two literals fold, reducible
// definitions unfold at the head, field projections of instances with known
// assignments unfold. Irreducible terms come back unchanged.
Term whnf(const Term& t, const Environment& env);
// Same, resolving metavariables through `subst` as reduction needs them.
Term whnf(const Term& t, const Environment& env, const Substitution& subst);

// Deep normal form: whnf at every node.
Term nf(const Term& t, const Environment& env);
Term nf(const Term& t, const Environment& env, const Substitution& subst);

// First-order unification up to whnf at each head, with occurs-check.
// Extends `subst` in place; on failure bindings added so far remain and the
// caller rolls back via the trail mark.
bool unify(const Term& a, const Term& b, const Environment& env, Substitution& subst);

// Pure variant: returns the extended substitution on success.
std::optional<Substitution> unify(const Term& a, const Term& b, const Environment& env,
                                  const Substitution& subst);

inline Term apply_subst(const Substitution& subst, const Term& t) { return subst.apply(t); }

} // namespace tcsynth
