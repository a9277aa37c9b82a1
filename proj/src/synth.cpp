/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "tcsynth/synth.hpp"

#include <functional>
#include <map>

#include <pthread.h>

namespace tcsynth {

namespace {

// The search keeps one continuation frame per solved subgoal, so large
// derivations (the unbundled blowup corpus) outgrow the default thread
// stack. Deep searches run on a worker thread with a generous stack.
void* search_trampoline(void* arg) {
    auto* body = static_cast<std::function<void()>*>(arg);
    (*body)();
    return nullptr;
}

void run_with_search_stack(const std::function<void()>& body) {
    constexpr std::size_t kStackBytes = 512ull * 1024 * 1024;
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, kStackBytes);
    pthread_t tid;
    std::function<void()> fn = body;
    if (pthread_create(&tid, &attr, search_trampoline, &fn) != 0) {
        pthread_attr_destroy(&attr);
        body();
        return;
    }
    pthread_join(tid, nullptr);
    pthread_attr_destroy(&attr);
}

} // namespace

const char* synth_error_name(SynthErrorKind kind) {
    switch (kind) {
    case SynthErrorKind::not_found: return "NotFound";
    case SynthErrorKind::fuel_exhausted: return "FuelExhausted";
    case SynthErrorKind::depth_exceeded: return "DepthExceeded";
    case SynthErrorKind::ill_formed: return "IllFormedGoal";
    }
    return "?";
}

std::optional<PreparedGoal> prepare_goal(const Term& goal, const Environment& env,
                                         unsigned first_meta_id) {
    if (!goal.is_const())
        return std::nullopt;
    const ClassInfo* cls = env.find_class(goal.name());
    if (!cls || !cls->is_class || goal.args().size() != cls->arity())
        return std::nullopt;
    PreparedGoal out;
    std::vector<Term> args = goal.args();
    for (std::size_t i = 0; i < cls->params.size(); ++i) {
        if (cls->params[i].out) {
            Term m = Term::meta(first_meta_id++);
            out.fresh_metas.push_back(m);
            args[i] = m;
        }
    }
    out.goal = Term::constant(goal.name(), std::move(args));
    return out;
}

namespace {

// Renumber metas by first occurrence, for table keys and stored answers.
Term canonicalize(const Term& t, std::map<unsigned, unsigned>& map) {
    switch (t.kind()) {
    case TermKind::var:
    case TermKind::nat_lit:
        return t;
    case TermKind::meta: {
        auto it = map.emplace(t.meta_id(), static_cast<unsigned>(map.size())).first;
        return Term::meta(it->second);
    }
    case TermKind::constant:
        break;
    }
    if (t.args().empty())
        return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args())
        args.push_back(canonicalize(a, map));
    return Term::constant(t.name(), std::move(args));
}

// Replace canonical metas by fresh ones.
Term refresh_metas(const Term& t, std::unordered_map<unsigned, Term>& map, unsigned& counter) {
    switch (t.kind()) {
    case TermKind::var:
    case TermKind::nat_lit:
        return t;
    case TermKind::meta: {
        auto it = map.find(t.meta_id());
        if (it == map.end())
            it = map.emplace(t.meta_id(), Term::meta(counter++)).first;
        return it->second;
    }
    case TermKind::constant:
        break;
    }
    if (t.args().empty())
        return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args())
        args.push_back(refresh_metas(a, map, counter));
    return Term::constant(t.name(), std::move(args));
}

struct FuelAbort {};
struct DepthAbort {};

class Searcher {
public:
    Searcher(const Environment& env, const LocalInstances& locals, const SynthConfig& cfg)
        : env_(env), locals_(locals), cfg_(cfg) {}

    SynthStats stats;
    Substitution subst;
    unsigned next_meta = 0;
    std::vector<Term> deepest_chain;

    using Yield = std::function<bool(const Term&)>;

    bool solve(const Term& goal, std::uint64_t depth, const Yield& yield) {
        Term resolved = subst.apply(goal);
        chain_.push_back(resolved);
        if (chain_.size() > deepest_chain.size())
            deepest_chain = chain_;
        struct Pop {
            std::vector<Term>& chain;
            ~Pop() { chain.pop_back(); }
        } pop{chain_};
        if (depth > cfg_.max_depth)
            throw DepthAbort{};
        if (depth > stats.max_depth)
            stats.max_depth = depth;

        Term g = whnf(goal, env_, subst);
        if (!g.is_const())
            return false;
        if (cfg_.tabled)
            return solve_tabled(g, depth, yield);
        return solve_candidates(g, depth, yield);
    }

private:
    void spend_fuel() {
        if (stats.applied >= cfg_.fuel)
            throw FuelAbort{};
        ++stats.applied;
    }

    bool solve_candidates(const Term& goal, std::uint64_t depth, const Yield& yield) {
        const ClassInfo* cls = env_.find_class(goal.name());
        for (const LocalInstance& local : locals_) {
            spend_fuel();
            std::size_t mark = subst.mark();
            if (unify(goal, local.head, env_, subst)) {
                ++stats.unified;
                if (yield(Term::constant(local.name)))
                    return true;
                ++stats.backtracks;
            }
            subst.rollback(mark);
        }
        if (!cls || !cls->is_class)
            return false;
        for (const InstanceInfo* inst : env_.candidates(goal.name())) {
            spend_fuel();
            std::size_t mark = subst.mark();
            std::unordered_map<std::string, Term> renaming;
            for (const Binder& b : inst->binders)
                if (b.name)
                    renaming.emplace(*b.name, Term::meta(next_meta++));
            Term head = subst_vars(inst->head, renaming);
            if (!unify(goal, head, env_, subst)) {
                subst.rollback(mark);
                continue;
            }
            ++stats.unified;
            std::vector<Term> fills(inst->binders.size());
            if (solve_binders(*inst, renaming, 0, fills, depth, yield))
                return true;
            ++stats.backtracks;
            subst.rollback(mark);
        }
        return false;
    }

    bool solve_binders(const InstanceInfo& inst,
                       const std::unordered_map<std::string, Term>& renaming, std::size_t idx,
                       std::vector<Term>& fills, std::uint64_t depth, const Yield& yield) {
        if (idx == inst.binders.size())
            return assemble(inst, renaming, fills, yield);
        const Binder& b = inst.binders[idx];
        if (b.style != BinderStyle::inst_arg)
            return solve_binders(inst, renaming, idx + 1, fills, depth, yield);
        Term subgoal = subst_vars(b.type, renaming);
        return solve(subgoal, depth + 1, [&](const Term& witness) {
            fills[idx] = witness;
            return solve_binders(inst, renaming, idx + 1, fills, depth, yield);
        });
    }

    // The reported instance term records explicit and instance-binder fills;
    // implicit fills are recoverable by unification and stay elided, matching
    // the way instance terms are displayed.
    bool assemble(const InstanceInfo& inst,
                  const std::unordered_map<std::string, Term>& renaming,
                  const std::vector<Term>& fills, const Yield& yield) {
        std::vector<Term> args;
        for (std::size_t i = 0; i < inst.binders.size(); ++i) {
            const Binder& b = inst.binders[i];
            switch (b.style) {
            case BinderStyle::implicit_arg:
                break;
            case BinderStyle::explicit_arg: {
                Term value = subst.apply(renaming.at(*b.name));
                if (contains_meta(value))
                    return false; // undetermined explicit argument
                args.push_back(std::move(value));
                break;
            }
            case BinderStyle::inst_arg:
                args.push_back(fills[i]);
                break;
            }
        }
        return yield(Term::constant(inst.name, std::move(args)));
    }

    // --- tabled mode -----------------------------------------------------

    struct TableEntry {
        bool done = false;
        // (canonicalized instantiated goal, witness)
        std::vector<std::pair<Term, Term>> answers;
    };

    bool solve_tabled(const Term& goal, std::uint64_t depth, const Yield& yield) {
        std::map<unsigned, unsigned> canon_map;
        Term resolved = subst.apply(goal);
        std::string key = render_term(canonicalize(resolved, canon_map));
        auto it = table_.find(key);
        if (it != table_.end() && !it->second.done)
            return false; // in-progress key: cut the cycle
        if (it == table_.end()) {
            table_.emplace(key, TableEntry{});
            TableEntry collected;
            std::size_t mark = subst.mark();
            solve_candidates(goal, depth, [&](const Term& witness) {
                std::map<unsigned, unsigned> m;
                Term answer = canonicalize(subst.apply(goal), m);
                for (const auto& [g, w] : collected.answers)
                    if (g == answer && w == witness)
                        return false;
                collected.answers.emplace_back(std::move(answer), witness);
                return false; // keep enumerating
            });
            subst.rollback(mark);
            collected.done = true;
            table_[key] = std::move(collected);
            it = table_.find(key);
        }
        for (const auto& [answer_goal, witness] : it->second.answers) {
            std::size_t mark = subst.mark();
            std::unordered_map<unsigned, Term> fresh;
            Term instantiated = refresh_metas(answer_goal, fresh, next_meta);
            if (unify(goal, instantiated, env_, subst)) {
                if (yield(witness))
                    return true;
                ++stats.backtracks;
            }
            subst.rollback(mark);
        }
        return false;
    }

    const Environment& env_;
    const LocalInstances& locals_;
    SynthConfig cfg_;
    std::vector<Term> chain_;
    std::map<std::string, TableEntry> table_;
};

// Metas are legal only in out-mode argument positions of the goal head.
bool well_formed_goal(const Term& goal, const ClassInfo& cls) {
    if (goal.args().size() != cls.arity())
        return false;
    for (std::size_t i = 0; i < goal.args().size(); ++i)
        if (!cls.params[i].out && contains_meta(goal.args()[i]))
            return false;
    return true;
}

} // namespace

SynthOutcome synthesize(const Term& goal, const Environment& env, const LocalInstances& locals,
                        const SynthConfig& cfg) {
    const ClassInfo* cls = goal.is_const() ? env.find_class(goal.name()) : nullptr;
    if (!cls || !cls->is_class)
        return SynthFailure{SynthErrorKind::ill_formed, {}, {},
                            "goal head is not a registered class: " + render_term(goal)};
    if (!well_formed_goal(goal, *cls))
        return SynthFailure{SynthErrorKind::ill_formed, {}, {},
                            "metavariables allowed in out-mode positions only: " +
                                render_term(goal)};

    Searcher searcher(env, locals, cfg);
    auto prepared = prepare_goal(goal, env, 0);
    searcher.next_meta = static_cast<unsigned>(prepared->fresh_metas.size());

    SynthOutcome outcome = SynthFailure{};
    run_with_search_stack([&] {
        try {
            Term witness;
            Term instantiated;
            bool found = searcher.solve(prepared->goal, 1, [&](const Term& w) {
                Term ig = searcher.subst.apply(prepared->goal);
                if (contains_meta(ig))
                    return false; // an out parameter stayed undetermined
                witness = w;
                instantiated = ig;
                return true;
            });
            if (found) {
                searcher.stats.size = term_size(witness);
                outcome = SynthResult{witness, instantiated, searcher.stats};
                return;
            }
            outcome = SynthFailure{SynthErrorKind::not_found, searcher.stats,
                                   searcher.deepest_chain, ""};
        } catch (const FuelAbort&) {
            outcome = SynthFailure{SynthErrorKind::fuel_exhausted, searcher.stats,
                                   searcher.deepest_chain, ""};
        } catch (const DepthAbort&) {
            outcome = SynthFailure{SynthErrorKind::depth_exceeded, searcher.stats,
                                   searcher.deepest_chain, ""};
        }
    });
    return outcome;
}

Enumeration synth_enumerate(const Term& goal, const Environment& env,
                            const LocalInstances& locals, const SynthConfig& cfg,
                            std::size_t max_solutions) {
    Enumeration out;
    const ClassInfo* cls = goal.is_const() ? env.find_class(goal.name()) : nullptr;
    if (!cls || !cls->is_class || !well_formed_goal(goal, *cls)) {
        out.truncated = true;
        return out;
    }
    Searcher searcher(env, locals, cfg);
    auto prepared = prepare_goal(goal, env, 0);
    searcher.next_meta = static_cast<unsigned>(prepared->fresh_metas.size());
    run_with_search_stack([&] {
        try {
            searcher.solve(prepared->goal, 1, [&](const Term& w) {
                Term ig = searcher.subst.apply(prepared->goal);
                if (contains_meta(ig))
                    return false;
                for (const SynthResult& seen : out.solutions)
                    if (seen.term == w)
                        return false;
                SynthStats stats = searcher.stats;
                stats.size = term_size(w);
                out.solutions.push_back(SynthResult{w, ig, stats});
                return out.solutions.size() >= max_solutions;
            });
            if (out.solutions.size() >= max_solutions)
                out.truncated = true;
        } catch (const FuelAbort&) {
            out.truncated = true;
        } catch (const DepthAbort&) {
            out.truncated = true;
        }
    });
    out.stats = searcher.stats;
    return out;
}

bool check_result(const Term& goal, const SynthResult& result, const Environment& env,
                  const LocalInstances& locals) {
    const Term& term = result.term;
    if (!term.is_const())
        return false;
    for (const LocalInstance& local : locals) {
        if (local.name == term.name() && term.args().empty()) {
            Substitution subst;
            auto prepared = prepare_goal(goal, env, 0);
            Term g = prepared ? prepared->goal : goal;
            return unify(g, local.head, env, subst);
        }
    }
    const InstanceInfo* inst = env.find_instance(term.name());
    if (!inst)
        return false;

    Substitution subst;
    unsigned counter = 0;
    auto prepared = prepare_goal(goal, env, counter);
    Term g = goal;
    if (prepared) {
        g = prepared->goal;
        counter = static_cast<unsigned>(prepared->fresh_metas.size());
    }
    std::unordered_map<std::string, Term> renaming;
    for (const Binder& b : inst->binders)
        if (b.name)
            renaming.emplace(*b.name, Term::meta(counter++));

    // Pin the recorded explicit/instance arguments, then match the head.
    std::size_t ai = 0;
    for (const Binder& b : inst->binders) {
        if (b.style == BinderStyle::implicit_arg)
            continue;
        if (ai >= term.args().size())
            return false;
        if (b.name && !unify(renaming.at(*b.name), term.args()[ai], env, subst))
            return false;
        ++ai;
    }
    if (ai != term.args().size())
        return false;
    Term head = subst_vars(inst->head, renaming);
    return unify(g, head, env, subst);
}

} // namespace tcsynth
