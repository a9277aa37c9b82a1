/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.

Acceptance suite: one criterion per check, one PASS/FAIL line each.
*/
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracle_common.hpp"
#include "tcsynth/bench.hpp"
#include "tcsynth/lint.hpp"

using namespace tcsynth;
using namespace tcsynth::testing;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << number << ". " << name;
    if (!detail.empty())
        std::cout << " — " << detail;
    std::cout << "\n";
    if (!pass)
        ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Corpus conformance: all files parse and build, every manifest
//    expectation holds, in under 10 seconds.
void criterion_corpus() {
    auto start = std::chrono::steady_clock::now();
    CorpusManifest manifest = load_corpus(corpus_dir());
    auto results = run_corpus(manifest);
    double elapsed = seconds_since(start);

    std::size_t failed = 0;
    std::string first_failure;
    for (const ExpectationOutcome& r : results) {
        if (!r.pass) {
            ++failed;
            if (first_failure.empty())
                first_failure = r.file + ": " + r.description + " -- " + r.detail;
        }
    }
    bool pass = manifest.entries.size() >= 11 && failed == 0 && elapsed < 10.0;
    std::ostringstream detail;
    detail << manifest.entries.size() << " files, " << results.size() << " expectations, "
           << failed << " failed, " << elapsed << " s";
    if (!first_failure.empty())
        detail << "; first failure: " << first_failure;
    report(1, "corpus conformance", pass, detail.str());
}

// 2. Def-eq matching: the char_p goal written with 2 + 2 resolves to the
//    instance declared at the literal 4.
void criterion_defeq() {
    auto built = build_corpus_file("02_char_p.tc");
    SynthOutcome outcome = synthesize(term("char_p (zmod 4) (2 + 2)"), built.env, {},
                                      SynthConfig{});
    const auto* result = std::get_if<SynthResult>(&outcome);
    bool pass = result && render_term(result->term) == "zmod.char_p 4";
    report(2, "definitional-equality matching", pass,
           result ? "resolved to " + render_term(result->term) : "goal failed");
}

// 3. Blowup separation at depths 0..6: unbundled consecutive ratio >= 2 from
//    depth 2, bundled inside the affine envelope fitted at depths 1-2,
//    under 60 seconds.
void criterion_blowup() {
    auto start = std::chrono::steady_clock::now();
    auto bundled = build_corpus_file("09_bundled.tc");
    auto unbundled = build_corpus_file("09_unbundled.tc");
    SynthConfig cfg;
    cfg.fuel = 200000;
    auto rows = run_blowup(6, bundled.env, unbundled.env, cfg);
    double elapsed = seconds_since(start);

    auto size_at = [&](BenchMode mode, unsigned depth) -> std::uint64_t {
        for (const BenchRow& r : rows)
            if (r.mode == mode && r.depth == depth && r.error.empty())
                return r.term_size;
        return 0;
    };

    bool pass = elapsed < 60.0;
    std::ostringstream detail;
    detail << "unbundled sizes";
    for (unsigned d = 0; d <= 6; ++d)
        detail << " " << size_at(BenchMode::unbundled, d);
    for (unsigned d = 2; d <= 6; ++d) {
        std::uint64_t cur = size_at(BenchMode::unbundled, d);
        std::uint64_t prev = size_at(BenchMode::unbundled, d - 1);
        if (prev == 0 || cur < 2 * prev)
            pass = false;
    }
    std::uint64_t t1 = size_at(BenchMode::bundled, 1);
    std::uint64_t t2 = size_at(BenchMode::bundled, 2);
    std::uint64_t slope = t2 - t1;
    std::uint64_t intercept = t1 - slope;
    detail << "; bundled sizes";
    for (unsigned d = 0; d <= 6; ++d) {
        std::uint64_t got = size_at(BenchMode::bundled, d);
        detail << " " << got;
        if (got == 0 || got > intercept + slope * d)
            pass = false;
    }
    detail << "; " << elapsed << " s";
    report(3, "bundled/unbundled blowup separation", pass, detail.str());
}

// 4. Divergence handling: the unique loop exhausts fuel untabled and fails
//    definitively tabled with applied < 50; the has_bot loop is flagged by
//    fails_quickly with the cycle nonempty -> has_bot -> nonempty.
void criterion_divergence() {
    auto loop = build_corpus_file("06_unique_loop.tc");
    SynthConfig cfg = SynthConfig{}.with(loop.options);
    SynthOutcome untabled = synthesize(term("unique nat"), loop.env, {}, cfg);
    cfg.tabled = true;
    SynthOutcome tabled = synthesize(term("unique nat"), loop.env, {}, cfg);

    bool untabled_ok = false;
    if (const auto* f = std::get_if<SynthFailure>(&untabled))
        untabled_ok = f->kind == SynthErrorKind::fuel_exhausted;
    bool tabled_ok = false;
    std::uint64_t tabled_applied = 0;
    if (const auto* f = std::get_if<SynthFailure>(&tabled)) {
        tabled_ok = f->kind == SynthErrorKind::not_found && f->stats.applied < 50;
        tabled_applied = f->stats.applied;
    }

    auto bots = build_corpus_file("09_has_bot_loop.tc");
    auto findings = lint_fails_quickly(bots.env, SynthConfig{});
    bool cycle_ok = false;
    for (const LintFinding& f : findings)
        if (f.cycle == std::vector<std::string>{"nonempty", "has_bot", "nonempty"})
            cycle_ok = true;

    std::ostringstream detail;
    detail << "untabled=" << (untabled_ok ? "FuelExhausted" : "wrong") << ", tabled applied="
           << tabled_applied << ", has_bot cycle " << (cycle_ok ? "found" : "missing");
    report(4, "divergence handling", untabled_ok && tabled_ok && cycle_ok, detail.str());
}

// 5. Dangerous instances: module.to_add_comm_monoid flagged, the out_param
//    variant clean, every generated projection clean, no false positives on
//    the bundled hierarchy.
void criterion_dangerous() {
    auto flagged_subjects = [](const Built& built) {
        std::vector<std::string> out;
        for (const std::string& name : built.env.instance_order())
            for (const LintFinding& f :
                 lint_dangerous(*built.env.find_instance(name), built.env))
                out.push_back(f.subject);
        return out;
    };

    auto module_env = build_corpus_file("04_module.tc");
    auto module_findings = flagged_subjects(module_env);
    bool flagged = module_findings ==
                   std::vector<std::string>{"module.to_add_comm_monoid"};

    auto out_env = build_corpus_file("04_module_out.tc");
    bool out_clean = flagged_subjects(out_env).empty();

    auto hierarchy = build_corpus_file("03_comm_monoid.tc");
    bool hierarchy_clean = flagged_subjects(hierarchy).empty();

    bool projections_clean = true;
    for (const char* file : {"03_comm_monoid.tc", "03_comm_monoid_new.tc", "02_add_group.tc",
                             "05_hom_classes.tc"}) {
        auto built = build_corpus_file(file);
        for (const std::string& name : built.env.instance_order()) {
            const InstanceInfo* inst = built.env.find_instance(name);
            if (inst->provenance == Provenance::projection &&
                !lint_dangerous(*inst, built.env).empty())
                projections_clean = false;
        }
    }

    std::ostringstream detail;
    detail << "module flagged=" << flagged << ", out_param clean=" << out_clean
           << ", hierarchy clean=" << hierarchy_clean << ", projections clean="
           << projections_clean;
    report(5, "dangerous-instance detection",
           flagged && out_clean && hierarchy_clean && projections_clean, detail.str());
}

// 6. Diamond linter: the nsmul-correct corpus passes, the nsmul_rec variant
//    yields exactly one finding naming smul, the new-mode diamond is clean.
void criterion_diamond() {
    auto good = build_corpus_file("06_nsmul_diamond.tc");
    auto good_findings = lint_diamond(good.env, term("module nat nat"), SynthConfig{});

    auto bad = build_corpus_file("06_nsmul_diamond_bad.tc");
    auto bad_findings = lint_diamond(bad.env, term("module nat nat"), SynthConfig{});

    auto fresh = build_corpus_file("03_comm_monoid_new.tc");
    bool new_mode_clean = lint_diamond(fresh.env, term("has_mul nat"), SynthConfig{}).empty() &&
                          lint_diamond(fresh.env, term("semigroup nat"), SynthConfig{}).empty();

    bool pass = good_findings.empty() && bad_findings.size() == 1 &&
                bad_findings[0].field == "smul" && new_mode_clean;
    std::ostringstream detail;
    detail << "good=" << good_findings.size() << " findings, bad=" << bad_findings.size()
           << (bad_findings.empty() ? "" : " (field " + bad_findings[0].field + ")")
           << ", new-mode clean=" << new_mode_clean;
    report(6, "diamond linter", pass, detail.str());
}

// 7. Oracle equivalence on 500 random acyclic environments, with the
//    soundness check on every success.
void criterion_oracle() {
    OracleReport r = run_oracle_comparison(500, /*seed=*/20260808);
    bool pass = r.mismatches.empty() && r.goals_checked >= 500;
    std::ostringstream detail;
    detail << r.goals_checked << " goals over 500 environments, " << r.successes
           << " found / " << r.failures << " failed, " << r.mismatches.size() << " mismatches";
    report(7, "oracle equivalence", pass, detail.str());
    for (std::size_t i = 0; i < r.mismatches.size() && i < 2; ++i)
        std::cout << "       " << r.mismatches[i] << "\n";
}

// 8. Determinism: repeated CLI runs of check/synth/lint are byte-identical.
void criterion_determinism() {
    bool pass = true;
    std::string detail;
    std::vector<std::string> commands = {
        "check " + corpus_dir() + "/03_comm_monoid.tc",
        "synth " + corpus_dir() + "/04_module.tc",
        "synth " + corpus_dir() + "/06_unique_loop.tc",
        "synth --json " + corpus_dir() + "/05_hom_classes.tc",
        "lint --json " + corpus_dir() + "/04_module.tc",
        "lint " + corpus_dir() + "/09_has_bot_loop.tc",
    };
    for (const std::string& args : commands) {
        CliResult a = run_cli(args);
        CliResult b = run_cli(args);
        if (a.output != b.output || a.exit_code != b.exit_code) {
            pass = false;
            detail = "diverged: " + args;
            break;
        }
    }
    report(8, "output determinism", pass, detail);
}

} // namespace

int main() {
    criterion_corpus();
    criterion_defeq();
    criterion_blowup();
    criterion_divergence();
    criterion_dangerous();
    criterion_diamond();
    criterion_oracle();
    criterion_determinism();
    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
