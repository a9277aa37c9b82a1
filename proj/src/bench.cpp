/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "tcsynth/bench.hpp"

#include <algorithm>
#include <chrono>

#include "json.hpp"

namespace tcsynth {

const char* bench_mode_name(BenchMode mode) {
    return mode == BenchMode::bundled ? "bundled" : "unbundled";
}

Term bench_goal_type(BenchMode mode, unsigned depth, const BlowupSpec& spec) {
    Term t = Term::constant(spec.base);
    for (unsigned i = 0; i < depth; ++i) {
        Term right = mode == BenchMode::bundled ? Term::constant(spec.base) : t;
        t = Term::constant(spec.prod, {t, right});
    }
    return t;
}

namespace {

BenchRow run_row(BenchMode mode, unsigned depth, const Environment& env, const SynthConfig& cfg,
                 const BlowupSpec& spec) {
    BenchRow row;
    row.mode = mode;
    row.depth = depth;
    Term goal = Term::constant(spec.goal_class, {bench_goal_type(mode, depth, spec)});
    auto start = std::chrono::steady_clock::now();
    SynthOutcome outcome = synthesize(goal, env, {}, cfg);
    auto stop = std::chrono::steady_clock::now();
    row.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    if (const auto* result = std::get_if<SynthResult>(&outcome)) {
        row.term_size = result->stats.size;
        row.applied = result->stats.applied;
    } else {
        const auto& failure = std::get<SynthFailure>(outcome);
        row.applied = failure.stats.applied;
        row.error = synth_error_name(failure.kind);
    }
    return row;
}

} // namespace

std::vector<BenchRow> run_blowup(unsigned max_depth, const Environment& bundled,
                                 const Environment& unbundled, const SynthConfig& cfg,
                                 const BlowupSpec& spec) {
    std::vector<BenchRow> rows;
    for (unsigned d = 0; d <= max_depth; ++d)
        rows.push_back(run_row(BenchMode::bundled, d, bundled, cfg, spec));
    for (unsigned d = 0; d <= max_depth; ++d)
        rows.push_back(run_row(BenchMode::unbundled, d, unbundled, cfg, spec));
    return rows;
}

std::string emit_report(const std::vector<BenchRow>& rows_in, ReportFormat fmt) {
    std::vector<BenchRow> rows = rows_in;
    std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        if (a.mode != b.mode)
            return a.mode == BenchMode::bundled;
        return a.depth < b.depth;
    });

    if (fmt == ReportFormat::json) {
        nlohmann::ordered_json out;
        out["rows"] = nlohmann::ordered_json::array();
        for (const BenchRow& r : rows) {
            nlohmann::ordered_json item;
            item["mode"] = bench_mode_name(r.mode);
            item["depth"] = r.depth;
            item["term_size"] = r.term_size;
            item["applied"] = r.applied;
            item["elapsed_ms"] = r.elapsed_ms;
            if (!r.error.empty())
                item["error"] = r.error;
            out["rows"].push_back(item);
        }
        return out.dump(2) + "\n";
    }

    if (fmt == ReportFormat::csv) {
        std::string out = "mode,depth,term_size,applied,elapsed_ms,error\n";
        for (const BenchRow& r : rows) {
            out += std::string(bench_mode_name(r.mode)) + "," + std::to_string(r.depth) + "," +
                   std::to_string(r.term_size) + "," + std::to_string(r.applied) + "," +
                   std::to_string(r.elapsed_ms) + "," + r.error + "\n";
        }
        return out;
    }

    std::string out = "mode        depth  term_size     applied  elapsed_ms\n";
    for (const BenchRow& r : rows) {
        char line[160];
        if (r.error.empty()) {
            std::snprintf(line, sizeof(line), "%-10s %6u %10llu %11llu %11.3f\n",
                          bench_mode_name(r.mode), r.depth,
                          static_cast<unsigned long long>(r.term_size),
                          static_cast<unsigned long long>(r.applied), r.elapsed_ms);
        } else {
            std::snprintf(line, sizeof(line), "%-10s %6u %10s %11llu %11.3f  %s\n",
                          bench_mode_name(r.mode), r.depth, "-",
                          static_cast<unsigned long long>(r.applied), r.elapsed_ms,
                          r.error.c_str());
        }
        out += line;
    }
    return out;
}

} // namespace tcsynth
