/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcsynth/synth.hpp"

namespace tcsynth {

enum class BenchMode { bundled, unbundled };

struct BenchRow {
    BenchMode mode = BenchMode::bundled;
    unsigned depth = 0;
    std::uint64_t term_size = 0;
    std::uint64_t applied = 0;
    double elapsed_ms = 0.0; // informational only, excluded from comparisons
    std::string error;       // set when synthesis failed at this depth
};

struct BlowupSpec {
    std::string goal_class = "comm_monoid";
    std::string prod = "prod";
    std::string base = "nat";
};

// The goal type family differs per mode: the bundled series nests products
// linearly (prod(T, base)), one instance application per depth; the
// unbundled series squares the type (prod(T, T)), the shape under which
// instance-argument towers blow up.
Term bench_goal_type(BenchMode mode, unsigned depth, const BlowupSpec& spec);

std::vector<BenchRow> run_blowup(unsigned max_depth, const Environment& bundled,
                                 const Environment& unbundled, const SynthConfig& cfg,
                                 const BlowupSpec& spec = {});

enum class ReportFormat { table, json, csv };

const char* bench_mode_name(BenchMode mode);

// Deterministic report: bundled rows first, depth ascending.
std::string emit_report(const std::vector<BenchRow>& rows, ReportFormat fmt);

} // namespace tcsynth
