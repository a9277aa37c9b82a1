/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tcsynth/bench.hpp"
#include "tcsynth/corpus.hpp"
#include "tcsynth/lint.hpp"
#include "tcsynth/parser.hpp"
#include "tcsynth/synth.hpp"

namespace {

using namespace tcsynth;

struct Loaded {
    Environment env;
    std::vector<SynthJob> jobs;
    LocalInstances locals;
    OptionOverrides options;
};

// 0 = ok, 2 = I/O error, 1 = parse or declaration error.
int load_files(const std::vector<std::string>& paths, Loaded& out) {
    EnvBuilder builder;
    for (const std::string& path : paths) {
        auto text = read_text_file(path);
        if (!text) {
            std::cerr << path << ": cannot read file\n";
            return 2;
        }
        ParseResult parsed = parse_file(*text, path);
        if (const auto* err = std::get_if<ParseError>(&parsed)) {
            std::cerr << path << ": " << err->message() << "\n";
            return 1;
        }
        if (auto err = builder.add_file(std::get<SourceFile>(parsed))) {
            std::cerr << err->message() << "\n";
            return 1;
        }
    }
    out.locals = builder.locals();
    out.options = builder.options();
    out.env = builder.take_env();
    out.jobs = builder.take_jobs();
    return 0;
}

SynthConfig base_config() {
    SynthConfig cfg;
    if (const char* fuel = std::getenv("TCSYNTH_FUEL")) {
        if (auto v = Nat::parse(fuel); v && v->to_u64())
            cfg.fuel = *v->to_u64();
    }
    return cfg;
}

void apply_cli_overrides(SynthConfig& cfg, const CLI::Option* fuel_opt, std::uint64_t fuel,
                         const CLI::Option* depth_opt, std::uint64_t depth,
                         const CLI::Option* tabled_opt, bool tabled) {
    if (fuel_opt->count() > 0)
        cfg.fuel = fuel;
    if (depth_opt->count() > 0)
        cfg.max_depth = depth;
    if (tabled_opt->count() > 0)
        cfg.tabled = tabled;
}

std::string verdict_name(const SynthOutcome& outcome) {
    if (std::holds_alternative<SynthResult>(outcome))
        return "found";
    return synth_error_name(std::get<SynthFailure>(outcome).kind);
}

std::string verdict_key(const SynthOutcome& outcome) {
    if (std::holds_alternative<SynthResult>(outcome))
        return "found";
    switch (std::get<SynthFailure>(outcome).kind) {
    case SynthErrorKind::not_found: return "not_found";
    case SynthErrorKind::fuel_exhausted: return "fuel_exhausted";
    case SynthErrorKind::depth_exceeded: return "depth_exceeded";
    case SynthErrorKind::ill_formed: return "ill_formed";
    }
    return "?";
}

int cmd_check(const std::vector<std::string>& files) {
    // Validation pass: every file is parsed and built in its own
    // environment, with one status line each.
    int rc = 0;
    for (const std::string& f : files) {
        Loaded loaded;
        int file_rc = load_files({f}, loaded);
        if (file_rc == 2)
            return 2;
        if (file_rc != 0) {
            std::cout << "error " << f << "\n";
            rc = 1;
            continue;
        }
        std::cout << "ok " << f << "\n";
    }
    return rc;
}

int cmd_synth(const std::vector<std::string>& files, const SynthConfig& base,
              const CLI::Option* fuel_opt, std::uint64_t fuel, const CLI::Option* depth_opt,
              std::uint64_t depth, const CLI::Option* tabled_opt, bool tabled, bool json) {
    Loaded loaded;
    int rc = load_files(files, loaded);
    if (rc != 0)
        return rc;
    if (loaded.jobs.empty()) {
        std::cerr << "no #synth goals in input\n";
        return 1;
    }
    bool all_found = true;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const SynthJob& job : loaded.jobs) {
        SynthConfig cfg = base.with(job.opts);
        apply_cli_overrides(cfg, fuel_opt, fuel, depth_opt, depth, tabled_opt, tabled);
        SynthOutcome outcome = synthesize(job.goal, loaded.env, job.locals, cfg);
        const auto* result = std::get_if<SynthResult>(&outcome);
        if (!result)
            all_found = false;
        if (json) {
            nlohmann::ordered_json row;
            row["goal"] = render_term(job.goal);
            row["verdict"] = verdict_key(outcome);
            if (result) {
                row["term"] = render_term(result->term);
                row["instantiated_goal"] = render_term(result->instantiated_goal);
            }
            const SynthStats& st =
                result ? result->stats : std::get<SynthFailure>(outcome).stats;
            row["applied"] = st.applied;
            row["unified"] = st.unified;
            row["backtracks"] = st.backtracks;
            row["max_depth"] = st.max_depth;
            row["size"] = st.size;
            rows.push_back(row);
        } else {
            std::cout << "#synth " << render_term(job.goal) << ": ";
            if (result) {
                std::cout << "found " << render_term(result->term) << " (applied="
                          << result->stats.applied << ")";
            } else {
                const auto& failure = std::get<SynthFailure>(outcome);
                std::cout << verdict_name(outcome) << " (applied=" << failure.stats.applied
                          << ")";
                if (!failure.detail.empty())
                    std::cout << " " << failure.detail;
            }
            std::cout << "\n";
        }
    }
    if (json)
        std::cout << rows.dump(2) << "\n";
    return all_found ? 0 : 1;
}

int cmd_lint(const std::vector<std::string>& files, const SynthConfig& base,
             const std::vector<std::string>& linters, bool json) {
    Loaded loaded;
    int rc = load_files(files, loaded);
    if (rc != 0)
        return rc;
    auto selected = [&](const std::string& name) {
        return linters.empty() ||
               std::find(linters.begin(), linters.end(), name) != linters.end();
    };
    SynthConfig cfg = base.with(loaded.options);
    std::vector<LintFinding> findings;
    if (selected("dangerous")) {
        for (const std::string& name : loaded.env.instance_order()) {
            auto fs = lint_dangerous(*loaded.env.find_instance(name), loaded.env);
            findings.insert(findings.end(), fs.begin(), fs.end());
        }
    }
    if (selected("fails_quickly")) {
        auto fs = lint_fails_quickly(loaded.env, cfg);
        findings.insert(findings.end(), fs.begin(), fs.end());
    }
    if (selected("diamond")) {
        // The diamond linter needs concrete goals; files provide them via #synth.
        for (const SynthJob& job : loaded.jobs) {
            if (contains_meta(job.goal))
                continue;
            auto fs = lint_diamond(loaded.env, job.goal, cfg);
            findings.insert(findings.end(), fs.begin(), fs.end());
        }
    }
    if (json)
        std::cout << findings_to_json(findings) << "\n";
    else
        std::cout << findings_to_text(findings);
    return has_errors(findings) ? 1 : 0;
}

int cmd_bench(const std::string& bundled_file, const std::string& unbundled_file,
              unsigned max_depth, const SynthConfig& cfg, const std::string& format) {
    Loaded bundled;
    if (int rc = load_files({bundled_file}, bundled); rc != 0)
        return rc;
    Loaded unbundled;
    if (int rc = load_files({unbundled_file}, unbundled); rc != 0)
        return rc;
    std::vector<BenchRow> rows = run_blowup(max_depth, bundled.env, unbundled.env, cfg);
    ReportFormat fmt = ReportFormat::table;
    if (format == "json")
        fmt = ReportFormat::json;
    else if (format == "csv")
        fmt = ReportFormat::csv;
    std::cout << emit_report(rows, fmt);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tcsynth: typeclass instance resolution engine"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::uint64_t fuel = 20000;
    std::uint64_t max_depth = 64;
    bool tabled = false;
    bool json = false;
    std::vector<std::string> linters;

    auto* check = app.add_subcommand("check", "parse and build declaration files");
    check->add_option("files", files, "input .tc files")->required();

    auto* synth = app.add_subcommand("synth", "answer the #synth goals in the input");
    synth->add_option("files", files, "input .tc files")->required();
    auto* synth_fuel = synth->add_option("--fuel", fuel, "candidate application budget");
    auto* synth_depth = synth->add_option("--max-depth", max_depth, "subgoal depth limit");
    auto* synth_tabled = synth->add_flag("--tabled", tabled, "tabled resolution");
    synth->add_flag("--json", json, "machine-readable output");

    auto* lint = app.add_subcommand("lint", "run linters over the built environment");
    lint->add_option("files", files, "input .tc files")->required();
    auto* lint_fuel = lint->add_option("--fuel", fuel, "linter synthesis budget");
    auto* lint_depth = lint->add_option("--max-depth", max_depth, "subgoal depth limit");
    lint->add_option("--linter", linters, "linters to run (dangerous, fails_quickly, diamond)");
    lint->add_flag("--json", json, "machine-readable output");

    std::string bundled_file, unbundled_file, format = "table";
    unsigned bench_depth = 6;
    std::uint64_t bench_fuel = 200000;
    auto* bench = app.add_subcommand("bench", "bundled vs unbundled blowup measurement");
    bench->add_option("bundled", bundled_file, "corpus with the bundled hierarchy")->required();
    bench->add_option("unbundled", unbundled_file, "corpus with the unbundled hierarchy")
        ->required();
    bench->add_option("--max-depth", bench_depth, "deepest product nesting");
    auto* bench_fuel_opt = bench->add_option("--fuel", bench_fuel, "per-goal budget");
    bench->add_option("--format", format, "table|json|csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));

    CLI11_PARSE(app, argc, argv);

    SynthConfig base = base_config();

    if (check->parsed())
        return cmd_check(files);
    if (synth->parsed())
        return cmd_synth(files, base, synth_fuel, fuel, synth_depth, max_depth, synth_tabled,
                         tabled, json);
    if (lint->parsed()) {
        SynthConfig cfg = base;
        if (lint_fuel->count() > 0)
            cfg.fuel = fuel;
        if (lint_depth->count() > 0)
            cfg.max_depth = max_depth;
        return cmd_lint(files, cfg, linters, json);
    }
    if (bench->parsed()) {
        SynthConfig cfg = base;
        cfg.fuel = bench_fuel;
        if (const char* env_fuel = std::getenv("TCSYNTH_FUEL");
            env_fuel && bench_fuel_opt->count() == 0) {
            if (auto v = Nat::parse(env_fuel); v && v->to_u64())
                cfg.fuel = *v->to_u64();
        }
        return cmd_bench(bundled_file, unbundled_file, bench_depth, cfg, format);
    }
    return 0;
}
