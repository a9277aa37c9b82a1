/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "tcsynth/corpus.hpp"

#include <fstream>
#include <sstream>

#include "tcsynth/lint.hpp"

namespace tcsynth {

const std::vector<std::string>& required_corpus_files() {
    static const std::vector<std::string> files = {
        "02_add_group.tc",   "02_pointwise.tc", "03_comm_monoid.tc", "04_module.tc",
        "05_hom_classes.tc", "06_nsmul_diamond.tc", "06_unique_loop.tc", "07_mixins.tc",
        "08_fact_zmod.tc",   "09_unbundled.tc", "09_has_bot_loop.tc",
    };
    return files;
}

std::optional<std::string> read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

// Splits a manifest line into words, keeping quoted stretches together.
std::vector<std::string> split_quoted(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            if (quoted) {
                out.push_back(cur);
                cur.clear();
            }
            quoted = !quoted;
            continue;
        }
        if (!quoted && (c == ' ' || c == '\t')) {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
            continue;
        }
        cur += c;
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::optional<Expectation> parse_expectation(const std::string& line, unsigned lineno,
                                             std::string& error) {
    Expectation exp;
    exp.raw = line;
    exp.line = lineno;
    std::vector<std::string> words = split_quoted(line);
    if (words.empty())
        return std::nullopt;

    std::size_t i = 0;
    if (words[i] == "check") {
        exp.kind = Expectation::Kind::check_ok;
        if (words.size() < 2 || words[1] != "ok") {
            error = "expected 'check ok'";
            return std::nullopt;
        }
        return exp;
    }
    if (words[i] == "synth") {
        exp.kind = Expectation::Kind::synth_goal;
        ++i;
        if (i < words.size() && words[i] == "--tabled") {
            exp.tabled = true;
            ++i;
        }
        if (i >= words.size()) {
            error = "synth expects a goal";
            return std::nullopt;
        }
        exp.goal_text = words[i++];
        if (i >= words.size()) {
            error = "synth expects a verdict";
            return std::nullopt;
        }
        exp.verdict = words[i++];
        while (i < words.size()) {
            const std::string& w = words[i];
            if (w.rfind("applied<", 0) == 0) {
                exp.applied_less = std::stoull(w.substr(8));
            } else {
                exp.expected_term = w;
            }
            ++i;
        }
        return exp;
    }
    if (words[i] == "lint") {
        ++i;
        if (i >= words.size()) {
            error = "lint expects a linter name";
            return std::nullopt;
        }
        std::string linter = words[i++];
        if (linter == "dangerous")
            exp.kind = Expectation::Kind::dangerous;
        else if (linter == "fails_quickly")
            exp.kind = Expectation::Kind::fails_quickly;
        else if (linter == "diamond")
            exp.kind = Expectation::Kind::diamond;
        else {
            error = "unknown linter '" + linter + "'";
            return std::nullopt;
        }
        if (exp.kind == Expectation::Kind::diamond) {
            if (i >= words.size()) {
                error = "lint diamond expects a goal";
                return std::nullopt;
            }
            exp.goal_text = words[i++];
        }
        if (i >= words.size()) {
            error = "lint expects clean|finding";
            return std::nullopt;
        }
        if (words[i] == "clean") {
            exp.expect_clean = true;
            return exp;
        }
        if (words[i] != "finding") {
            error = "lint expects clean|finding";
            return std::nullopt;
        }
        ++i;
        if (exp.kind == Expectation::Kind::fails_quickly) {
            for (; i < words.size(); ++i)
                if (words[i] != "->")
                    exp.cycle.push_back(words[i]);
        } else if (i < words.size()) {
            exp.subject = words[i];
        }
        return exp;
    }
    error = "unknown expectation '" + words[0] + "'";
    return std::nullopt;
}

} // namespace

CorpusManifest load_corpus(const std::string& root) {
    CorpusManifest manifest;
    manifest.root = root;

    auto text = read_text_file(root + "/manifest.tcm");
    if (!text) {
        manifest.problems.push_back("MissingFile: " + root + "/manifest.tcm");
    } else {
        std::istringstream in(*text);
        std::string line;
        unsigned lineno = 0;
        CorpusEntry* current = nullptr;
        while (std::getline(in, line)) {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#')
                continue;
            if (t.front() == '[' && t.back() == ']') {
                manifest.entries.push_back(CorpusEntry{});
                current = &manifest.entries.back();
                current->file = t.substr(1, t.size() - 2);
                continue;
            }
            if (!current) {
                manifest.problems.push_back("manifest.tcm:" + std::to_string(lineno) +
                                            ": expectation outside a [file] section");
                continue;
            }
            if (t.rfind("anchor ", 0) == 0) {
                current->anchor = trim(t.substr(7));
                continue;
            }
            std::string error;
            auto exp = parse_expectation(t, lineno, error);
            if (exp)
                current->expectations.push_back(std::move(*exp));
            else
                manifest.problems.push_back("manifest.tcm:" + std::to_string(lineno) + ": " +
                                            error);
        }
    }

    // Required files must be present as entries and on disk.
    for (const std::string& required : required_corpus_files()) {
        bool listed = false;
        for (const CorpusEntry& e : manifest.entries)
            if (e.file == required)
                listed = true;
        if (!listed) {
            manifest.entries.push_back(CorpusEntry{});
            manifest.entries.back().file = required;
            manifest.problems.push_back("MissingFile: required corpus file not in manifest: " +
                                        required);
        }
    }

    for (CorpusEntry& entry : manifest.entries) {
        auto content = read_text_file(root + "/" + entry.file);
        if (!content) {
            entry.missing = true;
            entry.load_error = "MissingFile: " + entry.file;
            continue;
        }
        ParseResult parsed = parse_file(*content, entry.file);
        if (const auto* err = std::get_if<ParseError>(&parsed))
            entry.load_error = entry.file + ": " + err->message();
    }
    return manifest;
}

namespace {

struct BuiltFile {
    Environment env;
    std::vector<SynthJob> jobs;
    LocalInstances locals;
    OptionOverrides options;
    std::optional<std::string> error;
};

BuiltFile build_entry(const std::string& root, const CorpusEntry& entry) {
    BuiltFile out;
    auto content = read_text_file(root + "/" + entry.file);
    if (!content) {
        out.error = "MissingFile: " + entry.file;
        return out;
    }
    ParseResult parsed = parse_file(*content, entry.file);
    if (const auto* err = std::get_if<ParseError>(&parsed)) {
        out.error = entry.file + ": " + err->message();
        return out;
    }
    EnvBuilder builder;
    if (auto err = builder.add_file(std::get<SourceFile>(parsed))) {
        out.error = err->message();
        return out;
    }
    out.locals = builder.locals();
    out.options = builder.options();
    out.env = builder.take_env();
    out.jobs = builder.take_jobs();
    return out;
}

std::string verdict_of(const SynthOutcome& outcome) {
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

ExpectationOutcome run_expectation(const CorpusEntry& entry, const Expectation& exp,
                                   const BuiltFile& built) {
    ExpectationOutcome out;
    out.file = entry.file;
    out.description = exp.raw;

    if (built.error) {
        out.pass = false;
        out.detail = *built.error;
        return out;
    }

    switch (exp.kind) {
    case Expectation::Kind::check_ok:
        out.pass = true;
        return out;

    case Expectation::Kind::synth_goal: {
        auto goal = parse_term(exp.goal_text);
        if (const auto* err = std::get_if<ParseError>(&goal)) {
            out.detail = "bad goal: " + err->message();
            return out;
        }
        SynthConfig cfg = SynthConfig{}.with(built.options);
        if (exp.tabled)
            cfg.tabled = true;
        SynthOutcome outcome = synthesize(std::get<Term>(goal), built.env, built.locals, cfg);
        std::string verdict = verdict_of(outcome);
        if (verdict != exp.verdict) {
            out.detail = "verdict " + verdict + ", expected " + exp.verdict;
            return out;
        }
        if (const auto* result = std::get_if<SynthResult>(&outcome)) {
            if (!exp.expected_term.empty() && render_term(result->term) != exp.expected_term) {
                out.detail = "term " + render_term(result->term) + ", expected " +
                             exp.expected_term;
                return out;
            }
            if (exp.applied_less && result->stats.applied >= *exp.applied_less) {
                out.detail = "applied=" + std::to_string(result->stats.applied);
                return out;
            }
            if (!check_result(std::get<Term>(goal), *result, built.env, built.locals)) {
                out.detail = "check_result failed";
                return out;
            }
        } else {
            const auto& failure = std::get<SynthFailure>(outcome);
            if (exp.applied_less && failure.stats.applied >= *exp.applied_less) {
                out.detail = "applied=" + std::to_string(failure.stats.applied);
                return out;
            }
        }
        out.pass = true;
        return out;
    }

    case Expectation::Kind::dangerous: {
        std::vector<LintFinding> findings;
        for (const std::string& name : built.env.instance_order()) {
            auto fs = lint_dangerous(*built.env.find_instance(name), built.env);
            findings.insert(findings.end(), fs.begin(), fs.end());
        }
        if (exp.expect_clean) {
            out.pass = findings.empty();
            if (!out.pass)
                out.detail = "unexpected findings: " + findings_to_text(findings);
            return out;
        }
        for (const LintFinding& f : findings)
            if (f.subject == exp.subject) {
                out.pass = true;
                return out;
            }
        out.detail = "no dangerous-instance finding for " + exp.subject;
        return out;
    }

    case Expectation::Kind::fails_quickly: {
        SynthConfig cfg = SynthConfig{}.with(built.options);
        auto findings = lint_fails_quickly(built.env, cfg);
        if (exp.expect_clean) {
            out.pass = findings.empty();
            if (!out.pass)
                out.detail = "unexpected findings: " + findings_to_text(findings);
            return out;
        }
        for (const LintFinding& f : findings)
            if (exp.cycle.empty() || f.cycle == exp.cycle) {
                out.pass = true;
                return out;
            }
        out.detail = "no fails_quickly finding with the expected cycle";
        return out;
    }

    case Expectation::Kind::diamond: {
        auto goal = parse_term(exp.goal_text);
        if (const auto* err = std::get_if<ParseError>(&goal)) {
            out.detail = "bad goal: " + err->message();
            return out;
        }
        SynthConfig cfg = SynthConfig{}.with(built.options);
        auto findings = lint_diamond(built.env, std::get<Term>(goal), cfg);
        if (exp.expect_clean) {
            out.pass = findings.empty();
            if (!out.pass)
                out.detail = "unexpected findings: " + findings_to_text(findings);
            return out;
        }
        std::size_t matching = 0;
        for (const LintFinding& f : findings)
            if (f.field == exp.subject)
                ++matching;
        out.pass = matching >= 1;
        if (!out.pass)
            out.detail = "no diamond finding for field " + exp.subject;
        return out;
    }
    }
    return out;
}

} // namespace

std::vector<ExpectationOutcome> run_corpus(const CorpusManifest& manifest) {
    std::vector<ExpectationOutcome> results;
    for (const std::string& problem : manifest.problems) {
        ExpectationOutcome out;
        out.file = "manifest.tcm";
        out.description = problem;
        out.pass = false;
        out.detail = problem;
        results.push_back(std::move(out));
    }
    for (const CorpusEntry& entry : manifest.entries) {
        BuiltFile built = build_entry(manifest.root, entry);
        if (entry.expectations.empty()) {
            // Every corpus file must at least load.
            ExpectationOutcome out;
            out.file = entry.file;
            out.description = "check ok (implicit)";
            out.pass = !built.error.has_value();
            if (built.error)
                out.detail = *built.error;
            results.push_back(std::move(out));
            continue;
        }
        for (const Expectation& exp : entry.expectations)
            results.push_back(run_expectation(entry, exp, built));
    }
    return results;
}

} // namespace tcsynth
