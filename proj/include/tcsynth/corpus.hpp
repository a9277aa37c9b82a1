/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcsynth/parser.hpp"
#include "tcsynth/synth.hpp"

namespace tcsynth {

// One checked expectation from the corpus manifest.
struct Expectation {
    enum class Kind {
        check_ok,     // file parses and builds
        synth_goal,   // synth "<goal>" <verdict> ["<term>"] [applied<N]
        dangerous,    // lint dangerous clean | finding <subject>
        fails_quickly,// lint fails_quickly clean | finding <a -> b -> c>
        diamond,      // lint diamond "<goal>" clean | finding <field>
    };

    Kind kind = Kind::check_ok;
    bool tabled = false;
    std::string goal_text;
    std::string verdict; // found | not_found | fuel_exhausted | depth_exceeded
    std::string expected_term;
    std::optional<std::uint64_t> applied_less;
    bool expect_clean = false;
    std::string subject; // finding subject (dangerous) or field (diamond)
    std::vector<std::string> cycle;
    std::string raw;
    unsigned line = 0;
};

struct CorpusEntry {
    std::string file; // path relative to the corpus root
    std::string anchor;
    std::vector<Expectation> expectations;
    bool missing = false;
    std::optional<std::string> load_error; // I/O or parse failure
};

struct CorpusManifest {
    std::string root;
    std::vector<CorpusEntry> entries;
    std::vector<std::string> problems; // manifest-level issues
};

// Files every corpus must provide.
const std::vector<std::string>& required_corpus_files();

// Reads <root>/manifest.tcm, checks required files, parses each entry.
CorpusManifest load_corpus(const std::string& root);

struct ExpectationOutcome {
    std::string file;
    std::string description;
    bool pass = false;
    std::string detail;
};

// Runs every expectation of every entry. Each file is built in isolation.
std::vector<ExpectationOutcome> run_corpus(const CorpusManifest& manifest);

// Helper shared with the CLI: read a file into a string.
std::optional<std::string> read_text_file(const std::string& path);

} // namespace tcsynth
