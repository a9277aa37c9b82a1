/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcsynth/corpus.hpp"
#include "tcsynth/env.hpp"
#include "tcsynth/parser.hpp"

namespace tcsynth::testing {

struct Built {
    Environment env;
    std::vector<SynthJob> jobs;
    LocalInstances locals;
    OptionOverrides options;
};

// Parses and builds a declaration source; throws on any error so tests fail
// loudly at the site of a bad fixture.
inline Built build(const std::string& source) {
    ParseResult parsed = parse_file(source, "<test>");
    if (const auto* err = std::get_if<ParseError>(&parsed))
        throw std::runtime_error(err->message());
    EnvBuilder builder;
    if (auto err = builder.add_file(std::get<SourceFile>(parsed)))
        throw std::runtime_error(err->message());
    Built out;
    out.locals = builder.locals();
    out.options = builder.options();
    out.env = builder.take_env();
    out.jobs = builder.take_jobs();
    return out;
}

inline Built build_corpus_file(const std::string& name) {
    std::string path = std::string(TCSYNTH_CORPUS_DIR) + "/" + name;
    auto text = read_text_file(path);
    if (!text)
        throw std::runtime_error("cannot read " + path);
    return build(*text);
}

inline std::string corpus_dir() { return TCSYNTH_CORPUS_DIR; }

struct CliResult {
    int exit_code = -1;
    std::string output; // stdout only
};

inline CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(TCSYNTH_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        throw std::runtime_error("popen failed");
    CliResult result;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0)
        result.output.append(buf, n);
    int status = pclose(pipe);
    result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return result;
}

inline Term term(const std::string& text) {
    auto parsed = parse_term(text);
    if (const auto* err = std::get_if<ParseError>(&parsed))
        throw std::runtime_error(err->message());
    return std::get<Term>(parsed);
}

} // namespace tcsynth::testing
