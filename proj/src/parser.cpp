/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "tcsynth/parser.hpp"

#include <algorithm>
#include <unordered_set>

namespace tcsynth {

std::string ParseError::message() const {
    std::string out = "parse error at " + std::to_string(line) + ":" + std::to_string(col) +
                      ": unexpected '" + token + "'";
    if (!expected.empty()) {
        out += ", expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0)
                out += i + 1 == expected.size() ? " or " : ", ";
            out += expected[i];
        }
    }
    return out;
}

namespace {

enum class Tok {
    ident,
    nat,
    kw_class,
    kw_structure,
    kw_instance,
    kw_def,
    kw_extends,
    kw_set_option,
    kw_attribute,
    kw_out_param,
    kw_opaque,
    kw_leti,
    kw_synth, // #synth
    lparen,
    rparen,
    lbrace,
    rbrace,
    lbracket,
    rbracket,
    colon,
    assign, // :=
    comma,
    plus,
    star,
    at,
    eof,
};

struct Token {
    Tok kind;
    std::string text;
    unsigned line = 1;
    unsigned col = 1;
    std::size_t offset = 0;
};

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

bool is_ident_char(unsigned char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9') || c == '.' || c == '\'';
}

Tok keyword_kind(const std::string& text) {
    if (text == "class")
        return Tok::kw_class;
    if (text == "structure")
        return Tok::kw_structure;
    if (text == "instance")
        return Tok::kw_instance;
    if (text == "def")
        return Tok::kw_def;
    if (text == "extends")
        return Tok::kw_extends;
    if (text == "set_option")
        return Tok::kw_set_option;
    if (text == "attribute")
        return Tok::kw_attribute;
    if (text == "out_param")
        return Tok::kw_out_param;
    if (text == "opaque")
        return Tok::kw_opaque;
    if (text == "letI")
        return Tok::kw_leti;
    return Tok::ident;
}

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;
    unsigned line = 1;
    unsigned col = 1;
    std::vector<Token> tokens;
    std::optional<ParseError> error;

    void push(Tok kind, std::string t, unsigned l, unsigned c) {
        tokens.push_back(Token{kind, std::move(t), l, c, pos});
    }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos < text.size(); ++i, ++pos) {
            if (text[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    }

    void run() {
        while (pos < text.size()) {
            unsigned char c = static_cast<unsigned char>(text[pos]);
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance(1);
                continue;
            }
            if (c == '-' && pos + 1 < text.size() && text[pos + 1] == '-') {
                while (pos < text.size() && text[pos] != '\n')
                    advance(1);
                continue;
            }
            unsigned tl = line, tc = col;
            if (c == '#') {
                std::size_t end = pos + 1;
                while (end < text.size() && is_ident_char(static_cast<unsigned char>(text[end])))
                    ++end;
                std::string word(text.substr(pos, end - pos));
                if (word == "#synth") {
                    push(Tok::kw_synth, word, tl, tc);
                    advance(word.size());
                    continue;
                }
                error = ParseError{tl, tc, word, {"#synth"}};
                return;
            }
            if (is_ident_start(c)) {
                std::size_t end = pos;
                while (end < text.size() && is_ident_char(static_cast<unsigned char>(text[end])))
                    ++end;
                std::string word(text.substr(pos, end - pos));
                push(keyword_kind(word), word, tl, tc);
                advance(word.size());
                continue;
            }
            if (c >= '0' && c <= '9') {
                std::size_t end = pos;
                while (end < text.size() && text[end] >= '0' && text[end] <= '9')
                    ++end;
                push(Tok::nat, std::string(text.substr(pos, end - pos)), tl, tc);
                advance(end - pos);
                continue;
            }
            if (c == ':' && pos + 1 < text.size() && text[pos + 1] == '=') {
                push(Tok::assign, ":=", tl, tc);
                advance(2);
                continue;
            }
            Tok kind;
            switch (c) {
            case '(': kind = Tok::lparen; break;
            case ')': kind = Tok::rparen; break;
            case '{': kind = Tok::lbrace; break;
            case '}': kind = Tok::rbrace; break;
            case '[': kind = Tok::lbracket; break;
            case ']': kind = Tok::rbracket; break;
            case ':': kind = Tok::colon; break;
            case ',': kind = Tok::comma; break;
            case '+': kind = Tok::plus; break;
            case '*': kind = Tok::star; break;
            case '@': kind = Tok::at; break;
            default:
                error = ParseError{tl, tc, std::string(1, static_cast<char>(c)), {"a token"}};
                return;
            }
            push(kind, std::string(1, static_cast<char>(c)), tl, tc);
            advance(1);
        }
        push(Tok::eof, "<eof>", line, col);
    }
};

struct Parser {
    std::vector<Token> toks;
    std::size_t pos = 0;
    std::optional<ParseError> error;
    unsigned anon_counter = 0;

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos + ahead;
        return i < toks.size() ? toks[i] : toks.back();
    }

    const Token& next() {
        const Token& t = peek();
        if (pos + 1 < toks.size())
            ++pos;
        return t;
    }

    bool at(Tok k) const { return peek().kind == k; }

    void fail_here(std::vector<std::string> expected) {
        if (!error)
            error = ParseError{peek().line, peek().col, peek().text, std::move(expected)};
    }

    void fail(std::vector<std::string> expected) {
        if (error)
            return;
        // Mid-command, an offending token that opens a new line means the
        // construct that is actually broken ends on the previous one.
        unsigned line = peek().line;
        unsigned col = peek().col;
        if (pos > 0 && toks[pos - 1].line < line) {
            line = toks[pos - 1].line;
            col = toks[pos - 1].col + static_cast<unsigned>(toks[pos - 1].text.size());
        }
        error = ParseError{line, col, peek().text, std::move(expected)};
    }

    bool expect(Tok k, const char* what) {
        if (at(k)) {
            next();
            return true;
        }
        fail({what});
        return false;
    }

    std::optional<std::string> expect_ident(const char* what) {
        if (at(Tok::ident)) {
            return next().text;
        }
        fail({what});
        return std::nullopt;
    }

    // --- terms ----------------------------------------------------------

    bool at_atom_start() const {
        return at(Tok::ident) || at(Tok::nat) || at(Tok::lparen);
    }

    std::optional<Term> parse_atom() {
        if (at(Tok::ident))
            return Term::var(next().text); // resolved to const/var later
        if (at(Tok::nat)) {
            auto v = Nat::parse(next().text);
            return Term::nat(*v);
        }
        if (at(Tok::lparen)) {
            next();
            auto t = parse_term_inner();
            if (!t)
                return std::nullopt;
            if (!expect(Tok::rparen, "')'"))
                return std::nullopt;
            return t;
        }
        fail({"a term"});
        return std::nullopt;
    }

    std::optional<Term> parse_term_inner() {
        std::optional<Term> head;
        if (at(Tok::ident)) {
            std::string name = next().text;
            std::vector<Term> args;
            while (at_atom_start()) {
                auto a = parse_atom();
                if (!a)
                    return std::nullopt;
                args.push_back(*a);
            }
            head = args.empty() ? Term::var(name) : Term::constant(name, std::move(args));
        } else {
            head = parse_atom();
            if (!head)
                return std::nullopt;
        }
        if (at(Tok::plus) || at(Tok::star)) {
            bool is_add = at(Tok::plus);
            next();
            auto rhs = parse_atom();
            if (!rhs)
                return std::nullopt;
            return Term::constant(is_add ? "add" : "mul", {*head, *rhs});
        }
        return head;
    }

    // --- binders and fields ----------------------------------------------

    bool at_binder_start() const {
        return at(Tok::lparen) || at(Tok::lbrace) || at(Tok::lbracket);
    }

    bool parse_binder_group(std::vector<Binder>& out) {
        if (at(Tok::lbracket)) {
            next();
            std::optional<std::string> name;
            if (at(Tok::ident) && peek(1).kind == Tok::colon) {
                name = next().text;
                next(); // ':'
            }
            auto ty = parse_term_inner();
            if (!ty)
                return false;
            if (!expect(Tok::rbracket, "']'"))
                return false;
            out.push_back(Binder{name, *ty, BinderStyle::inst_arg, false});
            return true;
        }
        BinderStyle style = at(Tok::lparen) ? BinderStyle::explicit_arg : BinderStyle::implicit_arg;
        Tok close = at(Tok::lparen) ? Tok::rparen : Tok::rbrace;
        next();
        std::vector<std::string> names;
        while (at(Tok::ident))
            names.push_back(next().text);
        if (names.empty()) {
            fail({"a binder name"});
            return false;
        }
        if (!expect(Tok::colon, "':'"))
            return false;
        bool out_param = false;
        if (at(Tok::kw_out_param)) {
            next();
            out_param = true;
        }
        auto ty = parse_term_inner();
        if (!ty)
            return false;
        if (!expect(close, close == Tok::rparen ? "')'" : "'}'"))
            return false;
        for (const std::string& n : names)
            out.push_back(Binder{n, *ty, style, out_param});
        return true;
    }

    bool parse_field(std::vector<FieldDecl>& out) {
        if (!expect(Tok::lparen, "'('"))
            return false;
        auto name = expect_ident("a field name");
        if (!name)
            return false;
        if (!expect(Tok::colon, "':'"))
            return false;
        auto ty = parse_term_inner();
        if (!ty)
            return false;
        FieldKind kind = FieldKind::proof;
        if (at(Tok::comma)) {
            next();
            auto tag = expect_ident("'data' or 'proof'");
            if (!tag)
                return false;
            if (*tag == "data")
                kind = FieldKind::data;
            else if (*tag == "proof")
                kind = FieldKind::proof;
            else {
                --pos; // point at the bad tag
                fail({"'data'", "'proof'"});
                return false;
            }
        }
        if (!expect(Tok::rparen, "')'"))
            return false;
        out.push_back(FieldDecl{*name, *ty, kind});
        return true;
    }

    std::optional<Assigns> parse_assigns() {
        Assigns out;
        if (!expect(Tok::lbrace, "'{'"))
            return std::nullopt;
        while (!at(Tok::rbrace)) {
            auto name = expect_ident("a field name");
            if (!name)
                return std::nullopt;
            if (!expect(Tok::assign, "':='"))
                return std::nullopt;
            auto value = parse_term_inner();
            if (!value)
                return std::nullopt;
            out.emplace_back(*name, *value);
            if (at(Tok::comma)) {
                next();
                continue;
            }
            break;
        }
        if (!expect(Tok::rbrace, "'}'"))
            return std::nullopt;
        return out;
    }

    // --- commands ---------------------------------------------------------

    std::optional<Command> parse_class(bool is_class) {
        unsigned line = peek().line;
        next(); // class / structure
        ClassCmd cmd;
        cmd.is_class = is_class;
        cmd.line = line;
        auto name = expect_ident("a class name");
        if (!name)
            return std::nullopt;
        cmd.name = *name;
        while (at_binder_start())
            if (!parse_binder_group(cmd.binders))
                return std::nullopt;
        if (at(Tok::kw_extends)) {
            next();
            while (true) {
                auto parent = parse_term_inner();
                if (!parent)
                    return std::nullopt;
                cmd.parents.push_back(*parent);
                if (at(Tok::comma)) {
                    next();
                    continue;
                }
                break;
            }
        }
        if (at(Tok::assign)) {
            next();
            while (at(Tok::lparen))
                if (!parse_field(cmd.fields))
                    return std::nullopt;
        }
        return Command{cmd};
    }

    std::optional<Command> parse_instance(unsigned priority, bool explicit_priority,
                                          unsigned line) {
        next(); // instance
        InstanceCmd cmd;
        cmd.line = line;
        cmd.priority = priority;
        cmd.explicit_priority = explicit_priority;
        if (at(Tok::ident)) {
            cmd.name = next().text;
        } else {
            cmd.anonymous = true;
        }
        while (at_binder_start())
            if (!parse_binder_group(cmd.binders))
                return std::nullopt;
        if (!expect(Tok::colon, "':'"))
            return std::nullopt;
        auto head = parse_term_inner();
        if (!head)
            return std::nullopt;
        cmd.head = *head;
        if (cmd.anonymous) {
            std::string base = cmd.head.is_const() || cmd.head.is_var() ? cmd.head.name() : "inst";
            cmd.name = base + ".inst" + std::to_string(anon_counter++);
        }
        if (at(Tok::assign)) {
            next();
            if (at(Tok::kw_opaque)) {
                next();
                cmd.assigns = std::nullopt;
            } else {
                auto a = parse_assigns();
                if (!a)
                    return std::nullopt;
                cmd.assigns = std::move(*a);
            }
        }
        return Command{cmd};
    }

    std::optional<Command> parse_def() {
        unsigned line = peek().line;
        next(); // def
        DefCmd cmd;
        cmd.line = line;
        auto name = expect_ident("a definition name");
        if (!name)
            return std::nullopt;
        cmd.name = *name;
        while (at_binder_start())
            if (!parse_binder_group(cmd.binders))
                return std::nullopt;
        if (at(Tok::colon)) {
            next();
            auto ty = parse_term_inner();
            if (!ty)
                return std::nullopt;
            cmd.result_type = *ty;
        }
        if (!expect(Tok::assign, "':='"))
            return std::nullopt;
        if (at(Tok::kw_opaque)) {
            next();
        } else if (at(Tok::lbrace)) {
            auto a = parse_assigns();
            if (!a)
                return std::nullopt;
            cmd.body.assigns = std::move(*a);
        } else {
            auto t = parse_term_inner();
            if (!t)
                return std::nullopt;
            cmd.body.term = *t;
        }
        return Command{cmd};
    }

    std::optional<Command> parse_set_option() {
        unsigned line = peek().line;
        next();
        SetOptionCmd cmd;
        cmd.line = line;
        auto name = expect_ident("an option name");
        if (!name)
            return std::nullopt;
        cmd.name = *name;
        if (at(Tok::nat)) {
            auto v = Nat::parse(next().text);
            cmd.nat_value = v->to_u64().value_or(UINT64_MAX);
        } else if (at(Tok::ident) && (peek().text == "true" || peek().text == "false")) {
            cmd.bool_value = next().text == "true";
        } else {
            fail({"'true'", "'false'", "a number"});
            return std::nullopt;
        }
        return Command{cmd};
    }

    std::optional<Command> parse_attribute() {
        unsigned line = peek().line;
        next();
        if (!expect(Tok::lbracket, "'['"))
            return std::nullopt;
        if (!at(Tok::kw_instance)) {
            fail({"'instance'"});
            return std::nullopt;
        }
        next();
        if (!expect(Tok::rbracket, "']'"))
            return std::nullopt;
        auto target = expect_ident("a declaration name");
        if (!target)
            return std::nullopt;
        return Command{AttributeCmd{*target, line}};
    }

    std::optional<Command> parse_synth() {
        unsigned line = peek().line;
        next();
        auto goal = parse_term_inner();
        if (!goal)
            return std::nullopt;
        return Command{SynthCmd{*goal, line}};
    }

    std::optional<Command> parse_leti() {
        unsigned line = peek().line;
        next();
        LetICmd cmd;
        cmd.line = line;
        auto name = expect_ident("a local instance name");
        if (!name)
            return std::nullopt;
        cmd.name = *name;
        if (!expect(Tok::colon, "':'"))
            return std::nullopt;
        auto head = parse_term_inner();
        if (!head)
            return std::nullopt;
        cmd.head = *head;
        if (at(Tok::assign)) {
            next();
            auto value = parse_term_inner();
            if (!value)
                return std::nullopt;
            cmd.value = *value;
        }
        return Command{cmd};
    }

    std::optional<Command> parse_command() {
        switch (peek().kind) {
        case Tok::kw_set_option:
            return parse_set_option();
        case Tok::kw_class:
            return parse_class(true);
        case Tok::kw_structure:
            return parse_class(false);
        case Tok::kw_instance:
            return parse_instance(1000, false, peek().line);
        case Tok::kw_def:
            return parse_def();
        case Tok::kw_attribute:
            return parse_attribute();
        case Tok::kw_synth:
            return parse_synth();
        case Tok::kw_leti:
            return parse_leti();
        case Tok::at: {
            unsigned line = peek().line;
            next();
            if (!expect(Tok::lbracket, "'['"))
                return std::nullopt;
            auto kw = expect_ident("'priority'");
            if (!kw || *kw != "priority") {
                if (kw) {
                    --pos;
                    fail({"'priority'"});
                }
                return std::nullopt;
            }
            if (!at(Tok::nat)) {
                fail({"a priority value"});
                return std::nullopt;
            }
            auto prio = Nat::parse(next().text)->to_u64();
            if (!expect(Tok::rbracket, "']'"))
                return std::nullopt;
            if (!at(Tok::kw_instance)) {
                fail({"'instance'"});
                return std::nullopt;
            }
            return parse_instance(static_cast<unsigned>(prio.value_or(1000)), true, line);
        }
        default:
            fail_here({"'class'", "'structure'", "'instance'", "'def'", "'set_option'",
                       "'attribute'", "'#synth'", "'letI'"});
            return std::nullopt;
        }
    }

    SourceFile parse(std::string path) {
        SourceFile file;
        file.path = std::move(path);
        while (!at(Tok::eof)) {
            auto cmd = parse_command();
            if (!cmd)
                break;
            file.commands.push_back(std::move(*cmd));
        }
        return file;
    }
};

} // namespace

// --- name resolution -------------------------------------------------------
//
// The lexer produces every bare identifier as a Var leaf. After a command is
// parsed we know its binders, so names bound by a binder stay variables and
// everything else becomes a 0-ary constant. Unbound variable-like names
// (single letters, Greek identifiers) in instance and def signatures are
// auto-bound as implicit binders, mirroring Lean's auto-bound implicits.

namespace {

bool var_like(const std::string& name) {
    return name.size() == 1 || static_cast<unsigned char>(name[0]) >= 0x80;
}

Term resolve_term_names(const Term& t, const std::unordered_set<std::string>& bound,
                        bool allow_auto, std::vector<std::string>* autos) {
    if (t.is_var()) {
        const std::string& n = t.name();
        if (bound.count(n))
            return t;
        if (allow_auto && var_like(n)) {
            if (autos && std::find(autos->begin(), autos->end(), n) == autos->end())
                autos->push_back(n);
            return t;
        }
        return Term::constant(n);
    }
    if (!t.is_const() || t.args().empty())
        return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const Term& a : t.args()) {
        args.push_back(resolve_term_names(a, bound, allow_auto, autos));
        if (args.back() != a)
            changed = true;
    }
    return changed ? Term::constant(t.name(), std::move(args)) : t;
}

std::unordered_set<std::string> binder_names(const std::vector<Binder>& binders) {
    std::unordered_set<std::string> out;
    for (const Binder& b : binders)
        if (b.name)
            out.insert(*b.name);
    return out;
}

void prepend_autos(std::vector<Binder>& binders, const std::vector<std::string>& autos) {
    if (autos.empty())
        return;
    std::vector<Binder> fresh;
    fresh.reserve(autos.size() + binders.size());
    for (const std::string& v : autos)
        fresh.push_back(Binder{v, Term::constant("Type"), BinderStyle::implicit_arg, false});
    fresh.insert(fresh.end(), binders.begin(), binders.end());
    binders = std::move(fresh);
}

void resolve_command(Command& command) {
    if (auto* cls = std::get_if<ClassCmd>(&command)) {
        auto bound = binder_names(cls->binders);
        for (Binder& b : cls->binders)
            b.type = resolve_term_names(b.type, bound, false, nullptr);
        for (Term& p : cls->parents)
            p = resolve_term_names(p, bound, false, nullptr);
        for (FieldDecl& f : cls->fields)
            f.type = resolve_term_names(f.type, bound, false, nullptr);
        return;
    }
    if (auto* inst = std::get_if<InstanceCmd>(&command)) {
        auto bound = binder_names(inst->binders);
        std::vector<std::string> autos;
        for (Binder& b : inst->binders)
            b.type = resolve_term_names(b.type, bound, true, &autos);
        inst->head = resolve_term_names(inst->head, bound, true, &autos);
        prepend_autos(inst->binders, autos);
        for (const std::string& v : autos)
            bound.insert(v);
        if (inst->assigns)
            for (auto& [name, value] : *inst->assigns)
                value = resolve_term_names(value, bound, false, nullptr);
        return;
    }
    if (auto* def = std::get_if<DefCmd>(&command)) {
        auto bound = binder_names(def->binders);
        std::vector<std::string> autos;
        for (Binder& b : def->binders)
            b.type = resolve_term_names(b.type, bound, true, &autos);
        if (def->result_type)
            def->result_type = resolve_term_names(*def->result_type, bound, true, &autos);
        prepend_autos(def->binders, autos);
        for (const std::string& v : autos)
            bound.insert(v);
        if (def->body.term)
            def->body.term = resolve_term_names(*def->body.term, bound, false, nullptr);
        if (def->body.assigns)
            for (auto& [name, value] : *def->body.assigns)
                value = resolve_term_names(value, bound, false, nullptr);
        return;
    }
    if (auto* synth = std::get_if<SynthCmd>(&command)) {
        synth->goal = resolve_term_names(synth->goal, {}, false, nullptr);
        return;
    }
    if (auto* local = std::get_if<LetICmd>(&command)) {
        local->head = resolve_term_names(local->head, {}, false, nullptr);
        if (local->value)
            local->value = resolve_term_names(*local->value, {}, false, nullptr);
        return;
    }
}

} // namespace

unsigned command_line(const Command& cmd) {
    return std::visit([](const auto& c) { return c.line; }, cmd);
}

ParseResult parse_file(std::string_view text, std::string path) {
    Lexer lexer{text};
    lexer.run();
    if (lexer.error)
        return *lexer.error;
    Parser parser{std::move(lexer.tokens)};
    SourceFile file = parser.parse(std::move(path));
    if (parser.error)
        return *parser.error;
    for (Command& cmd : file.commands)
        resolve_command(cmd);
    return file;
}

std::variant<Term, ParseError> parse_term(std::string_view text) {
    Lexer lexer{text};
    lexer.run();
    if (lexer.error)
        return *lexer.error;
    Parser parser{std::move(lexer.tokens)};
    auto t = parser.parse_term_inner();
    if (parser.error)
        return *parser.error;
    if (!parser.at(Tok::eof)) {
        return ParseError{parser.peek().line, parser.peek().col, parser.peek().text,
                          {"end of input"}};
    }
    return resolve_term_names(*t, {}, false, nullptr);
}

// --- rendering ---------------------------------------------------------------

namespace {

std::string render_binder(const Binder& b) {
    std::string ty = (b.out ? "out_param " : "") + render_term(b.type);
    switch (b.style) {
    case BinderStyle::explicit_arg:
        return "(" + *b.name + " : " + ty + ")";
    case BinderStyle::implicit_arg:
        return "{" + *b.name + " : " + ty + "}";
    case BinderStyle::inst_arg:
        return b.name ? "[" + *b.name + " : " + ty + "]" : "[" + ty + "]";
    }
    return "";
}

std::string render_binders(const std::vector<Binder>& binders) {
    std::string out;
    for (const Binder& b : binders) {
        out += " ";
        out += render_binder(b);
    }
    return out;
}

std::string render_assigns(const Assigns& assigns) {
    std::string out = "{ ";
    for (std::size_t i = 0; i < assigns.size(); ++i) {
        if (i > 0)
            out += ", ";
        out += assigns[i].first + " := " + render_term(assigns[i].second);
    }
    out += " }";
    return out;
}

} // namespace

std::string render_decl(const Command& cmd) {
    if (const auto* opt = std::get_if<SetOptionCmd>(&cmd)) {
        std::string value =
            opt->nat_value ? std::to_string(*opt->nat_value) : (opt->bool_value ? "true" : "false");
        return "set_option " + opt->name + " " + value;
    }
    if (const auto* cls = std::get_if<ClassCmd>(&cmd)) {
        std::string out = cls->is_class ? "class " : "structure ";
        out += cls->name + render_binders(cls->binders);
        if (!cls->parents.empty()) {
            out += " extends ";
            for (std::size_t i = 0; i < cls->parents.size(); ++i) {
                if (i > 0)
                    out += ", ";
                out += render_term(cls->parents[i]);
            }
        }
        if (!cls->fields.empty()) {
            out += " :=";
            for (const FieldDecl& f : cls->fields) {
                out += " (" + f.name + " : " + render_term(f.type);
                if (f.kind == FieldKind::data)
                    out += ", data";
                out += ")";
            }
        }
        return out;
    }
    if (const auto* inst = std::get_if<InstanceCmd>(&cmd)) {
        std::string out;
        if (inst->explicit_priority)
            out += "@[priority " + std::to_string(inst->priority) + "] ";
        out += "instance";
        if (!inst->anonymous)
            out += " " + inst->name;
        out += render_binders(inst->binders);
        out += " : " + render_term(inst->head);
        out += " := ";
        out += inst->assigns ? render_assigns(*inst->assigns) : "opaque";
        return out;
    }
    if (const auto* def = std::get_if<DefCmd>(&cmd)) {
        std::string out = "def " + def->name + render_binders(def->binders);
        if (def->result_type)
            out += " : " + render_term(*def->result_type);
        out += " := ";
        if (def->body.term)
            out += render_term(*def->body.term);
        else if (def->body.assigns)
            out += render_assigns(*def->body.assigns);
        else
            out += "opaque";
        return out;
    }
    if (const auto* attr = std::get_if<AttributeCmd>(&cmd))
        return "attribute [instance] " + attr->target;
    if (const auto* synth = std::get_if<SynthCmd>(&cmd))
        return "#synth " + render_term(synth->goal);
    if (const auto* local = std::get_if<LetICmd>(&cmd)) {
        std::string out = "letI " + local->name + " : " + render_term(local->head);
        if (local->value)
            out += " := " + render_term(*local->value);
        return out;
    }
    return "";
}

std::string render_file(const SourceFile& file) {
    std::string out;
    for (const Command& cmd : file.commands) {
        out += render_decl(cmd);
        out += "\n";
    }
    return out;
}

std::vector<LexedToken> lex_file(std::string_view text) {
    Lexer lexer{text};
    lexer.run();
    std::vector<LexedToken> out;
    if (lexer.error)
        return out;
    for (const Token& t : lexer.tokens) {
        if (t.kind == Tok::eof)
            continue;
        out.push_back(LexedToken{t.text, t.line, t.col, t.offset, t.text.size()});
    }
    return out;
}

} // namespace tcsynth
