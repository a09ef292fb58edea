#include "mmlogic/parser.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "mmlogic/error.hpp"

namespace mmlogic {

namespace {

enum class Tok {
    ident, integer, lparen, rparen, langle, rangle, lbracket, rbracket,
    tilde, amp, bar, arrow, iff, comma, semicolon, colon, equals, end
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            const std::size_t line = line_, col = col_;
            if (pos_ >= src_.size()) {
                out.push_back({Tok::end, "", line, col});
                return out;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos_;
                while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                    advance();
                out.push_back({Tok::ident, std::string(src_.substr(start, pos_ - start)), line, col});
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
                out.push_back({Tok::integer, std::string(src_.substr(start, pos_ - start)), line, col});
                continue;
            }
            if (src_.substr(pos_, 3) == "<->") {
                advance(3);
                out.push_back({Tok::iff, "<->", line, col});
                continue;
            }
            if (src_.substr(pos_, 2) == "->") {
                advance(2);
                out.push_back({Tok::arrow, "->", line, col});
                continue;
            }
            Tok kind;
            switch (c) {
            case '(': kind = Tok::lparen; break;
            case ')': kind = Tok::rparen; break;
            case '<': kind = Tok::langle; break;
            case '>': kind = Tok::rangle; break;
            case '[': kind = Tok::lbracket; break;
            case ']': kind = Tok::rbracket; break;
            case '~':
            case '!': kind = Tok::tilde; break;
            case '&': kind = Tok::amp; break;
            case '|': kind = Tok::bar; break;
            case ',': kind = Tok::comma; break;
            case ';': kind = Tok::semicolon; break;
            case ':': kind = Tok::colon; break;
            case '=': kind = Tok::equals; break;
            default: {
                // Report the whole UTF-8 sequence, not a lone lead byte.
                std::size_t len = 1;
                while (pos_ + len < src_.size() && (static_cast<unsigned char>(src_[pos_ + len]) & 0xC0) == 0x80) ++len;
                throw ParseError("unknown operator '" + std::string(src_.substr(pos_, len)) + "'", line, col);
            }
            }
            advance();
            out.push_back({kind, std::string(1, c), line, col});
        }
    }

private:
    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            const unsigned char c = static_cast<unsigned char>(src_[pos_++]);
            if (c == '\n') {
                ++line_;
                col_ = 1;
            } else if ((c & 0xC0) != 0x80) {
                ++col_;
            }
        }
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class TokenStream {
public:
    explicit TokenStream(std::string_view text) : toks_(Lexer(text).run()) {}

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool at(Tok k) const { return peek().kind == k; }
    Token next() {
        Token t = peek();
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool accept(Tok k) {
        if (!at(k)) return false;
        next();
        return true;
    }
    Token expect(Tok k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what);
        return next();
    }
    [[noreturn]] void fail(const std::string& message) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
        throw ParseError(message + ", found " + found, t.line, t.column);
    }

    int integer(const char* what) {
        const Token t = expect(Tok::integer, what);
        int value = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc()) throw ParseError("integer out of range", t.line, t.column);
        return value;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : ts_(text) {}

    Formula parse() {
        Formula f = equivalence();
        if (!ts_.at(Tok::end)) ts_.fail("unexpected token");
        return f;
    }

private:
    Formula equivalence() {
        Formula f = implication();
        while (ts_.accept(Tok::iff)) f = Formula::equivalence(f, implication());
        return f;
    }

    Formula implication() {
        Formula f = disjunction();
        if (ts_.accept(Tok::arrow)) return Formula::implication(f, implication());
        return f;
    }

    Formula disjunction() {
        Formula f = conjunction();
        while (ts_.accept(Tok::bar)) f = Formula::disjunction(f, conjunction());
        return f;
    }

    Formula conjunction() {
        Formula f = unary();
        while (ts_.accept(Tok::amp)) f = Formula::conjunction(f, unary());
        return f;
    }

    Formula unary() {
        if (ts_.accept(Tok::tilde)) return Formula::negation(unary());
        if (ts_.at(Tok::langle) || ts_.at(Tok::lbracket)) {
            const bool is_diamond = ts_.next().kind == Tok::langle;
            const Token idx = ts_.peek();
            const int relation = ts_.integer("relation index");
            if (relation < 1) throw ParseError("relation index must be >= 1", idx.line, idx.column);
            ts_.expect(is_diamond ? Tok::rangle : Tok::rbracket, is_diamond ? "'>'" : "']'");
            Formula child = unary();
            return is_diamond ? Formula::diamond(relation, child) : Formula::box(relation, child);
        }
        return primary();
    }

    Formula primary() {
        if (ts_.accept(Tok::lparen)) {
            Formula f = equivalence();
            ts_.expect(Tok::rparen, "')'");
            return f;
        }
        if (ts_.at(Tok::ident)) {
            const Token t = ts_.next();
            if (t.text == "true") return Formula::top();
            if (t.text == "false") return Formula::bottom();
            return Formula::var(t.text);
        }
        ts_.fail("expected a formula");
    }

    TokenStream ts_;
};

class TheoryParser {
public:
    explicit TheoryParser(std::string_view text) : ts_(text) {}

    FrameTheory parse() {
        FrameTheory theory;
        const Token kw = ts_.peek();
        if (!(kw.kind == Tok::ident && kw.text == "sig")) ts_.fail("expected 'sig <n> <m>;'");
        ts_.next();
        theory.signature.free_count = ts_.integer("relation count n");
        theory.signature.transitive_count = ts_.integer("relation count m");
        ts_.expect(Tok::semicolon, "';'");
        while (!ts_.at(Tok::end)) {
            if (ts_.accept(Tok::semicolon)) continue;
            theory.clauses.push_back(clause(theory.signature));
        }
        return theory;
    }

private:
    struct LocatedAtom {
        HornClause::NamedAtom atom;
        std::size_t line, column;
    };

    HornClause clause(const Signature& sig) {
        const Token start = ts_.peek();
        std::string label;
        if (ts_.peek().kind == Tok::ident && ts_.peek(1).kind == Tok::colon) {
            label = ts_.next().text;
            ts_.next();
        }
        std::vector<LocatedAtom> body;
        if (!ts_.at(Tok::arrow)) {
            body.push_back(atom(sig));
            while (ts_.accept(Tok::comma) || ts_.accept(Tok::amp)) body.push_back(atom(sig));
        }
        if (ts_.at(Tok::bar)) ts_.fail("non-Horn clause: disjunction is not allowed");
        ts_.expect(Tok::arrow, "'->'");
        const LocatedAtom head = atom(sig);
        if (ts_.at(Tok::comma) || ts_.at(Tok::amp) || ts_.at(Tok::bar))
            ts_.fail("non-Horn clause: exactly one head atom is allowed");

        std::vector<HornClause::NamedAtom> named;
        for (const auto& a : body) named.push_back(a.atom);
        HornClause c = HornClause::make(label, named, head.atom);
        if (body.empty()) throw ParseError("clause has an empty body; its head variables are unbound", start.line, start.column);
        if (!c.is_safe())
            throw ParseError("unsafe clause: head variable does not occur in the body", head.line, head.column);
        return c;
    }

    LocatedAtom atom(const Signature& sig) {
        const Token t = ts_.peek();
        if (t.kind == Tok::tilde) ts_.fail("non-Horn clause: negated atoms are not allowed");
        if (t.kind != Tok::ident || t.text.size() < 2 || t.text[0] != 'R' ||
            t.text.find_first_not_of("0123456789", 1) != std::string::npos) {
            if (t.kind == Tok::ident && ts_.peek(1).kind == Tok::equals)
                ts_.fail("equality atoms are not allowed");
            ts_.fail("expected an atom R<i>(v,w)");
        }
        ts_.next();
        const int relation = std::stoi(t.text.substr(1));
        if (relation < 1) throw ParseError("relation index must be >= 1", t.line, t.column);
        if (relation > sig.relation_count())
            throw ParseError("relation index " + std::to_string(relation) + " exceeds signature " +
                                 std::to_string(sig.free_count) + "+" + std::to_string(sig.transitive_count),
                             t.line, t.column);
        ts_.expect(Tok::lparen, "'('");
        const std::string lhs = ts_.expect(Tok::ident, "a variable").text;
        ts_.expect(Tok::comma, "','");
        const std::string rhs = ts_.expect(Tok::ident, "a variable").text;
        ts_.expect(Tok::rparen, "')'");
        if (ts_.at(Tok::equals)) ts_.fail("equality atoms are not allowed");
        return {{relation, lhs, rhs}, t.line, t.column};
    }

    TokenStream ts_;
};

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

FrameTheory parse_theory(std::string_view text) { return TheoryParser(text).parse(); }

}  // namespace mmlogic
