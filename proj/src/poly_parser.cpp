#include <cctype>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "npp/errors.hpp"
#include "npp/expr.hpp"
#include "npp/polynomial.hpp"

namespace npp {

namespace {

struct Token {
    enum Kind { Ident, Int, Plus, Minus, Star, Caret, LParen, RParen, Eq, End } kind;
    std::string text;
    int line, col;
};

[[noreturn]] void fail(int line, int col, const std::string& msg) {
    std::ostringstream out;
    out << "line " << line << ", col " << col << ": " << msg;
    throw InputError(out.str());
}

std::vector<Token> lex_line(const std::string& src, int line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        int col = static_cast<int>(i) + 1;
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({Token::Ident, src.substr(i, j - i), line, col});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::Int, src.substr(i, j - i), line, col});
            i = j;
            continue;
        }
        switch (c) {
            case '+': out.push_back({Token::Plus, "+", line, col}); break;
            case '-': out.push_back({Token::Minus, "-", line, col}); break;
            case '*': out.push_back({Token::Star, "*", line, col}); break;
            case '^': out.push_back({Token::Caret, "^", line, col}); break;
            case '(': out.push_back({Token::LParen, "(", line, col}); break;
            case ')': out.push_back({Token::RParen, ")", line, col}); break;
            case '=': out.push_back({Token::Eq, "=", line, col}); break;
            case '/':
                fail(line, col, "non-integer coefficient ('/' is only allowed in the bound declaration)");
            default:
                fail(line, col, std::string("unexpected character '") + c + "'");
        }
        ++i;
    }
    out.push_back({Token::End, "", line, static_cast<int>(src.size()) + 1});
    return out;
}

struct Parser {
    const std::vector<Token>& toks;
    std::size_t pos = 0;
    std::vector<std::string>& vars;
    std::unordered_map<std::string, std::size_t>& var_index;

    const Token& peek() const { return toks[pos]; }
    Token take() { return toks[pos++]; }
    [[noreturn]] void expected(const std::string& what) {
        const Token& t = peek();
        fail(t.line, t.col, "expected " + what +
                                (t.kind == Token::End ? " before end of line"
                                                      : " before '" + t.text + "'"));
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            bool plus = take().kind == Token::Plus;
            ExprPtr rhs = term();
            lhs = plus ? expr_add(lhs, rhs) : expr_sub(lhs, rhs);
        }
        return lhs;
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        while (peek().kind == Token::Star) {
            take();
            lhs = expr_mul(lhs, factor());
        }
        return lhs;
    }

    ExprPtr factor() {
        if (peek().kind == Token::Minus) {
            take();
            return expr_neg(factor());
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        while (peek().kind == Token::Caret) {
            Token caret = take();
            if (peek().kind != Token::Int) expected("integer exponent");
            Token e = take();
            unsigned long exp = 0;
            try {
                exp = std::stoul(e.text);
            } catch (...) {
                fail(e.line, e.col, "exponent out of range");
            }
            if (exp > 64) fail(caret.line, caret.col, "exponent larger than 64");
            base = expr_pow(base, static_cast<unsigned>(exp));
        }
        return base;
    }

    ExprPtr atom() {
        const Token& t = peek();
        if (t.kind == Token::Int) return expr_const(Integer(take().text));
        if (t.kind == Token::Ident) {
            std::string name = take().text;
            auto it = var_index.find(name);
            std::size_t idx;
            if (it == var_index.end()) {
                idx = vars.size();
                var_index.emplace(name, idx);
                vars.push_back(name);
            } else {
                idx = it->second;
            }
            return expr_var(idx);
        }
        if (t.kind == Token::LParen) {
            take();
            ExprPtr inner = expr();
            if (peek().kind != Token::RParen) expected("')'");
            take();
            return inner;
        }
        expected("a variable, integer, or '('");
    }
};

} // namespace

PolySystem parse_system(const std::string& text) {
    PolySystem sys;
    std::unordered_map<std::string, std::size_t> var_index;
    std::vector<ExprPtr> equations;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool have_bound = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string body = raw.substr(0, raw.find('#'));
        std::size_t first = body.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue; // blank / comment line

        if (!have_bound) {
            // The bound value may be a rational, so handle this line before
            // the equation lexer (which rejects '/').
            if (body.compare(first, 5, "bound") != 0)
                fail(line, static_cast<int>(first) + 1,
                     "missing bound declaration (expected 'bound <positive rational>')");
            std::string rest = body.substr(first + 5);
            std::size_t a = rest.find_first_not_of(" \t");
            std::size_t b = rest.find_last_not_of(" \t\r");
            if (a == std::string::npos)
                fail(line, static_cast<int>(body.size()) + 1, "missing bound value");
            Rational L;
            try {
                L = parse_rational(rest.substr(a, b - a + 1));
            } catch (const InputError& e) {
                fail(line, static_cast<int>(first) + 7, e.what());
            }
            if (L <= 0) fail(line, 1, "bound must be positive");
            sys.bound = L;
            have_bound = true;
            continue;
        }

        auto toks = lex_line(raw, line);
        if (toks.front().kind == Token::End) continue;
        Parser p{toks, 0, sys.vars, var_index};
        ExprPtr lhs = p.expr();
        if (p.peek().kind != Token::Eq) p.expected("'='");
        p.take();
        ExprPtr rhs = p.expr();
        if (p.peek().kind != Token::End) p.expected("end of line");
        equations.push_back(expr_sub(lhs, rhs));
    }
    if (!have_bound) throw InputError("missing bound declaration");

    const std::size_t arity = sys.vars.size();
    for (auto& e : equations) {
        sys.polys.push_back(expr_to_polynomial(*e, arity));
        sys.source_exprs.push_back(e);
    }
    return sys;
}

} // namespace npp
