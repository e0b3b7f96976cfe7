#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "fraclab/errors.hpp"

/// Function literals such as "t^2*exp(-t)" for the command line.
///
/// Grammar (recursive descent):
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := ('+' | '-') unary | power
///   power  := atom ('^' unary)?          right associative
///   atom   := number | name | name '(' expr ')' | '(' expr ')'
/// Functions: sin, cos, exp. Constants: pi. Variables are supplied by the caller.
namespace fraclab::expr {

class ParseError : public DomainError {
public:
    explicit ParseError(const std::string& message) : DomainError(message, "parse_error") {}
};

class Expression {
public:
    /// Parses `text`; `variables` lists the accepted identifiers in argument order.
    static Expression parse(const std::string& text, std::vector<std::string> variables = {"t"}) {
        Parser p{text, 0, variables, {}};
        Expression e;
        e.root_ = p.parse_expr();
        p.skip();
        if (p.pos != text.size()) p.fail("unexpected '" + std::string(1, text[p.pos]) + "'");
        e.variables_ = std::move(variables);
        e.text_ = text;
        return e;
    }

    double operator()(const std::vector<double>& args) const {
        if (args.size() != variables_.size()) throw DomainError("expression: wrong number of arguments");
        return eval(*root_, args.data());
    }
    double operator()(double a) const { return eval(*root_, &a); }
    double operator()(double a, double b) const {
        const double args[2] = {a, b};
        return eval(*root_, args);
    }

    const std::string& text() const { return text_; }

private:
    enum class Op { number, variable, add, sub, mul, div, pow, neg, sin, cos, exp };
    struct Node {
        Op op;
        double value = 0.0;
        std::size_t index = 0;
        std::shared_ptr<const Node> lhs, rhs;
    };
    using NodePtr = std::shared_ptr<const Node>;

    static NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
        return std::make_shared<const Node>(Node{op, 0.0, 0, std::move(l), std::move(r)});
    }

    struct Parser {
        const std::string& s;
        std::size_t pos;
        const std::vector<std::string>& vars;
        std::string scratch;

        [[noreturn]] void fail(const std::string& what) const {
            throw ParseError("expression: " + what + " at position " + std::to_string(pos) + " in '" + s + "'");
        }
        void skip() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool accept(char c) {
            skip();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        NodePtr parse_expr() {
            NodePtr lhs = parse_term();
            while (true) {
                if (accept('+')) lhs = make(Op::add, lhs, parse_term());
                else if (accept('-')) lhs = make(Op::sub, lhs, parse_term());
                else return lhs;
            }
        }
        NodePtr parse_term() {
            NodePtr lhs = parse_unary();
            while (true) {
                if (accept('*')) lhs = make(Op::mul, lhs, parse_unary());
                else if (accept('/')) lhs = make(Op::div, lhs, parse_unary());
                else return lhs;
            }
        }
        NodePtr parse_unary() {
            if (accept('-')) return make(Op::neg, parse_unary());
            if (accept('+')) return parse_unary();
            return parse_power();
        }
        NodePtr parse_power() {
            NodePtr base = parse_atom();
            if (accept('^')) return make(Op::pow, base, parse_unary());
            return base;
        }
        NodePtr parse_atom() {
            skip();
            if (pos >= s.size()) fail("unexpected end of input");
            const char c = s[pos];
            if (c == '(') {
                ++pos;
                NodePtr e = parse_expr();
                if (!accept(')')) fail("expected ')'");
                return e;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                const char* begin = s.c_str() + pos;
                char* end = nullptr;
                const double v = std::strtod(begin, &end);
                if (end == begin) fail("malformed number");
                pos += static_cast<std::size_t>(end - begin);
                return std::make_shared<const Node>(Node{Op::number, v, 0, nullptr, nullptr});
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                const std::size_t start = pos;
                while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
                const std::string name = s.substr(start, pos - start);
                if (name == "sin" || name == "cos" || name == "exp") {
                    if (!accept('(')) fail("expected '(' after " + name);
                    NodePtr arg = parse_expr();
                    if (!accept(')')) fail("expected ')'");
                    return make(name == "sin" ? Op::sin : name == "cos" ? Op::cos : Op::exp, arg);
                }
                for (std::size_t i = 0; i < vars.size(); ++i)
                    if (vars[i] == name) return std::make_shared<const Node>(Node{Op::variable, 0.0, i, nullptr, nullptr});
                if (name == "pi") return std::make_shared<const Node>(Node{Op::number, std::numbers::pi, 0, nullptr, nullptr});
                pos = start;
                fail("unknown identifier '" + name + "'");
            }
            fail("unexpected '" + std::string(1, c) + "'");
        }
    };

    static double eval(const Node& n, const double* args) {
        switch (n.op) {
            case Op::number: return n.value;
            case Op::variable: return args[n.index];
            case Op::add: return eval(*n.lhs, args) + eval(*n.rhs, args);
            case Op::sub: return eval(*n.lhs, args) - eval(*n.rhs, args);
            case Op::mul: return eval(*n.lhs, args) * eval(*n.rhs, args);
            case Op::div: return eval(*n.lhs, args) / eval(*n.rhs, args);
            case Op::pow: return std::pow(eval(*n.lhs, args), eval(*n.rhs, args));
            case Op::neg: return -eval(*n.lhs, args);
            case Op::sin: return std::sin(eval(*n.lhs, args));
            case Op::cos: return std::cos(eval(*n.lhs, args));
            case Op::exp: return std::exp(eval(*n.lhs, args));
        }
        return 0.0;
    }

    NodePtr root_;
    std::vector<std::string> variables_;
    std::string text_;
};

}  // namespace fraclab::expr
