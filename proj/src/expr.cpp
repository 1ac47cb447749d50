#include "catint/expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

namespace catint {

namespace {

enum class Fn { sin, cos, exp, abs };

} // namespace

struct Expression::Node {
    enum class Kind { constant, variable, add, sub, mul, div, neg, pow, call } kind;
    // constant: literal text, materialized per backend at eval time
    std::string literal;
    unsigned var = 0;
    Fn fn = Fn::abs;
    std::unique_ptr<Node> a, b;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::unique_ptr<Node>;

class Parser {
public:
    Parser(std::string_view text, unsigned n_vars) : text_(text), n_(n_vars) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("parse error at position " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr e = term();
        for (;;) {
            if (eat('+')) {
                NodePtr r = term();
                e = binary(Node::Kind::add, std::move(e), std::move(r));
            } else if (eat('-')) {
                NodePtr r = term();
                e = binary(Node::Kind::sub, std::move(e), std::move(r));
            } else {
                return e;
            }
        }
    }

    NodePtr term() {
        NodePtr e = unary();
        for (;;) {
            if (eat('*')) {
                NodePtr r = unary();
                e = binary(Node::Kind::mul, std::move(e), std::move(r));
            } else if (eat('/')) {
                NodePtr r = unary();
                e = binary(Node::Kind::div, std::move(e), std::move(r));
            } else {
                return e;
            }
        }
    }

    NodePtr unary() {
        if (eat('-')) {
            NodePtr inner = unary();
            auto n = std::make_unique<Node>();
            n->kind = Node::Kind::neg;
            n->a = std::move(inner);
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (eat('^')) {
            NodePtr e = unary(); // right associative
            return binary(Node::Kind::pow, std::move(base), std::move(e));
        }
        return base;
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected a value");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        // allow an exponent suffix for float literals
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            } else {
                pos_ = save;
            }
        }
        auto n = std::make_unique<Node>();
        n->kind = Node::Kind::constant;
        n->literal = std::string(text_.substr(start, pos_ - start));
        return n;
    }

    NodePtr ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "x") name = "x1";
        if (name.size() >= 2 && name[0] == 'x' &&
            std::isdigit(static_cast<unsigned char>(name[1]))) {
            unsigned idx = 0;
            for (std::size_t i = 1; i < name.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(name[i])))
                    fail("bad variable '" + name + "'");
                idx = idx * 10 + static_cast<unsigned>(name[i] - '0');
            }
            if (idx == 0 || idx > n_) {
                pos_ = start;
                fail("variable '" + name + "' out of range for " + std::to_string(n_) +
                     " dimension(s)");
            }
            auto n = std::make_unique<Node>();
            n->kind = Node::Kind::variable;
            n->var = idx - 1;
            return n;
        }
        if (name == "pow") {
            if (!eat('(')) fail("pow needs two arguments");
            NodePtr a = expr();
            if (!eat(',')) fail("pow needs two arguments");
            NodePtr b = expr();
            if (!eat(')')) fail("expected ')'");
            return binary(Node::Kind::pow, std::move(a), std::move(b));
        }
        Fn fn;
        if (name == "sin")
            fn = Fn::sin;
        else if (name == "cos")
            fn = Fn::cos;
        else if (name == "exp")
            fn = Fn::exp;
        else if (name == "abs")
            fn = Fn::abs;
        else {
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        if (!eat('(')) fail(name + " needs an argument");
        NodePtr a = expr();
        if (!eat(')')) fail("expected ')'");
        auto n = std::make_unique<Node>();
        n->kind = Node::Kind::call;
        n->fn = fn;
        n->a = std::move(a);
        return n;
    }

    static NodePtr binary(Node::Kind k, NodePtr a, NodePtr b) {
        auto n = std::make_unique<Node>();
        n->kind = k;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    std::string_view text_;
    unsigned n_;
    std::size_t pos_ = 0;
};

Scalar eval_node(const Node& n, std::span<const Scalar> point, Backend b) {
    switch (n.kind) {
    case Node::Kind::constant:
        return Scalar::parse(n.literal, b);
    case Node::Kind::variable:
        return point[n.var];
    case Node::Kind::add:
        return eval_node(*n.a, point, b) + eval_node(*n.b, point, b);
    case Node::Kind::sub:
        return eval_node(*n.a, point, b) - eval_node(*n.b, point, b);
    case Node::Kind::mul:
        return eval_node(*n.a, point, b) * eval_node(*n.b, point, b);
    case Node::Kind::div:
        return eval_node(*n.a, point, b) / eval_node(*n.b, point, b);
    case Node::Kind::neg:
        return -eval_node(*n.a, point, b);
    case Node::Kind::pow: {
        Scalar base = eval_node(*n.a, point, b);
        Scalar e = eval_node(*n.b, point, b);
        if (b == Backend::rational) {
            const Rational& er = e.rat();
            if (boost::multiprecision::denominator(er) != 1)
                throw EvaluationFailure("fractional powers need the float backend");
            return base.pow_int(boost::multiprecision::numerator(er).convert_to<std::int64_t>());
        }
        return Scalar(std::pow(base.to_double(), e.to_double()));
    }
    case Node::Kind::call: {
        Scalar a = eval_node(*n.a, point, b);
        if (n.fn == Fn::abs) return a.abs();
        if (b == Backend::rational)
            throw EvaluationFailure("sin/cos/exp need the float backend");
        double x = a.to_double();
        switch (n.fn) {
        case Fn::sin: return Scalar(std::sin(x));
        case Fn::cos: return Scalar(std::cos(x));
        case Fn::exp: return Scalar(std::exp(x));
        case Fn::abs: break;
        }
        return a;
    }
    }
    throw EvaluationFailure("corrupt expression node");
}

} // namespace

Expression Expression::parse(std::string_view text, unsigned n_vars) {
    Parser p(text, n_vars);
    return Expression(p.run(), n_vars);
}

Scalar Expression::eval(std::span<const Scalar> point) const {
    if (point.size() != n_vars_) throw DimensionMismatch("point arity mismatch");
    if (point.empty()) throw DimensionMismatch("expressions need at least one variable");
    return eval_node(*root_, point, point[0].backend());
}

Expression::Expression(std::unique_ptr<Node> root, unsigned n_vars)
    : root_(std::move(root)), n_vars_(n_vars) {}
Expression::~Expression() = default;
Expression::Expression(Expression&&) noexcept = default;
Expression& Expression::operator=(Expression&&) noexcept = default;

} // namespace catint
