#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "catint/scalar.hpp"

namespace catint {

/// Arithmetic expression over x1..xn with literals, + - * /, ^ or pow(), and
/// sin/cos/exp/abs.  "x" aliases "x1".  Parse failures carry the position.
class Expression {
public:
    static Expression parse(std::string_view text, unsigned n_vars);

    /// Evaluates in the point's backend.  sin/cos/exp and fractional powers
    /// need the float backend; on rationals they raise EvaluationFailure.
    Scalar eval(std::span<const Scalar> point) const;

    unsigned n_vars() const { return n_vars_; }

    struct Node;
    ~Expression();
    Expression(Expression&&) noexcept;
    Expression& operator=(Expression&&) noexcept;
    Expression(const Expression&) = delete;
    Expression& operator=(const Expression&) = delete;

private:
    Expression(std::unique_ptr<Node> root, unsigned n_vars);
    std::unique_ptr<Node> root_;
    unsigned n_vars_;
};

} // namespace catint
