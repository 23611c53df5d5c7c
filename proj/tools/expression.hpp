#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace blend::cli {

class ExpressionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Arithmetic expression in one variable (x, t or theta).
 *
 * Grammar: + - * / ^ (right associative, binds tighter than unary minus),
 * parentheses, numeric literals, constants pi and e, and the functions
 * sin cos tan exp ln log sqrt abs.
 */
class Expression {
public:
    static Expression parse(std::string_view text);

    double operator()(double x) const;
    const std::string& text() const noexcept { return text_; }

    struct Node;

private:
    Expression(std::string text, std::shared_ptr<const Node> root);

    std::string text_;
    std::shared_ptr<const Node> root_;
};

} // namespace blend::cli
