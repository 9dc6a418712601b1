#pragma once

#include <memory>
#include <string>

namespace wentzell {

/// Compiled arithmetic expression in the variables x (and y in 2D).
/// Grammar: + - * / ^, parentheses, unary minus, cos/sin/exp, the
/// constant pi, and decimal literals.
class Expression {
public:
    static Expression parse(const std::string& text);

    double eval(double x, double y = 0.0) const;
    const std::string& text() const { return text_; }

    Expression() = default;

    struct Node;  // implementation detail, defined in expr.cpp

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace wentzell
