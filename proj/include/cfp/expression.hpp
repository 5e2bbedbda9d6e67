#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cfp {

/// A scalar arithmetic formula in the coordinates of x and y.
///
/// Grammar (whitespace ignored):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := ('+' | '-') unary | primary
///     primary := number | variable | call | '(' expr ')'
///     call    := ('min' | 'max') '(' expr ',' expr ')' | 'abs' '(' expr ')'
///     variable:= 'x' | 'y'            (dimension 1)
///              | 'x' k | 'y' k        (1 <= k <= dimension)
///
/// The right operand of '/' must be free of variables and nonzero.
class Expression {
public:
    /// Throws ParseError with a character offset on any grammar error.
    static Expression parse(std::string_view source, std::size_t dimension);

    double evaluate(std::span<const double> x, std::span<const double> y) const;

    const std::string& source() const noexcept { return source_; }
    std::size_t dimension() const noexcept { return dimension_; }

    bool operator==(const Expression& other) const { return source_ == other.source_ && dimension_ == other.dimension_; }

private:
    enum class Op { constant, var_x, var_y, neg, add, sub, mul, div, min, max, abs };

    struct Node {
        Op op;
        double value = 0;     // constant
        std::size_t slot = 0; // coordinate for var_x / var_y
        int lhs = -1;
        int rhs = -1;
    };

    class Parser;

    double eval_node(int id, std::span<const double> x, std::span<const double> y) const;

    std::string source_;
    std::size_t dimension_ = 1;
    std::vector<Node> nodes_;
    int root_ = -1;
};

} // namespace cfp
