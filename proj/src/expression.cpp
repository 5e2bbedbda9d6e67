#include "cfp/expression.hpp"

#include "cfp/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace cfp {

class Expression::Parser {
public:
    Parser(std::string_view text, std::size_t dim, std::vector<Node>& nodes)
        : text_(text), dim_(dim), nodes_(nodes) {}

    int parse_all()
    {
        int root = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError("offset " + std::to_string(pos_), msg + " in expression \"" + std::string(text_) + "\"");
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    int add(Node n)
    {
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size() - 1);
    }

    bool has_variables(int id) const
    {
        const Node& n = nodes_[id];
        if (n.op == Op::var_x || n.op == Op::var_y)
            return true;
        return (n.lhs >= 0 && has_variables(n.lhs)) || (n.rhs >= 0 && has_variables(n.rhs));
    }

    int parse_expr()
    {
        int lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = add({Op::add, 0, 0, lhs, parse_term()});
            else if (accept('-'))
                lhs = add({Op::sub, 0, 0, lhs, parse_term()});
            else
                return lhs;
        }
    }

    int parse_term()
    {
        int lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = add({Op::mul, 0, 0, lhs, parse_unary()});
            } else if (accept('/')) {
                const std::size_t at = pos_;
                int rhs = parse_unary();
                if (has_variables(rhs)) {
                    pos_ = at;
                    fail("divisor must be a constant");
                }
                std::vector<double> none;
                Expression probe;
                probe.nodes_ = nodes_;
                if (probe.eval_node(rhs, none, none) == 0) {
                    pos_ = at;
                    fail("division by zero");
                }
                lhs = add({Op::div, 0, 0, lhs, rhs});
            } else {
                return lhs;
            }
        }
    }

    int parse_unary()
    {
        if (accept('-'))
            return add({Op::neg, 0, 0, parse_unary(), -1});
        if (accept('+'))
            return parse_unary();
        return parse_primary();
    }

    int parse_primary()
    {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            int inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_identifier();
        fail(std::string("unexpected '") + c + "'");
    }

    int parse_number()
    {
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double v = 0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || !std::isfinite(v))
            fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return add({Op::constant, v, 0, -1, -1});
    }

    int parse_identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);

        if (name == "min" || name == "max") {
            expect('(');
            int a = parse_expr();
            expect(',');
            int b = parse_expr();
            expect(')');
            return add({name == "min" ? Op::min : Op::max, 0, 0, a, b});
        }
        if (name == "abs") {
            expect('(');
            int a = parse_expr();
            expect(')');
            return add({Op::abs, 0, 0, a, -1});
        }
        if (name[0] == 'x' || name[0] == 'y') {
            const Op op = name[0] == 'x' ? Op::var_x : Op::var_y;
            if (name.size() == 1) {
                if (dim_ != 1) {
                    pos_ = start;
                    fail("bare '" + std::string(name) + "' is ambiguous in dimension " + std::to_string(dim_));
                }
                return add({op, 0, 0, -1, -1});
            }
            std::size_t k = 0;
            auto digits = name.substr(1);
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
            if (ec == std::errc() && ptr == digits.data() + digits.size() && k >= 1 && k <= dim_)
                return add({op, 0, k - 1, -1, -1});
        }
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
    }

    std::string_view text_;
    std::size_t dim_;
    std::vector<Node>& nodes_;
    std::size_t pos_ = 0;
};

Expression Expression::parse(std::string_view source, std::size_t dimension)
{
    if (dimension == 0)
        throw DomainError("expression dimension must be >= 1");
    Expression e;
    e.source_ = std::string(source);
    e.dimension_ = dimension;
    Parser p(source, dimension, e.nodes_);
    e.root_ = p.parse_all();
    return e;
}

double Expression::evaluate(std::span<const double> x, std::span<const double> y) const
{
    if (x.size() != dimension_ || y.size() != dimension_)
        throw DomainError("expression of dimension " + std::to_string(dimension_) + " evaluated with arguments of size " +
                          std::to_string(x.size()) + "/" + std::to_string(y.size()));
    return eval_node(root_, x, y);
}

double Expression::eval_node(int id, std::span<const double> x, std::span<const double> y) const
{
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    switch (n.op) {
    case Op::constant: return n.value;
    case Op::var_x: return x[n.slot];
    case Op::var_y: return y[n.slot];
    case Op::neg: return -eval_node(n.lhs, x, y);
    case Op::add: return eval_node(n.lhs, x, y) + eval_node(n.rhs, x, y);
    case Op::sub: return eval_node(n.lhs, x, y) - eval_node(n.rhs, x, y);
    case Op::mul: return eval_node(n.lhs, x, y) * eval_node(n.rhs, x, y);
    case Op::div: return eval_node(n.lhs, x, y) / eval_node(n.rhs, x, y);
    case Op::min: return std::min(eval_node(n.lhs, x, y), eval_node(n.rhs, x, y));
    case Op::max: return std::max(eval_node(n.lhs, x, y), eval_node(n.rhs, x, y));
    case Op::abs: return std::abs(eval_node(n.lhs, x, y));
    }
    return 0;
}

} // namespace cfp
