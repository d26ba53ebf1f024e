#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "hyp/interval.hpp"

namespace hyp {

using Rational = boost::multiprecision::cpp_rational;
using HPFloat = boost::multiprecision::mpfr_float_100;

enum class Op { constant, variable, add, sub, mul, div, neg, pow, exp, log, sinh, cosh, sqrt, acosh, asinh };
const char* op_name(Op op);

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
    Op op = Op::constant;
    // constant: decimal text as written, its exact value and a tight enclosure
    std::string text;
    Rational exact;
    Interval enclosure;
    // variable: index into the claim's variable list
    int var = -1;
    std::string name;
    int exponent = 0;  // Op::pow
    Expr lhs, rhs;     // rhs unused for unary nodes
};

struct PartialDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

Expr make_const(const std::string& decimal);
Expr make_var(int index, const std::string& name);
Expr make_unary(Op op, Expr a);
Expr make_binary(Op op, Expr a, Expr b);
Expr make_pow(Expr a, int n);

// Grammar: + - * / ^int, unary minus, parentheses, decimal literals, the
// variables listed in `vars`, and exp log sinh cosh sqrt acosh asinh.
Expr parse_expr(std::string_view text, const std::vector<std::string>& vars);

std::string to_string(const Expr& e);
bool depends_on(const Expr& e, int var);

using Box = std::vector<Interval>;

// Enclosure of the exact range over the box. Throws PartialDomainError naming the
// node when a log/sqrt/acosh argument leaves its domain.
Interval eval_interval(const Expr& e, const Box& box);

// Point value at 100 significant digits.
HPFloat eval_hp(const Expr& e, const std::vector<HPFloat>& point);

}  // namespace hyp
