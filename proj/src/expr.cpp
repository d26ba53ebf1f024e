#include "hyp/expr.hpp"

#include <cctype>
#include <sstream>

#include "hyp/kernel.hpp"
#include "hyp/words.hpp"

namespace hyp {

const char* op_name(Op op) {
    switch (op) {
        case Op::constant: return "const";
        case Op::variable: return "var";
        case Op::add: return "+";
        case Op::sub: return "-";
        case Op::mul: return "*";
        case Op::div: return "/";
        case Op::neg: return "neg";
        case Op::pow: return "^";
        case Op::exp: return "exp";
        case Op::log: return "log";
        case Op::sinh: return "sinh";
        case Op::cosh: return "cosh";
        case Op::sqrt: return "sqrt";
        case Op::acosh: return "acosh";
        case Op::asinh: return "asinh";
    }
    return "?";
}

namespace {

Rational decimal_to_rational(const std::string& t) {
    std::size_t i = 0;
    boost::multiprecision::cpp_int num = 0, den = 1;
    bool digits = false;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
        num = num * 10 + (t[i++] - '0');
        digits = true;
    }
    if (i < t.size() && t[i] == '.') {
        ++i;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
            num = num * 10 + (t[i++] - '0');
            den *= 10;
            digits = true;
        }
    }
    if (!digits) throw ParseError("bad number '" + t + "'");
    if (i < t.size() && (t[i] == 'e' || t[i] == 'E')) {
        ++i;
        bool neg = false;
        if (i < t.size() && (t[i] == '+' || t[i] == '-')) neg = t[i++] == '-';
        int e = 0;
        std::size_t start = i;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) e = e * 10 + (t[i++] - '0');
        if (i == start || e > 400) throw ParseError("bad exponent in '" + t + "'");
        boost::multiprecision::cpp_int p = 1;
        for (int k = 0; k < e; ++k) p *= 10;
        if (neg)
            den *= p;
        else
            num *= p;
    }
    if (i != t.size()) throw ParseError("bad number '" + t + "'");
    return Rational(num, den);
}

struct ExprParser {
    std::string_view s;
    const std::vector<std::string>& vars;
    std::size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg + " at offset " + std::to_string(i) + " in '" + std::string(s) + "'");
    }

    Expr sum() {
        Expr e = product();
        for (;;) {
            if (eat('+'))
                e = make_binary(Op::add, e, product());
            else if (eat('-'))
                e = make_binary(Op::sub, e, product());
            else
                return e;
        }
    }
    Expr product() {
        Expr e = unary();
        for (;;) {
            if (eat('*'))
                e = make_binary(Op::mul, e, unary());
            else if (eat('/'))
                e = make_binary(Op::div, e, unary());
            else
                return e;
        }
    }
    Expr unary() {
        if (eat('-')) return make_unary(Op::neg, unary());
        if (eat('+')) return unary();
        return power();
    }
    Expr power() {
        Expr base = atom();
        if (!eat('^')) return base;
        ws();
        bool neg = false;
        bool paren = eat('(');
        if (eat('-')) neg = true;
        ws();
        std::size_t start = i;
        long n = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            n = n * 10 + (s[i++] - '0');
            if (n > 10000) fail("exponent too large");
        }
        if (i == start) fail("integer exponent expected");
        if (paren && !eat(')')) fail("')' expected");
        return make_pow(base, int(neg ? -n : n));
    }
    Expr atom() {
        ws();
        if (i >= s.size()) fail("unexpected end");
        if (eat('(')) {
            Expr e = sum();
            if (!eat(')')) fail("')' expected");
            return e;
        }
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = i;
            while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
            if (i < s.size() && (s[i] == 'e' || s[i] == 'E') && i + 1 < s.size() &&
                (std::isdigit(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '-' || s[i + 1] == '+')) {
                ++i;
                if (s[i] == '-' || s[i] == '+') ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            }
            return make_const(std::string(s.substr(start, i - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
                ++i;
            std::string id(s.substr(start, i - start));
            static const std::pair<const char*, Op> funcs[] = {
                {"exp", Op::exp},   {"log", Op::log},     {"sinh", Op::sinh},  {"cosh", Op::cosh},
                {"sqrt", Op::sqrt}, {"acosh", Op::acosh}, {"asinh", Op::asinh}};
            for (auto& [fname, op] : funcs) {
                if (id == fname) {
                    if (!eat('(')) fail("'(' expected after " + id);
                    Expr arg = sum();
                    if (!eat(')')) fail("')' expected");
                    return make_unary(op, arg);
                }
            }
            for (std::size_t k = 0; k < vars.size(); ++k)
                if (vars[k] == id) return make_var(int(k), id);
            fail("unknown identifier '" + id + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

void print(std::ostream& os, const Expr& e) {
    switch (e->op) {
        case Op::constant: os << e->text; return;
        case Op::variable: os << e->name; return;
        case Op::add:
        case Op::sub:
        case Op::mul:
        case Op::div:
            os << '(';
            print(os, e->lhs);
            os << ' ' << op_name(e->op) << ' ';
            print(os, e->rhs);
            os << ')';
            return;
        case Op::neg:
            os << "(-";
            print(os, e->lhs);
            os << ')';
            return;
        case Op::pow:
            print(os, e->lhs);
            os << '^' << e->exponent;
            return;
        default:
            os << op_name(e->op) << '(';
            print(os, e->lhs);
            os << ')';
    }
}

}  // namespace

Expr make_const(const std::string& decimal) {
    auto n = std::make_shared<Node>();
    n->op = Op::constant;
    n->text = decimal;
    n->exact = decimal_to_rational(decimal);
    n->enclosure = Interval::from_decimal(decimal);
    return n;
}

Expr make_var(int index, const std::string& name) {
    auto n = std::make_shared<Node>();
    n->op = Op::variable;
    n->var = index;
    n->name = name;
    return n;
}

Expr make_unary(Op op, Expr a) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(a);
    return n;
}

Expr make_binary(Op op, Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

Expr make_pow(Expr a, int k) {
    auto n = std::make_shared<Node>();
    n->op = Op::pow;
    n->lhs = std::move(a);
    n->exponent = k;
    return n;
}

Expr parse_expr(std::string_view text, const std::vector<std::string>& vars) {
    ExprParser p{text, vars};
    Expr e = p.sum();
    p.ws();
    if (p.i != text.size()) p.fail("trailing input");
    return e;
}

std::string to_string(const Expr& e) {
    std::ostringstream os;
    print(os, e);
    return os.str();
}

bool depends_on(const Expr& e, int var) {
    if (!e) return false;
    if (e->op == Op::variable) return e->var == var;
    return depends_on(e->lhs, var) || depends_on(e->rhs, var);
}

Interval eval_interval(const Expr& e, const Box& box) {
    switch (e->op) {
        case Op::constant: return e->enclosure;
        case Op::variable: return box.at(std::size_t(e->var));
        case Op::add: return eval_interval(e->lhs, box) + eval_interval(e->rhs, box);
        case Op::sub: return eval_interval(e->lhs, box) - eval_interval(e->rhs, box);
        case Op::mul: return eval_interval(e->lhs, box) * eval_interval(e->rhs, box);
        case Op::neg: return -eval_interval(e->lhs, box);
        case Op::pow: return ipow(eval_interval(e->lhs, box), e->exponent);
        case Op::exp: return exp(eval_interval(e->lhs, box));
        case Op::sinh: return sinh(eval_interval(e->lhs, box));
        case Op::cosh: return cosh(eval_interval(e->lhs, box));
        case Op::asinh: return asinh(eval_interval(e->lhs, box));
        default: break;
    }
    try {
        switch (e->op) {
            case Op::div: return eval_interval(e->lhs, box) / eval_interval(e->rhs, box);
            case Op::log: return log(eval_interval(e->lhs, box));
            case Op::sqrt: return sqrt(eval_interval(e->lhs, box));
            case Op::acosh: return acosh(eval_interval(e->lhs, box));
            default: break;
        }
    } catch (const PartialDomainError&) {
        throw;
    } catch (const DomainError& err) {
        throw PartialDomainError(std::string(err.what()) + " in " + to_string(e));
    }
    throw std::logic_error("unhandled node");
}

HPFloat eval_hp(const Expr& e, const std::vector<HPFloat>& pt) {
    auto arg = [&] { return eval_hp(e->lhs, pt); };
    auto bad = [&](const char* what) { return PartialDomainError(std::string(what) + " in " + to_string(e)); };
    switch (e->op) {
        case Op::constant:
            return HPFloat(numerator(e->exact)) / HPFloat(denominator(e->exact));
        case Op::variable: return pt.at(std::size_t(e->var));
        case Op::add: return eval_hp(e->lhs, pt) + eval_hp(e->rhs, pt);
        case Op::sub: return eval_hp(e->lhs, pt) - eval_hp(e->rhs, pt);
        case Op::mul: return eval_hp(e->lhs, pt) * eval_hp(e->rhs, pt);
        case Op::div: {
            HPFloat d = eval_hp(e->rhs, pt);
            if (d == 0) throw bad("division by zero");
            return eval_hp(e->lhs, pt) / d;
        }
        case Op::neg: return -arg();
        case Op::pow: {
            HPFloat b = arg();
            if (e->exponent < 0 && b == 0) throw bad("zero to a negative power");
            return pow(b, e->exponent);
        }
        case Op::exp: return exp(arg());
        case Op::log: {
            HPFloat x = arg();
            if (x <= 0) throw bad("log of a non-positive value");
            return log(x);
        }
        case Op::sinh: return sinh(arg());
        case Op::cosh: return cosh(arg());
        case Op::sqrt: {
            HPFloat x = arg();
            if (x < 0) throw bad("sqrt of a negative value");
            return sqrt(x);
        }
        case Op::acosh: {
            HPFloat x = arg();
            if (x < 1) throw bad("acosh below 1");
            return acosh(x);
        }
        case Op::asinh: return asinh(arg());
    }
    throw std::logic_error("unhandled node");
}

}  // namespace hyp
