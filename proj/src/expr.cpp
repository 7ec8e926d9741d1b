#include "cauchy/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace cauchy {

namespace {

std::shared_ptr<Expr> node(ExprKind k) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    return e;
}

bool is_const(const ExprPtr& e, double v) {
    return e->kind == ExprKind::constant && e->value == v;
}

}  // namespace

ExprPtr make_constant(double v) {
    auto e = node(ExprKind::constant);
    e->value = v;
    return e;
}

ExprPtr make_variable(int var) {
    auto e = node(ExprKind::variable);
    e->var = var;
    return e;
}

ExprPtr make_unary(ExprKind k, ExprPtr a) {
    if (a->kind == ExprKind::constant) {
        double v = a->value;
        switch (k) {
            case ExprKind::neg: return make_constant(-v);
            case ExprKind::exp_fn: return make_constant(std::exp(v));
            case ExprKind::log_fn: return make_constant(std::log(v));
            case ExprKind::sqrt_fn: return make_constant(std::sqrt(v));
            case ExprKind::sin_fn: return make_constant(std::sin(v));
            case ExprKind::cos_fn: return make_constant(std::cos(v));
            case ExprKind::tan_fn: return make_constant(std::tan(v));
            case ExprKind::sinh_fn: return make_constant(std::sinh(v));
            case ExprKind::cosh_fn: return make_constant(std::cosh(v));
            case ExprKind::tanh_fn: return make_constant(std::tanh(v));
            case ExprKind::abs_fn: return make_constant(std::fabs(v));
            case ExprKind::sign_fn: return make_constant(v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0));
            default: break;
        }
    }
    auto e = node(k);
    e->a = std::move(a);
    return e;
}

ExprPtr make_binary(ExprKind k, ExprPtr a, ExprPtr b) {
    // Light folding keeps derivative trees small.
    if (a->kind == ExprKind::constant && b->kind == ExprKind::constant) {
        switch (k) {
            case ExprKind::add: return make_constant(a->value + b->value);
            case ExprKind::sub: return make_constant(a->value - b->value);
            case ExprKind::mul: return make_constant(a->value * b->value);
            case ExprKind::div: return make_constant(a->value / b->value);
            case ExprKind::pow: return make_constant(std::pow(a->value, b->value));
            default: break;
        }
    }
    switch (k) {
        case ExprKind::add:
            if (is_const(a, 0)) return b;
            if (is_const(b, 0)) return a;
            break;
        case ExprKind::sub:
            if (is_const(b, 0)) return a;
            break;
        case ExprKind::mul:
            if (is_const(a, 0) || is_const(b, 0)) return make_constant(0.0);
            if (is_const(a, 1)) return b;
            if (is_const(b, 1)) return a;
            break;
        case ExprKind::div:
            if (is_const(a, 0)) return make_constant(0.0);
            if (is_const(b, 1)) return a;
            break;
        case ExprKind::pow:
            if (is_const(b, 1)) return a;
            if (is_const(b, 0)) return make_constant(1.0);
            break;
        default:
            break;
    }
    auto e = node(k);
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

double eval(const ExprPtr& e, double x, double y, double t) {
    switch (e->kind) {
        case ExprKind::constant: return e->value;
        case ExprKind::variable: return e->var == 0 ? x : (e->var == 1 ? y : t);
        case ExprKind::add: return eval(e->a, x, y, t) + eval(e->b, x, y, t);
        case ExprKind::sub: return eval(e->a, x, y, t) - eval(e->b, x, y, t);
        case ExprKind::mul: return eval(e->a, x, y, t) * eval(e->b, x, y, t);
        case ExprKind::div: return eval(e->a, x, y, t) / eval(e->b, x, y, t);
        case ExprKind::pow: return std::pow(eval(e->a, x, y, t), eval(e->b, x, y, t));
        case ExprKind::neg: return -eval(e->a, x, y, t);
        case ExprKind::exp_fn: return std::exp(eval(e->a, x, y, t));
        case ExprKind::log_fn: return std::log(eval(e->a, x, y, t));
        case ExprKind::sqrt_fn: return std::sqrt(eval(e->a, x, y, t));
        case ExprKind::sin_fn: return std::sin(eval(e->a, x, y, t));
        case ExprKind::cos_fn: return std::cos(eval(e->a, x, y, t));
        case ExprKind::tan_fn: return std::tan(eval(e->a, x, y, t));
        case ExprKind::sinh_fn: return std::sinh(eval(e->a, x, y, t));
        case ExprKind::cosh_fn: return std::cosh(eval(e->a, x, y, t));
        case ExprKind::tanh_fn: return std::tanh(eval(e->a, x, y, t));
        case ExprKind::abs_fn: return std::fabs(eval(e->a, x, y, t));
        case ExprKind::sign_fn: {
            double v = eval(e->a, x, y, t);
            return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0);
        }
        case ExprKind::singular: return std::pow(std::fabs(x - e->x0), -e->p);
    }
    return 0.0;
}

bool depends_on(const ExprPtr& e, int var) {
    switch (e->kind) {
        case ExprKind::constant: return false;
        case ExprKind::variable: return e->var == var;
        case ExprKind::singular: return var == 0;
        default:
            if (e->a && depends_on(e->a, var)) return true;
            if (e->b && depends_on(e->b, var)) return true;
            return false;
    }
}

ExprPtr differentiate(const ExprPtr& e, int var) {
    using K = ExprKind;
    switch (e->kind) {
        case K::constant: return make_constant(0.0);
        case K::variable: return make_constant(e->var == var ? 1.0 : 0.0);
        case K::add: return make_binary(K::add, differentiate(e->a, var), differentiate(e->b, var));
        case K::sub: return make_binary(K::sub, differentiate(e->a, var), differentiate(e->b, var));
        case K::mul:
            return make_binary(K::add, make_binary(K::mul, differentiate(e->a, var), e->b),
                               make_binary(K::mul, e->a, differentiate(e->b, var)));
        case K::div:
            // (a/b)' = a'/b - a b'/b^2
            return make_binary(
                K::sub, make_binary(K::div, differentiate(e->a, var), e->b),
                make_binary(K::div, make_binary(K::mul, e->a, differentiate(e->b, var)),
                            make_binary(K::mul, e->b, e->b)));
        case K::pow:
            if (e->b->kind == K::constant) {
                // c * a^(c-1) * a'  -- valid for negative bases with integer c
                return make_binary(
                    K::mul, make_constant(e->b->value),
                    make_binary(K::mul, make_binary(K::pow, e->a, make_constant(e->b->value - 1.0)),
                                differentiate(e->a, var)));
            }
            // a^b * (b' log a + b a'/a)
            return make_binary(
                K::mul, make_binary(K::pow, e->a, e->b),
                make_binary(K::add,
                            make_binary(K::mul, differentiate(e->b, var), make_unary(K::log_fn, e->a)),
                            make_binary(K::div, make_binary(K::mul, e->b, differentiate(e->a, var)),
                                        e->a)));
        case K::neg: return make_unary(K::neg, differentiate(e->a, var));
        case K::exp_fn: return make_binary(K::mul, make_unary(K::exp_fn, e->a), differentiate(e->a, var));
        case K::log_fn: return make_binary(K::div, differentiate(e->a, var), e->a);
        case K::sqrt_fn:
            return make_binary(K::div, differentiate(e->a, var),
                               make_binary(K::mul, make_constant(2.0), make_unary(K::sqrt_fn, e->a)));
        case K::sin_fn: return make_binary(K::mul, make_unary(K::cos_fn, e->a), differentiate(e->a, var));
        case K::cos_fn:
            return make_unary(K::neg,
                              make_binary(K::mul, make_unary(K::sin_fn, e->a), differentiate(e->a, var)));
        case K::tan_fn: {
            auto sec2 = make_binary(K::div, make_constant(1.0),
                                    make_binary(K::pow, make_unary(K::cos_fn, e->a), make_constant(2.0)));
            return make_binary(K::mul, sec2, differentiate(e->a, var));
        }
        case K::sinh_fn:
            return make_binary(K::mul, make_unary(K::cosh_fn, e->a), differentiate(e->a, var));
        case K::cosh_fn:
            return make_binary(K::mul, make_unary(K::sinh_fn, e->a), differentiate(e->a, var));
        case K::tanh_fn: {
            auto sech2 = make_binary(K::sub, make_constant(1.0),
                                     make_binary(K::pow, make_unary(K::tanh_fn, e->a), make_constant(2.0)));
            return make_binary(K::mul, sech2, differentiate(e->a, var));
        }
        case K::abs_fn:
            return make_binary(K::mul, make_unary(K::sign_fn, e->a), differentiate(e->a, var));
        case K::sign_fn: return make_constant(0.0);
        case K::singular: {
            if (var != 0) return make_constant(0.0);
            // d/dx |x-x0|^-p = -p sign(x-x0) |x-x0|^-(p+1)
            auto stronger = node(ExprKind::singular);
            stronger->x0 = e->x0;
            stronger->p = e->p + 1.0;
            auto sgn = make_unary(K::sign_fn,
                                  make_binary(K::sub, make_variable(0), make_constant(e->x0)));
            return make_binary(K::mul, make_constant(-e->p),
                               make_binary(K::mul, sgn, ExprPtr(stronger)));
        }
    }
    return make_constant(0.0);
}

std::vector<SingularMarker> singular_markers(const ExprPtr& e) {
    std::vector<SingularMarker> out;
    std::function<void(const ExprPtr&)> walk = [&](const ExprPtr& n) {
        if (!n) return;
        if (n->kind == ExprKind::singular) out.push_back({n->x0, n->p});
        walk(n->a);
        walk(n->b);
    };
    walk(e);
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : src_(s) {}

    ExprPtr run() {
        auto e = expression();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("expression error at position " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    ExprPtr expression() {
        auto e = term();
        for (;;) {
            if (eat('+'))
                e = make_binary(ExprKind::add, e, term());
            else if (eat('-'))
                e = make_binary(ExprKind::sub, e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        auto e = unary();
        for (;;) {
            if (eat('*'))
                e = make_binary(ExprKind::mul, e, unary());
            else if (eat('/'))
                e = make_binary(ExprKind::div, e, unary());
            else
                return e;
        }
    }

    ExprPtr unary() {
        if (eat('-')) return make_unary(ExprKind::neg, unary());
        if (eat('+')) return unary();
        return power();
    }

    ExprPtr power() {
        auto base = atom();
        if (eat('^')) return make_binary(ExprKind::pow, base, unary());  // right associative
        return base;
    }

    ExprPtr atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        if (eat('(')) {
            auto e = expression();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    ExprPtr number() {
        size_t end = pos_;
        while (end < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[end])) || src_[end] == '.'))
            ++end;
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            size_t p = end + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                ++p;
                while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
                end = p;
            }
        }
        double v;
        try {
            v = std::stod(src_.substr(pos_, end - pos_));
        } catch (const std::exception&) {
            fail("bad number");
        }
        pos_ = end;
        return make_constant(v);
    }

    ExprPtr identifier() {
        size_t end = pos_;
        while (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
            ++end;
        std::string name = src_.substr(pos_, end - pos_);
        pos_ = end;

        if (peek() != '(') {
            if (name == "x") return make_variable(0);
            if (name == "y") return make_variable(1);
            if (name == "t") return make_variable(2);
            if (name == "pi") return make_constant(3.14159265358979323846);
            if (name == "e") return make_constant(2.71828182845904523536);
            fail("unknown symbol '" + name + "'");
        }

        eat('(');
        if (name == "sing") {
            auto arg0 = expression();
            if (!eat(',')) fail("sing(x0, p) needs two arguments");
            auto arg1 = expression();
            if (!eat(')')) fail("expected ')'");
            if (depends_on(arg0, 0) || depends_on(arg0, 1) || depends_on(arg0, 2) ||
                depends_on(arg1, 0) || depends_on(arg1, 1) || depends_on(arg1, 2))
                fail("sing(x0, p) arguments must be constants");
            auto s = node(ExprKind::singular);
            s->x0 = eval(arg0, 0, 0, 0);
            s->p = eval(arg1, 0, 0, 0);
            if (s->p <= 0) fail("sing exponent must be positive");
            return s;
        }

        static const std::map<std::string, ExprKind> fns = {
            {"exp", ExprKind::exp_fn},   {"log", ExprKind::log_fn},   {"sqrt", ExprKind::sqrt_fn},
            {"sin", ExprKind::sin_fn},   {"cos", ExprKind::cos_fn},   {"tan", ExprKind::tan_fn},
            {"sinh", ExprKind::sinh_fn}, {"cosh", ExprKind::cosh_fn}, {"tanh", ExprKind::tanh_fn},
            {"abs", ExprKind::abs_fn},
        };
        auto it = fns.find(name);
        if (it == fns.end()) fail("unknown function '" + name + "'");
        auto arg = expression();
        if (!eat(')')) fail("expected ')'");
        return make_unary(it->second, arg);
    }

    const std::string& src_;
    size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expression(const std::string& src) { return Parser(src).run(); }

}  // namespace cauchy
