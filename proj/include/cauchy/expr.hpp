#pragma once

#include <memory>
#include <string>
#include <vector>

namespace cauchy {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind {
    constant,
    variable,  // var: 0 = x, 1 = y, 2 = t
    add,
    sub,
    mul,
    div,
    pow,
    neg,
    exp_fn,
    log_fn,
    sqrt_fn,
    sin_fn,
    cos_fn,
    tan_fn,
    sinh_fn,
    cosh_fn,
    tanh_fn,
    abs_fn,
    sign_fn,
    singular,  // |x - x0|^(-p), marks a power-law singularity at x0
};

struct Expr {
    ExprKind kind;
    double value = 0.0;  // constant
    int var = 0;
    double x0 = 0.0, p = 0.0;  // singular marker parameters
    ExprPtr a, b;
};

struct SingularMarker {
    double x0;
    double p;
};

// Grammar: + - * / ^ with the usual precedence, unary minus, parentheses,
// numbers, variables x/y/t, functions exp log sqrt sin cos tan sinh cosh
// tanh abs, and the marker sing(x0, p). Throws std::runtime_error with a
// character position on bad input.
ExprPtr parse_expression(const std::string& src);

double eval(const ExprPtr& e, double x, double y = 0.0, double t = 0.0);

// Exact derivative as a new tree. var: 0 = x, 1 = y, 2 = t.
ExprPtr differentiate(const ExprPtr& e, int var);

bool depends_on(const ExprPtr& e, int var);

std::vector<SingularMarker> singular_markers(const ExprPtr& e);

ExprPtr make_constant(double v);
ExprPtr make_variable(int var);
ExprPtr make_binary(ExprKind k, ExprPtr a, ExprPtr b);
ExprPtr make_unary(ExprKind k, ExprPtr a);

}  // namespace cauchy
