#include "schwartz/expr.hpp"

#include "schwartz/errors.hpp"

#include <cmath>

namespace schwartz {

namespace {

std::shared_ptr<const ExprNode> make_node(ExprOp op, Rational num, long exponent, Expr a, Expr b) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->number = std::move(num);
    n->exponent = exponent;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

bool is_zero(const Expr& e) { return e.is_number() && e.number_value() == 0; }
bool is_one(const Expr& e) { return e.is_number() && e.number_value() == 1; }

} // namespace

// -- construction -----------------------------------------------------------

Expr Expr::number(Rational q) {
    q.canonicalize();
    return Expr(make_node(ExprOp::Number, std::move(q), 0, {}, {}));
}

Expr Expr::var() { return Expr(make_node(ExprOp::Var, Rational(0), 0, {}, {})); }
Expr Expr::e() { return Expr(make_node(ExprOp::ConstE, Rational(0), 0, {}, {})); }
Expr Expr::pi() { return Expr(make_node(ExprOp::ConstPi, Rational(0), 0, {}, {})); }

Expr Expr::add(Expr a, Expr b) {
    if (a.is_number() && b.is_number()) return number(a.number_value() + b.number_value());
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    return Expr(make_node(ExprOp::Add, Rational(0), 0, std::move(a), std::move(b)));
}

Expr Expr::sub(Expr a, Expr b) {
    if (a.is_number() && b.is_number()) return number(a.number_value() - b.number_value());
    if (is_zero(b)) return a;
    if (is_zero(a)) return neg(std::move(b));
    return Expr(make_node(ExprOp::Sub, Rational(0), 0, std::move(a), std::move(b)));
}

Expr Expr::neg(Expr a) {
    if (a.is_number()) return number(-a.number_value());
    if (a.op() == ExprOp::Neg) return a.node().a;
    return Expr(make_node(ExprOp::Neg, Rational(0), 0, std::move(a), {}));
}

Expr Expr::mul(Expr a, Expr b) {
    if (a.is_number() && b.is_number()) return number(a.number_value() * b.number_value());
    if (is_zero(a) || is_zero(b)) return number(Rational(0));
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    return Expr(make_node(ExprOp::Mul, Rational(0), 0, std::move(a), std::move(b)));
}

Expr Expr::div(Expr a, Expr b) {
    if (b.is_number() && b.number_value() != 0 && a.is_number())
        return number(a.number_value() / b.number_value());
    if (is_one(b)) return a;
    return Expr(make_node(ExprOp::Div, Rational(0), 0, std::move(a), std::move(b)));
}

Expr Expr::powi(Expr a, long k) {
    if (k == 0) return number(Rational(1));
    if (k == 1) return a;
    if (a.is_number()) {
        if (auto q = pow_rational(a.number_value(), k)) return number(*q);
    }
    return Expr(make_node(ExprOp::Pow, Rational(0), k, std::move(a), {}));
}

Expr Expr::exp(Expr a) {
    if (is_zero(a)) return number(Rational(1));
    return Expr(make_node(ExprOp::Exp, Rational(0), 0, std::move(a), {}));
}

Expr Expr::log(Expr a) {
    if (is_one(a)) return number(Rational(0));
    return Expr(make_node(ExprOp::Log, Rational(0), 0, std::move(a), {}));
}

Expr Expr::sin(Expr a) {
    if (is_zero(a)) return number(Rational(0));
    return Expr(make_node(ExprOp::Sin, Rational(0), 0, std::move(a), {}));
}

Expr Expr::cos(Expr a) {
    if (is_zero(a)) return number(Rational(1));
    return Expr(make_node(ExprOp::Cos, Rational(0), 0, std::move(a), {}));
}

Expr Expr::sqrt(Expr a) { return Expr(make_node(ExprOp::Sqrt, Rational(0), 0, std::move(a), {})); }

ExprOp Expr::op() const { return node_->op; }
bool Expr::is_number() const { return node_ && node_->op == ExprOp::Number; }
const Rational& Expr::number_value() const { return node_->number; }

// -- differentiation --------------------------------------------------------

Expr Expr::derivative() const {
    const ExprNode& n = *node_;
    switch (n.op) {
    case ExprOp::Number:
    case ExprOp::ConstE:
    case ExprOp::ConstPi:
        return number(Rational(0));
    case ExprOp::Var:
        return number(Rational(1));
    case ExprOp::Add:
        return add(n.a.derivative(), n.b.derivative());
    case ExprOp::Sub:
        return sub(n.a.derivative(), n.b.derivative());
    case ExprOp::Neg:
        return neg(n.a.derivative());
    case ExprOp::Mul:
        return add(mul(n.a.derivative(), n.b), mul(n.a, n.b.derivative()));
    case ExprOp::Div:
        // (u/v)' = (u'v - uv') / v^2
        return div(sub(mul(n.a.derivative(), n.b), mul(n.a, n.b.derivative())), powi(n.b, 2));
    case ExprOp::Pow:
        // (u^k)' = k u^(k-1) u'
        return mul(mul(number(Rational(n.exponent)), powi(n.a, n.exponent - 1)), n.a.derivative());
    case ExprOp::Exp:
        return mul(n.a.derivative(), exp(n.a));
    case ExprOp::Log:
        return div(n.a.derivative(), n.a);
    case ExprOp::Sin:
        return mul(n.a.derivative(), cos(n.a));
    case ExprOp::Cos:
        return neg(mul(n.a.derivative(), sin(n.a)));
    case ExprOp::Sqrt:
        return div(n.a.derivative(), mul(number(Rational(2)), sqrt(n.a)));
    }
    return Expr();
}

Expr Expr::derivative(int order) const {
    Expr r = *this;
    for (int i = 0; i < order; ++i) r = r.derivative();
    return r;
}

Expr Expr::substitute(const Expr& g) const {
    const ExprNode& n = *node_;
    switch (n.op) {
    case ExprOp::Number:
        return number(n.number);
    case ExprOp::ConstE:
        return e();
    case ExprOp::ConstPi:
        return pi();
    case ExprOp::Var:
        return g;
    case ExprOp::Add:
        return add(n.a.substitute(g), n.b.substitute(g));
    case ExprOp::Sub:
        return sub(n.a.substitute(g), n.b.substitute(g));
    case ExprOp::Neg:
        return neg(n.a.substitute(g));
    case ExprOp::Mul:
        return mul(n.a.substitute(g), n.b.substitute(g));
    case ExprOp::Div:
        return div(n.a.substitute(g), n.b.substitute(g));
    case ExprOp::Pow:
        return powi(n.a.substitute(g), n.exponent);
    case ExprOp::Exp:
        return exp(n.a.substitute(g));
    case ExprOp::Log:
        return log(n.a.substitute(g));
    case ExprOp::Sin:
        return sin(n.a.substitute(g));
    case ExprOp::Cos:
        return cos(n.a.substitute(g));
    case ExprOp::Sqrt:
        return sqrt(n.a.substitute(g));
    }
    return Expr();
}

// -- printing ---------------------------------------------------------------

namespace {

// precedence: additive 1, multiplicative 2, unary 3, power 4, atom 5
int precedence(ExprOp op) {
    switch (op) {
    case ExprOp::Add:
    case ExprOp::Sub:
        return 1;
    case ExprOp::Mul:
    case ExprOp::Div:
        return 2;
    case ExprOp::Neg:
        return 3;
    case ExprOp::Pow:
        return 4;
    default:
        return 5;
    }
}

void print_rec(const ExprNode& n, std::string& out, int parent_prec, bool right_side) {
    int prec = precedence(n.op);
    if (n.op == ExprOp::Number && n.number < 0) prec = 3; // prints with leading '-'
    bool parens = prec < parent_prec || (prec == parent_prec && right_side && prec <= 2);
    if (parens) out += '(';
    switch (n.op) {
    case ExprOp::Number:
        out += to_string(n.number);
        break;
    case ExprOp::ConstE:
        out += 'e';
        break;
    case ExprOp::ConstPi:
        out += "pi";
        break;
    case ExprOp::Var:
        out += 'x';
        break;
    case ExprOp::Add:
        print_rec(n.a.node(), out, 1, false);
        out += '+';
        print_rec(n.b.node(), out, 1, true);
        break;
    case ExprOp::Sub:
        print_rec(n.a.node(), out, 1, false);
        out += '-';
        print_rec(n.b.node(), out, 2, true);
        break;
    case ExprOp::Neg:
        out += '-';
        print_rec(n.a.node(), out, 3, true);
        break;
    case ExprOp::Mul:
        print_rec(n.a.node(), out, 2, false);
        out += '*';
        print_rec(n.b.node(), out, 2, true);
        break;
    case ExprOp::Div:
        print_rec(n.a.node(), out, 2, false);
        out += '/';
        print_rec(n.b.node(), out, 3, true);
        break;
    case ExprOp::Pow:
        print_rec(n.a.node(), out, 5, false);
        out += '^';
        out += std::to_string(n.exponent);
        break;
    case ExprOp::Exp:
    case ExprOp::Log:
    case ExprOp::Sin:
    case ExprOp::Cos:
    case ExprOp::Sqrt: {
        const char* name = n.op == ExprOp::Exp   ? "exp"
                           : n.op == ExprOp::Log ? "log"
                           : n.op == ExprOp::Sin ? "sin"
                           : n.op == ExprOp::Cos ? "cos"
                                                 : "sqrt";
        out += name;
        out += '(';
        print_rec(n.a.node(), out, 0, false);
        out += ')';
        break;
    }
    }
    if (parens) out += ')';
}

} // namespace

std::string ExprNode::to_string() const {
    std::string out;
    print_rec(*this, out, 0, false);
    return out;
}

std::string Expr::to_string() const { return node_ ? node_->to_string() : std::string("<empty>"); }

bool struct_equal(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    const ExprNode& x = *a.node_;
    const ExprNode& y = *b.node_;
    if (x.op != y.op) return false;
    switch (x.op) {
    case ExprOp::Number:
        return x.number == y.number;
    case ExprOp::ConstE:
    case ExprOp::ConstPi:
    case ExprOp::Var:
        return true;
    case ExprOp::Pow:
        return x.exponent == y.exponent && struct_equal(x.a, y.a);
    case ExprOp::Neg:
    case ExprOp::Exp:
    case ExprOp::Log:
    case ExprOp::Sin:
    case ExprOp::Cos:
    case ExprOp::Sqrt:
        return struct_equal(x.a, y.a);
    default:
        return struct_equal(x.a, y.a) && struct_equal(x.b, y.b);
    }
}

// -- evaluation -------------------------------------------------------------

std::optional<Rational> Expr::eval_rational(const Rational& x) const {
    const ExprNode& n = *node_;
    switch (n.op) {
    case ExprOp::Number:
        return n.number;
    case ExprOp::Var:
        return x;
    case ExprOp::ConstE:
    case ExprOp::ConstPi:
        return std::nullopt;
    case ExprOp::Add: {
        auto a = n.a.eval_rational(x), b = n.b.eval_rational(x);
        if (a && b) return *a + *b;
        return std::nullopt;
    }
    case ExprOp::Sub: {
        auto a = n.a.eval_rational(x), b = n.b.eval_rational(x);
        if (a && b) return *a - *b;
        return std::nullopt;
    }
    case ExprOp::Neg: {
        auto a = n.a.eval_rational(x);
        if (a) return -*a;
        return std::nullopt;
    }
    case ExprOp::Mul: {
        auto a = n.a.eval_rational(x), b = n.b.eval_rational(x);
        if (a && b) return *a * *b;
        return std::nullopt;
    }
    case ExprOp::Div: {
        auto a = n.a.eval_rational(x), b = n.b.eval_rational(x);
        if (a && b && *b != 0) return *a / *b;
        return std::nullopt;
    }
    case ExprOp::Pow: {
        auto a = n.a.eval_rational(x);
        if (!a) return std::nullopt;
        return pow_rational(*a, n.exponent);
    }
    default:
        return std::nullopt;
    }
}

double Expr::eval_double(double x) const {
    const ExprNode& n = *node_;
    switch (n.op) {
    case ExprOp::Number:
        return to_double(n.number);
    case ExprOp::ConstE:
        return std::exp(1.0);
    case ExprOp::ConstPi:
        return std::acos(-1.0);
    case ExprOp::Var:
        return x;
    case ExprOp::Add:
        return n.a.eval_double(x) + n.b.eval_double(x);
    case ExprOp::Sub:
        return n.a.eval_double(x) - n.b.eval_double(x);
    case ExprOp::Neg:
        return -n.a.eval_double(x);
    case ExprOp::Mul:
        return n.a.eval_double(x) * n.b.eval_double(x);
    case ExprOp::Div: {
        double d = n.b.eval_double(x);
        if (d == 0.0) throw EvalError("division by zero", n.to_string());
        return n.a.eval_double(x) / d;
    }
    case ExprOp::Pow:
        return std::pow(n.a.eval_double(x), static_cast<double>(n.exponent));
    case ExprOp::Exp:
        return std::exp(n.a.eval_double(x));
    case ExprOp::Log: {
        double v = n.a.eval_double(x);
        if (v <= 0.0) throw EvalError("log of nonpositive value", n.to_string());
        return std::log(v);
    }
    case ExprOp::Sin:
        return std::sin(n.a.eval_double(x));
    case ExprOp::Cos:
        return std::cos(n.a.eval_double(x));
    case ExprOp::Sqrt: {
        double v = n.a.eval_double(x);
        if (v < 0.0) throw EvalError("sqrt of negative value", n.to_string());
        return std::sqrt(v);
    }
    }
    return std::nan("");
}

namespace {

Bound eval_bound_rec(const ExprNode& n, const LogScalar& x, const ExprNode** err_at) {
    auto fail = [&](const Bound& b) {
        if (err_at && !*err_at && b.status == EvalStatus::DomainError) *err_at = &n;
        return b;
    };
    switch (n.op) {
    case ExprOp::Number:
        return Bound::point(LogScalar::from_rational(n.number));
    case ExprOp::ConstE:
        return Bound::point(LogScalar{1, 1.0}); // log(e) = 1 exactly
    case ExprOp::ConstPi:
        return Bound::from_double(std::acos(-1.0));
    case ExprOp::Var:
        return Bound::point(x);
    case ExprOp::Add:
        return fail(b_add(eval_bound_rec(n.a.node(), x, err_at), eval_bound_rec(n.b.node(), x, err_at)));
    case ExprOp::Sub:
        return fail(b_sub(eval_bound_rec(n.a.node(), x, err_at), eval_bound_rec(n.b.node(), x, err_at)));
    case ExprOp::Neg:
        return b_neg(eval_bound_rec(n.a.node(), x, err_at));
    case ExprOp::Mul:
        return fail(b_mul(eval_bound_rec(n.a.node(), x, err_at), eval_bound_rec(n.b.node(), x, err_at)));
    case ExprOp::Div:
        return fail(b_div(eval_bound_rec(n.a.node(), x, err_at), eval_bound_rec(n.b.node(), x, err_at)));
    case ExprOp::Pow:
        return fail(b_powi(eval_bound_rec(n.a.node(), x, err_at), n.exponent));
    case ExprOp::Exp:
        return b_exp(eval_bound_rec(n.a.node(), x, err_at));
    case ExprOp::Log:
        return fail(b_log(eval_bound_rec(n.a.node(), x, err_at)));
    case ExprOp::Sin:
        return b_sin(eval_bound_rec(n.a.node(), x, err_at));
    case ExprOp::Cos:
        return b_cos(eval_bound_rec(n.a.node(), x, err_at));
    case ExprOp::Sqrt:
        return fail(b_sqrt(eval_bound_rec(n.a.node(), x, err_at)));
    }
    return Bound::indeterminate();
}

} // namespace

Bound Expr::eval_bound(const LogScalar& x, const ExprNode** err_at) const {
    if (err_at) *err_at = nullptr;
    return eval_bound_rec(*node_, x, err_at);
}

} // namespace schwartz
