#include "schwartz/faa_di_bruno.hpp"

#include "schwartz/errors.hpp"
#include "schwartz/polynomial.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace schwartz {

bool Partition::valid() const {
    if (static_cast<int>(k.size()) != n) return false;
    long sum = 0;
    for (int i = 0; i < n; ++i) {
        if (k[static_cast<std::size_t>(i)] < 0) return false;
        sum += static_cast<long>(i + 1) * k[static_cast<std::size_t>(i)];
    }
    return sum == n;
}

namespace {

void gen_partitions(int remaining, int part, std::vector<int>& k, std::vector<Partition>& out,
                    int n) {
    if (remaining == 0) {
        Partition p;
        p.n = n;
        p.k = k;
        out.push_back(std::move(p));
        return;
    }
    if (part < 1) return;
    int max_count = remaining / part;
    for (int c = max_count; c >= 0; --c) {
        k[static_cast<std::size_t>(part - 1)] = c;
        gen_partitions(remaining - c * part, part - 1, k, out, n);
    }
    k[static_cast<std::size_t>(part - 1)] = 0;
}

bool reverse_lex_less(const Partition& a, const Partition& b) {
    for (int i = a.n - 1; i >= 0; --i) {
        std::size_t idx = static_cast<std::size_t>(i);
        if (a.k[idx] != b.k[idx]) return a.k[idx] < b.k[idx];
    }
    return false;
}

} // namespace

const std::vector<Partition>& enumerate_partitions(int n, int n_max) {
    if (n < 1 || n > n_max)
        throw PreconditionError("partition order out of range [1, " + std::to_string(n_max) +
                                "]: " + std::to_string(n));
    static std::mutex mu;
    static std::map<int, std::vector<Partition>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Partition> out;
    std::vector<int> k(static_cast<std::size_t>(n), 0);
    gen_partitions(n, n, k, out, n);
    std::sort(out.begin(), out.end(), reverse_lex_less);
    return cache.emplace(n, std::move(out)).first->second;
}

BigInt fdb_coefficient(const Partition& p) {
    if (!p.valid()) throw PreconditionError("invalid partition");
    BigInt num = factorial(static_cast<unsigned long>(p.n));
    BigInt den(1);
    for (int i = 1; i <= p.n; ++i) {
        int ki = p.k[static_cast<std::size_t>(i - 1)];
        if (ki == 0) continue;
        den *= factorial(static_cast<unsigned long>(ki));
        BigInt fi = factorial(static_cast<unsigned long>(i));
        BigInt fik;
        mpz_pow_ui(fik.get_mpz_t(), fi.get_mpz_t(), static_cast<unsigned long>(ki));
        den *= fik;
    }
    return num / den; // exact by construction
}

PiecewiseFn compose_derivative(const PiecewiseFn& f, const PiecewiseFn& phi, int n) {
    if (n < 0) throw PreconditionError("derivative order must be nonnegative");
    if (!f.is_single())
        throw PreconditionError(
            "symbolic composition requires a single-piece outer function; use the pointwise "
            "evaluator for piecewise outer functions");
    const Expr& fe = f.single_expr();

    std::vector<Piece> out_pieces;
    for (const Piece& pp : phi.pieces()) {
        if (n == 0) {
            out_pieces.push_back({pp.interval, fe.substitute(pp.expr)});
            continue;
        }
        // phi-piece derivatives 1..n and f derivatives 1..n (at phi)
        std::vector<Expr> phi_d(static_cast<std::size_t>(n) + 1);
        phi_d[0] = pp.expr;
        for (int i = 1; i <= n; ++i)
            phi_d[static_cast<std::size_t>(i)] = derivative_compact(phi_d[static_cast<std::size_t>(i - 1)]);
        std::vector<Expr> f_d(static_cast<std::size_t>(n) + 1);
        f_d[0] = fe;
        for (int i = 1; i <= n; ++i)
            f_d[static_cast<std::size_t>(i)] = derivative_compact(f_d[static_cast<std::size_t>(i - 1)]);

        Expr sum = Expr::integer(0);
        for (const Partition& part : enumerate_partitions(n)) {
            Expr term = Expr::number(Rational(fdb_coefficient(part)));
            term = Expr::mul(std::move(term),
                             f_d[static_cast<std::size_t>(part.k_total())].substitute(pp.expr));
            for (int i = 1; i <= n; ++i) {
                int ki = part.k[static_cast<std::size_t>(i - 1)];
                if (ki == 0) continue;
                term = Expr::mul(std::move(term), Expr::powi(phi_d[static_cast<std::size_t>(i)],
                                                             ki));
            }
            sum = Expr::add(std::move(sum), std::move(term));
        }
        out_pieces.push_back({pp.interval, std::move(sum)});
    }
    if (out_pieces.size() == 1) return PiecewiseFn::single(out_pieces[0].expr);
    return PiecewiseFn::from_pieces(std::move(out_pieces), std::nullopt);
}

namespace {

// Refine two partitions of the line into a common one so the product rule can
// act piece by piece.
std::vector<Rational> merged_breakpoints(const PiecewiseFn& f, const PiecewiseFn& g) {
    std::vector<Rational> bps = f.breakpoints();
    for (const Rational& b : g.breakpoints()) bps.push_back(b);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    return bps;
}

const Expr& expr_on(const PiecewiseFn& f, const std::optional<Rational>& lo,
                    const std::optional<Rational>& hi) {
    // any interior point of (lo, hi) identifies the piece
    double x;
    if (lo && hi)
        x = to_double((*lo + *hi) / 2);
    else if (lo)
        x = to_double(*lo) + 1;
    else if (hi)
        x = to_double(*hi) - 1;
    else
        x = 0;
    return f.pieces()[f.piece_index(x)].expr;
}

} // namespace

PiecewiseFn leibniz_derivative(const PiecewiseFn& f, const PiecewiseFn& g, int n) {
    if (n < 0) throw PreconditionError("derivative order must be nonnegative");
    auto bps = merged_breakpoints(f, g);

    auto product_term = [&](const Expr& fe, const Expr& ge) {
        std::vector<Expr> f_d{fe}, g_d{ge};
        for (int i = 1; i <= n; ++i) {
            f_d.push_back(derivative_compact(f_d.back()));
            g_d.push_back(derivative_compact(g_d.back()));
        }
        Expr sum = Expr::integer(0);
        for (int m = 0; m <= n; ++m) {
            Expr term = Expr::number(Rational(binomial(static_cast<unsigned long>(n),
                                                       static_cast<unsigned long>(m))));
            term = Expr::mul(std::move(term), Expr::mul(f_d[static_cast<std::size_t>(m)],
                                                        g_d[static_cast<std::size_t>(n - m)]));
            sum = Expr::add(std::move(sum), std::move(term));
        }
        return sum;
    };

    if (bps.empty()) return PiecewiseFn::single(product_term(f.single_expr(), g.single_expr()));

    std::vector<Piece> pieces;
    for (std::size_t i = 0; i <= bps.size(); ++i) {
        std::optional<Rational> lo = i == 0 ? std::nullopt : std::optional<Rational>(bps[i - 1]);
        std::optional<Rational> hi = i == bps.size() ? std::nullopt : std::optional<Rational>(bps[i]);
        Interval iv{lo, hi, false, true}; // (lo, hi]
        if (!hi) iv.hi_closed = false;
        pieces.push_back({iv, product_term(expr_on(f, lo, hi), expr_on(g, lo, hi))});
    }
    return PiecewiseFn::from_pieces(std::move(pieces), std::nullopt);
}

Bound compose_deriv_bound(const RealFunction& f, const RealFunction& phi, int n,
                          const LogScalar& x) {
    Bound phi_val = phi.value_bound(x);
    if (!phi_val.ok()) return phi_val;
    if (n == 0) {
        if (!phi_val.is_point()) return Bound::indeterminate();
        return f.value_bound(phi_val.lo);
    }
    if (!phi_val.is_point()) return Bound::indeterminate();
    LogScalar y = phi_val.lo;

    // phi^{(i)}(x) for i = 1..n, f^{(l)}(y) for l = 1..n, folded per partition.
    std::vector<Bound> phi_d(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
        phi_d[static_cast<std::size_t>(i)] = phi.deriv_bound(i, x);
        if (phi_d[static_cast<std::size_t>(i)].status == EvalStatus::DomainError)
            return Bound::domain_error();
    }
    std::vector<Bound> f_d(static_cast<std::size_t>(n) + 1);
    for (int l = 1; l <= n; ++l) {
        f_d[static_cast<std::size_t>(l)] = f.deriv_bound(l, y);
        if (f_d[static_cast<std::size_t>(l)].status == EvalStatus::DomainError)
            return Bound::domain_error();
    }

    Bound sum = Bound::from_double(0.0);
    for (const Partition& part : enumerate_partitions(n)) {
        Bound term = Bound::point(LogScalar::from_rational(Rational(fdb_coefficient(part))));
        term = b_mul(term, f_d[static_cast<std::size_t>(part.k_total())]);
        for (int i = 1; i <= n; ++i) {
            int ki = part.k[static_cast<std::size_t>(i - 1)];
            if (ki == 0) continue;
            term = b_mul(term, b_powi(phi_d[static_cast<std::size_t>(i)], ki));
        }
        sum = b_add(sum, term);
    }
    return sum;
}

int ComposedRealFunction::max_order() const {
    return std::min(f_.max_order(), phi_.max_order());
}

Bound ComposedRealFunction::deriv_bound(int order, const LogScalar& x) const {
    return compose_deriv_bound(f_, phi_, order, x);
}

} // namespace schwartz
