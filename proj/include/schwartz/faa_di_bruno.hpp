#pragma once

#include "schwartz/piecewise.hpp"
#include "schwartz/real_function.hpp"

#include <vector>

namespace schwartz {

// Solution of k_1 + 2 k_2 + ... + n k_n = n.
struct Partition {
    int n = 0;
    std::vector<int> k; // k[i-1] = k_i, always length n

    int k_total() const {
        int t = 0;
        for (int v : k) t += v;
        return t;
    }
    bool valid() const;
};

// Complete duplicate-free list in reverse-lexicographic order (ascending on
// the reversed tuple (k_n,...,k_1)). Memoized; safe for concurrent lookup.
const std::vector<Partition>& enumerate_partitions(int n, int n_max = 20);

// n! / (k_1! ... k_n! (1!)^{k_1} ... (n!)^{k_n}) — always a positive integer.
BigInt fdb_coefficient(const Partition& p);

// Symbolic n-th derivative of f(phi). Requires f single-piece; the result
// follows phi's piece structure. n = 0 returns the substitution itself.
PiecewiseFn compose_derivative(const PiecewiseFn& f, const PiecewiseFn& phi, int n);

// Symbolic n-th derivative of f*g via the product rule.
PiecewiseFn leibniz_derivative(const PiecewiseFn& f, const PiecewiseFn& g, int n);

// Pointwise fold: evaluates (f o phi)^{(n)}(x) from the derivative tables
// without symbolic expansion. phi's value at x must be a point (no phase
// loss) for n >= 1.
Bound compose_deriv_bound(const RealFunction& f, const RealFunction& phi, int n,
                          const LogScalar& x);

// View of f o phi as a RealFunction (used by membership checks on composite
// functions).
class ComposedRealFunction : public RealFunction {
public:
    ComposedRealFunction(const RealFunction& f, const RealFunction& phi)
        : f_(f), phi_(phi) {}

    int max_order() const override;
    Bound deriv_bound(int order, const LogScalar& x) const override;

private:
    const RealFunction& f_;
    const RealFunction& phi_;
};

} // namespace schwartz
