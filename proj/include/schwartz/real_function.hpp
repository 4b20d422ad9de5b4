#pragma once

#include "schwartz/piecewise.hpp"

#include <memory>
#include <vector>

namespace schwartz {

// A smooth function seen through pointwise derivative evaluations in the
// log-domain. Implementations are immutable after construction and safe to
// share across worker threads.
class RealFunction {
public:
    virtual ~RealFunction() = default;

    virtual int max_order() const = 0;
    virtual Bound deriv_bound(int order, const LogScalar& x) const = 0;

    Bound value_bound(const LogScalar& x) const { return deriv_bound(0, x); }
};

// PiecewiseFn with a precomputed symbolic derivative table.
class PiecewiseRealFunction : public RealFunction {
public:
    PiecewiseRealFunction(PiecewiseFn f, int max_order);

    int max_order() const override { return static_cast<int>(table_.size()) - 1; }
    Bound deriv_bound(int order, const LogScalar& x) const override;

    const PiecewiseFn& fn() const { return table_.front(); }
    const PiecewiseFn& deriv(int order) const { return table_.at(static_cast<std::size_t>(order)); }

private:
    std::vector<PiecewiseFn> table_; // table_[j] = f^{(j)}
};

} // namespace schwartz
