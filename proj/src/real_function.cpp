#include "schwartz/real_function.hpp"

#include "schwartz/errors.hpp"
#include "schwartz/polynomial.hpp"

namespace schwartz {

PiecewiseRealFunction::PiecewiseRealFunction(PiecewiseFn f, int max_order) {
    table_.reserve(static_cast<std::size_t>(max_order) + 1);
    table_.push_back(std::move(f));
    for (int j = 1; j <= max_order; ++j) table_.push_back(table_.back().derivative(1));
}

Bound PiecewiseRealFunction::deriv_bound(int order, const LogScalar& x) const {
    if (order < 0 || order >= static_cast<int>(table_.size()))
        throw PreconditionError("derivative order " + std::to_string(order) +
                                " beyond precomputed table");
    return table_[static_cast<std::size_t>(order)].evaluate_bound(x);
}

} // namespace schwartz
