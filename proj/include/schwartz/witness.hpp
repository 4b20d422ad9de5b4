#pragma once

#include "schwartz/config.hpp"
#include "schwartz/polynomial.hpp"
#include "schwartz/real_function.hpp"
#include "schwartz/verdict.hpp"

#include <memory>
#include <vector>

namespace schwartz {

// The standard bump psi(x) = exp(1 - 1/(1-4x^2)) on (-1/2, 1/2), zero
// outside, as a three-piece function. psi(0) = 1.
PiecewiseFn standard_bump();

// psi((x - center) / width) supported on [center - width/2, center + width/2].
PiecewiseFn scaled_bump(const Rational& center, const Rational& width);

// Exact Taylor coefficients of psi at 0 up to order n (c_0 = 1, c_2 = -4, ...).
std::vector<Rational> psi_taylor(int n);

// rho = p(x) * psi(x) with the polynomial correction solving rho'(0) = 1,
// rho^{(j)}(0) = 0 for 2 <= j <= n. All moments exact rationals.
struct BumpSpec {
    int n = 0;
    RatPoly correction; // p, degree <= n, p(0) = 0
    PiecewiseFn rho;
};

BumpSpec make_bump(int n);

// Exact value of rho^{(j)}(0) from the Taylor data (independent of the
// expression evaluator).
Rational bump_moment(const BumpSpec& spec, int j);

// Disjointly supported series  f(x) = sum_j profile(x - y_j) * w_j  with
// |y_j| + 1 < |y_{j+1}|. Evaluation locates the unique active term.
class BumpSeries : public RealFunction {
public:
    BumpSeries(PiecewiseFn profile, std::vector<double> centers,
               std::vector<double> log_weights, int max_order);

    int max_order() const override;
    Bound deriv_bound(int order, const LogScalar& x) const override;

    const std::vector<double>& centers() const { return centers_; }
    const std::vector<double>& log_weights() const { return log_weights_; }
    const PiecewiseRealFunction& profile() const { return profile_; }

private:
    PiecewiseRealFunction profile_;
    std::vector<double> centers_;     // ascending |y| and ascending value
    std::vector<double> log_weights_;
};

struct WitnessSeriesReport {
    std::vector<double> points;       // x_j
    std::vector<double> centers;      // y_j = phi(x_j)
    std::vector<double> check_values; // the verified inequality values
    Verdict membership = Verdict::inconclusive("not run");
    bool inequalities_ok = false;
    std::string note;
};

// Witness for a condition-(i) failure at order n:
// f = sum rho(x - y_j) (1+|y_j|^2)^{-j} with |(f o phi)^{(n)}(x_k)| >= k.
std::pair<std::shared_ptr<BumpSeries>, WitnessSeriesReport>
build_witness_cond_i(const PiecewiseRealFunction& phi, int n, int count, const RunConfig& cfg);

// Witness for a condition-(ii) failure:
// f = sum psi(x - y_j) |y_j|^{-j} with |x_j| |(f o phi)(x_j)| >= 1 - tol.
std::pair<std::shared_ptr<BumpSeries>, WitnessSeriesReport>
build_witness_cond_ii(const PiecewiseRealFunction& phi, int count, const RunConfig& cfg);

struct Lemma1Witness {
    PiecewiseFn bump;          // f with f(limit_point) = 1
    double limit_point = 0;
    std::vector<double> points;
    std::vector<double> products; // |x_j * f(phi(x_j))|, demonstrably growing
};

Lemma1Witness lemma1_witness(const PiecewiseRealFunction& phi, int count, const RunConfig& cfg);

struct NonCompactFamily {
    double a = 0, b = 0; // domain interval
    double c = 0, d = 0; // image interval phi([a,b])
    double delta = 0;    // certified lower bound of |phi'| on [a,b]
    int p = 0;
    double epsilon = 0;
    double lambda = 0;   // sup of the chain-rule cofactors
    std::vector<PiecewiseFn> members;
    std::vector<double> omegas;
    std::vector<double> norms;          // ||f_j||_{p-1}
    std::vector<double> composite_sups; // sup |(f_j o phi)^{(p)}| on [a,b]
};

// Members f_j = A_j sin(omega_j (x-c)) * bump_{[c,d]} with ||f_j||_{p-1} =
// epsilon and delta^p ||f_j^{(p)}|| > lambda epsilon + j; construction
// re-verifies every member and throws on failure.
NonCompactFamily noncompact_family(const PiecewiseRealFunction& phi, double a, double b, int p,
                                   double epsilon, int count, const RunConfig& cfg);

struct NormGapResult {
    PiecewiseFn fn;
    double omega = 0;
    double norm_n = 0;
    double norm_n1 = 0;
};

// f = sin(omega x) * bump_{[a,b]} with ||f||_{n+1} / ||f||_n >= ratio.
NormGapResult norm_gap_function(double a, double b, int n, double ratio, const RunConfig& cfg);

} // namespace schwartz
