#pragma once

#include "schwartz/config.hpp"
#include "schwartz/grid.hpp"
#include "schwartz/real_function.hpp"
#include "schwartz/verdict.hpp"

#include <optional>
#include <vector>

namespace schwartz {

// Range of a function whose |values| escape to infinity on both tails.
struct RangeClass {
    enum class Kind { FullLine, BoundedBelow, BoundedAbove, Unknown };
    Kind kind = Kind::Unknown;
    double endpoint = 0; // estimate of a (BoundedBelow) or b (BoundedAbove)
    std::string to_string() const;
};

// Per-derivative certificate of a growth domination |num| <= C * base^e.
struct DominationCert {
    int j = 0;      // derivative order
    double C = 0;   // grid-sup constant (rounded up)
    int exponent = 0;
};

struct ContinuityEstimate {
    int n = 0;
    int k = 0;      // from condition (ii)
    int t = 0;      // derived exponent, > n
    long index = 0; // k*n + t
    double factor = 0;
};

struct SymbolReport {
    Verdict lemma1 = Verdict::inconclusive("not run");
    RangeClass range;
    Verdict cond_i = Verdict::inconclusive("not run");
    std::vector<DominationCert> cond_i_certs;
    Verdict cond_ii = Verdict::inconclusive("not run");
    Verdict star = Verdict::inconclusive("not run");
    std::vector<DominationCert> star_certs;
    Verdict o_m = Verdict::inconclusive("not run");
    Verdict surjective = Verdict::inconclusive("not run");
    Verdict is_symbol = Verdict::inconclusive("not run");
    std::string failed_condition; // "lemma1" | "i" | "ii" | "" on Holds
    std::vector<ContinuityEstimate> continuity;
    bool exact_path = false; // growth-class algebra decided the verdicts
};

// Lemma-level check: |phi(x)| -> inf on both tails. On Fails the witnesses
// are a bounded subsequence and the certificate-level limit estimate is in
// the verdict note. range_out (optional) receives the range classification.
Verdict check_limit_infinity(const PiecewiseRealFunction& phi, const RunConfig& cfg,
                             RangeClass* range_out = nullptr);

// For all j <= max_j: |phi^{(j)}(x)| <= C (1 + |phi(x)|^2)^p.
Verdict check_condition_i(const PiecewiseRealFunction& phi, int max_j, const RunConfig& cfg,
                          std::vector<DominationCert>* certs = nullptr);

// Exists k with |phi(x)| >= |x|^{1/k} for |x| >= k; certificate carries k.
Verdict check_condition_ii(const PiecewiseRealFunction& phi, const RunConfig& cfg);

// Conjunction of the three checks, first failure propagated.
Verdict is_symbol(const PiecewiseRealFunction& phi, int max_j, const RunConfig& cfg,
                  std::string* failed_condition = nullptr);

// |phi^{(j)}(x)| <= C_j (1+x^2)^{q_j} (1 + |phi(x)|).
Verdict check_condition_star(const PiecewiseRealFunction& phi, int max_j, const RunConfig& cfg,
                             std::vector<DominationCert>* certs = nullptr);

// Multiplier condition on the region: every derivative polynomially bounded.
Verdict check_om(const PiecewiseRealFunction& f, int max_j, const Region& region,
                 const RunConfig& cfg);

// Range classification turned into a surjectivity verdict.
Verdict check_surjective(const PiecewiseRealFunction& phi, const RunConfig& cfg,
                         RangeClass* range_out = nullptr);

// Seminorm index kn + t and factor certifying pi_n(f o phi) <= factor *
// pi_{kn+t}(f); requires Holds certificates from conditions (i)/(ii).
ContinuityEstimate continuity_estimate(const PiecewiseRealFunction& phi, int n,
                                       const std::vector<DominationCert>& cond_i_certs, int k,
                                       const RunConfig& cfg);

// Full report over one phi.
SymbolReport analyze_symbol(const PiecewiseFn& phi, int max_j, const RunConfig& cfg);

} // namespace schwartz
