#pragma once

#include "schwartz/multiplier.hpp"
#include "schwartz/symbol.hpp"

#include <optional>
#include <string>
#include <vector>

namespace schwartz {

enum class Flag { Yes, No, Auto, Unknown };
const char* flag_name(Flag f);

struct AssumptionSet {
    Flag cinf_closed_range = Flag::Auto;
    Flag derivative_eventually_nonvanishing = Flag::Auto;
    std::string notes;
};

struct RuleRecord {
    std::string id;     // nec-cinf | nec-growth | asterisco | suf-om | suf-nonsurj | suf-surj
    std::string anchor; // self-describing statement of the rule
    bool evaluated = false;
    bool fired = false;
    std::vector<std::pair<std::string, std::string>> premises; // name -> outcome
    std::string detail;
};

enum class ClosedRangeStatus { Closed, NotClosed, Inconclusive };
const char* closed_range_status_name(ClosedRangeStatus s);

struct ClosedRangeVerdict {
    ClosedRangeStatus status = ClosedRangeStatus::Inconclusive;
    std::vector<RuleRecord> trace; // all rules in fixed order, fired or not
    std::string witness;           // NotClosed: the function or failed bound
    Flag resolved_cinf = Flag::Unknown;
    Flag resolved_deriv_nonvanishing = Flag::Unknown;
    std::string advisory; // surjectivity/codimension note when applicable
};

// Sufficient-only evidence that composition by phi has closed range on the
// smooth-function space: every sampled attained value has a preimage where
// |phi'| clears the tolerance. Returns Holds or Inconclusive("unknown"),
// never Fails.
Verdict cinf_heuristic(const PiecewiseRealFunction& phi, const SymbolReport& symbol,
                       const RunConfig& cfg);

// Candidate witness pair for the star-transfer rule: a smooth function that
// is not rapidly decreasing while its composition with phi is.
PiecewiseFn default_star_candidate(bool mirrored);

// Rule-based verdict with a full replayable trace. Throws PreconditionError
// when phi is not a symbol.
ClosedRangeVerdict decide_closed_range(const PiecewiseFn& phi, const AssumptionSet& assumptions,
                                       const RunConfig& cfg,
                                       const std::optional<PiecewiseFn>& f_candidate = {});

} // namespace schwartz
