#include "schwartz/verdict.hpp"

#include <stdexcept>

namespace schwartz {

const char* outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Holds:
        return "holds";
    case Outcome::Fails:
        return "fails";
    case Outcome::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

Verdict Verdict::holds(std::vector<std::pair<std::string, double>> certificate) {
    Verdict v;
    v.outcome_ = Outcome::Holds;
    if (certificate.empty()) certificate.emplace_back("verified", 1.0);
    v.certificate_ = std::move(certificate);
    return v;
}

Verdict Verdict::fails(std::vector<WitnessPoint> witnesses, std::string note) {
    if (witnesses.empty()) throw std::logic_error("Fails verdict requires a witness");
    Verdict v;
    v.outcome_ = Outcome::Fails;
    v.witnesses_ = std::move(witnesses);
    v.reason_ = std::move(note);
    return v;
}

Verdict Verdict::inconclusive(std::string reason) {
    Verdict v;
    v.outcome_ = Outcome::Inconclusive;
    v.reason_ = std::move(reason);
    return v;
}

double Verdict::cert_value(const std::string& key, double fallback) const {
    for (const auto& [k, val] : certificate_)
        if (k == key) return val;
    return fallback;
}

} // namespace schwartz
