#pragma once

#include <string>
#include <utility>
#include <vector>

namespace schwartz {

enum class Outcome : int { Holds, Fails, Inconclusive };

const char* outcome_name(Outcome o);

// A concrete point demonstrating a failure (or supporting a certificate
// re-check). `x` may be +-inf for far-field points; log_abs_x is always the
// usable coordinate.
struct WitnessPoint {
    double x = 0;
    double log_abs_x = 0;
    int sign_x = 0;
    int order = 0;          // derivative order involved, -1 when meaningless
    double value = 0;       // quantity that violates / attains the bound
    double log_value = 0;
    std::string note;
};

// Three-valued analysis result. Fails always carries at least one witness,
// Holds always carries its certificate (named constants), never both.
class Verdict {
public:
    static Verdict holds(std::vector<std::pair<std::string, double>> certificate);
    static Verdict fails(std::vector<WitnessPoint> witnesses, std::string note = "");
    static Verdict inconclusive(std::string reason);

    Outcome outcome() const { return outcome_; }
    bool holds_true() const { return outcome_ == Outcome::Holds; }
    bool failed() const { return outcome_ == Outcome::Fails; }
    bool is_inconclusive() const { return outcome_ == Outcome::Inconclusive; }

    const std::vector<std::pair<std::string, double>>& certificate() const { return certificate_; }
    double cert_value(const std::string& key, double fallback = 0) const;
    const std::vector<WitnessPoint>& witnesses() const { return witnesses_; }
    const std::string& reason() const { return reason_; }

private:
    Outcome outcome_ = Outcome::Inconclusive;
    std::vector<std::pair<std::string, double>> certificate_;
    std::vector<WitnessPoint> witnesses_;
    std::string reason_;
};

} // namespace schwartz
