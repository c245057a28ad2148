#pragma once

#include "pullstream/types.hpp"
#include "pullstream/video_model.hpp"

#include <functional>
#include <span>
#include <string>

namespace pullstream {

enum class UtilityKind { log, linear, custom };

/// Concave, continuous, nondecreasing utility of time-average quality.
class UtilityFunction {
public:
    static UtilityFunction log() { return UtilityFunction(UtilityKind::log, {}); }
    static UtilityFunction linear() { return UtilityFunction(UtilityKind::linear, {}); }
    /// The caller guarantees concavity; choose_auxiliary relies on it.
    static UtilityFunction custom(std::function<double(double)> fn)
    {
        return UtilityFunction(UtilityKind::custom, std::move(fn));
    }

    UtilityKind kind() const { return kind_; }
    double operator()(double x) const;

private:
    UtilityFunction(UtilityKind kind, std::function<double(double)> fn) : kind_(kind), fn_(std::move(fn)) {}

    UtilityKind kind_;
    std::function<double(double)> fn_;
};

UtilityFunction utility_from_name(const std::string& name);

/// Quality level minimizing k*Q*B(m) - Theta*D(m) over the profile. Ties go
/// to the smallest level. Q and k must use the same bit unit (bits, or the
/// engine's control unit).
int select_quality(double backlog, double theta, std::span<const LevelProfile> profile,
                   double pixels_per_chunk);

/// Auxiliary variable maximizing V*phi(gamma) - Theta*gamma on [D_min, D_max].
/// Log and linear utilities use their closed forms; custom utilities use a
/// golden-section search to absolute tolerance 1e-9.
double choose_auxiliary(double theta, double control_v, const QualityBounds& bounds,
                        const UtilityFunction& utility);

} // namespace pullstream
