#include "pullstream/policy.hpp"

#include <algorithm>
#include <cmath>

namespace pullstream {

double UtilityFunction::operator()(double x) const
{
    switch (kind_) {
    case UtilityKind::log:
        return std::log(x);
    case UtilityKind::linear:
        return x;
    case UtilityKind::custom:
        return fn_(x);
    }
    return 0.0;
}

UtilityFunction utility_from_name(const std::string& name)
{
    if (name == "log")
        return UtilityFunction::log();
    if (name == "linear")
        return UtilityFunction::linear();
    throw ConfigError("policy.utility: unknown utility '" + name + "' (expected log or linear)");
}

int select_quality(double backlog, double theta, std::span<const LevelProfile> profile,
                   double pixels_per_chunk)
{
    if (profile.empty())
        throw std::invalid_argument("select_quality: empty chunk profile");
    const double weight = pixels_per_chunk * backlog;
    int best_level = profile.front().level;
    double best = weight * profile.front().bits_per_pixel - theta * profile.front().quality;
    for (const auto& p : profile.subspan(1)) {
        const double objective = weight * p.bits_per_pixel - theta * p.quality;
        if (objective < best) {
            best = objective;
            best_level = p.level;
        }
    }
    return best_level;
}

namespace {

double golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // The bracket endpoints can beat the interior when the optimum is on the box.
    double best = 0.5 * (a + b);
    double best_value = f(best);
    for (double x : {lo, hi}) {
        const double v = f(x);
        if (v > best_value) {
            best = x;
            best_value = v;
        }
    }
    return best;
}

} // namespace

double choose_auxiliary(double theta, double control_v, const QualityBounds& bounds,
                        const UtilityFunction& utility)
{
    if (bounds.min > bounds.max)
        throw std::invalid_argument("choose_auxiliary: D_min > D_max");
    switch (utility.kind()) {
    case UtilityKind::log:
        if (theta <= 0.0)
            return bounds.max;
        return std::clamp(control_v / theta, bounds.min, bounds.max);
    case UtilityKind::linear:
        return control_v >= theta ? bounds.max : bounds.min;
    case UtilityKind::custom:
        break;
    }
    if (bounds.min == bounds.max)
        return bounds.min;
    const auto objective = [&](double g) { return control_v * utility(g) - theta * g; };
    return golden_section_max(objective, bounds.min, bounds.max, 1e-9);
}

} // namespace pullstream
