#include "adaptnorm/models.hpp"

#include <cmath>

#include "adaptnorm/error.hpp"
#include "adaptnorm/numerics.hpp"

namespace adaptnorm {

namespace {
// Logistic pieces in terms of t, where eta = (1 + e^t)^{-1}. Evaluated
// through e^{-|t|} so that large |t| neither overflows nor cancels.
struct LogisticTerms
{
    double value;  //!< (1 + e^t)^{-1}
    double first;  //!< e^t (1 + e^t)^{-2}
    double second; //!< e^t (e^t - 1) (1 + e^t)^{-3}
};

LogisticTerms logistic_terms(double t)
{
    double e = std::exp(-std::fabs(t));
    double denom = 1 + e;
    double first = e / (denom * denom);
    double second = (1 - e) * e / (denom * denom * denom);
    double value = t > 0 ? e / denom : 1 / denom;
    return {value, first, t > 0 ? second : -second};
}

double logit(double p)
{
    return std::log(p / (1 - p));
}

constexpr int kDoseGrid = 64;
constexpr double kDoseTol = 1e-8;
}  // namespace

std::string_view to_string(Family family)
{
    switch (family)
    {
        case Family::logistic_location:
            return "logistic_location";
        case Family::logistic_scale:
            return "logistic_scale";
        case Family::exponential_location:
            return "exponential_location";
        case Family::exponential_scale:
            return "exponential_scale";
    }
    return "unknown";
}

Family family_from_string(std::string_view name)
{
    for (auto f : {Family::logistic_location,
                   Family::logistic_scale,
                   Family::exponential_location,
                   Family::exponential_scale})
    {
        if (to_string(f) == name)
            return f;
    }
    throw ConfigError("unknown model family '" + std::string(name) + "'");
}

MeanModel::MeanModel(Family family, double theta_lo, double theta_hi)
    : family_(family), theta_lo_(theta_lo), theta_hi_(theta_hi)
{
    if (!std::isfinite(theta_lo) || !std::isfinite(theta_hi)
        || !(theta_lo < theta_hi))
    {
        throw ConfigError("parameter bounds must be finite with theta_lo < "
                          "theta_hi");
    }
}

MeanModel MeanModel::with_default_bounds(Family family, DoseInterval interval)
{
    if (!(interval.a > 0))
        throw ConfigError("default parameter bound 1/a requires a > 0");
    return MeanModel(family, 0.0, 1.0 / interval.a);
}

double MeanModel::clamp_theta(double theta) const
{
    return theta < theta_lo_ ? theta_lo_
                             : (theta > theta_hi_ ? theta_hi_ : theta);
}

double MeanModel::eta(double x, double theta) const
{
    switch (family_)
    {
        case Family::logistic_location:
            return logistic_terms(x - theta).value;
        case Family::logistic_scale:
            return logistic_terms(theta * x).value;
        case Family::exponential_location:
            return std::exp(theta - x);
        case Family::exponential_scale:
            return std::exp(-theta * x);
    }
    return 0;
}

double MeanModel::deta(double x, double theta) const
{
    switch (family_)
    {
        case Family::logistic_location:
            return logistic_terms(x - theta).first;
        case Family::logistic_scale:
            return -x * logistic_terms(theta * x).first;
        case Family::exponential_location:
            return std::exp(theta - x);
        case Family::exponential_scale:
            return -x * std::exp(-theta * x);
    }
    return 0;
}

double MeanModel::ddeta(double x, double theta) const
{
    switch (family_)
    {
        case Family::logistic_location:
            return logistic_terms(x - theta).second;
        case Family::logistic_scale:
            return x * x * logistic_terms(theta * x).second;
        case Family::exponential_location:
            return std::exp(theta - x);
        case Family::exponential_scale:
            return x * x * std::exp(-theta * x);
    }
    return 0;
}

double MeanModel::stage1_mle(double x1, double ybar1) const
{
    double const at_lo = eta(x1, theta_lo_);
    double const at_hi = eta(x1, theta_hi_);
    bool const increasing = at_hi > at_lo;

    // Outside the attainable mean range the likelihood is monotone in theta
    if (increasing ? ybar1 <= at_lo : ybar1 >= at_lo)
        return theta_lo_;
    if (increasing ? ybar1 >= at_hi : ybar1 <= at_hi)
        return theta_hi_;

    double theta = 0;
    switch (family_)
    {
        case Family::logistic_location:
            theta = x1 + logit(ybar1);
            break;
        case Family::logistic_scale:
            theta = -logit(ybar1) / x1;
            break;
        case Family::exponential_location:
            theta = x1 + std::log(ybar1);
            break;
        case Family::exponential_scale:
            theta = -std::log(ybar1) / x1;
            break;
    }
    return clamp_theta(theta);
}

double MeanModel::optimal_dose(double theta, DoseInterval interval) const
{
    switch (family_)
    {
        case Family::logistic_location:
            return interval.clamp(theta);
        case Family::exponential_location:
            return interval.a;
        case Family::exponential_scale:
            return theta > 0 ? interval.clamp(1 / theta) : interval.b;
        case Family::logistic_scale:
            break;
    }
    auto info = [this, theta](double x) {
        double d = deta(x, theta);
        return d * d;
    };
    return bracketed_maximize(info, interval.a, interval.b, kDoseGrid, kDoseTol)
        .x;
}

}  // namespace adaptnorm
