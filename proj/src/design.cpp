#include "adaptnorm/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "adaptnorm/error.hpp"
#include "adaptnorm/numerics.hpp"
#include "adaptnorm/parallel.hpp"

namespace adaptnorm {

namespace {
constexpr int kSwitchScanPoints = 257;
constexpr int kBisectionSteps = 80;
constexpr double kQuadratureRelTol = 1e-6;
// Standardized half-width of the ybar1 range integrated numerically;
// normal mass beyond it is below 1e-32.
constexpr double kZCutoff = 12;

enum class DoseRegime
{
    at_a,
    interior,
    at_b,
};

DoseRegime regime(double dose, DoseInterval interval)
{
    if (dose == interval.a)
        return DoseRegime::at_a;
    if (dose == interval.b)
        return DoseRegime::at_b;
    return DoseRegime::interior;
}

//! P(zlo < Z < zhi), evaluated on the side with less cancellation.
double normal_mass(double zlo, double zhi)
{
    if (zlo >= 0)
        return normal_cdf(-zlo) - normal_cdf(-zhi);
    return normal_cdf(zhi) - normal_cdf(zlo);
}
}  // namespace

void DesignConfig::validate(MeanModel const& model) const
{
    auto fail = [](std::string const& msg) { throw ConfigError(msg); };
    if (!(interval.a < interval.b))
        fail("dose interval requires a < b");
    if (!interval.contains(x1))
        fail("x1 must lie in [a, b]");
    if (n < 2)
        fail("n must be at least 2");
    if (n1 < 1)
        fail("n1 must be >= 1");
    if (n1 >= n)
        fail("n1 must be < n");
    if (!(sigma > 0) || !std::isfinite(sigma))
        fail("sigma must be positive and finite");
    if (!std::isfinite(theta_true) || theta_true < model.theta_lo()
        || theta_true > model.theta_hi())
    {
        fail("theta_true must lie in [theta_lo, theta_hi]");
    }
}

double adaptive_dose(MeanModel const& model,
                     double x1,
                     double ybar1,
                     DoseInterval interval)
{
    double theta1 = model.stage1_mle(x1, ybar1);
    return interval.clamp(model.optimal_dose(theta1, interval));
}

AdaptiveDoseMap::AdaptiveDoseMap(MeanModel const& model,
                                 double x1,
                                 DoseInterval interval)
    : model_(model), x1_(x1), interval_(interval)
{
    double const lo = model.theta_lo();
    double const hi = model.theta_hi();
    std::vector<double> thetas{lo, hi};

    // Parameter values where the optimal dose enters or leaves a boundary
    auto state = [&](double theta) {
        return regime(model.optimal_dose(theta, interval), interval);
    };
    double prev_theta = lo;
    DoseRegime prev_state = state(lo);
    for (int i = 1; i < kSwitchScanPoints; ++i)
    {
        double theta = i == kSwitchScanPoints - 1
                           ? hi
                           : lo + (hi - lo) * i / (kSwitchScanPoints - 1);
        DoseRegime s = state(theta);
        if (s != prev_state)
        {
            double left = prev_theta, right = theta;
            for (int k = 0; k < kBisectionSteps && right - left > 0; ++k)
            {
                double mid = 0.5 * (left + right);
                if (mid <= left || mid >= right)
                    break;
                (state(mid) == prev_state ? left : right) = mid;
            }
            thetas.push_back(0.5 * (left + right));
        }
        prev_theta = theta;
        prev_state = s;
    }

    for (double theta : thetas)
        breakpoints_.push_back(model.eta(x1, theta));
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()),
                       breakpoints_.end());

    double const e_lo = model.eta(x1, lo);
    double const e_hi = model.eta(x1, hi);
    clamp_low_ = std::min(e_lo, e_hi);
    clamp_high_ = std::max(e_lo, e_hi);
}

double AdaptiveDoseMap::dose(double ybar1) const
{
    return adaptive_dose(model_, x1_, ybar1, interval_);
}

FisherBreakdown design_fisher_info(AdaptiveDoseMap const& doses,
                                   int n1,
                                   int n2,
                                   double sigma,
                                   double theta,
                                   int num_nodes)
{
    if (n1 < 1 || n2 < 0)
        throw ConfigError("design information requires n1 >= 1 and n2 >= 0");

    MeanModel const& model = doses.model();
    DoseInterval const interval = doses.interval();
    double const x1 = doses.x1();
    double const mean = model.eta(x1, theta);
    double const sd = sigma / std::sqrt(static_cast<double>(n1));
    auto info = [&](double x) {
        double d = model.deta(x, theta);
        return d * d;
    };

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> edges{-inf};
    edges.insert(edges.end(), doses.breakpoints().begin(),
                 doses.breakpoints().end());
    edges.push_back(inf);

    auto const& rule = gauss_legendre(num_nodes);
    auto const& coarse = gauss_legendre(num_nodes / 2 + 1);
    auto integrate = [&](GaussLegendreRule const& r, double zlo, double zhi) {
        double half = 0.5 * (zhi - zlo);
        double center = 0.5 * (zhi + zlo);
        double sum = 0;
        for (std::size_t k = 0; k < r.nodes.size(); ++k)
        {
            double z = center + half * r.nodes[k];
            sum += r.weights[k] * info(doses.dose(mean + sd * z))
                   * normal_pdf(z);
        }
        return half * sum;
    };

    FisherBreakdown result{0, 0, 0, 0, 0};
    double coarse_integral = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    {
        double const lo = edges[i];
        double const hi = edges[i + 1];
        double const zlo = (lo - mean) / sd;
        double const zhi = (hi - mean) / sd;
        double const mass = normal_mass(zlo, zhi);
        if (!(mass > 0))
            continue;

        double const rep = std::isinf(lo) ? hi - 1
                           : std::isinf(hi) ? lo + 1
                                            : 0.5 * (lo + hi);
        double const dose = doses.dose(rep);
        bool const constant = hi <= doses.clamp_low()
                              || lo >= doses.clamp_high();
        switch (regime(dose, interval))
        {
            case DoseRegime::at_a:
                result.boundary_a_mass += mass;
                continue;
            case DoseRegime::at_b:
                result.boundary_b_mass += mass;
                continue;
            case DoseRegime::interior:
                break;
        }
        result.interior_mass += mass;
        if (constant)
        {
            result.interior_integral += mass * info(dose);
            coarse_integral += mass * info(dose);
            continue;
        }
        double const a = std::max(zlo, -kZCutoff);
        double const b = std::min(zhi, kZCutoff);
        if (a < b)
        {
            result.interior_integral += integrate(rule, a, b);
            coarse_integral += integrate(coarse, a, b);
        }
    }

    double const var = sigma * sigma;
    double const second_stage = result.boundary_a_mass * info(interval.a)
                                + result.boundary_b_mass * info(interval.b)
                                + result.interior_integral;
    result.total = (n1 * info(x1) + n2 * second_stage) / var;

    double const error = n2 * std::fabs(result.interior_integral
                                        - coarse_integral)
                         / var;
    if (!(error <= kQuadratureRelTol * std::fabs(result.total)))
    {
        std::ostringstream msg;
        msg << "design information quadrature did not reach relative "
               "tolerance 1e-6 (n1="
            << n1 << ", n2=" << n2 << ", estimated error " << error << ")";
        throw NumericalError(msg.str());
    }
    return result;
}

FisherBreakdown design_fisher_info(MeanModel const& model,
                                   DesignConfig const& config,
                                   double theta,
                                   int num_nodes)
{
    config.validate(model);
    AdaptiveDoseMap doses(model, config.x1, config.interval);
    return design_fisher_info(
        doses, config.n1, config.n2(), config.sigma, theta, num_nodes);
}

N1Search optimal_n1(MeanModel const& model,
                    DesignConfig const& config,
                    double theta,
                    int num_nodes,
                    int threads)
{
    DesignConfig probe = config;
    probe.n1 = 1;
    probe.validate(model);

    AdaptiveDoseMap doses(model, config.x1, config.interval);
    N1Search search{1, std::vector<FisherBreakdown>(config.n - 1)};
    parallel_for(search.trace.size(), threads, [&](std::size_t k) {
        int n1 = static_cast<int>(k) + 1;
        search.trace[k] = design_fisher_info(
            doses, n1, config.n - n1, config.sigma, theta, num_nodes);
    });
    double best = search.trace.front().total;
    for (std::size_t k = 1; k < search.trace.size(); ++k)
    {
        if (search.trace[k].total > best)
        {
            best = search.trace[k].total;
            search.n1_star = static_cast<int>(k) + 1;
        }
    }
    return search;
}

}  // namespace adaptnorm
