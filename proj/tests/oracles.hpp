#pragma once

// Shared brute-force reference implementations for the test suites.

#include <cmath>
#include <random>
#include <vector>

#include "adaptnorm/design.hpp"
#include "adaptnorm/likelihood.hpp"

namespace adaptnorm::test {

inline constexpr DoseInterval kInterval{0.25, 4};
inline constexpr Family kFamilies[] = {Family::logistic_location,
                                       Family::logistic_scale,
                                       Family::exponential_location,
                                       Family::exponential_scale};

inline MeanModel default_model(Family f)
{
    return MeanModel::with_default_bounds(f, kInterval);
}

inline TwoStageSample exact_fit_sample(MeanModel const& m,
                                       double x1,
                                       double x2,
                                       int n1,
                                       int n2,
                                       double sigma,
                                       double theta)
{
    return TwoStageSample(x1,
                          x2,
                          std::vector<double>(n1, m.eta(x1, theta)),
                          std::vector<double>(n2, m.eta(x2, theta)),
                          sigma);
}

//! Small noisy sample: 1-5 subjects per stage, random doses and truth.
template<class Gen>
TwoStageSample random_sample(MeanModel const& m, Gen& gen, double sigma = 0.5)
{
    std::uniform_int_distribution<int> size(1, 5);
    std::uniform_real_distribution<double> dose(kInterval.a, kInterval.b);
    std::uniform_real_distribution<double> param(0, 4);
    std::normal_distribution<double> noise(0, sigma);
    double x1 = dose(gen), x2 = dose(gen), t = param(gen);
    std::vector<double> y1(size(gen)), y2(size(gen));
    for (auto& y : y1)
        y = m.eta(x1, t) + noise(gen);
    for (auto& y : y2)
        y = m.eta(x2, t) + noise(gen);
    return TwoStageSample(x1, x2, std::move(y1), std::move(y2), sigma);
}

//! Argmax of the log-likelihood over a uniform grid on [theta_lo, theta_hi].
inline double grid_mle(MeanModel const& m, TwoStageSample const& s, int points)
{
    double best_t = m.theta_lo();
    double best = -INFINITY;
    for (int k = 0; k < points; ++k)
    {
        double t = m.theta_lo() + (m.theta_hi() - m.theta_lo()) * k / (points - 1);
        double r1 = s.ybar1() - m.eta(s.x1(), t);
        double r2 = s.ybar2() - m.eta(s.x2(), t);
        double ll = -(s.n1() * r1 * r1 + s.n2() * r2 * r2);
        if (ll > best)
        {
            best = ll;
            best_t = t;
        }
    }
    return best_t;
}

struct McEstimate
{
    double mean;
    double se;
};

/*!
 * Plain Monte Carlo estimate of the design information: draw ybar1 from
 * its sampling distribution, apply the dose rule, average deta^2.
 */
inline McEstimate mc_design_info(MeanModel const& m,
                                 DesignConfig const& c,
                                 double theta,
                                 int draws,
                                 std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> z;
    double const mu = m.eta(c.x1, theta);
    double const sd = c.sigma / std::sqrt(static_cast<double>(c.n1));
    double const d1 = m.deta(c.x1, theta);
    double const s2 = c.sigma * c.sigma;
    // Welford accumulation
    double mean = 0, m2 = 0;
    for (int i = 0; i < draws; ++i)
    {
        double ybar = mu + sd * z(gen);
        double t1 = m.stage1_mle(c.x1, ybar);
        double x2 = m.optimal_dose(t1, c.interval);
        double d2 = m.deta(x2, theta);
        double v = (c.n1 * d1 * d1 + c.n2() * d2 * d2) / s2;
        double delta = v - mean;
        mean += delta / (i + 1);
        m2 += delta * (v - mean);
    }
    return {mean, std::sqrt(m2 / (draws - 1.0) / draws)};
}

}  // namespace adaptnorm::test
