#include "adaptnorm/likelihood.hpp"

#include <cmath>

#include "adaptnorm/error.hpp"
#include "adaptnorm/numerics.hpp"

namespace adaptnorm {

namespace {
constexpr int kMleGrid = 512;
constexpr double kMleTol = 1e-8;
}  // namespace

TwoStageSample::TwoStageSample(double x1,
                               double x2,
                               std::vector<double> y1,
                               std::vector<double> y2,
                               double sigma)
    : x1_(x1), x2_(x2), y1_(std::move(y1)), y2_(std::move(y2)), sigma_(sigma)
{
    if (y1_.empty() || y2_.empty())
        throw ConfigError("each stage needs at least one response");
    if (!(sigma_ > 0))
        throw ConfigError("sigma must be positive");
    ybar1_ = pairwise_sum(y1_) / static_cast<double>(y1_.size());
    ybar2_ = pairwise_sum(y2_) / static_cast<double>(y2_.size());
}

double log_likelihood(MeanModel const& model,
                      TwoStageSample const& sample,
                      double theta)
{
    double const r1 = sample.ybar1() - model.eta(sample.x1(), theta);
    double const r2 = sample.ybar2() - model.eta(sample.x2(), theta);
    double const var2 = 2 * sample.sigma() * sample.sigma();
    return -(static_cast<double>(sample.n1()) * r1 * r1
             + static_cast<double>(sample.n2()) * r2 * r2)
           / var2;
}

double score(MeanModel const& model, TwoStageSample const& sample, double theta)
{
    double const x1 = sample.x1();
    double const x2 = sample.x2();
    double const r1 = sample.ybar1() - model.eta(x1, theta);
    double const r2 = sample.ybar2() - model.eta(x2, theta);
    double const var = sample.sigma() * sample.sigma();
    return (static_cast<double>(sample.n1()) * r1 * model.deta(x1, theta)
            + static_cast<double>(sample.n2()) * r2 * model.deta(x2, theta))
           / var;
}

double full_mle(MeanModel const& model, TwoStageSample const& sample)
{
    auto objective = [&](double theta) {
        return log_likelihood(model, sample, theta);
    };
    return bracketed_maximize(
               objective, model.theta_lo(), model.theta_hi(), kMleGrid, kMleTol)
        .x;
}

}  // namespace adaptnorm
