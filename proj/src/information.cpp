#include "adaptnorm/information.hpp"

#include <vector>

#include "adaptnorm/numerics.hpp"

namespace adaptnorm {

namespace {
double sum_squared_residuals(std::span<double const> y, double mean)
{
    std::vector<double> sq(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
    {
        double r = y[i] - mean;
        sq[i] = r * r;
    }
    return pairwise_sum(sq);
}

double residual_sum(std::span<double const> y, double mean)
{
    std::vector<double> r(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        r[i] = y[i] - mean;
    return pairwise_sum(r);
}
}  // namespace

std::string_view to_string(InfoMeasureKind kind)
{
    switch (kind)
    {
        case InfoMeasureKind::expected_fisher:
            return "expected_fisher";
        case InfoMeasureKind::observed:
            return "observed";
        case InfoMeasureKind::incremental_observed_subject:
            return "incremental_observed_subject";
        case InfoMeasureKind::incremental_observed_stage:
            return "incremental_observed_stage";
        case InfoMeasureKind::incremental_expected:
            return "incremental_expected";
    }
    return "unknown";
}

double observed_info(MeanModel const& model,
                     TwoStageSample const& sample,
                     double theta)
{
    double const x1 = sample.x1();
    double const x2 = sample.x2();
    double const n1 = static_cast<double>(sample.n1());
    double const n2 = static_cast<double>(sample.n2());
    double const d1 = model.deta(x1, theta);
    double const d2 = model.deta(x2, theta);
    double const r1 = residual_sum(sample.y1(), model.eta(x1, theta));
    double const r2 = residual_sum(sample.y2(), model.eta(x2, theta));
    double const var = sample.sigma() * sample.sigma();
    return (n1 * d1 * d1 - r1 * model.ddeta(x1, theta) + n2 * d2 * d2
            - r2 * model.ddeta(x2, theta))
           / var;
}

double incremental_observed_subject(MeanModel const& model,
                                    TwoStageSample const& sample,
                                    double theta)
{
    double const x1 = sample.x1();
    double const x2 = sample.x2();
    double const d1 = model.deta(x1, theta);
    double const d2 = model.deta(x2, theta);
    double const ss1 = sum_squared_residuals(sample.y1(), model.eta(x1, theta));
    double const ss2 = sum_squared_residuals(sample.y2(), model.eta(x2, theta));
    double const var = sample.sigma() * sample.sigma();
    return (ss1 * d1 * d1 + ss2 * d2 * d2) / (var * var);
}

StageIncrements stage_increments(MeanModel const& model,
                                 TwoStageSample const& sample,
                                 double theta)
{
    double const x1 = sample.x1();
    double const x2 = sample.x2();
    double const var = sample.sigma() * sample.sigma();
    return {residual_sum(sample.y1(), model.eta(x1, theta))
                * model.deta(x1, theta) / var,
            residual_sum(sample.y2(), model.eta(x2, theta))
                * model.deta(x2, theta) / var};
}

double incremental_observed_stage(MeanModel const& model,
                                  TwoStageSample const& sample,
                                  double theta)
{
    auto [first, second] = stage_increments(model, sample, theta);
    return first * first + second * second;
}

double incremental_expected_info(MeanModel const& model,
                                 TwoStageSample const& sample,
                                 double theta)
{
    // E[D_k^2 | F] = n_k^2 (sigma^2 / n_k) deta_k^2 / sigma^4
    double const d1 = model.deta(sample.x1(), theta);
    double const d2 = model.deta(sample.x2(), theta);
    double const var = sample.sigma() * sample.sigma();
    double const n1 = static_cast<double>(sample.n1());
    double const n2 = static_cast<double>(sample.n2());
    return (n1 * d1 * d1 + n2 * d2 * d2) / var;
}

double incremental_expected_info_subjectwise(MeanModel const& model,
                                             TwoStageSample const& sample,
                                             double theta)
{
    // E[(y_i - eta)^2 | F_{i-1}] deta^2 / sigma^4 = deta^2 / sigma^2 per subject
    double const var = sample.sigma() * sample.sigma();
    double const d1 = model.deta(sample.x1(), theta);
    double const d2 = model.deta(sample.x2(), theta);
    std::vector<double> terms;
    terms.reserve(sample.n());
    terms.insert(terms.end(), sample.n1(), d1 * d1 / var);
    terms.insert(terms.end(), sample.n2(), d2 * d2 / var);
    return pairwise_sum(terms);
}

LimitScale
limit_scale(MeanModel const& model, double x2, double theta, double sigma)
{
    double const d = model.deta(x2, theta);
    return {d * d / (sigma * sigma), d == 0};
}

}  // namespace adaptnorm
