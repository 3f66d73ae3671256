#include "adaptnorm/montecarlo.hpp"

#include <cmath>
#include <limits>

#include "adaptnorm/error.hpp"
#include "adaptnorm/numerics.hpp"
#include "adaptnorm/parallel.hpp"

namespace adaptnorm {

std::string_view to_string(FisherNormPoint point)
{
    return point == FisherNormPoint::truth ? "truth" : "estimate";
}

FisherNormPoint fisher_norm_point_from_string(std::string_view name)
{
    if (name == "truth")
        return FisherNormPoint::truth;
    if (name == "estimate")
        return FisherNormPoint::estimate;
    throw ConfigError("fisher_at must be 'truth' or 'estimate', got '"
                      + std::string(name) + "'");
}

namespace {
AdaptiveDoseMap validated_dose_map(MeanModel const& model,
                                   DesignConfig const& config)
{
    config.validate(model);
    return AdaptiveDoseMap(model, config.x1, config.interval);
}
}  // namespace

Experiment::Experiment(MeanModel model,
                       DesignConfig config,
                       FisherNormPoint fisher_at)
    : model_(model)
    , config_(config)
    , fisher_at_(fisher_at)
    , doses_(validated_dose_map(model, config))
{
    fisher_truth_ = design_fisher_info(doses_,
                                       config_.n1,
                                       config_.n2(),
                                       config_.sigma,
                                       config_.theta_true)
                        .total;
}

ReplicationResult Experiment::simulate_one(ReplicationStream const& stream) const
{
    double const theta0 = config_.theta_true;
    double const sigma = config_.sigma;
    double const x1 = config_.x1;

    std::vector<double> y1(config_.n1);
    stream.fill_normals(Stage::first, y1);
    double const mean1 = model_.eta(x1, theta0);
    for (double& y : y1)
        y = mean1 + sigma * y;

    ReplicationResult result;
    result.index = stream.replication();
    double const ybar1 = pairwise_sum(y1) / static_cast<double>(y1.size());
    result.theta1_hat = model_.stage1_mle(x1, ybar1);
    result.x2_hat = doses_.dose(ybar1);

    std::vector<double> y2(config_.n2());
    stream.fill_normals(Stage::second, y2);
    double const mean2 = model_.eta(result.x2_hat, theta0);
    for (double& y : y2)
        y = mean2 + sigma * y;

    TwoStageSample const sample(
        x1, result.x2_hat, std::move(y1), std::move(y2), sigma);
    double const theta_hat = full_mle(model_, sample);
    result.theta_hat = theta_hat;
    result.boundary_mle = theta_hat == model_.theta_lo()
                          || theta_hat == model_.theta_hi();

    auto& norms = result.norm_values;
    norms[index(InfoMeasureKind::expected_fisher)]
        = fisher_at_ == FisherNormPoint::truth
              ? fisher_truth_
              : design_fisher_info(
                    doses_, config_.n1, config_.n2(), sigma, theta_hat)
                    .total;
    norms[index(InfoMeasureKind::observed)]
        = observed_info(model_, sample, theta_hat);
    norms[index(InfoMeasureKind::incremental_observed_subject)]
        = incremental_observed_subject(model_, sample, theta_hat);
    norms[index(InfoMeasureKind::incremental_observed_stage)]
        = incremental_observed_stage(model_, sample, theta_hat);
    norms[index(InfoMeasureKind::incremental_expected)]
        = incremental_expected_info(model_, sample, theta_hat);

    for (std::size_t k = 0; k < kNumInfoMeasures; ++k)
    {
        if (norms[k] > 0 && std::isfinite(norms[k]))
        {
            result.stats[k] = std::sqrt(norms[k]) * (theta_hat - theta0);
        }
        else
        {
            result.stats[k] = std::numeric_limits<double>::quiet_NaN();
            result.degenerate.set(k);
        }
    }

    result.u_inv_sq = limit_scale(model_, result.x2_hat, theta0, sigma).u_inv_sq;
    result.stage_observed_at_truth
        = incremental_observed_stage(model_, sample, theta0);
    return result;
}

ExperimentRun Experiment::run(std::size_t replications,
                              std::uint64_t master_seed,
                              int threads) const
{
    if (replications < 1)
        throw ConfigError("replication count must be >= 1");
    ExperimentRun run;
    run.fisher_norm_at_truth = fisher_truth_;
    run.results.resize(replications);
    parallel_for(replications, threads, [&](std::size_t i) {
        run.results[i] = simulate_one(ReplicationStream(master_seed, i));
    });
    for (auto const& r : run.results)
    {
        for (std::size_t k = 0; k < kNumInfoMeasures; ++k)
            run.degenerate_counts[k] += r.degenerate.test(k);
        run.boundary_mle_count += r.boundary_mle;
    }
    return run;
}

ReplicationResult simulate_one(MeanModel const& model,
                               DesignConfig const& config,
                               ReplicationStream const& stream)
{
    return Experiment(model, config).simulate_one(stream);
}

ExperimentRun run_experiment(MeanModel const& model,
                             DesignConfig const& config,
                             std::size_t replications,
                             std::uint64_t master_seed,
                             int threads)
{
    return Experiment(model, config).run(replications, master_seed, threads);
}

}  // namespace adaptnorm
