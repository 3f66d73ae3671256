#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "design.hpp"
#include "information.hpp"
#include "rng.hpp"

namespace adaptnorm {

//! Where the expected (Fisher) information norm is evaluated.
enum class FisherNormPoint
{
    truth,     //!< i(xi_A, theta_true), one deterministic value per scenario
    estimate,  //!< i(xi_A, theta_hat_n), recomputed per replication
};

std::string_view to_string(FisherNormPoint point);
FisherNormPoint fisher_norm_point_from_string(std::string_view name);

//! Everything recorded about one simulated two-stage trial.
struct ReplicationResult
{
    std::uint64_t index{0};
    double theta1_hat{0};  //!< Stage-1 MLE
    double x2_hat{0};      //!< Adaptive second-stage dose
    double theta_hat{0};   //!< Full-data MLE
    bool boundary_mle{false};

    std::array<double, kNumInfoMeasures> norm_values{};
    //! norm^{1/2} (theta_hat - theta_true); NaN where degenerate
    std::array<double, kNumInfoMeasures> stats{};
    std::bitset<kNumInfoMeasures> degenerate;

    // Convergence diagnostics
    double u_inv_sq{0};                //!< deta(x2_hat, theta_true)^2 / sigma^2
    double stage_observed_at_truth{0}; //!< J^D_n(theta_true)

    bool has_stat(InfoMeasureKind kind) const
    {
        return !degenerate.test(index_of(kind));
    }
    double norm(InfoMeasureKind kind) const
    {
        return norm_values[index_of(kind)];
    }
    double stat(InfoMeasureKind kind) const { return stats[index_of(kind)]; }

  private:
    static std::size_t index_of(InfoMeasureKind kind)
    {
        return adaptnorm::index(kind);
    }
};

//! Outcome of R replications plus exclusion accounting.
struct ExperimentRun
{
    std::vector<ReplicationResult> results;
    std::array<std::size_t, kNumInfoMeasures> degenerate_counts{};
    std::size_t boundary_mle_count{0};
    double fisher_norm_at_truth{0};
};

//! Provenance of a run, echoed into every output manifest.
struct RunManifest
{
    Family family;
    DesignConfig config;
    std::size_t replications;
    std::uint64_t master_seed;
    std::optional<int> n1_star;
    std::string version;
};

/*!
 * A fixed scenario (model, design, norming convention) from which
 * replications are drawn. The Fisher norm at the true parameter is
 * computed once at construction.
 */
class Experiment
{
  public:
    Experiment(MeanModel model,
               DesignConfig config,
               FisherNormPoint fisher_at = FisherNormPoint::truth);

    //! One replication; a pure function of the stream's coordinates.
    ReplicationResult simulate_one(ReplicationStream const& stream) const;

    //! Replications 0..R-1 under \c master_seed; identical for any thread
    //! count.
    ExperimentRun
    run(std::size_t replications, std::uint64_t master_seed, int threads) const;

    MeanModel const& model() const { return model_; }
    DesignConfig const& config() const { return config_; }
    double fisher_norm_at_truth() const { return fisher_truth_; }

  private:
    MeanModel model_;
    DesignConfig config_;
    FisherNormPoint fisher_at_;
    AdaptiveDoseMap doses_;
    double fisher_truth_;
};

ReplicationResult simulate_one(MeanModel const& model,
                               DesignConfig const& config,
                               ReplicationStream const& stream);

ExperimentRun run_experiment(MeanModel const& model,
                             DesignConfig const& config,
                             std::size_t replications,
                             std::uint64_t master_seed,
                             int threads = 1);

}  // namespace adaptnorm
