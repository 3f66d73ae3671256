#pragma once

#include <vector>

#include "models.hpp"

namespace adaptnorm {

//! Two-stage adaptive design xi_A = {[w1, x1], [w2, x2_hat]}.
struct DesignConfig
{
    double x1;
    DoseInterval interval;
    int n1;
    int n;
    double sigma;
    double theta_true;

    int n2() const { return n - n1; }

    //! Throws ConfigError naming the first violated invariant.
    void validate(MeanModel const& model) const;
};

//! Components of the design's expected information at one theta.
struct FisherBreakdown
{
    double total;             //!< i(xi_A, theta)
    double boundary_a_mass;   //!< P(x2_hat == a)
    double boundary_b_mass;   //!< P(x2_hat == b)
    double interior_integral; //!< E[deta(x2_hat)^2 ; a < x2_hat < b]
    double interior_mass;     //!< P(a < x2_hat < b)
};

//! Second-stage dose chosen from the stage-1 mean.
double adaptive_dose(MeanModel const& model,
                     double x1,
                     double ybar1,
                     DoseInterval interval);

/*!
 * Piecewise structure of ybar1 -> x2_hat.
 *
 * The dose map is smooth between the stage-1 means at which the stage-1
 * MLE hits a parameter bound or the optimal dose hits a or b; splitting
 * the quadrature there removes every kink from the integrand.
 */
class AdaptiveDoseMap
{
  public:
    AdaptiveDoseMap(MeanModel const& model, double x1, DoseInterval interval);

    double dose(double ybar1) const;

    //! Ascending stage-1 means where the dose map changes regime.
    std::vector<double> const& breakpoints() const { return breakpoints_; }

    //! Means beyond which the stage-1 MLE sits on a parameter bound.
    double clamp_low() const { return clamp_low_; }
    double clamp_high() const { return clamp_high_; }

    MeanModel const& model() const { return model_; }
    double x1() const { return x1_; }
    DoseInterval interval() const { return interval_; }

  private:
    MeanModel model_;
    double x1_;
    DoseInterval interval_;
    std::vector<double> breakpoints_;
    double clamp_low_;
    double clamp_high_;
};

inline constexpr int kDefaultQuadratureNodes = 201;

/*!
 * Expected information of the adaptive design at theta, with stage sizes
 * n1 >= 1 and n2 >= 0. Boundary masses use closed-form normal
 * probabilities; the interior expectation over ybar1 uses Gauss-Legendre
 * on each smooth piece. Throws NumericalError if halving the node count
 * moves the total by more than 1e-6 relative.
 */
FisherBreakdown design_fisher_info(AdaptiveDoseMap const& doses,
                                   int n1,
                                   int n2,
                                   double sigma,
                                   double theta,
                                   int num_nodes = kDefaultQuadratureNodes);

FisherBreakdown design_fisher_info(MeanModel const& model,
                                   DesignConfig const& config,
                                   double theta,
                                   int num_nodes = kDefaultQuadratureNodes);

struct N1Search
{
    int n1_star;
    std::vector<FisherBreakdown> trace;  //!< trace[k] is for n1 = k + 1
};

/*!
 * Exhaustive search over n1 in {1, ..., n-1} of the design information at
 * theta. The smallest n1 wins ties; \c threads only affects speed.
 */
N1Search optimal_n1(MeanModel const& model,
                    DesignConfig const& config,
                    double theta,
                    int num_nodes = kDefaultQuadratureNodes,
                    int threads = 1);

}  // namespace adaptnorm
