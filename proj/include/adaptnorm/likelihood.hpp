#pragma once

#include <span>
#include <vector>

#include "models.hpp"

namespace adaptnorm {

/*!
 * Responses from a two-stage design: n1 subjects at dose x1, then n2
 * subjects at the adaptively chosen dose x2, with known error SD sigma.
 */
class TwoStageSample
{
  public:
    //! Throws ConfigError if a stage is empty or sigma <= 0.
    TwoStageSample(double x1,
                   double x2,
                   std::vector<double> y1,
                   std::vector<double> y2,
                   double sigma);

    double x1() const { return x1_; }
    double x2() const { return x2_; }
    double sigma() const { return sigma_; }
    std::span<double const> y1() const { return y1_; }
    std::span<double const> y2() const { return y2_; }
    std::size_t n1() const { return y1_.size(); }
    std::size_t n2() const { return y2_.size(); }
    std::size_t n() const { return n1() + n2(); }
    double ybar1() const { return ybar1_; }
    double ybar2() const { return ybar2_; }

  private:
    double x1_;
    double x2_;
    std::vector<double> y1_;
    std::vector<double> y2_;
    double sigma_;
    double ybar1_;
    double ybar2_;
};

//! Log-likelihood up to an additive constant; depends on data via means.
double log_likelihood(MeanModel const& model,
                      TwoStageSample const& sample,
                      double theta);

//! d/dtheta of log_likelihood.
double score(MeanModel const& model, TwoStageSample const& sample, double theta);

/*!
 * Global maximizer of the two-stage likelihood over [theta_lo, theta_hi].
 *
 * A 512-point grid brackets the global maximum (the likelihood can be
 * multimodal), then golden section refines to 1e-8. Maxima on the bounds
 * are returned exactly.
 */
double full_mle(MeanModel const& model, TwoStageSample const& sample);

}  // namespace adaptnorm
