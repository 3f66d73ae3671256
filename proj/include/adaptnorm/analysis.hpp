#pragma once

#include <span>
#include <vector>

#include "montecarlo.hpp"
#include "numerics.hpp"

namespace adaptnorm {

inline constexpr std::array<double, 4> kNominalLevels{0.005, 0.025, 0.05, 0.10};

struct TailRow
{
    double nominal;
    double left;   //!< P(T < z_alpha)
    double right;  //!< P(T > z_{1-alpha})
};

//! Two-sided tail frequencies for one norming at several nominal levels.
struct TailSummary
{
    InfoMeasureKind kind{InfoMeasureKind::observed};
    std::vector<TailRow> rows;
    std::size_t effective_replications{0};
    std::size_t excluded{0};

    //! True when every replication was degenerate; rows then hold NaN.
    bool empty() const { return effective_replications == 0; }
};

//! Non-degenerate normalized statistics for one kind, in replication order.
std::vector<double> statistics(std::span<ReplicationResult const> results,
                               InfoMeasureKind kind);

TailSummary tail_probabilities(std::span<double const> stats,
                               std::span<double const> levels);

TailSummary tail_probabilities(std::span<ReplicationResult const> results,
                               InfoMeasureKind kind,
                               std::span<double const> levels);

inline constexpr double kCdfGridHalfWidth = 8;
inline constexpr double kCdfGridStep = 0.01;

/*!
 * Trapezoidal integral over [-8, 8] of |F_hat(t) - Phi(t)|, where F_hat is
 * the right-continuous empirical CDF. NaN for an empty sample.
 */
double integrated_abs_cdf_diff(std::span<double const> stats,
                               double step = kCdfGridStep);

double integrated_abs_cdf_diff(std::span<ReplicationResult const> results,
                               InfoMeasureKind kind);

//! Same integral for the Student-t CDF with \c df degrees of freedom.
double t_reference(double df, double step = kCdfGridStep);

//! Scale benchmark: t distribution with 60 degrees of freedom.
double t60_reference();

//! KS test of a sample against the standard normal.
KsResult ks_standard_normal(std::vector<double> sample);

//! KS test of a sample against chi-square with one degree of freedom.
KsResult ks_chi2_1(std::vector<double> sample);

}  // namespace adaptnorm
