#pragma once

#include <functional>
#include <span>
#include <vector>

namespace adaptnorm {

//---------------------------------------------------------------------------//
// Normal distribution
//---------------------------------------------------------------------------//

double normal_pdf(double x);

//! Standard normal CDF via erfc; full double precision in both tails.
double normal_cdf(double x);

//! Inverse standard normal CDF (Wichura AS241), ~1e-16 relative accuracy.
double normal_quantile(double p);

//! CDF of the chi-square distribution with one degree of freedom.
double chi2_1_cdf(double x);

//! Student-t CDF with (possibly non-integer) degrees of freedom.
double students_t_cdf(double x, double df);

//---------------------------------------------------------------------------//
// Summation and quadrature
//---------------------------------------------------------------------------//

//! Pairwise (tree) summation; error grows as O(log n) instead of O(n).
double pairwise_sum(std::span<double const> values);

struct GaussLegendreRule
{
    std::vector<double> nodes;    //!< On [-1, 1], ascending
    std::vector<double> weights;
};

//! Gauss-Legendre rule with the given number of nodes (>= 1).
GaussLegendreRule const& gauss_legendre(int num_nodes);

//---------------------------------------------------------------------------//
// One-dimensional maximization
//---------------------------------------------------------------------------//

struct Maximum
{
    double x;
    double value;
};

/*!
 * Golden-section search for the maximum of a unimodal function on [lo, hi].
 *
 * Stops once the bracket is narrower than \c tol and returns the best
 * evaluated interior point.
 */
Maximum golden_section_maximize(std::function<double(double)> const& f,
                                double lo,
                                double hi,
                                double tol);

/*!
 * Global maximization on [lo, hi]: a uniform grid of \c grid_points
 * (including both endpoints) locates the best cell, and golden section
 * refines within the two neighbouring cells.
 *
 * The grid point itself stays a candidate, so maxima on the boundary are
 * returned exactly. Ties resolve to the smaller abscissa.
 */
Maximum bracketed_maximize(std::function<double(double)> const& f,
                           double lo,
                           double hi,
                           int grid_points,
                           double tol);

//---------------------------------------------------------------------------//
// Goodness of fit
//---------------------------------------------------------------------------//

struct KsResult
{
    double statistic;  //!< sup |F_n - F|
    double p_value;
    std::size_t sample_size;
};

//! Asymptotic Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_survival(double lambda);

//! One-sample Kolmogorov-Smirnov test against a continuous CDF.
KsResult ks_test(std::vector<double> sample,
                 std::function<double(double)> const& cdf);

}  // namespace adaptnorm
