#include "adaptnorm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace adaptnorm {

namespace {
template<class CdfDiff>
double trapezoid_on_grid(CdfDiff&& diff, double step)
{
    auto const intervals = static_cast<long>(
        std::llround(2 * kCdfGridHalfWidth / step));
    double sum = 0;
    double prev = diff(-kCdfGridHalfWidth);
    for (long i = 1; i <= intervals; ++i)
    {
        double t = -kCdfGridHalfWidth + i * step;
        double cur = diff(t);
        sum += 0.5 * (prev + cur) * step;
        prev = cur;
    }
    return sum;
}
}  // namespace

std::vector<double> statistics(std::span<ReplicationResult const> results,
                               InfoMeasureKind kind)
{
    std::vector<double> out;
    out.reserve(results.size());
    for (auto const& r : results)
    {
        if (r.has_stat(kind))
            out.push_back(r.stat(kind));
    }
    return out;
}

TailSummary tail_probabilities(std::span<double const> stats,
                               std::span<double const> levels)
{
    TailSummary summary;
    summary.effective_replications = stats.size();
    double const r = static_cast<double>(stats.size());
    for (double alpha : levels)
    {
        TailRow row{alpha,
                    std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN()};
        if (!stats.empty())
        {
            double const lower = normal_quantile(alpha);
            double const upper = normal_quantile(1 - alpha);
            std::size_t left = 0, right = 0;
            for (double t : stats)
            {
                left += t < lower;
                right += t > upper;
            }
            row.left = left / r;
            row.right = right / r;
        }
        summary.rows.push_back(row);
    }
    return summary;
}

TailSummary tail_probabilities(std::span<ReplicationResult const> results,
                               InfoMeasureKind kind,
                               std::span<double const> levels)
{
    auto stats = statistics(results, kind);
    TailSummary summary = tail_probabilities(stats, levels);
    summary.kind = kind;
    summary.excluded = results.size() - stats.size();
    return summary;
}

double integrated_abs_cdf_diff(std::span<double const> stats, double step)
{
    if (stats.empty())
        return std::numeric_limits<double>::quiet_NaN();
    std::vector<double> sorted(stats.begin(), stats.end());
    std::sort(sorted.begin(), sorted.end());
    double const n = static_cast<double>(sorted.size());
    auto diff = [&](double t) {
        auto count = std::upper_bound(sorted.begin(), sorted.end(), t)
                     - sorted.begin();
        return std::fabs(count / n - normal_cdf(t));
    };
    return trapezoid_on_grid(diff, step);
}

double integrated_abs_cdf_diff(std::span<ReplicationResult const> results,
                               InfoMeasureKind kind)
{
    auto stats = statistics(results, kind);
    return integrated_abs_cdf_diff(stats);
}

double t_reference(double df, double step)
{
    auto diff = [df](double t) {
        return std::fabs(students_t_cdf(t, df) - normal_cdf(t));
    };
    return trapezoid_on_grid(diff, step);
}

double t60_reference()
{
    return t_reference(60);
}

KsResult ks_standard_normal(std::vector<double> sample)
{
    return ks_test(std::move(sample), normal_cdf);
}

KsResult ks_chi2_1(std::vector<double> sample)
{
    return ks_test(std::move(sample), chi2_1_cdf);
}

}  // namespace adaptnorm
