#include "adaptnorm/numerics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <numbers>

#include <boost/math/distributions/students_t.hpp>

namespace adaptnorm {

double normal_pdf(double x)
{
    return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi);
}

double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p)
{
    if (!(p > 0 && p < 1))
    {
        if (p == 0)
            return -std::numeric_limits<double>::infinity();
        if (p == 1)
            return std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::quiet_NaN();
    }
    // Wichura (1988), Algorithm AS 241 (PPND16)
    static constexpr double a[] = {3.3871328727963666080e0,
                                   1.3314166789178437745e+2,
                                   1.9715909503065514427e+3,
                                   1.3731693765509461125e+4,
                                   4.5921953931549871457e+4,
                                   6.7265770927008700853e+4,
                                   3.3430575583588128105e+4,
                                   2.5090809287301226727e+3};
    static constexpr double b[] = {1.0,
                                   4.2313330701600911252e+1,
                                   6.8718700749205790830e+2,
                                   5.3941960214247511077e+3,
                                   2.1213794301586595867e+4,
                                   3.9307895800092710610e+4,
                                   2.8729085735721942674e+4,
                                   5.2264952788528545610e+3};
    static constexpr double c[] = {1.42343711074968357734e0,
                                   4.63033784615654529590e0,
                                   5.76949722146069140550e0,
                                   3.64784832476320460504e0,
                                   1.27045825245236838258e0,
                                   2.41780725177450611770e-1,
                                   2.27238449892691845833e-2,
                                   7.74545014278341407640e-4};
    static constexpr double d[] = {1.0,
                                   2.05319162663775882187e0,
                                   1.67638483018380384940e0,
                                   6.89767334985100004550e-1,
                                   1.48103976427480074590e-1,
                                   1.51986665636164571966e-2,
                                   5.47593808499534494600e-4,
                                   1.05075007164441684324e-9};
    static constexpr double e[] = {6.65790464350110377720e0,
                                   5.46378491116411436990e0,
                                   1.78482653991729133580e0,
                                   2.96560571828504891230e-1,
                                   2.65321895265761230930e-2,
                                   1.24266094738807843860e-3,
                                   2.71155556874348757815e-5,
                                   2.01033439929228813265e-7};
    static constexpr double f[] = {1.0,
                                   5.99832206555887937690e-1,
                                   1.36929880922735805310e-1,
                                   1.48753612908506148525e-2,
                                   7.86869131145613259100e-4,
                                   1.84631831751005468180e-5,
                                   1.42151175831644588870e-7,
                                   2.04426310338993978564e-15};

    auto poly = [](double const* coef, double x) {
        double r = coef[7];
        for (int i = 6; i >= 0; --i)
            r = r * x + coef[i];
        return r;
    };

    double q = p - 0.5;
    if (std::fabs(q) <= 0.425)
    {
        double r = 0.180625 - q * q;
        return q * poly(a, r) / poly(b, r);
    }
    double r = q < 0 ? p : 1 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5)
    {
        r -= 1.6;
        x = poly(c, r) / poly(d, r);
    }
    else
    {
        r -= 5;
        x = poly(e, r) / poly(f, r);
    }
    return q < 0 ? -x : x;
}

double chi2_1_cdf(double x)
{
    if (x <= 0)
        return 0;
    return std::erf(std::sqrt(x / 2));
}

double students_t_cdf(double x, double df)
{
    boost::math::students_t_distribution<double> dist(df);
    return boost::math::cdf(dist, x);
}

double pairwise_sum(std::span<double const> values)
{
    constexpr std::size_t block = 32;
    if (values.size() <= block)
    {
        double s = 0;
        for (double v : values)
            s += v;
        return s;
    }
    auto half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {
struct LegendreValue
{
    double p;   //!< P_n(x)
    double dp;  //!< P_n'(x)
};

LegendreValue legendre(int n, double x)
{
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k)
    {
        double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1)};
}

GaussLegendreRule make_gauss_legendre(int n)
{
    GaussLegendreRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 2.0);
    if (n == 1)
        return rule;
    for (int i = 0; i < n / 2; ++i)
    {
        // Newton iteration on P_n from the Tricomi initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter)
        {
            auto [p, dp] = legendre(n, x);
            double dx = p / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16)
                break;
        }
        double dp = legendre(n, x).dp;
        double w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
    {
        double dp = legendre(n, 0.0).dp;
        rule.weights[n / 2] = 2 / (dp * dp);
    }
    return rule;
}
}  // namespace

GaussLegendreRule const& gauss_legendre(int num_nodes)
{
    if (num_nodes < 1)
        throw std::invalid_argument("Gauss-Legendre rule needs >= 1 node");
    static std::mutex mutex;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(num_nodes);
    if (it == cache.end())
        it = cache.emplace(num_nodes, make_gauss_legendre(num_nodes)).first;
    return it->second;
}

Maximum golden_section_maximize(std::function<double(double)> const& f,
                                double lo,
                                double hi,
                                double tol)
{
    assert(lo <= hi);
    constexpr double inv_phi = 0.6180339887498948482;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol)
    {
        // Keep the left point on ties so flat regions resolve leftward
        if (f1 >= f2)
        {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
        else
        {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 >= f2 ? Maximum{x1, f1} : Maximum{x2, f2};
}

Maximum bracketed_maximize(std::function<double(double)> const& f,
                           double lo,
                           double hi,
                           int grid_points,
                           double tol)
{
    assert(grid_points >= 2 && lo < hi);
    double const step = (hi - lo) / (grid_points - 1);
    auto grid_x = [&](int i) {
        return i == grid_points - 1 ? hi : lo + i * step;
    };

    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_points; ++i)
    {
        double v = f(grid_x(i));
        if (v > best_value)
        {
            best = i;
            best_value = v;
        }
    }
    Maximum result{grid_x(best), best_value};

    double left = grid_x(std::max(best - 1, 0));
    double right = grid_x(std::min(best + 1, grid_points - 1));
    Maximum refined = golden_section_maximize(f, left, right, tol);
    if (refined.value > result.value
        || (refined.value == result.value && refined.x < result.x))
    {
        result = refined;
    }
    return result;
}

double kolmogorov_survival(double lambda)
{
    if (lambda <= 0)
        return 1;
    if (lambda < 1.18)
    {
        // P(K <= lambda) = sqrt(2 pi)/lambda sum exp(-(2k-1)^2 pi^2/(8 lambda^2))
        double const c = std::numbers::pi * std::numbers::pi
                         / (8 * lambda * lambda);
        double s = 0;
        for (int k = 1; k <= 20; ++k)
        {
            double m = 2 * k - 1;
            s += std::exp(-m * m * c);
        }
        return 1 - std::sqrt(2 * std::numbers::pi) / lambda * s;
    }
    double s = 0;
    for (int k = 1; k <= 100; ++k)
    {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k % 2 == 1 ? term : -term);
        if (term < 1e-18)
            break;
    }
    return std::clamp(2 * s, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> sample,
                 std::function<double(double)> const& cdf)
{
    KsResult result{0, 1, sample.size()};
    if (sample.empty())
        return result;
    std::sort(sample.begin(), sample.end());
    double const n = static_cast<double>(sample.size());
    double d = 0;
    for (std::size_t i = 0; i < sample.size(); ++i)
    {
        double F = cdf(sample[i]);
        d = std::max({d, (i + 1) / n - F, F - i / n});
    }
    double const sqrt_n = std::sqrt(n);
    result.statistic = d;
    result.p_value = kolmogorov_survival((sqrt_n + 0.12 + 0.11 / sqrt_n) * d);
    return result;
}

}  // namespace adaptnorm
