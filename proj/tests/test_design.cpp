#include <cmath>
#include <random>

#include <doctest.h>

#include "adaptnorm/design.hpp"
#include "adaptnorm/error.hpp"
#include "adaptnorm/numerics.hpp"
#include "oracles.hpp"

using namespace adaptnorm;
using namespace adaptnorm::test;

namespace {
DesignConfig config(int n1, int n)
{
    return DesignConfig{2, kInterval, n1, n, 0.5, 1};
}

// Midpoint rule over +-10 standard deviations of ybar1 with no knowledge
// of the dose map's breakpoints.
double riemann_design_info(MeanModel const& m, DesignConfig const& c, int cells)
{
    double const mu = m.eta(c.x1, c.theta_true);
    double const sd = c.sigma / std::sqrt(static_cast<double>(c.n1));
    double const d1 = m.deta(c.x1, c.theta_true);
    double sum = 0;
    double const h = 20.0 / cells;
    for (int i = 0; i < cells; ++i)
    {
        double z = -10 + (i + 0.5) * h;
        double x2 = m.optimal_dose(m.stage1_mle(c.x1, mu + sd * z), c.interval);
        double d2 = m.deta(x2, c.theta_true);
        sum += normal_pdf(z) * h * d2 * d2;
    }
    return (c.n1 * d1 * d1 + c.n2() * sum) / (c.sigma * c.sigma);
}
}  // namespace

TEST_CASE("config validation names the violated invariant")
{
    auto const m = default_model(Family::logistic_location);
    CHECK_NOTHROW(config(30, 100).validate(m));
    CHECK_THROWS_WITH_AS(config(100, 100).validate(m), "n1 must be < n", ConfigError);
    CHECK_THROWS_WITH_AS(config(0, 100).validate(m), "n1 must be >= 1", ConfigError);
    auto c = config(30, 100);
    c.x1 = 5;
    CHECK_THROWS_AS(c.validate(m), ConfigError);
    c = config(30, 100);
    c.sigma = 0;
    CHECK_THROWS_AS(c.validate(m), ConfigError);
}

TEST_CASE("adaptive dose examples")
{
    auto const es = default_model(Family::exponential_scale);
    CHECK(adaptive_dose(es, 2, std::exp(-2.0), kInterval)
          == doctest::Approx(1).epsilon(1e-14));
    CHECK(adaptive_dose(es, 2, std::exp(-0.5), kInterval) == 4);
    CHECK(adaptive_dose(es, 2, 0.9, kInterval) == 4);
    CHECK(adaptive_dose(es, 2, 1e-5, kInterval) == 0.25);
    auto const el = default_model(Family::exponential_location);
    for (double y : {-1.0, 0.0, 0.1, 0.5, 2.0})
        CHECK(adaptive_dose(el, 2, y, kInterval) == 0.25);
}

TEST_CASE("adaptive dose is monotone in the stage-1 mean")
{
    for (Family f : kFamilies)
    {
        CAPTURE(to_string(f));
        auto const m = default_model(f);
        AdaptiveDoseMap map(m, 2, kInterval);
        int up = 0, down = 0;
        double prev = map.dose(-0.5);
        for (int i = 1; i <= 4000; ++i)
        {
            double y = -0.5 + 2.0 * i / 4000;
            double x = map.dose(y);
            CHECK(kInterval.contains(x));
            CHECK(x == adaptive_dose(m, 2, y, kInterval));
            CHECK(x == m.optimal_dose(m.stage1_mle(2, y), kInterval));
            up += x > prev;
            down += x < prev;
            prev = x;
        }
        CHECK((up == 0 || down == 0));
        auto const& bp = map.breakpoints();
        for (std::size_t i = 1; i < bp.size(); ++i)
            CHECK(bp[i] > bp[i - 1]);
    }
}

TEST_CASE("stage-1 information only when n2 = 0")
{
    for (Family f : kFamilies)
    {
        auto const m = default_model(f);
        AdaptiveDoseMap map(m, 2, kInterval);
        auto r = design_fisher_info(map, 30, 0, 0.5, 1);
        CHECK(r.total == doctest::Approx(30 * std::pow(m.deta(2, 1), 2) / 0.25)
                             .epsilon(1e-14));
    }
}

TEST_CASE("exponential-scale boundary mass in closed form")
{
    auto const m = default_model(Family::exponential_scale);
    auto r = design_fisher_info(m, config(30, 500), 1);
    double pi_a = normal_cdf(std::sqrt(30.0) * (std::exp(-8.0) - std::exp(-2.0)) / 0.5);
    double pi_b = 1 - normal_cdf(std::sqrt(30.0) * (std::exp(-0.5) - std::exp(-2.0)) / 0.5);
    CHECK(r.boundary_a_mass == doctest::Approx(pi_a).epsilon(1e-12).scale(1e-300));
    CHECK(r.boundary_b_mass == doctest::Approx(pi_b).epsilon(1e-10));
}

TEST_CASE("regions partition the stage-1 sample space")
{
    for (Family f : kFamilies)
    {
        auto const m = default_model(f);
        for (int n1 : {1, 5, 30, 120})
        {
            auto r = design_fisher_info(m, config(n1, 400), 1);
            CHECK(std::abs(r.boundary_a_mass + r.boundary_b_mass + r.interior_mass - 1)
                  <= 1e-10);
            CHECK(r.boundary_a_mass >= 0);
            CHECK(r.boundary_b_mass >= 0);
            CHECK(r.boundary_a_mass + r.boundary_b_mass <= 1);
            CHECK(r.total > 0);
        }
    }
}

TEST_CASE("design information against Monte Carlo")
{
    struct Case
    {
        Family f;
        int n1;
        int n;
    };
    for (auto [f, n1, n] : {Case{Family::logistic_location, 30, 100},
                            Case{Family::logistic_scale, 30, 400},
                            Case{Family::exponential_location, 30, 100},
                            Case{Family::exponential_scale, 30, 500},
                            Case{Family::logistic_location, 3, 100}})
    {
        CAPTURE(to_string(f));
        CAPTURE(n1);
        auto const m = default_model(f);
        auto const c = config(n1, n);
        auto q = design_fisher_info(m, c, 1).total;
        auto mc = mc_design_info(m, c, 1, 1000000, 99);
        CHECK(std::abs(q - mc.mean) <= 3 * mc.se + 1e-12 * q);
    }
}

TEST_CASE("both entry points agree")
{
    auto const m = default_model(Family::logistic_scale);
    AdaptiveDoseMap map(m, 2, kInterval);
    CHECK(design_fisher_info(map, 30, 370, 0.5, 1).total
          == design_fisher_info(m, config(30, 400), 1).total);
}

TEST_CASE("quadrature is stable under node doubling")
{
    for (Family f : kFamilies)
    {
        auto const m = default_model(f);
        for (int n1 : {2, 17, 60})
        {
            double a = design_fisher_info(m, config(n1, 400), 1, 201).total;
            double b = design_fisher_info(m, config(n1, 400), 1, 401).total;
            CHECK(a == doctest::Approx(b).epsilon(1e-9));
        }
    }
}

TEST_CASE("n1 search matches a breakpoint-free Riemann oracle")
{
    struct Case
    {
        Family f;
        int n;
    };
    for (auto [f, n] : {Case{Family::logistic_location, 100},
                        Case{Family::exponential_scale, 500},
                        Case{Family::logistic_scale, 400}})
    {
        CAPTURE(to_string(f));
        auto const m = default_model(f);
        auto search = optimal_n1(m, config(1, n), 1);
        REQUIRE(search.trace.size() == static_cast<std::size_t>(n - 1));

        int best = 1;
        double best_val = -1;
        int lo = std::max(1, search.n1_star - 8);
        int hi = std::min(n - 1, search.n1_star + 8);
        for (int n1 = lo; n1 <= hi; ++n1)
        {
            double v = riemann_design_info(m, config(n1, n), 200000);
            CHECK(v == doctest::Approx(search.trace[n1 - 1].total).epsilon(1e-6));
            if (v > best_val)
            {
                best_val = v;
                best = n1;
            }
        }
        CHECK(best == search.n1_star);
        for (auto const& t : search.trace)
            CHECK(t.total <= search.trace[search.n1_star - 1].total);
    }
}

TEST_CASE("n1 search is invariant to node doubling and thread count")
{
    for (Family f : kFamilies)
    {
        auto const m = default_model(f);
        auto a = optimal_n1(m, config(1, 200), 1, 201, 1);
        auto b = optimal_n1(m, config(1, 200), 1, 401, 1);
        auto c = optimal_n1(m, config(1, 200), 1, 201, 4);
        CHECK(a.n1_star == b.n1_star);
        CHECK(a.n1_star == c.n1_star);
        for (std::size_t i = 0; i < a.trace.size(); ++i)
            CHECK(a.trace[i].total == c.trace[i].total);
    }
}
