#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "seqdef/degree_model.hpp"
#include "seqdef/errors.hpp"

using namespace seqdef;

namespace {

// Composite Simpson rule in u = ln k; smooth integrands make this accurate
// to ~1e-12 relative with a few thousand panels.
double integrate_log(const std::function<double(double)>& f, double a, double b, int panels = 20000)
{
    const double ua = std::log(a), ub = std::log(b), h = (ub - ua) / panels;
    double sum = 0.0;
    for (int i = 0; i <= panels; ++i) {
        const double u = ua + i * h;
        const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * f(std::exp(u)) * std::exp(u);
    }
    return sum * h / 3.0;
}

MomentSummary power_law_oracle(double alpha, double k_min, double k_max)
{
    const double z = integrate_log([&](double k) { return std::pow(k, -alpha); }, k_min, k_max);
    const double m1 = integrate_log([&](double k) { return std::pow(k, 1 - alpha); }, k_min, k_max) / z;
    const double m2 = integrate_log([&](double k) { return std::pow(k, 2 - alpha); }, k_min, k_max) / z;
    return {m1, m2, m2 / m1};
}

}  // namespace

TEST_SUITE("degree_model")
{
    TEST_CASE("ER moments follow the Poisson identities")
    {
        const auto m = moments(DegreeModel::erdos_renyi(4.0));
        CHECK(m.mean_degree == 4.0);
        CHECK(m.second_moment == 20.0);
        CHECK(m.tau == 5.0);
    }

    TEST_CASE("power-law moments match numeric integration, including alpha = 2 and 3")
    {
        for (const double alpha : {1.5, 2.0, 2.1, 2.5, 3.0, 3.5}) {
            CAPTURE(alpha);
            const auto model = DegreeModel::power_law(alpha, 1, 1000);
            const auto m = moments(model);
            const auto oracle = power_law_oracle(alpha, 1, 1000);
            CHECK(m.mean_degree == doctest::Approx(oracle.mean_degree).epsilon(1e-10));
            CHECK(m.second_moment == doctest::Approx(oracle.second_moment).epsilon(1e-10));
            CHECK(m.second_moment >= m.mean_degree);
            // normalization reproduces unit mass
            const double mass = integrate_log([&](double k) { return model.density(k); }, 1, 1000);
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
        }
        CHECK(moments(DegreeModel::power_law(2.5, 1, 1000)).tau ==
              doctest::Approx(31.6228).epsilon(1e-5));
    }

    TEST_CASE("exponential moments use the large-kmax limit")
    {
        const auto model = DegreeModel::exponential(1.63, 1);
        const auto m = moments(model);
        CHECK(m.mean_degree == doctest::Approx(2.63).epsilon(1e-12));
        CHECK(m.second_moment == doctest::Approx(9.5738).epsilon(1e-12));
        CHECK(m.tau == doctest::Approx(3.64023).epsilon(1e-5));
        CHECK(model.normalization() == doctest::Approx(std::exp(1 / 1.63)).epsilon(1e-14));
        // tail beyond kmax contributes nothing measurable
        const double mass = integrate_log([&](double k) { return model.density(k); }, 1, 1000);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    }

    TEST_CASE("empirical moments sum the table")
    {
        const auto model = DegreeModel::empirical({{1, 0.5}, {3, 0.5}});
        const auto m = moments(model);
        CHECK(m.mean_degree == doctest::Approx(2.0));
        CHECK(m.second_moment == doctest::Approx(5.0));
        CHECK(model.k_min() == 1);
        CHECK(model.k_max() == 3);
    }

    TEST_CASE("invariants are enforced")
    {
        CHECK_THROWS_AS(DegreeModel::power_law(1.0), std::invalid_argument);
        CHECK_THROWS_AS(DegreeModel::power_law(2.5, 5, 5), std::invalid_argument);
        CHECK_THROWS_AS(DegreeModel::power_law(2.5, 0, 10), std::invalid_argument);
        CHECK_THROWS_AS(DegreeModel::exponential(0.0), std::invalid_argument);
        CHECK_THROWS_AS(DegreeModel::erdos_renyi(-1.0), std::invalid_argument);
        CHECK_THROWS_AS(DegreeModel::erdos_renyi(4.0, 1, 1000, 1), std::invalid_argument);
        CHECK_THROWS_AS(DegreeModel::empirical({}), std::invalid_argument);
        CHECK_THROWS_AS(DegreeModel::empirical({{1, 0.5}, {2, 0.4}}), std::invalid_argument);
        CHECK_THROWS_AS(DegreeModel::empirical({{0, 0.5}, {2, 0.5}}), std::invalid_argument);
    }

    TEST_CASE("giant component criterion is strict")
    {
        CHECK(giant_component_exists(DegreeModel::erdos_renyi(4.0)));
        CHECK_FALSE(giant_component_exists(DegreeModel::erdos_renyi(1.0)));
        CHECK(giant_component_exists(DegreeModel::exponential(1.63)));
    }

    TEST_CASE("thinning identities")
    {
        const auto er = DegreeModel::erdos_renyi(4.0);
        const auto full = moments(er);
        const auto none = thin(er, 0.0);
        CHECK(none.mean_degree == full.mean_degree);
        CHECK(none.second_moment == full.second_moment);
        const auto all = thin(er, 1.0);
        CHECK(all.mean_degree == 0.0);
        CHECK(all.second_moment == 0.0);
        CHECK(all.tau == 0.0);
        CHECK(thin(er, 0.75).tau == doctest::Approx(2.0).epsilon(1e-15));

        for (const auto& model : {DegreeModel::power_law(2.5), DegreeModel::exponential(1.63),
                                  DegreeModel::erdos_renyi(3.0)}) {
            const auto m0 = moments(model);
            double previous = m0.tau;
            for (int i = 1; i < 100; ++i) {
                const double q = i / 100.0;
                const auto t = thin(model, q);
                CHECK(t.mean_degree == doctest::Approx((1 - q) * m0.mean_degree).epsilon(1e-14));
                CHECK(t.second_moment ==
                      doctest::Approx((1 - q) * (1 - q) * m0.second_moment +
                                      q * (1 - q) * m0.mean_degree)
                          .epsilon(1e-14));
                CHECK(t.tau < previous);
                previous = t.tau;
            }
        }
        CHECK_THROWS_AS(thin(er, 1.5), std::invalid_argument);
    }

    TEST_CASE("discretized masses sum to one and keep the continuous mean")
    {
        for (const auto& model :
             {DegreeModel::erdos_renyi(4.0), DegreeModel::power_law(2.5), DegreeModel::power_law(2.1),
              DegreeModel::power_law(3.0), DegreeModel::exponential(1.63),
              DegreeModel::exponential(4.0, 2, 300)}) {
            CAPTURE(model.name());
            const auto pmf = discretize(model);
            CHECK(pmf.total() == doctest::Approx(1.0).epsilon(1e-9));
            for (const double p : pmf.mass) CHECK(p >= 0.0);
            if (model.name() != "er") {
                CHECK(pmf.first_degree == model.k_min());
                CHECK(pmf.last_degree() == model.k_max());
                CHECK(pmf.moments().mean_degree ==
                      doctest::Approx(moments(model).mean_degree).epsilon(1e-9));
            }
        }
    }

    TEST_CASE("ER samples concentrate on the mean")
    {
        const auto degrees = sample_degree_sequence(DegreeModel::erdos_renyi(4.0), 100000, 1);
        const double mean = std::accumulate(degrees.begin(), degrees.end(), 0.0) / degrees.size();
        CHECK(std::abs(mean - 4.0) < 0.05);
    }

    TEST_CASE("power-law samples have CCDF slope 1 - alpha")
    {
        const auto degrees = sample_degree_sequence(DegreeModel::power_law(2.5), 100000, 2);
        // least squares of log CCDF on log k over k in [5, 100]
        std::vector<double> xs, ys;
        for (int k = 5; k <= 100; ++k) {
            const auto tail = std::count_if(degrees.begin(), degrees.end(),
                                            [k](std::uint32_t d) { return d >= static_cast<std::uint32_t>(k); });
            xs.push_back(std::log(k));
            ys.push_back(std::log(static_cast<double>(tail) / degrees.size()));
        }
        const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
        const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        CHECK(std::abs(sxy / sxx + 1.5) < 0.1);
    }

    TEST_CASE("degree sums are even and draws are deterministic")
    {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto d = sample_degree_sequence(DegreeModel::power_law(2.5), 2, seed);
            REQUIRE(d.size() == 2);
            CHECK((d[0] + d[1]) % 2 == 0);
        }
        const auto a = sample_degree_sequence(DegreeModel::exponential(1.63), 1001, 5);
        const auto b = sample_degree_sequence(DegreeModel::exponential(1.63), 1001, 5);
        CHECK(a == b);
        CHECK(std::accumulate(a.begin(), a.end(), std::uint64_t{0}) % 2 == 0);
        for (const auto d : a) {
            CHECK(d >= 1);
            CHECK(d <= 1000);
        }
        CHECK_THROWS_AS(sample_degree_sequence(DegreeModel::erdos_renyi(4.0), 1, 1),
                        std::invalid_argument);
    }

    TEST_CASE("Monte-Carlo moments agree with the sampled distribution")
    {
        const std::uint64_t n = 1000000;
        for (const auto& model : {DegreeModel::erdos_renyi(4.0), DegreeModel::power_law(2.5),
                                  DegreeModel::exponential(1.63)}) {
            CAPTURE(model.name());
            const auto degrees = sample_degree_sequence(model, n, 17);
            double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
            for (const auto d : degrees) {
                const double x = d;
                s1 += x;
                s2 += x * x;
                s3 += x * x * x;
                s4 += x * x * x * x;
            }
            const double m1 = s1 / n, m2 = s2 / n, m4 = s4 / n;
            const double se1 = std::sqrt((m2 - m1 * m1) / n);
            const double se2 = std::sqrt((m4 - m2 * m2) / n);
            const auto target = discretize(model).moments();
            CHECK(std::abs(m1 - target.mean_degree) < 3 * se1);
            CHECK(std::abs(m2 - target.second_moment) < 3 * se2);
            (void)s3;
        }
    }

    TEST_CASE("histogram files")
    {
        const auto model = load_degree_histogram(SEQDEF_TEST_DATA "/histogram.txt", 500);
        CHECK(model.name() == "empirical");
        CHECK(model.n() == 500);
        CHECK(moments(model).mean_degree == doctest::Approx(0.2 + 0.6 + 1.5));
        try {
            load_degree_histogram(SEQDEF_TEST_DATA "/histogram_bad.txt");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }

    TEST_CASE("power-law exponent for a target mean")
    {
        const double alpha = power_law_alpha_for_mean(3.4);
        CHECK(moments(DegreeModel::power_law(alpha)).mean_degree == doctest::Approx(3.4).epsilon(1e-10));
    }
}
