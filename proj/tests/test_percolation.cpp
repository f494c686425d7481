#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "seqdef/degree_model.hpp"
#include "seqdef/errors.hpp"
#include "seqdef/percolation.hpp"

using namespace seqdef;

namespace {

// Binomially thinned histogram, P'(k) = sum_j P(j) C(j, k) (1-q)^k q^(j-k),
// and its tau; written out directly rather than through the moment identities.
double thinned_tau(const std::map<int, double>& histogram, double q)
{
    int top = histogram.rbegin()->first;
    std::vector<double> p(static_cast<std::size_t>(top) + 1, 0.0);
    for (const auto& [j, pj] : histogram)
        for (int k = 0; k <= j; ++k)
            p[static_cast<std::size_t>(k)] +=
                pj * std::tgamma(j + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(j - k + 1.0)) *
                std::pow(1 - q, k) * std::pow(q, j - k);
    double m1 = 0, m2 = 0;
    for (int k = 0; k <= top; ++k) {
        m1 += k * p[static_cast<std::size_t>(k)];
        m2 += double(k) * k * p[static_cast<std::size_t>(k)];
    }
    return m1 > 0 ? m2 / m1 : 0.0;
}

double poisson(double mean, int k)
{
    double v = std::exp(-mean);
    for (int i = 1; i <= k; ++i) v *= mean / i;
    return v;
}

}  // namespace

TEST_SUITE("percolation")
{
    TEST_CASE("random-attack thresholds")
    {
        CHECK(qc_random(DegreeModel::erdos_renyi(4.0)).qc == doctest::Approx(0.75).epsilon(1e-12));
        for (const double k : {2.0, 4.0, 8.0})
            CHECK(std::abs(qc_random(DegreeModel::erdos_renyi(k)).qc - (1 - 1 / k)) < 1e-12);
        CHECK(std::abs(qc_random(DegreeModel::power_law(2.1)).qc - 0.9909) < 1e-3);
        CHECK(std::abs(qc_random(DegreeModel::power_law(2.5)).qc - 0.9673) < 1e-3);
        CHECK(std::abs(qc_random(DegreeModel::exponential(1.63)).qc - 0.6212) < 1e-4);
        const auto r = qc_random(DegreeModel::erdos_renyi(4.0));
        CHECK(r.scheme == ThresholdScheme::Random);
        CHECK(r.method == SolveMethod::ClosedForm);
        CHECK_FALSE(r.cutoff_degree.has_value());
    }

    TEST_CASE("subcritical networks have no random-attack threshold")
    {
        try {
            qc_random(DegreeModel::erdos_renyi(1.0));
            FAIL("expected NumericalError");
        } catch (const NumericalError& e) {
            CHECK(std::string(e.what()).find("already disconnected") != std::string::npos);
        }
    }

    TEST_CASE("the threshold puts thinned tau exactly at 2")
    {
        for (const auto& model :
             {DegreeModel::erdos_renyi(3.3), DegreeModel::power_law(2.1), DegreeModel::power_law(2.7),
              DegreeModel::exponential(1.63), DegreeModel::exponential(3.0, 2)}) {
            CHECK(thin(model, qc_random(model).qc).tau == doctest::Approx(2.0).epsilon(1e-8));
        }
    }

    TEST_CASE("random-attack threshold grows with mean degree")
    {
        double er = 0, pl = 0, ex = 0;
        for (double mean = 3.0; mean <= 10.0; mean += 0.5) {
            const double a = qc_random(DegreeModel::erdos_renyi(mean)).qc;
            const double b = qc_random(DegreeModel::power_law(power_law_alpha_for_mean(mean))).qc;
            const double c = qc_random(DegreeModel::exponential(mean - 1)).qc;
            CHECK(a > er);
            CHECK(b > pl);
            CHECK(c > ex);
            er = a;
            pl = b;
            ex = c;
        }
    }

    TEST_CASE("empirical thresholds match a direct scan of the thinned distribution")
    {
        const std::vector<std::map<int, double>> tables = {
            {{1, 0.3}, {2, 0.3}, {5, 0.4}},
            {{1, 0.5}, {3, 0.2}, {4, 0.1}, {9, 0.2}},
            {{2, 0.1}, {3, 0.2}, {4, 0.3}, {5, 0.2}, {6, 0.1}, {8, 0.1}},
        };
        for (const auto& h : tables) {
            const double qc = qc_random(DegreeModel::empirical(h)).qc;
            double scanned = 1.0;
            for (int i = 0; i <= 10000; ++i) {
                if (thinned_tau(h, i * 1e-4) <= 2.0) {
                    scanned = i * 1e-4;
                    break;
                }
            }
            CHECK(std::abs(qc - scanned) <= 1e-4);
        }
    }

    TEST_CASE("cutoff degree")
    {
        const auto pl = DegreeModel::power_law(2.5, 1, 1000, 1'000'000'000'000'000ULL);
        CHECK(cutoff_degree(pl, 0.0557) == doctest::Approx(std::pow(0.0557, -1 / 1.5)).epsilon(1e-9));
        CHECK(cutoff_degree(pl, 0.0557) == doctest::Approx(6.854).epsilon(1e-3));
        const auto ex = DegreeModel::exponential(1.63, 1, 1000, 1'000'000'000'000'000ULL);
        CHECK(cutoff_degree(ex, std::exp(-1.0)) == doctest::Approx(2.63).epsilon(1e-9));
        for (const auto& model : {pl, ex, DegreeModel::erdos_renyi(4.0)}) {
            double previous = INFINITY;
            for (int i = 1; i < 100; ++i) {
                const double k = cutoff_degree(model, i / 100.0);
                CHECK(k <= previous);
                CHECK(k >= model.k_min());
                CHECK(k <= model.k_max());
                previous = k;
            }
        }
        CHECK(cutoff_degree(DegreeModel::power_law(2.5, 1, 1000, 10), 0.95) == 1.0);
        CHECK_THROWS_AS(cutoff_degree(pl, 0.0), std::invalid_argument);
    }

    TEST_CASE("power-law intentional root")
    {
        const auto model = DegreeModel::power_law(2.5);
        const auto r = qc_intentional(model);
        const double s = (3 + std::sqrt(5.0)) / 2;  // root of the quadratic in sqrt(x)
        REQUIRE(r.cutoff_degree.has_value());
        CHECK(*r.cutoff_degree == doctest::Approx(s * s).epsilon(1e-12));
        CHECK(std::abs(r.qc - 0.0557) < 1e-3);
        CHECK(std::abs(power_law_intentional_residual(2.5, 1, *r.cutoff_degree)) < 1e-10);
        CHECK(std::abs(r.qc - std::pow(*r.cutoff_degree, -1.5)) < 1e-10);
        CHECK(*r.link_deletion_prob == doctest::Approx(std::pow(s * s, -0.5)));
        CHECK(r.method == SolveMethod::RootSolve);

        const auto www = qc_intentional(DegreeModel::power_law(2.1));
        CHECK(std::abs(power_law_intentional_residual(2.1, 1, *www.cutoff_degree)) < 1e-10);
        CHECK(std::abs(www.qc - std::pow(*www.cutoff_degree, -1.1)) < 1e-10);
    }

    TEST_CASE("exponential intentional root")
    {
        for (const bool exact : {false, true}) {
            const auto model = DegreeModel::exponential(1.63, 1, 1000, 2783);
            const auto r = qc_intentional(model, {exact});
            CHECK(r.qc > 0.0);
            CHECK(r.qc < 1.0);
            CHECK(std::abs(exponential_intentional_residual(model, r.qc, {exact})) < 1e-10);
        }
    }

    TEST_CASE("ER intentional threshold solves the Poisson-tail relation")
    {
        const double mean = 4.0;
        const std::uint64_t n = 10000;
        const auto r = qc_intentional(DegreeModel::erdos_renyi(mean, 1, 1000, n));
        REQUIRE(r.cutoff_degree.has_value());
        CHECK(*r.link_deletion_prob == doctest::Approx(0.75).epsilon(1e-12));
        // independent evaluation at the two integers around the cutoff
        const int k = static_cast<int>(std::floor(*r.cutoff_degree));
        auto tail = [&](int from) {
            double s = 0;
            for (int j = from; j < 200; ++j) s += poisson(mean, j);
            return s;
        };
        auto link_deletion = [&](int kk) { return tail(kk) - 2.0 / n + poisson(mean, kk - 1); };
        CHECK(link_deletion(k) >= 0.75);
        CHECK(link_deletion(k + 1) < 0.75);
        CHECK(r.qc <= tail(k) - 1.0 / n);
        CHECK(r.qc >= tail(k + 1) - 1.0 / n);
    }

    TEST_CASE("intentional attack beats random attack at equal mean degree")
    {
        for (const double mean : {2.0, 3.0, 3.4, 4.0, 6.0}) {
            CAPTURE(mean);
            for (const auto& model :
                 {DegreeModel::erdos_renyi(mean), DegreeModel::power_law(power_law_alpha_for_mean(mean)),
                  DegreeModel::exponential(mean - 1)}) {
                if (!giant_component_exists(model)) continue;
                CHECK(qc_intentional(model).qc < qc_random(model).qc);
            }
        }
    }

    TEST_CASE("unsupported or rootless intentional cases")
    {
        CHECK_THROWS_AS(qc_intentional(DegreeModel::empirical({{1, 0.5}, {4, 0.5}})),
                        std::invalid_argument);
        CHECK_THROWS_AS(qc_intentional(DegreeModel::power_law(1.8)), NoRootError);
        CHECK_THROWS_AS(qc_intentional(DegreeModel::erdos_renyi(0.5)), NumericalError);
    }

    TEST_CASE("report budget")
    {
        CHECK(report_budget(325729, qc_random(DegreeModel::power_law(2.1)).qc) == 322780);
        CHECK(report_budget(10, 0.3) == 3);
        CHECK(report_budget(10, 0.31) == 4);
        CHECK(report_budget(10, 0.0) == 0);
    }
}
