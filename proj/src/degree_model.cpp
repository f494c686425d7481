#include "seqdef/degree_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "seqdef/errors.hpp"
#include "seqdef/philox.hpp"
#include "seqdef/root_find.hpp"

namespace seqdef {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Integral of x^(p-1) over [a, b]; the p == 0 case is ln(b / a). expm1 keeps
// the result smooth as p crosses zero (alpha = 2 for the mean, alpha = 3 for
// the second moment).
double power_integral(double p, double a, double b)
{
    const double log_ratio = std::log(b / a);
    if (p == 0.0) return log_ratio;
    return std::pow(a, p) * std::expm1(p * log_ratio) / p;
}

double poisson_log_pmf(double mean, int k)
{
    return -mean + k * std::log(mean) - std::lgamma(k + 1.0);
}

void require(bool condition, const char* message)
{
    if (!condition) throw std::invalid_argument(message);
}

// Mass and first moment of the continuous sampling density over [a, b].
struct SegmentIntegrals {
    double mass;
    double first;
};

SegmentIntegrals power_law_segment(double alpha, double c1, double a, double b)
{
    return {c1 * power_integral(1.0 - alpha, a, b), c1 * power_integral(2.0 - alpha, a, b)};
}

SegmentIntegrals exponential_segment(double beta, double k_min, double z, double a, double b)
{
    const double ea = std::exp(-(a - k_min) / beta);
    const double eb = std::exp(-(b - k_min) / beta);
    return {(ea - eb) / z, ((a + beta) * ea - (b + beta) * eb) / z};
}

template <typename Segment>
std::vector<double> kernel_masses(int k_min, int k_max, Segment segment)
{
    std::vector<double> mass(static_cast<std::size_t>(k_max - k_min + 1), 0.0);
    for (int k = k_min; k <= k_max; ++k) {
        double m = 0.0;
        if (k > k_min) {
            const auto s = segment(k - 1.0, static_cast<double>(k));
            m += s.first - (k - 1.0) * s.mass;
        }
        if (k < k_max) {
            const auto s = segment(static_cast<double>(k), k + 1.0);
            m += (k + 1.0) * s.mass - s.first;
        }
        mass[static_cast<std::size_t>(k - k_min)] = std::max(0.0, m);
    }
    return mass;
}

}  // namespace

DegreeModel::DegreeModel(DegreeKind kind, int k_min, int k_max, std::uint64_t n)
    : kind_(std::move(kind)), k_min_(k_min), k_max_(k_max), n_(n)
{
    require(n_ >= 2, "network size must be at least 2");
    if (const auto* e = std::get_if<Empirical>(&kind_)) {
        require(!e->histogram.empty(), "empirical histogram is empty");
        double sum = 0.0;
        for (const auto& [degree, p] : e->histogram) {
            require(p >= 0.0 && std::isfinite(p), "histogram probabilities must be non-negative");
            require(degree >= k_min_ && degree <= k_max_, "histogram support outside [k_min, k_max]");
            sum += p;
        }
        require(std::abs(sum - 1.0) <= 1e-9, "histogram must sum to 1");
        require(k_min_ >= 1 && k_max_ >= k_min_, "degree support must satisfy 1 <= k_min <= k_max");
        return;
    }
    require(k_min_ >= 1, "k_min must be at least 1");
    require(k_max_ > k_min_, "degenerate support: k_max must exceed k_min");
    std::visit(overloaded{
                   [](const ErdosRenyi& m) {
                       require(m.mean_degree > 0.0 && std::isfinite(m.mean_degree),
                               "mean degree must be positive");
                   },
                   [](const PowerLaw& m) {
                       require(m.alpha > 1.0 && std::isfinite(m.alpha), "alpha must exceed 1");
                   },
                   [](const Exponential& m) {
                       require(m.beta > 0.0 && std::isfinite(m.beta), "beta must be positive");
                   },
                   [](const Empirical&) {},
               },
               kind_);
}

DegreeModel DegreeModel::erdos_renyi(double mean_degree, int k_min, int k_max, std::uint64_t n)
{
    return DegreeModel(ErdosRenyi{mean_degree}, k_min, k_max, n);
}

DegreeModel DegreeModel::power_law(double alpha, int k_min, int k_max, std::uint64_t n)
{
    return DegreeModel(PowerLaw{alpha}, k_min, k_max, n);
}

DegreeModel DegreeModel::exponential(double beta, int k_min, int k_max, std::uint64_t n)
{
    return DegreeModel(Exponential{beta}, k_min, k_max, n);
}

DegreeModel DegreeModel::empirical(std::map<int, double> histogram, std::uint64_t n)
{
    require(!histogram.empty(), "empirical histogram is empty");
    const int lo = histogram.begin()->first;
    const int hi = histogram.rbegin()->first;
    return DegreeModel(Empirical{std::move(histogram)}, lo, hi, n);
}

DegreeModel DegreeModel::with_n(std::uint64_t n) const
{
    return DegreeModel(kind_, k_min_, k_max_, n);
}

std::string DegreeModel::name() const
{
    return std::visit(overloaded{
                          [](const ErdosRenyi&) { return std::string("er"); },
                          [](const PowerLaw&) { return std::string("powerlaw"); },
                          [](const Exponential&) { return std::string("exponential"); },
                          [](const Empirical&) { return std::string("empirical"); },
                      },
                      kind_);
}

double DegreeModel::normalization() const
{
    if (const auto* p = std::get_if<PowerLaw>(&kind_))
        return 1.0 / power_integral(1.0 - p->alpha, k_min_, k_max_);
    if (const auto* e = std::get_if<Exponential>(&kind_)) return std::exp(k_min_ / e->beta);
    return 1.0;
}

double DegreeModel::density(double k) const
{
    return std::visit(
        overloaded{
            [&](const ErdosRenyi& m) {
                const double r = std::round(k);
                return r < 0 ? 0.0 : std::exp(poisson_log_pmf(m.mean_degree, static_cast<int>(r)));
            },
            [&](const PowerLaw& m) {
                if (k < k_min_ || k > k_max_) return 0.0;
                return normalization() * std::pow(k, -m.alpha);
            },
            [&](const Exponential& m) {
                if (k < k_min_) return 0.0;
                return normalization() / m.beta * std::exp(-k / m.beta);
            },
            [&](const Empirical& m) {
                const auto it = m.histogram.find(static_cast<int>(std::lround(k)));
                return it == m.histogram.end() ? 0.0 : it->second;
            },
        },
        kind_);
}

namespace {

MomentSummary summary(double mean, double second)
{
    return {mean, second, mean > 0.0 ? second / mean : 0.0};
}

}  // namespace

MomentSummary moments(const DegreeModel& model)
{
    const double lo = model.k_min();
    const double hi = model.k_max();
    return std::visit(overloaded{
                          [](const ErdosRenyi& m) {
                              const double k = m.mean_degree;
                              return summary(k, k * k + k);
                          },
                          [&](const PowerLaw& m) {
                              const double c1 = model.normalization();
                              return summary(c1 * power_integral(2.0 - m.alpha, lo, hi),
                                             c1 * power_integral(3.0 - m.alpha, lo, hi));
                          },
                          [&](const Exponential& m) {
                              const double b = m.beta;
                              return summary(lo + b, lo * lo + 2.0 * lo * b + 2.0 * b * b);
                          },
                          [](const Empirical& m) {
                              double first = 0.0, second = 0.0;
                              for (const auto& [k, p] : m.histogram) {
                                  first += k * p;
                                  second += static_cast<double>(k) * k * p;
                              }
                              return summary(first, second);
                          },
                      },
                      model.kind());
}

MomentSummary moments_from_degrees(std::span<const std::uint32_t> degrees)
{
    if (degrees.empty()) return {};
    double first = 0.0, second = 0.0;
    for (const auto d : degrees) {
        first += d;
        second += static_cast<double>(d) * d;
    }
    const double n = static_cast<double>(degrees.size());
    return summary(first / n, second / n);
}

bool giant_component_exists(const DegreeModel& model)
{
    return moments(model).tau > 2.0;
}

MomentSummary thin(const MomentSummary& original, double q)
{
    require(q >= 0.0 && q <= 1.0, "removal fraction must lie in [0, 1]");
    const double keep = 1.0 - q;
    return summary(keep * original.mean_degree,
                   keep * keep * original.second_moment + q * keep * original.mean_degree);
}

MomentSummary thin(const DegreeModel& model, double q)
{
    return thin(moments(model), q);
}

double DiscretePmf::total() const
{
    return std::accumulate(mass.begin(), mass.end(), 0.0);
}

MomentSummary DiscretePmf::moments() const
{
    double first = 0.0, second = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        const double k = first_degree + static_cast<double>(i);
        first += k * mass[i];
        second += k * k * mass[i];
    }
    return summary(first, second);
}

DiscretePmf discretize(const DegreeModel& model)
{
    const int lo = model.k_min();
    const int hi = model.k_max();
    return std::visit(
        overloaded{
            [&](const ErdosRenyi& m) {
                DiscretePmf pmf{0, std::vector<double>(static_cast<std::size_t>(hi) + 1)};
                for (int k = 0; k <= hi; ++k)
                    pmf.mass[static_cast<std::size_t>(k)] =
                        std::exp(poisson_log_pmf(m.mean_degree, k));
                const double z = pmf.total();
                for (auto& p : pmf.mass) p /= z;
                return pmf;
            },
            [&](const PowerLaw& m) {
                const double c1 = model.normalization();
                return DiscretePmf{lo, kernel_masses(lo, hi, [&](double a, double b) {
                                       return power_law_segment(m.alpha, c1, a, b);
                                   })};
            },
            [&](const Exponential& m) {
                const double z = -std::expm1(-(hi - lo) / m.beta);
                return DiscretePmf{lo, kernel_masses(lo, hi, [&](double a, double b) {
                                       return exponential_segment(m.beta, lo, z, a, b);
                                   })};
            },
            [&](const Empirical& m) {
                DiscretePmf pmf{lo, std::vector<double>(static_cast<std::size_t>(hi - lo) + 1)};
                for (const auto& [k, p] : m.histogram) pmf.mass[static_cast<std::size_t>(k - lo)] = p;
                return pmf;
            },
        },
        model.kind());
}

std::vector<std::uint32_t> sample_degree_sequence(const DegreeModel& model, std::uint64_t n,
                                                  std::uint64_t seed)
{
    require(n >= 2, "need at least two degrees");
    const DiscretePmf pmf = discretize(model);
    std::vector<double> cumulative(pmf.mass.size());
    std::partial_sum(pmf.mass.begin(), pmf.mass.end(), cumulative.begin());

    RandomStream rng(seed, 0);
    const auto draw = [&] {
        const double u = rng.uniform01() * cumulative.back();
        auto idx = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        idx = std::min(idx, cumulative.size() - 1);
        return static_cast<std::uint32_t>(pmf.first_degree + static_cast<int>(idx));
    };

    std::vector<std::uint32_t> degrees(n);
    std::uint64_t total = 0;
    for (auto& d : degrees) {
        d = draw();
        total += d;
    }
    if (total % 2 == 0) return degrees;

    auto& last = degrees.back();
    const std::uint64_t others = total - last;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        last = draw();
        if ((others + last) % 2 == 0) return degrees;
    }
    // Every redraw kept the parity (e.g. an all-odd table); step to a neighbor
    // degree that has mass.
    for (const int delta : {1, -1}) {
        const int k = static_cast<int>(last) + delta;
        if (k >= pmf.first_degree && k <= pmf.last_degree() &&
            pmf.mass[static_cast<std::size_t>(k - pmf.first_degree)] > 0.0) {
            last = static_cast<std::uint32_t>(k);
            return degrees;
        }
    }
    throw NumericalError("cannot draw a degree sequence with even sum from this distribution");
}

DegreeModel load_degree_histogram(const std::filesystem::path& path, std::uint64_t n)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open degree histogram: " + path.string());
    std::map<int, double> histogram;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string degree_text, prob_text, extra;
        if (!(fields >> degree_text)) continue;
        if (!(fields >> prob_text) || (fields >> extra))
            throw ParseError(path.string(), line_no, "expected \"degree probability\"");
        std::size_t used_d = 0, used_p = 0;
        int degree = 0;
        double p = 0.0;
        try {
            degree = std::stoi(degree_text, &used_d);
            p = std::stod(prob_text, &used_p);
        } catch (const std::exception&) {
            throw ParseError(path.string(), line_no, "not a number");
        }
        if (used_d != degree_text.size() || used_p != prob_text.size())
            throw ParseError(path.string(), line_no, "not a number");
        if (!histogram.emplace(degree, p).second)
            throw ParseError(path.string(), line_no, "duplicate degree " + degree_text);
    }
    return DegreeModel::empirical(std::move(histogram), n);
}

double power_law_alpha_for_mean(double mean, int k_min, int k_max)
{
    const double lo = k_min, hi = k_max;
    const auto residual = [&](double alpha) {
        return power_integral(2.0 - alpha, lo, hi) / power_integral(1.0 - alpha, lo, hi) - mean;
    };
    return bisect(residual, 1.0 + 1e-9, 100.0);
}

}  // namespace seqdef
