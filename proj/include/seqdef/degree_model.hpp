#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace seqdef {

inline constexpr int kDefaultMinDegree = 1;
inline constexpr int kDefaultMaxDegree = 1000;
inline constexpr std::uint64_t kDefaultNodeCount = 10000;

/// Poisson degrees with the given mean (Erdos-Renyi in the large-N limit).
struct ErdosRenyi {
    double mean_degree;
};

/// P(k) = c1 * k^-alpha on [k_min, k_max].
struct PowerLaw {
    double alpha;
};

/// P(k) = c2 / beta * exp(-k / beta) on [k_min, inf).
struct Exponential {
    double beta;
};

/// Explicit degree -> probability table.
struct Empirical {
    std::map<int, double> histogram;
};

using DegreeKind = std::variant<ErdosRenyi, PowerLaw, Exponential, Empirical>;

/// A degree distribution together with its support and the network size N.
/// Immutable once constructed; the constructor enforces every invariant and
/// throws std::invalid_argument otherwise.
class DegreeModel {
public:
    DegreeModel(DegreeKind kind, int k_min = kDefaultMinDegree, int k_max = kDefaultMaxDegree,
                std::uint64_t n = kDefaultNodeCount);

    static DegreeModel erdos_renyi(double mean_degree, int k_min = kDefaultMinDegree,
                                   int k_max = kDefaultMaxDegree,
                                   std::uint64_t n = kDefaultNodeCount);
    static DegreeModel power_law(double alpha, int k_min = kDefaultMinDegree,
                                 int k_max = kDefaultMaxDegree, std::uint64_t n = kDefaultNodeCount);
    static DegreeModel exponential(double beta, int k_min = kDefaultMinDegree,
                                   int k_max = kDefaultMaxDegree,
                                   std::uint64_t n = kDefaultNodeCount);
    /// Support is taken from the smallest and largest degree in the table.
    static DegreeModel empirical(std::map<int, double> histogram,
                                 std::uint64_t n = kDefaultNodeCount);

    const DegreeKind& kind() const { return kind_; }
    int k_min() const { return k_min_; }
    int k_max() const { return k_max_; }
    std::uint64_t n() const { return n_; }
    std::string name() const;

    /// c1 for power-law, c2 (large-k_max limit) for exponential, 1 otherwise.
    double normalization() const;
    /// Continuous density used by the analytic formulas; Poisson pmf for ER
    /// and the table entry for empirical models.
    double density(double k) const;

    /// Same kind and support with a different network size.
    DegreeModel with_n(std::uint64_t n) const;

private:
    DegreeKind kind_;
    int k_min_;
    int k_max_;
    std::uint64_t n_;
};

struct MomentSummary {
    double mean_degree = 0.0;
    double second_moment = 0.0;
    /// E[K^2] / E[K]; reported as 0 for an empty network.
    double tau = 0.0;
};

MomentSummary moments(const DegreeModel& model);
MomentSummary moments_from_degrees(std::span<const std::uint32_t> degrees);

/// Molloy-Reed: a giant component exists iff tau > 2.
bool giant_component_exists(const DegreeModel& model);

/// Moments after removing each node independently with probability q.
MomentSummary thin(const MomentSummary& original, double q);
MomentSummary thin(const DegreeModel& model, double q);

/// Integer-valued distribution used for sampling. ER uses the Poisson pmf on
/// [0, k_max]; empirical models use their table. Power-law and exponential
/// models are discretized by splitting each continuous draw x between
/// floor(x) and floor(x) + 1 in proportion to its fractional part, which
/// keeps E[K] equal to the continuous mean.
struct DiscretePmf {
    int first_degree = 0;
    std::vector<double> mass;

    int last_degree() const { return first_degree + static_cast<int>(mass.size()) - 1; }
    double total() const;
    MomentSummary moments() const;
};

DiscretePmf discretize(const DegreeModel& model);

/// n i.i.d. draws from discretize(model) by inverse CDF on one uniform per
/// draw (stream 0 of `seed`). If the sum is odd the last entry is redrawn
/// until the parity flips.
std::vector<std::uint32_t> sample_degree_sequence(const DegreeModel& model, std::uint64_t n,
                                                  std::uint64_t seed);

/// Two columns "degree probability"; '#' starts a comment.
DegreeModel load_degree_histogram(const std::filesystem::path& path,
                                  std::uint64_t n = kDefaultNodeCount);

/// Power-law exponent whose continuous mean on [k_min, k_max] equals `mean`.
double power_law_alpha_for_mean(double mean, int k_min = kDefaultMinDegree,
                                int k_max = kDefaultMaxDegree);

}  // namespace seqdef
