#include "seqdef/attack.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "seqdef/philox.hpp"

namespace seqdef {

using Node = NetworkGraph::Node;

std::string_view to_string(AttackKind kind)
{
    switch (kind) {
    case AttackKind::Random: return "random";
    case AttackKind::Intentional: return "intentional";
    case AttackKind::Betweenness: return "betweenness";
    }
    return "unknown";
}

AttackKind parse_attack_kind(std::string_view text)
{
    if (text == "random") return AttackKind::Random;
    if (text == "intentional" || text == "degree") return AttackKind::Intentional;
    if (text == "betweenness") return AttackKind::Betweenness;
    throw std::invalid_argument("unknown attack scheme: " + std::string(text));
}

AttackPlan::AttackPlan(AttackKind kind, double q, std::uint64_t n) : kind_(kind), q_(q), n_(n)
{
    if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("attacked fraction must lie in (0, 1]");
    if (n < 1) throw std::invalid_argument("network size must be positive");
    const double x = static_cast<double>(n) * q;
    const double nearest = std::round(x);
    targeted_ = std::abs(x - nearest) <= 1e-9 * std::max(1.0, x)
                    ? static_cast<std::uint64_t>(nearest)
                    : static_cast<std::uint64_t>(std::ceil(x));
}

RemovalScheme removal_scheme_for(AttackKind kind)
{
    switch (kind) {
    case AttackKind::Random: return RemovalScheme::Random;
    case AttackKind::Intentional: return RemovalScheme::Degree;
    case AttackKind::Betweenness: return RemovalScheme::Betweenness;
    }
    throw std::invalid_argument("unknown attack kind");
}

namespace {

template <typename Score>
std::vector<Node> descending_order(std::size_t n, const Score& score)
{
    std::vector<Node> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](Node a, Node b) {
        const auto sa = score(a), sb = score(b);
        return sa != sb ? sa > sb : a < b;
    });
    return order;
}

}  // namespace

std::vector<Node> removal_order(const NetworkGraph& graph, RemovalScheme scheme, std::uint64_t seed,
                                std::uint64_t trial)
{
    const std::size_t n = graph.node_count();
    switch (scheme) {
    case RemovalScheme::Random: {
        std::vector<Node> order(n);
        std::iota(order.begin(), order.end(), 0u);
        RandomStream rng(seed, trial);
        shuffle(order, rng);
        return order;
    }
    case RemovalScheme::Degree:
        return descending_order(n, [&](Node v) { return graph.degree(v); });
    case RemovalScheme::Betweenness: {
        const auto score = betweenness(graph, false);
        return descending_order(n, [&](Node v) { return score[v]; });
    }
    }
    throw std::invalid_argument("unknown removal scheme");
}

RemovalProfile removal_profile(const NetworkGraph& graph, std::span<const Node> order)
{
    const std::size_t n = graph.node_count();
    if (order.size() != n) throw std::invalid_argument("removal order must list every node once");

    RemovalProfile profile;
    profile.lcc_size.assign(n + 1, 0);
    profile.tau.assign(n + 1, 0.0);

    // Re-insert nodes from the back of the order; after inserting order[i]
    // the present set is exactly the survivors of removing order[0..i).
    DisjointSets sets(n);
    std::vector<char> present(n, 0);
    std::vector<std::uint64_t> degree(n, 0);
    std::uint64_t sum_degree = 0, sum_degree_sq = 0;
    std::size_t lcc = 0;
    for (std::size_t i = n; i-- > 0;) {
        const Node v = order[i];
        if (present[v]) throw std::invalid_argument("removal order repeats a node");
        present[v] = 1;
        std::uint64_t dv = 0;
        lcc = std::max<std::size_t>(lcc, 1);
        for (const Node u : graph.neighbors(v)) {
            if (!present[u]) continue;
            sum_degree_sq += 2 * degree[u] + 1;
            ++degree[u];
            ++dv;
            lcc = std::max(lcc, sets.unite(u, v));
        }
        degree[v] = dv;
        sum_degree_sq += dv * dv;
        sum_degree += 2 * dv;
        profile.lcc_size[i] = lcc;
        profile.tau[i] = sum_degree == 0 ? 0.0
                                         : static_cast<double>(sum_degree_sq) /
                                               static_cast<double>(sum_degree);
    }
    return profile;
}

namespace {

std::vector<std::size_t> sample_counts(std::size_t n, double max_fraction, std::size_t step_count)
{
    if (step_count < 2) throw std::invalid_argument("step count must be at least 2");
    if (!(max_fraction >= 0.0 && max_fraction <= 1.0))
        throw std::invalid_argument("removal fraction must lie in [0, 1]");
    std::vector<std::size_t> counts(step_count);
    for (std::size_t j = 0; j < step_count; ++j) {
        const double f = max_fraction * static_cast<double>(j) / static_cast<double>(step_count - 1);
        counts[j] = std::min(n, static_cast<std::size_t>(std::llround(f * static_cast<double>(n))));
    }
    return counts;
}

RemovalCurve curve_from(const RemovalProfile& profile, RemovalScheme scheme, std::size_t n,
                        double max_fraction, const std::vector<std::size_t>& counts)
{
    RemovalCurve curve;
    curve.scheme = scheme;
    const std::size_t steps = counts.size();
    for (std::size_t j = 0; j < steps; ++j) {
        RemovalSample s;
        s.removed_fraction = max_fraction * static_cast<double>(j) / static_cast<double>(steps - 1);
        s.removed_count = counts[j];
        s.lcc_fraction = static_cast<double>(profile.lcc_size[counts[j]]) / static_cast<double>(n);
        s.remaining_tau = profile.tau[counts[j]];
        curve.samples.push_back(s);
    }
    return curve;
}

}  // namespace

RemovalCurve simulate_attack(const NetworkGraph& graph, RemovalScheme scheme, double max_fraction,
                             std::size_t step_count, std::uint64_t seed)
{
    const std::size_t n = graph.node_count();
    const auto counts = sample_counts(n, max_fraction, step_count);
    const auto order = removal_order(graph, scheme, seed, 0);
    return curve_from(removal_profile(graph, order), scheme, n, max_fraction, counts);
}

RemovalCurve simulate_attack(const NetworkGraph& graph, const AttackPlan& plan,
                             std::size_t step_count, std::uint64_t seed)
{
    return simulate_attack(graph, removal_scheme_for(plan.kind()), plan.q(), step_count, seed);
}

RemovalCurve mean_random_curve(const NetworkGraph& graph, double max_fraction,
                               std::size_t step_count, std::size_t trials, std::uint64_t seed)
{
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    const std::size_t n = graph.node_count();
    const auto counts = sample_counts(n, max_fraction, step_count);
    RemovalCurve mean;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto order = removal_order(graph, RemovalScheme::Random, seed, t);
        const auto curve =
            curve_from(removal_profile(graph, order), RemovalScheme::Random, n, max_fraction, counts);
        if (t == 0) {
            mean = curve;
            continue;
        }
        for (std::size_t j = 0; j < counts.size(); ++j) {
            mean.samples[j].lcc_fraction += curve.samples[j].lcc_fraction;
            mean.samples[j].remaining_tau += curve.samples[j].remaining_tau;
        }
    }
    for (auto& s : mean.samples) {
        s.lcc_fraction /= static_cast<double>(trials);
        s.remaining_tau /= static_cast<double>(trials);
    }
    return mean;
}

QcEstimate estimate_qc(const NetworkGraph& graph, RemovalScheme scheme, std::size_t trials,
                       std::uint64_t seed)
{
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    const std::size_t n = graph.node_count();
    QcEstimate estimate;
    const std::size_t runs = scheme == RemovalScheme::Random ? trials : 1;
    for (std::size_t t = 0; t < runs; ++t) {
        const auto order = removal_order(graph, scheme, seed, t);
        const auto profile = removal_profile(graph, order);
        if (profile.tau[0] <= 2.0) {
            estimate.initially_subcritical = true;
            estimate.qc = 0.0;
            estimate.per_trial.assign(1, 0.0);
            return estimate;
        }
        std::size_t m = 1;
        while (m < n && profile.tau[m] > 2.0) ++m;
        estimate.per_trial.push_back(static_cast<double>(m) / static_cast<double>(n));
    }
    estimate.qc = std::accumulate(estimate.per_trial.begin(), estimate.per_trial.end(), 0.0) /
                  static_cast<double>(estimate.per_trial.size());
    return estimate;
}

ExhaustiveQc estimate_qc_exhaustive(const NetworkGraph& graph)
{
    const std::size_t n = graph.node_count();
    if (n == 0 || n > 12) throw std::invalid_argument("exhaustive scan supports 1..12 nodes");
    std::vector<std::uint32_t> adjacency(n, 0);
    for (const auto& [u, v] : graph.edges()) {
        adjacency[u] |= 1u << v;
        adjacency[v] |= 1u << u;
    }
    ExhaustiveQc out;
    out.min_tau_by_size.assign(n + 1, std::numeric_limits<double>::infinity());
    const std::uint32_t all = (1u << n) - 1;
    for (std::uint32_t removed = 0; removed <= all; ++removed) {
        const std::uint32_t alive = all & ~removed;
        std::uint64_t sum = 0, sum_sq = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (!(alive >> v & 1u)) continue;
            const auto d = static_cast<std::uint64_t>(std::popcount(adjacency[v] & alive));
            sum += d;
            sum_sq += d * d;
        }
        const double tau = sum == 0 ? 0.0 : static_cast<double>(sum_sq) / static_cast<double>(sum);
        auto& slot = out.min_tau_by_size[static_cast<std::size_t>(std::popcount(removed))];
        slot = std::min(slot, tau);
    }
    if (out.min_tau_by_size[0] <= 2.0) {
        out.initially_subcritical = true;
        return out;
    }
    for (std::size_t m = 1; m <= n; ++m) {
        if (out.min_tau_by_size[m] <= 2.0) {
            out.qc = static_cast<double>(m) / static_cast<double>(n);
            break;
        }
    }
    return out;
}

}  // namespace seqdef
