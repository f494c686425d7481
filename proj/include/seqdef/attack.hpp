#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "seqdef/attack_plan.hpp"
#include "seqdef/graph.hpp"

namespace seqdef {

/// Node removal order. Degree and betweenness orders are computed once on
/// the intact graph (descending score, ties by lower index).
enum class RemovalScheme { Random, Degree, Betweenness };

RemovalScheme removal_scheme_for(AttackKind kind);

struct RemovalSample {
    double removed_fraction = 0.0;
    std::size_t removed_count = 0;
    /// Largest component size over the original node count.
    double lcc_fraction = 0.0;
    /// E[K^2]/E[K] of the surviving nodes' degrees (0 once no edge survives).
    double remaining_tau = 0.0;
};

struct RemovalCurve {
    RemovalScheme scheme = RemovalScheme::Random;
    std::vector<RemovalSample> samples;
};

/// Full removal order for one realization; random orders use stream `trial` of `seed`.
std::vector<NetworkGraph::Node> removal_order(const NetworkGraph& graph, RemovalScheme scheme,
                                              std::uint64_t seed, std::uint64_t trial = 0);

/// Largest component and tau after removing the first m nodes of `order`,
/// for every m in [0, n]; built in one reverse union-find pass.
struct RemovalProfile {
    std::vector<std::size_t> lcc_size;
    std::vector<double> tau;
};

RemovalProfile removal_profile(const NetworkGraph& graph, std::span<const NetworkGraph::Node> order);

/// Removes nodes in scheme order and samples the curve at `step_count` evenly
/// spaced fractions of [0, max_fraction]; the count removed at fraction f is
/// round(f N).
RemovalCurve simulate_attack(const NetworkGraph& graph, RemovalScheme scheme, double max_fraction,
                             std::size_t step_count, std::uint64_t seed);
RemovalCurve simulate_attack(const NetworkGraph& graph, const AttackPlan& plan,
                             std::size_t step_count, std::uint64_t seed);

/// Random-scheme curve averaged over `trials` realizations (streams 0..trials-1).
RemovalCurve mean_random_curve(const NetworkGraph& graph, double max_fraction,
                               std::size_t step_count, std::size_t trials, std::uint64_t seed);

struct QcEstimate {
    double qc = 0.0;
    /// tau <= 2 before any removal; qc is reported as 0.
    bool initially_subcritical = false;
    std::vector<double> per_trial;
};

/// Smallest removed fraction m/N at which the survivors' tau drops to <= 2,
/// averaged over trials (targeted orders are deterministic, so their trials agree).
QcEstimate estimate_qc(const NetworkGraph& graph, RemovalScheme scheme, std::size_t trials,
                       std::uint64_t seed);

struct ExhaustiveQc {
    double qc = 0.0;
    bool initially_subcritical = false;
    /// Smallest survivor tau over all removal sets of each size.
    std::vector<double> min_tau_by_size;
};

/// Scans every removal set of a graph with at most 12 nodes; qc is the
/// smallest fraction for which some set brings tau to <= 2.
ExhaustiveQc estimate_qc_exhaustive(const NetworkGraph& graph);

}  // namespace seqdef
