#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "seqdef/degree_model.hpp"

namespace seqdef {

/// Undirected simple graph over dense node indices [0, node_count), stored
/// as sorted adjacency (CSR). Immutable after construction.
class NetworkGraph {
public:
    using Node = std::uint32_t;
    using Edge = std::pair<Node, Node>;

    NetworkGraph() = default;
    /// Throws std::invalid_argument on self-loops, repeated edges or
    /// out-of-range endpoints.
    NetworkGraph(std::size_t node_count, std::span<const Edge> edges);

    std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return targets_.size() / 2; }

    std::span<const Node> neighbors(Node v) const
    {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::uint32_t degree(Node v) const
    {
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }
    std::vector<std::uint32_t> degrees() const;
    /// Each edge once as (u, v) with u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

    /// Original node ids for ingested graphs (index -> id); empty otherwise.
    const std::vector<std::uint64_t>& labels() const { return labels_; }
    void set_labels(std::vector<std::uint64_t> labels);

private:
    std::vector<std::size_t> offsets_;
    std::vector<Node> targets_;
    std::vector<std::uint64_t> labels_;
};

struct ConfigurationOptions {
    /// Conflicting stub pairs (self-loops, repeats) are re-wired against
    /// random accepted edges for at most this many sweeps.
    int max_sweeps = 100;
    /// Throw instead of dropping stubs that are still in conflict.
    bool strict = false;
};

struct GeneratedGraph {
    NetworkGraph graph;
    std::size_t dropped_stubs = 0;
    int sweeps = 0;
};

/// Configuration model on a prescribed degree sequence. Deterministic per seed.
GeneratedGraph configuration_model(std::span<const std::uint32_t> degrees, std::uint64_t seed,
                                   const ConfigurationOptions& options = {});

/// G(n, p) with p = mean_degree / n, by geometric edge skipping.
NetworkGraph erdos_renyi_graph(std::uint64_t n, double mean_degree, std::uint64_t seed);

/// ER models are generated edge-wise; the other kinds via
/// sample_degree_sequence + configuration_model with the same seed.
GeneratedGraph generate(const DegreeModel& model, std::uint64_t n, std::uint64_t seed,
                        const ConfigurationOptions& options = {});

struct LoadedGraph {
    NetworkGraph graph;
    std::size_t self_loops = 0;
    std::size_t duplicate_edges = 0;
};

/// One "u v" pair of non-negative integers per line; '#' or '%' start a
/// comment; a line holding a single id (or "node id") declares an isolated
/// node. Ids are remapped to dense indices in increasing id order.
LoadedGraph load_edge_list(const std::filesystem::path& path);

struct ComponentInfo {
    std::size_t size = 0;
    std::vector<NetworkGraph::Node> members;  // ascending
};

/// Largest connected component; ties go to the component holding the lowest index.
ComponentInfo largest_component(const NetworkGraph& graph);

/// Exact shortest-path betweenness (Brandes). Raw scores sum sigma_st(v) /
/// sigma_st over ordered pairs (s, t), s != v != t; normalized scores divide
/// by (n - 1)(n - 2).
std::vector<double> betweenness(const NetworkGraph& graph, bool normalized = true);

/// Union-find with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);
    std::uint32_t find(std::uint32_t v);
    /// Returns the size of the merged set.
    std::size_t unite(std::uint32_t a, std::uint32_t b);
    std::size_t size_of(std::uint32_t v) { return size_[find(v)]; }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace seqdef
