#include "seqdef/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "seqdef/errors.hpp"
#include "seqdef/philox.hpp"

namespace seqdef {

using Node = NetworkGraph::Node;
using Edge = NetworkGraph::Edge;

NetworkGraph::NetworkGraph(std::size_t node_count, std::span<const Edge> edges)
{
    if (node_count > std::numeric_limits<Node>::max())
        throw std::invalid_argument("graph too large for 32-bit node ids");
    std::vector<std::size_t> degree(node_count, 0);
    for (const auto& [u, v] : edges) {
        if (u >= node_count || v >= node_count)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop in simple graph");
        ++degree[u];
        ++degree[v];
    }
    offsets_.assign(node_count + 1, 0);
    std::partial_sum(degree.begin(), degree.end(), offsets_.begin() + 1);
    targets_.resize(offsets_.back());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
        targets_[cursor[u]++] = v;
        targets_[cursor[v]++] = u;
    }
    for (std::size_t v = 0; v < node_count; ++v) {
        const auto first = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
        const auto last = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
        std::sort(first, last);
        if (std::adjacent_find(first, last) != last)
            throw std::invalid_argument("repeated edge in simple graph");
    }
}

std::vector<std::uint32_t> NetworkGraph::degrees() const
{
    std::vector<std::uint32_t> out(node_count());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = degree(static_cast<Node>(v));
    return out;
}

std::vector<Edge> NetworkGraph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t u = 0; u < node_count(); ++u)
        for (const Node v : neighbors(static_cast<Node>(u)))
            if (u < v) out.emplace_back(static_cast<Node>(u), v);
    return out;
}

void NetworkGraph::set_labels(std::vector<std::uint64_t> labels)
{
    if (!labels.empty() && labels.size() != node_count())
        throw std::invalid_argument("one label per node required");
    labels_ = std::move(labels);
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1)
{
    std::iota(parent_.begin(), parent_.end(), 0u);
}

std::uint32_t DisjointSets::find(std::uint32_t v)
{
    while (parent_[v] != v) {
        parent_[v] = parent_[parent_[v]];
        v = parent_[v];
    }
    return v;
}

std::size_t DisjointSets::unite(std::uint32_t a, std::uint32_t b)
{
    a = find(a);
    b = find(b);
    if (a == b) return size_[a];
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return size_[a];
}

namespace {

std::uint64_t edge_key(Node u, Node v)
{
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

GeneratedGraph configuration_model(std::span<const std::uint32_t> degrees, std::uint64_t seed,
                                   const ConfigurationOptions& options)
{
    const std::size_t n = degrees.size();
    std::vector<Node> stubs;
    stubs.reserve(std::accumulate(degrees.begin(), degrees.end(), std::size_t{0}));
    for (std::size_t v = 0; v < n; ++v) stubs.insert(stubs.end(), degrees[v], static_cast<Node>(v));
    if (stubs.size() % 2 != 0) throw std::invalid_argument("degree sum must be even");

    RandomStream rng(seed, 1);
    shuffle(stubs, rng);

    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    std::unordered_set<std::uint64_t> present;
    present.reserve(stubs.size());
    std::vector<Edge> conflicts;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const Node a = stubs[i], b = stubs[i + 1];
        if (a != b && present.insert(edge_key(a, b)).second)
            edges.emplace_back(a, b);
        else
            conflicts.emplace_back(a, b);
    }

    // Re-wire each conflicting pair (a, b) against a random accepted edge
    // (c, d) into (a, c) + (b, d); degrees are preserved exactly.
    int sweeps = 0;
    while (!conflicts.empty() && sweeps < options.max_sweeps && !edges.empty()) {
        ++sweeps;
        std::vector<Edge> remaining;
        for (const auto& [a, b] : conflicts) {
            const auto idx = static_cast<std::size_t>(rng.below(edges.size()));
            auto [c, d] = edges[idx];
            if (rng.below(2) == 1) std::swap(c, d);
            const std::uint64_t k1 = edge_key(a, c), k2 = edge_key(b, d);
            if (a == c || b == d || k1 == k2 || present.count(k1) || present.count(k2)) {
                remaining.emplace_back(a, b);
                continue;
            }
            present.erase(edge_key(c, d));
            present.insert(k1);
            present.insert(k2);
            edges[idx] = {a, c};
            edges.emplace_back(b, d);
        }
        conflicts = std::move(remaining);
    }
    if (!conflicts.empty() && options.strict)
        throw NumericalError("degree sequence not realized as a simple graph after " +
                             std::to_string(sweeps) + " re-wiring sweeps (" +
                             std::to_string(conflicts.size()) + " conflicting pairs)");

    for (auto& e : edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    return {NetworkGraph(n, edges), 2 * conflicts.size(), sweeps};
}

NetworkGraph erdos_renyi_graph(std::uint64_t n, double mean_degree, std::uint64_t seed)
{
    if (n < 2) throw std::invalid_argument("need at least two nodes");
    const double p = mean_degree / static_cast<double>(n);
    if (!(p > 0.0)) throw std::invalid_argument("mean degree must be positive");
    std::vector<Edge> edges;
    if (p >= 1.0) {
        for (Node v = 1; v < n; ++v)
            for (Node w = 0; w < v; ++w) edges.emplace_back(w, v);
        return NetworkGraph(n, edges);
    }
    // Batagelj & Brandes, Phys. Rev. E 71, 036113: skip over absent pairs (v, w), w < v.
    RandomStream rng(seed, 0);
    const double log_q = std::log1p(-p);
    std::int64_t v = 1, w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
        const double r = rng.uniform01();
        w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
        while (w >= v && v < nn) {
            w -= v;
            ++v;
        }
        if (v < nn) edges.emplace_back(static_cast<Node>(w), static_cast<Node>(v));
    }
    std::sort(edges.begin(), edges.end());
    return NetworkGraph(n, edges);
}

GeneratedGraph generate(const DegreeModel& model, std::uint64_t n, std::uint64_t seed,
                        const ConfigurationOptions& options)
{
    if (const auto* er = std::get_if<ErdosRenyi>(&model.kind()))
        return {erdos_renyi_graph(n, er->mean_degree, seed), 0, 0};
    const auto degrees = sample_degree_sequence(model, n, seed);
    return configuration_model(degrees, seed, options);
}

namespace {

std::uint64_t parse_id(const std::string& token, const std::string& source, std::size_t line)
{
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(source, line, "expected a non-negative integer, got \"" + token + "\"");
    try {
        return std::stoull(token);
    } catch (const std::out_of_range&) {
        throw ParseError(source, line, "node id out of range");
    }
}

}  // namespace

LoadedGraph load_edge_list(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open edge list: " + path.string());
    const std::string source = path.string();

    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw_edges;
    std::vector<std::uint64_t> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto c = line.find_first_of("#%"); c != std::string::npos) line.erase(c);
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;) tokens.push_back(t);
        if (tokens.empty()) continue;
        if (tokens.size() == 2 && tokens[0] == "node") tokens.erase(tokens.begin());
        if (tokens.size() == 1) {
            ids.push_back(parse_id(tokens[0], source, line_no));
        } else if (tokens.size() == 2) {
            const auto u = parse_id(tokens[0], source, line_no);
            const auto v = parse_id(tokens[1], source, line_no);
            raw_edges.emplace_back(u, v);
            ids.push_back(u);
            ids.push_back(v);
        } else {
            throw ParseError(source, line_no, "expected \"u v\"");
        }
    }
    if (raw_edges.empty()) throw std::invalid_argument(source + ": no edges");

    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const auto index_of = [&](std::uint64_t id) {
        return static_cast<Node>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };

    LoadedGraph out;
    std::vector<Edge> edges;
    edges.reserve(raw_edges.size());
    for (const auto& [a, b] : raw_edges) {
        if (a == b) {
            ++out.self_loops;
            continue;
        }
        Node u = index_of(a), v = index_of(b);
        if (u > v) std::swap(u, v);
        edges.emplace_back(u, v);
    }
    std::sort(edges.begin(), edges.end());
    const auto last = std::unique(edges.begin(), edges.end());
    out.duplicate_edges = static_cast<std::size_t>(edges.end() - last);
    edges.erase(last, edges.end());
    out.graph = NetworkGraph(ids.size(), edges);
    out.graph.set_labels(std::move(ids));
    return out;
}

ComponentInfo largest_component(const NetworkGraph& graph)
{
    const std::size_t n = graph.node_count();
    ComponentInfo info;
    if (n == 0) return info;
    DisjointSets sets(n);
    for (const auto& [u, v] : graph.edges()) sets.unite(u, v);

    // Visiting nodes in index order meets every component first at its
    // lowest index, so a strict comparison keeps the lowest-index tie.
    std::uint32_t best_root = sets.find(0);
    std::size_t best_size = sets.size_of(0);
    for (Node v = 1; v < n; ++v) {
        const auto s = sets.size_of(v);
        if (s > best_size) {
            best_size = s;
            best_root = sets.find(v);
        }
    }
    info.size = best_size;
    info.members.reserve(best_size);
    for (Node v = 0; v < n; ++v)
        if (sets.find(v) == best_root) info.members.push_back(v);
    return info;
}

std::vector<double> betweenness(const NetworkGraph& graph, bool normalized)
{
    const std::size_t n = graph.node_count();
    std::vector<double> score(n, 0.0);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::int64_t> dist(n);
    std::vector<Node> order;
    order.reserve(n);

    for (Node s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        std::fill(dist.begin(), dist.end(), -1);
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        order.push_back(s);
        // `order` doubles as the BFS queue; it ends up in non-decreasing distance.
        for (std::size_t head = 0; head < order.size(); ++head) {
            const Node v = order[head];
            for (const Node w : graph.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    order.push_back(w);
                }
                if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
            }
        }
        for (std::size_t i = order.size(); i-- > 1;) {
            const Node w = order[i];
            for (const Node v : graph.neighbors(w))
                if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            score[w] += delta[w];
        }
    }
    if (normalized && n > 2) {
        const double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2);
        for (auto& x : score) x /= pairs;
    } else if (normalized) {
        std::fill(score.begin(), score.end(), 0.0);
    }
    return score;
}

}  // namespace seqdef
