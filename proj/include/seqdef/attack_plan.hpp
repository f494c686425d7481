#pragma once

#include <cstdint>
#include <string_view>

namespace seqdef {

enum class AttackKind { Random, Intentional, Betweenness };

std::string_view to_string(AttackKind kind);
/// Accepts "random", "intentional"/"degree", "betweenness".
AttackKind parse_attack_kind(std::string_view text);

/// Attack on a q fraction of an N-node network. Nodes report in descending
/// degree order; Intentional and Betweenness plans hit the first M = ceil(N q)
/// of them, Random plans hit every node with probability q.
class AttackPlan {
public:
    AttackPlan(AttackKind kind, double q, std::uint64_t n);

    AttackKind kind() const { return kind_; }
    double q() const { return q_; }
    std::uint64_t n() const { return n_; }
    /// M = ceil(N q).
    std::uint64_t targeted_count() const { return targeted_; }
    bool targets_top_nodes() const { return kind_ != AttackKind::Random; }

private:
    AttackKind kind_;
    double q_;
    std::uint64_t n_;
    std::uint64_t targeted_;
};

}  // namespace seqdef
