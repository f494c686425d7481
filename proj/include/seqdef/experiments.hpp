#pragma once

#include <array>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "seqdef/attack.hpp"
#include "seqdef/config.hpp"
#include "seqdef/degree_model.hpp"
#include "seqdef/graph.hpp"

namespace seqdef {

inline constexpr std::array<std::string_view, 8> command_names = {
    "qc-sweep", "m1", "worst-case", "empirical", "powergrid", "operation-curves", "graph-info",
    "detect"};

/// Model selected by config.model ("er", "powerlaw", "exponential") with the
/// config's support and size.
DegreeModel model_from_config(const ExperimentConfig& config);

/// Parameter sets of the three measured networks (WWW, Internet router map,
/// EU power grid).
struct EmpiricalNetwork {
    std::string name;
    DegreeModel model;
};
std::vector<EmpiricalNetwork> empirical_networks(int k_min, int k_max);

struct DetectionMarker {
    RemovalScheme scheme;
    double p_d, p_f;
    /// Expected reports to flag an attack that hits nodes one by one.
    double m1;
    /// ceil(m1): the first attack size outside the undetectable region.
    std::size_t attacked_nodes;
    double lcc_fraction;
    double remaining_tau;
};

struct PowerGridAnalysis {
    std::size_t nodes = 0, edges = 0, self_loops = 0, duplicate_edges = 0;
    double initial_lcc_fraction = 0.0;
    RemovalCurve random_mean, degree, betweenness;
    std::vector<DetectionMarker> markers;
};

/// Random (averaged over config.trials orders), degree and betweenness
/// removal curves on [0, max_fraction], plus LCC at the M1 marker of each
/// p_d in config.p_d_grid. Expects a resolved config.
PowerGridAnalysis analyze_power_grid(const LoadedGraph& loaded, const ExperimentConfig& config);

/// '#'-prefixed command and config lines.
void write_header(const ExperimentConfig& config, std::ostream& out);

void cmd_qc_sweep(const ExperimentConfig& config, std::ostream& out);
void cmd_m1(const ExperimentConfig& config, std::ostream& out);
void cmd_worst_case(const ExperimentConfig& config, std::ostream& out);
void cmd_empirical(const ExperimentConfig& config, std::ostream& out);
void cmd_powergrid(const ExperimentConfig& config, std::ostream& out);
void cmd_operation_curves(const ExperimentConfig& config, std::ostream& out);
void cmd_graph_info(const ExperimentConfig& config, std::ostream& out);
void cmd_detect(const ExperimentConfig& config, std::ostream& out);

/// Resolves defaults, writes the header and runs config.command.
void run_command(const ExperimentConfig& config, std::ostream& out);

}  // namespace seqdef
