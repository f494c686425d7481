#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seqdef {

/// Bad configuration: unknown key, unparsable value, missing input.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Everything a command needs. Empty grids and unset optionals are filled
/// with command-specific defaults by resolve_defaults().
struct ExperimentConfig {
    std::string command;
    std::uint64_t seed = 1;
    std::string out;

    // network model
    std::string model = "er";
    std::uint64_t n = 10000;
    int k_min = 1;
    int k_max = 1000;
    double alpha = 2.5;
    double beta = 1.63;
    double k_hat = 4.0;
    bool exact_exponential = false;

    // detector and risk
    double p_d = 0.9;
    std::optional<double> p_f;
    double delta = 0.01;
    double theta = 0.001;

    // attack and simulation
    double q = 0.5;
    std::uint64_t mc = 0;
    std::optional<std::uint64_t> trials;
    std::string graph;
    std::string scheme = "random";
    std::size_t steps = 51;
    double max_fraction = 0.5;

    // sweep grids
    std::vector<double> mean_degree_grid;
    std::vector<double> q_grid;
    std::vector<double> p_d_grid;
    std::vector<double> p_f_grid;
    std::vector<double> qc_grid;
    std::vector<double> k_hat_grid;
    std::vector<double> alpha_grid;
    std::vector<double> beta_grid;
    std::vector<std::uint64_t> mc_grid;
};

/// Sets one key. Keys are "section.name" as in the config file ("detector.pd",
/// "sweep.pf", ...); the bare name is accepted as well. Grid values are
/// comma-separated. Throws ConfigError on unknown keys or bad values.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Reads "key = value" lines grouped under [section] headers; '#' and ';'
/// start comments.
void load_config(const std::filesystem::path& path, ExperimentConfig& config);

/// All keys in file order with their current values, for output headers.
std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& config);

/// Fills unset grids and optionals with the defaults of config.command.
ExperimentConfig resolve_defaults(ExperimentConfig config);

/// %.12g, with "nan", "inf" and "-inf" spelled out.
std::string format_double(double value);

}  // namespace seqdef
