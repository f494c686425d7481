#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "seqdef/config.hpp"
#include "seqdef/errors.hpp"
#include "seqdef/experiments.hpp"

namespace {

constexpr int exit_config_error = 2;
constexpr int exit_numerical_failure = 3;

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Percolation thresholds and sequential attack detection experiments"};
    app.set_version_flag("--version", "seqdef 0.1.0");

    std::string command;
    std::string config_path;
    std::string commands_help = "one of:";
    for (const auto name : seqdef::command_names) commands_help += " " + std::string(name);
    app.add_option("command", command, commands_help)->required();
    app.add_option("--config", config_path, "INI config file; flags override its values");

    // Flags are applied after the config file, in this order, through the
    // same key table the file uses.
    const std::vector<std::pair<std::string, std::string>> flag_keys = {
        {"--seed", "run.seed"},          {"--out", "run.out"},
        {"--model", "model.model"},      {"--n", "model.n"},
        {"--kmin", "model.kmin"},        {"--kmax", "model.kmax"},
        {"--alpha", "model.alpha"},      {"--beta", "model.beta"},
        {"--khat", "model.khat"},        {"--pd", "detector.pd"},
        {"--pf", "detector.pf"},         {"--delta", "risk.delta"},
        {"--theta", "risk.theta"},       {"--q", "attack.q"},
        {"--mc", "attack.mc"},           {"--scheme", "attack.scheme"},
        {"--trials", "simulation.trials"}, {"--graph", "simulation.graph"},
        {"--steps", "simulation.steps"}, {"--max-fraction", "simulation.max_fraction"},
    };
    std::vector<std::string> flag_values(flag_keys.size());
    std::vector<CLI::Option*> flag_options;
    for (std::size_t i = 0; i < flag_keys.size(); ++i)
        flag_options.push_back(app.add_option(flag_keys[i].first, flag_values[i],
                                              "sets " + flag_keys[i].second));
    std::vector<std::string> overrides;
    app.add_option("--set", overrides, "KEY=VALUE override for any config key, e.g. sweep.pd=0.1,0.5")
        ->take_all();
    bool exact_exponential = false;
    app.add_flag("--exact-exponential", exact_exponential,
                 "keep k_min in the exponential intentional-attack threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config_error;
    }

    try {
        seqdef::ExperimentConfig config;
        if (!config_path.empty()) seqdef::load_config(config_path, config);
        for (std::size_t i = 0; i < flag_keys.size(); ++i)
            if (flag_options[i]->count() > 0)
                seqdef::set_config_value(config, flag_keys[i].second, flag_values[i]);
        for (const auto& item : overrides) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw seqdef::ConfigError("--set expects KEY=VALUE, got " + item);
            seqdef::set_config_value(config, item.substr(0, eq), item.substr(eq + 1));
        }
        if (exact_exponential) config.exact_exponential = true;
        config.command = command;

        std::ostringstream body;
        seqdef::run_command(config, body);
        if (config.out.empty() || config.out == "-") {
            std::cout << body.str();
        } else {
            std::ofstream file(config.out, std::ios::binary);
            if (!file) throw seqdef::ConfigError("cannot write " + config.out);
            file << body.str();
        }
        return 0;
    } catch (const seqdef::NumericalError& e) {
        std::cerr << "seqdef: numerical failure: " << e.what() << '\n';
        return exit_numerical_failure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "seqdef: config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "seqdef: " << e.what() << '\n';
        return 1;
    }
}
