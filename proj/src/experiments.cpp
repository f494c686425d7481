#include "seqdef/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "seqdef/errors.hpp"
#include "seqdef/percolation.hpp"
#include "seqdef/robust_design.hpp"
#include "seqdef/sprt.hpp"

namespace seqdef {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

std::string cell(double value) { return format_double(value); }
std::string cell(std::uint64_t value) { return std::to_string(value); }
std::string cell(const std::string& value) { return value; }
std::string cell(const char* value) { return value; }
std::string cell(bool value) { return value ? "true" : "false"; }

template <typename... Cells>
void row(std::ostream& out, const Cells&... cells)
{
    bool first = true;
    ((out << (first ? "" : ",") << cell(cells), first = false), ...);
    out << '\n';
}

std::string scheme_name(RemovalScheme scheme)
{
    switch (scheme) {
    case RemovalScheme::Random: return "random";
    case RemovalScheme::Degree: return "degree";
    case RemovalScheme::Betweenness: return "betweenness";
    }
    return "unknown";
}

// Detector with p_d >= p_f, or nothing when the pair is not a valid profile.
std::optional<DetectorProfile> detector_or_none(double p_d, double p_f)
{
    if (!(p_d >= p_f)) return std::nullopt;
    return DetectorProfile(p_d, p_f);
}

double m1_random_or_nan(double q, const DetectorProfile& detector, const RiskBudget& risk)
{
    try {
        return expected_reports_random(q, detector, risk);
    } catch (const NumericalError&) {
        return nan_value;
    }
}

double m1_intentional_or_nan(const DetectorProfile& detector, const RiskBudget& risk)
{
    try {
        return expected_reports_intentional(detector, risk);
    } catch (const NumericalError&) {
        return nan_value;
    }
}

// Random-attack threshold, 0 when the network has no giant component to begin with.
double qc_random_or_zero(const DegreeModel& model)
{
    return giant_component_exists(model) ? qc_random(model).qc : 0.0;
}

double qc_intentional_or_nan(const DegreeModel& model, const ExperimentConfig& config)
{
    if (!giant_component_exists(model)) return 0.0;
    try {
        return qc_intentional(model, {config.exact_exponential}).qc;
    } catch (const NumericalError&) {
        return nan_value;
    }
}

}  // namespace

DegreeModel model_from_config(const ExperimentConfig& config)
{
    if (config.model == "er")
        return DegreeModel::erdos_renyi(config.k_hat, config.k_min, config.k_max, config.n);
    if (config.model == "powerlaw")
        return DegreeModel::power_law(config.alpha, config.k_min, config.k_max, config.n);
    if (config.model == "exponential")
        return DegreeModel::exponential(config.beta, config.k_min, config.k_max, config.n);
    throw ConfigError("unknown model: " + config.model + " (er, powerlaw, exponential)");
}

std::vector<EmpiricalNetwork> empirical_networks(int k_min, int k_max)
{
    return {
        {"www", DegreeModel::power_law(2.1, k_min, k_max, 325729)},
        {"internet", DegreeModel::power_law(2.5, k_min, k_max, 6209)},
        {"eu-grid", DegreeModel::exponential(1.63, k_min, k_max, 2783)},
    };
}

void write_header(const ExperimentConfig& config, std::ostream& out)
{
    out << "# seqdef " << config.command << '\n';
    for (const auto& [key, value] : describe(config)) out << "# " << key << " = " << value << '\n';
}

void cmd_qc_sweep(const ExperimentConfig& config, std::ostream& out)
{
    row(out, "model", "mean_degree", "parameter", "tau", "qc_random", "qc_intentional");
    for (const double mean : config.mean_degree_grid) {
        if (!(mean > 0.0)) throw ConfigError("mean degree grid must be positive");
        std::vector<std::pair<std::string, std::optional<DegreeModel>>> models;
        std::vector<double> parameters;

        models.emplace_back("er", DegreeModel::erdos_renyi(mean, config.k_min, config.k_max, config.n));
        parameters.push_back(mean);
        try {
            const double alpha = power_law_alpha_for_mean(mean, config.k_min, config.k_max);
            models.emplace_back("powerlaw",
                                DegreeModel::power_law(alpha, config.k_min, config.k_max, config.n));
            parameters.push_back(alpha);
        } catch (const NumericalError&) {
            models.emplace_back("powerlaw", std::nullopt);
            parameters.push_back(nan_value);
        }
        const double beta = mean - config.k_min;
        if (beta > 0.0) {
            models.emplace_back("exponential",
                                DegreeModel::exponential(beta, config.k_min, config.k_max, config.n));
            parameters.push_back(beta);
        } else {
            models.emplace_back("exponential", std::nullopt);
            parameters.push_back(nan_value);
        }

        for (std::size_t i = 0; i < models.size(); ++i) {
            const auto& [name, model] = models[i];
            if (!model) {
                row(out, name, mean, parameters[i], nan_value, nan_value, nan_value);
                continue;
            }
            row(out, name, mean, parameters[i], moments(*model).tau, qc_random_or_zero(*model),
                qc_intentional_or_nan(*model, config));
        }
    }
}

void cmd_m1(const ExperimentConfig& config, std::ostream& out)
{
    const RiskBudget risk(config.delta, config.theta);
    row(out, "block", "family", "parameter", "q", "p_d", "p_f", "m1");
    for (const double p_f : config.p_f_grid)
        for (const double p_d : config.p_d_grid) {
            const auto detector = detector_or_none(p_d, p_f);
            if (!detector) continue;
            for (const double q : config.q_grid)
                row(out, "random", "", "", q, p_d, p_f, m1_random_or_nan(q, *detector, risk));
        }
    for (const double p_f : config.p_f_grid)
        for (const double p_d : config.p_d_grid) {
            const auto detector = detector_or_none(p_d, p_f);
            if (!detector) continue;
            row(out, "intentional", "", "", "", p_d, p_f, m1_intentional_or_nan(*detector, risk));
        }

    // M1 at the random-attack threshold as a function of the network parameter.
    const double p_f = *config.p_f;
    auto surface = [&](const std::string& family, double parameter, const DegreeModel& model) {
        const double qc = qc_random_or_zero(model);
        for (const double p_d : config.p_d_grid) {
            const auto detector = detector_or_none(p_d, p_f);
            if (!detector) continue;
            const double m1 = qc > 0.0 ? m1_random_or_nan(qc, *detector, risk) : nan_value;
            row(out, "surface", family, parameter, qc, p_d, p_f, m1);
        }
    };
    for (const double k_hat : config.k_hat_grid)
        surface("er", k_hat, DegreeModel::erdos_renyi(k_hat, config.k_min, config.k_max, config.n));
    for (const double alpha : config.alpha_grid)
        surface("powerlaw", alpha,
                DegreeModel::power_law(alpha, config.k_min, config.k_max, config.n));
    for (const double beta : config.beta_grid)
        surface("exponential", beta,
                DegreeModel::exponential(beta, config.k_min, config.k_max, config.n));
}

void cmd_worst_case(const ExperimentConfig& config, std::ostream& out)
{
    const RiskBudget risk(config.delta, config.theta);
    const double p_f = *config.p_f;
    row(out, "scheme", "p_d", "p_f", "qc", "mc", "accept_lower_bound", "reject_lower_bound",
        "delta_at_mc", "theta_at_mc", "y1", "y2", "y3", "y4", "y5", "y6");
    for (const char* scheme : {"random", "intentional"})
        for (const double p_d : config.p_d_grid) {
            const auto detector = detector_or_none(p_d, p_f);
            if (!detector) continue;
            for (const double qc : config.qc_grid) {
                if (!(qc > 0.0 && qc <= 1.0)) throw ConfigError("qc grid must lie in (0, 1]");
                const std::uint64_t mc = report_budget(config.n, qc);
                // With M = mc the targeted plan has a_i = 1 on every report considered.
                const double q_effective = std::string(scheme) == "random" ? qc : 1.0;
                try {
                    const auto b = worst_case_bounds(q_effective, *detector, risk, mc);
                    row(out, scheme, p_d, p_f, qc, mc, b.accept_lower_bound, b.reject_lower_bound,
                        b.delta_at_mc, b.theta_at_mc, b.y1, b.y2, b.y3, b.y4, b.y5, b.y6);
                } catch (const NumericalError&) {
                    row(out, scheme, p_d, p_f, qc, mc, nan_value, nan_value, nan_value, nan_value,
                        nan_value, nan_value, nan_value, nan_value, nan_value, nan_value);
                }
            }
        }
}

void cmd_empirical(const ExperimentConfig& config, std::ostream& out)
{
    const RiskBudget risk(config.delta, config.theta);
    row(out, "network", "model", "parameter", "n", "scheme", "qc", "mc", "p_d", "p_f", "m1",
        "m1_below_mc");
    for (const auto& network : empirical_networks(config.k_min, config.k_max)) {
        const auto& model = network.model;
        const double parameter = std::holds_alternative<PowerLaw>(model.kind())
                                     ? std::get<PowerLaw>(model.kind()).alpha
                                     : std::get<Exponential>(model.kind()).beta;
        for (const char* scheme : {"random", "intentional"}) {
            const bool random = std::string(scheme) == "random";
            const double qc = random ? qc_random_or_zero(model) : qc_intentional_or_nan(model, config);
            const std::uint64_t mc = std::isnan(qc) ? 0 : report_budget(model.n(), qc);
            for (const double p_f : config.p_f_grid)
                for (const double p_d : config.p_d_grid) {
                    const auto detector = detector_or_none(p_d, p_f);
                    if (!detector) continue;
                    const double m1 = random ? (qc > 0.0 ? m1_random_or_nan(qc, *detector, risk)
                                                         : nan_value)
                                             : m1_intentional_or_nan(*detector, risk);
                    row(out, network.name, model.name(), parameter, model.n(), scheme, qc, mc, p_d,
                        p_f, m1, m1 < static_cast<double>(mc));
                }
        }
    }
}

PowerGridAnalysis analyze_power_grid(const LoadedGraph& loaded, const ExperimentConfig& config)
{
    const auto& graph = loaded.graph;
    const std::size_t n = graph.node_count();
    PowerGridAnalysis result;
    result.nodes = n;
    result.edges = graph.edge_count();
    result.self_loops = loaded.self_loops;
    result.duplicate_edges = loaded.duplicate_edges;
    result.initial_lcc_fraction =
        static_cast<double>(largest_component(graph).size) / static_cast<double>(n);

    const std::uint64_t trials = *config.trials;
    if (trials < 1) throw ConfigError("trials must be >= 1");
    std::vector<RemovalProfile> random_profiles;
    random_profiles.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t)
        random_profiles.push_back(
            removal_profile(graph, removal_order(graph, RemovalScheme::Random, config.seed, t)));
    const auto degree_profile =
        removal_profile(graph, removal_order(graph, RemovalScheme::Degree, config.seed));
    const auto betweenness_profile =
        removal_profile(graph, removal_order(graph, RemovalScheme::Betweenness, config.seed));

    auto mean_at = [&](std::size_t m) {
        double lcc = 0.0, tau = 0.0;
        for (const auto& p : random_profiles) {
            lcc += static_cast<double>(p.lcc_size[m]);
            tau += p.tau[m];
        }
        return std::pair{lcc / static_cast<double>(trials * n), tau / static_cast<double>(trials)};
    };

    if (config.steps < 2) throw ConfigError("steps must be >= 2");
    if (!(config.max_fraction >= 0.0 && config.max_fraction <= 1.0))
        throw ConfigError("max_fraction must lie in [0, 1]");
    result.random_mean.scheme = RemovalScheme::Random;
    result.degree.scheme = RemovalScheme::Degree;
    result.betweenness.scheme = RemovalScheme::Betweenness;
    for (std::size_t j = 0; j < config.steps; ++j) {
        const double f = config.max_fraction * static_cast<double>(j) /
                         static_cast<double>(config.steps - 1);
        const auto m = std::min(n, static_cast<std::size_t>(std::llround(f * static_cast<double>(n))));
        const auto [lcc, tau] = mean_at(m);
        result.random_mean.samples.push_back({f, m, lcc, tau});
        result.degree.samples.push_back(
            {f, m, static_cast<double>(degree_profile.lcc_size[m]) / static_cast<double>(n),
             degree_profile.tau[m]});
        result.betweenness.samples.push_back(
            {f, m, static_cast<double>(betweenness_profile.lcc_size[m]) / static_cast<double>(n),
             betweenness_profile.tau[m]});
    }

    const RiskBudget risk(config.delta, config.theta);
    const double p_f = *config.p_f;
    for (const double p_d : config.p_d_grid) {
        const auto detector = detector_or_none(p_d, p_f);
        if (!detector) continue;
        const double m1 = m1_intentional_or_nan(*detector, risk);
        if (std::isnan(m1)) continue;
        const auto attacked = std::min(n, static_cast<std::size_t>(std::ceil(m1)));
        const auto [lcc, tau] = mean_at(attacked);
        result.markers.push_back({RemovalScheme::Random, p_d, p_f, m1, attacked, lcc, tau});
        for (const auto* profile : {&degree_profile, &betweenness_profile})
            result.markers.push_back(
                {profile == &degree_profile ? RemovalScheme::Degree : RemovalScheme::Betweenness,
                 p_d, p_f, m1, attacked,
                 static_cast<double>(profile->lcc_size[attacked]) / static_cast<double>(n),
                 profile->tau[attacked]});
    }
    return result;
}

void cmd_powergrid(const ExperimentConfig& config, std::ostream& out)
{
    LoadedGraph loaded;
    try {
        loaded = load_edge_list(config.graph);
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("dataset not found or unreadable: ") + e.what());
    }
    const auto result = analyze_power_grid(loaded, config);
    out << "# nodes = " << result.nodes << '\n';
    out << "# edges = " << result.edges << '\n';
    out << "# self_loops_dropped = " << result.self_loops << '\n';
    out << "# duplicate_edges_dropped = " << result.duplicate_edges << '\n';
    out << "# initial_lcc_fraction = " << format_double(result.initial_lcc_fraction) << '\n';
    row(out, "block", "scheme", "removed_fraction", "removed_count", "lcc_fraction",
        "remaining_tau", "p_d", "p_f", "m1");
    for (const auto* curve : {&result.random_mean, &result.degree, &result.betweenness})
        for (const auto& s : curve->samples)
            row(out, "curve", scheme_name(curve->scheme), s.removed_fraction,
                static_cast<std::uint64_t>(s.removed_count), s.lcc_fraction, s.remaining_tau, "",
                "", "");
    for (const auto& m : result.markers)
        row(out, "marker", scheme_name(m.scheme),
            static_cast<double>(m.attacked_nodes) / static_cast<double>(result.nodes),
            static_cast<std::uint64_t>(m.attacked_nodes), m.lcc_fraction, m.remaining_tau, m.p_d,
            m.p_f, m.m1);
}

void cmd_operation_curves(const ExperimentConfig& config, std::ostream& out)
{
    const RiskBudget risk(config.delta, config.theta);
    row(out, "mc", "p_f", "p_d_min", "feasible");
    for (const std::uint64_t mc : config.mc_grid) {
        if (mc < 1) throw ConfigError("mc grid must be >= 1");
        for (const auto& point : operation_curve(config.p_f_grid, risk, mc))
            row(out, point.mc, point.p_f, point.p_d_min, point.feasible);
    }
}

void cmd_graph_info(const ExperimentConfig& config, std::ostream& out)
{
    LoadedGraph loaded;
    std::size_t dropped_stubs = 0;
    double analytic_qc = nan_value;
    if (!config.graph.empty()) {
        try {
            loaded = load_edge_list(config.graph);
        } catch (const ParseError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    } else {
        const auto model = model_from_config(config);
        auto generated = generate(model, config.n, config.seed);
        loaded.graph = std::move(generated.graph);
        dropped_stubs = generated.dropped_stubs;
        analytic_qc = qc_random_or_zero(model);
    }
    const auto& graph = loaded.graph;
    const auto degrees = graph.degrees();
    const auto summary = moments_from_degrees(degrees);
    const auto scheme = removal_scheme_for(parse_attack_kind(config.scheme));
    const auto estimate = estimate_qc(graph, scheme, *config.trials, config.seed);

    row(out, "key", "value");
    row(out, "nodes", static_cast<std::uint64_t>(graph.node_count()));
    row(out, "edges", static_cast<std::uint64_t>(graph.edge_count()));
    row(out, "self_loops_dropped", static_cast<std::uint64_t>(loaded.self_loops));
    row(out, "duplicate_edges_dropped", static_cast<std::uint64_t>(loaded.duplicate_edges));
    row(out, "dropped_stubs", static_cast<std::uint64_t>(dropped_stubs));
    row(out, "mean_degree", summary.mean_degree);
    row(out, "tau", summary.tau);
    row(out, "lcc_fraction",
        static_cast<double>(largest_component(graph).size) / static_cast<double>(graph.node_count()));
    row(out, "qc_estimate", estimate.qc);
    row(out, "initially_subcritical", estimate.initially_subcritical);
    row(out, "qc_random_analytic", analytic_qc);
}

void cmd_detect(const ExperimentConfig& config, std::ostream& out)
{
    const RiskBudget risk(config.delta, config.theta);
    const DetectorProfile detector(config.p_d, *config.p_f);
    const AttackPlan plan(parse_attack_kind(config.scheme), config.q, config.n);
    // Identical hypotheses make the test meaningless; this throws NumericalError.
    const double m1 = plan.targets_top_nodes() ? expected_reports_intentional(detector, risk)
                                               : expected_reports_random(config.q, detector, risk);
    row(out, "truth", "trials", "mc", "m1_formula", "mean_stop_index", "accept_attack_freq",
        "accept_null_freq", "threshold_attack_freq", "truncated_freq", "max_stop_index");
    for (const auto truth : {Hypothesis::Attack, Hypothesis::Null}) {
        const auto s =
            simulate_detection(plan, detector, risk, config.mc, *config.trials, config.seed, truth);
        row(out, truth == Hypothesis::Attack ? "attack" : "null", s.trials, config.mc, m1,
            s.mean_stop_index, s.accept_attack_freq, s.accept_null_freq, s.threshold_attack_freq,
            s.truncated_freq, s.max_stop_index);
    }
}

void run_command(const ExperimentConfig& raw, std::ostream& out)
{
    const ExperimentConfig config = resolve_defaults(raw);
    const std::string& c = config.command;
    void (*command)(const ExperimentConfig&, std::ostream&) = nullptr;
    if (c == "qc-sweep") command = cmd_qc_sweep;
    else if (c == "m1") command = cmd_m1;
    else if (c == "worst-case") command = cmd_worst_case;
    else if (c == "empirical") command = cmd_empirical;
    else if (c == "powergrid") command = cmd_powergrid;
    else if (c == "operation-curves") command = cmd_operation_curves;
    else if (c == "graph-info") command = cmd_graph_info;
    else if (c == "detect") command = cmd_detect;
    else throw ConfigError("unknown command: " + c);
    write_header(config, out);
    command(config, out);
}

}  // namespace seqdef
