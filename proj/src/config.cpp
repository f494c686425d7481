#include "seqdef/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace seqdef {

namespace {

std::string trim(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& raw)
{
    const std::string text = trim(raw);
    T value{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end)
        throw ConfigError("bad value for " + key + ": '" + raw + "'");
    return value;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& raw)
{
    std::vector<T> values;
    std::stringstream stream(raw);
    std::string item;
    while (std::getline(stream, item, ',')) values.push_back(parse_number<T>(key, item));
    if (values.empty()) throw ConfigError("empty list for " + key);
    return values;
}

bool parse_bool(const std::string& key, const std::string& raw)
{
    const std::string text = trim(raw);
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("bad value for " + key + ": '" + raw + "'");
}

template <typename T>
std::string list_to_string(const std::vector<T>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        if constexpr (std::is_floating_point_v<T>)
            out += format_double(values[i]);
        else
            out += std::to_string(values[i]);
    }
    return out;
}

struct Field {
    const char* key;
    std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

template <typename T>
Field number_field(const char* key, T ExperimentConfig::*member)
{
    return {key,
            [member](ExperimentConfig& c, const std::string& k, const std::string& v) {
                c.*member = parse_number<T>(k, v);
            },
            [member](const ExperimentConfig& c) {
                if constexpr (std::is_floating_point_v<T>)
                    return format_double(c.*member);
                else
                    return std::to_string(c.*member);
            }};
}

template <typename T>
Field optional_field(const char* key, std::optional<T> ExperimentConfig::*member)
{
    return {key,
            [member](ExperimentConfig& c, const std::string& k, const std::string& v) {
                c.*member = parse_number<T>(k, v);
            },
            [member](const ExperimentConfig& c) -> std::string {
                if (!(c.*member)) return "default";
                if constexpr (std::is_floating_point_v<T>)
                    return format_double(*(c.*member));
                else
                    return std::to_string(*(c.*member));
            }};
}

Field string_field(const char* key, std::string ExperimentConfig::*member)
{
    return {key,
            [member](ExperimentConfig& c, const std::string&, const std::string& v) {
                c.*member = trim(v);
            },
            [member](const ExperimentConfig& c) { return c.*member; }};
}

template <typename T>
Field list_field(const char* key, std::vector<T> ExperimentConfig::*member)
{
    return {key,
            [member](ExperimentConfig& c, const std::string& k, const std::string& v) {
                c.*member = parse_list<T>(k, v);
            },
            [member](const ExperimentConfig& c) { return list_to_string(c.*member); }};
}

const std::vector<Field>& fields()
{
    using C = ExperimentConfig;
    static const std::vector<Field> table = {
        number_field("run.seed", &C::seed),
        string_field("run.out", &C::out),
        string_field("model.model", &C::model),
        number_field("model.n", &C::n),
        number_field("model.kmin", &C::k_min),
        number_field("model.kmax", &C::k_max),
        number_field("model.alpha", &C::alpha),
        number_field("model.beta", &C::beta),
        number_field("model.khat", &C::k_hat),
        {"model.exact_exponential",
         [](C& c, const std::string& k, const std::string& v) {
             c.exact_exponential = parse_bool(k, v);
         },
         [](const C& c) { return std::string(c.exact_exponential ? "true" : "false"); }},
        number_field("detector.pd", &C::p_d),
        optional_field("detector.pf", &C::p_f),
        number_field("risk.delta", &C::delta),
        number_field("risk.theta", &C::theta),
        number_field("attack.q", &C::q),
        number_field("attack.mc", &C::mc),
        string_field("attack.scheme", &C::scheme),
        optional_field("simulation.trials", &C::trials),
        string_field("simulation.graph", &C::graph),
        number_field("simulation.steps", &C::steps),
        number_field("simulation.max_fraction", &C::max_fraction),
        list_field("sweep.mean_degree", &C::mean_degree_grid),
        list_field("sweep.q", &C::q_grid),
        list_field("sweep.pd", &C::p_d_grid),
        list_field("sweep.pf", &C::p_f_grid),
        list_field("sweep.qc", &C::qc_grid),
        list_field("sweep.khat", &C::k_hat_grid),
        list_field("sweep.alpha", &C::alpha_grid),
        list_field("sweep.beta", &C::beta_grid),
        list_field("sweep.mc", &C::mc_grid),
    };
    return table;
}

const Field& find_field(const std::string& key)
{
    // A bare name resolves to the first section that has it, so "pd" is the
    // detector value and "sweep.pd" the grid.
    const Field* bare_match = nullptr;
    for (const auto& field : fields()) {
        const std::string full = field.key;
        if (full == key) return field;
        if (!bare_match && full.substr(full.find('.') + 1) == key) bare_match = &field;
    }
    if (bare_match) return *bare_match;
    throw ConfigError("unknown config key: " + key);
}

std::vector<double> linear_grid(double first, double last, int count)
{
    std::vector<double> grid;
    for (int i = 0; i < count; ++i) {
        // Round to 12 significant digits so the grid prints exactly as entered.
        const double x = first + (last - first) * i / (count - 1);
        grid.push_back(std::stod(format_double(x)));
    }
    return grid;
}

std::vector<double> log_grid(double first, double last, int count)
{
    std::vector<double> grid;
    const double a = std::log10(first), b = std::log10(last);
    for (int i = 0; i < count; ++i)
        grid.push_back(std::stod(format_double(std::pow(10.0, a + (b - a) * i / (count - 1)))));
    return grid;
}

template <typename T>
void default_grid(std::vector<T>& grid, std::vector<T> values)
{
    if (grid.empty()) grid = std::move(values);
}

}  // namespace

std::string format_double(double value)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value)
{
    const auto& field = find_field(trim(key));
    field.set(config, field.key, value);
}

void load_config(const std::filesystem::path& path, ExperimentConfig& config)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(path.string(), tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(e.what());
    }
    for (const auto& [name, node] : tree) {
        if (node.empty()) {
            set_config_value(config, name, node.data());
            continue;
        }
        for (const auto& [key, leaf] : node) set_config_value(config, name + "." + key, leaf.data());
    }
}

std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& config)
{
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("command", config.command);
    for (const auto& field : fields()) out.emplace_back(field.key, field.get(config));
    return out;
}

ExperimentConfig resolve_defaults(ExperimentConfig c)
{
    const std::string& cmd = c.command;
    if (cmd == "qc-sweep") {
        std::vector<double> means = {1.1, 1.25, 1.5, 1.75};
        for (const double m : linear_grid(2.0, 10.0, 17)) means.push_back(m);
        default_grid(c.mean_degree_grid, means);
    } else if (cmd == "m1") {
        default_grid(c.q_grid, linear_grid(0.1, 1.0, 10));
        default_grid(c.p_d_grid, linear_grid(0.1, 0.9, 9));
        default_grid(c.p_f_grid, {0.001, 0.005, 0.01, 0.05});
        default_grid(c.k_hat_grid, linear_grid(2.0, 10.0, 9));
        default_grid(c.alpha_grid, linear_grid(2.1, 3.0, 10));
        default_grid(c.beta_grid, linear_grid(0.5, 5.0, 10));
    } else if (cmd == "worst-case") {
        default_grid(c.qc_grid, {0.0005, 0.001, 0.002, 0.003, 0.005, 0.0075, 0.01, 0.02, 0.05, 0.1});
        default_grid(c.p_d_grid, {0.5, 0.7, 0.9});
    } else if (cmd == "empirical") {
        default_grid(c.p_d_grid, linear_grid(0.1, 0.9, 9));
        default_grid(c.p_f_grid, {0.001, 0.005, 0.01});
    } else if (cmd == "powergrid") {
        if (!c.p_f) c.p_f = 0.005;
        if (c.graph.empty()) c.graph = "data/us_power_grid.edges";
        default_grid(c.p_d_grid, {0.1, 0.25, 0.5, 0.75, 0.9});
    } else if (cmd == "operation-curves") {
        default_grid(c.mc_grid, {1, 2, 5, 10, 20, 50});
        default_grid(c.p_f_grid, log_grid(1e-4, 0.1, 10));
    } else if (cmd == "detect") {
        if (!c.trials) c.trials = 10000;
    } else if (cmd == "graph-info") {
        if (!c.trials) c.trials = 5;
    }
    if (!c.p_f) c.p_f = 0.001;
    if (!c.trials) c.trials = 100;
    return c;
}

}  // namespace seqdef
