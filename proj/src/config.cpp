#include "polariton/config.hpp"

#include "polariton/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace polariton::config {

namespace {

using enum KeyType;

std::vector<KeySpec> make_keys()
{
    const std::vector<std::string> shapes{"gaussian", "sech"};
    const std::vector<std::string> sweepable{"pump-probe", "ringing", "linear-line"};
    return {
        {"medium.gamma_perp_t", number, "1e-3", Bound::non_negative, {}},
        {"medium.gamma_par_t", number, "1e-3", Bound::non_negative, {}},
        {"medium.detuning_t", number, "0", Bound::any, {}},

        // optional physical (CGS) inputs; used only when dipole moment,
        // transition frequency and density are all positive
        {"physical.dipole_moment", number, "0", Bound::non_negative, {}},
        {"physical.transition_frequency", number, "0", Bound::non_negative, {}},
        {"physical.density", number, "0", Bound::non_negative, {}},
        {"physical.gamma_perp", number, "0", Bound::non_negative, {}},
        {"physical.gamma_par", number, "0", Bound::non_negative, {}},
        {"physical.length_cm", number, "0", Bound::non_negative, {}},

        {"pulse.shape", text, "gaussian", Bound::any, shapes},
        {"pulse.area_pi_units", number, "0.01", Bound::any, {}},
        {"pulse.duration", number, "0.1", Bound::positive, {}},
        {"pulse.center", number, "0", Bound::any, {}},
        {"pulse.carrier_offset", number, "0", Bound::any, {}},

        {"pump.shape", text, "gaussian", Bound::any, shapes},
        {"pump.area_pi_units", number, "0.49", Bound::any, {}},
        {"pump.duration", number, "0.1", Bound::positive, {}},
        {"pump.center", number, "0", Bound::any, {}},
        {"pump.carrier_offset", number, "0", Bound::any, {}},

        {"probe.shape", text, "gaussian", Bound::any, shapes},
        {"probe.area_pi_units", number, "0.002", Bound::any, {}},
        {"probe.duration", number, "0.1", Bound::positive, {}},
        {"probe.delay", number, "-0.5", Bound::any, {}},
        {"probe.carrier_offset", number, "0", Bound::any, {}},

        {"grid.tau_min", number, "-2", Bound::any, {}},
        {"grid.tau_max", number, "80", Bound::any, {}},
        {"grid.n_tau", integer, "16384", Bound::positive, {}},
        {"grid.zeta_end", number, "1", Bound::non_negative, {}},
        {"grid.n_zeta", integer, "1", Bound::positive, {}},
        {"grid.stations", list, "", Bound::non_negative, {}},

        {"solver.d_zeta", number, "1e-3", Bound::positive, {}},
        {"solver.corrector_iterations", integer, "2", Bound::positive, {}},
        {"solver.tolerance", number, "1e-3", Bound::positive, {}},
        {"solver.convergence_check", integer, "1", Bound::non_negative, {}},

        {"spectrum.delta_limit", number, "10", Bound::positive, {}},
        {"spectrum.mask_threshold", number, "1e-3", Bound::positive, {}},
        {"spectrum.check_linearity", integer, "1", Bound::non_negative, {}},

        {"cavity.kappa", number, "0.05", Bound::non_negative, {}},
        {"cavity.gamma", number, "1e-3", Bound::non_negative, {}},
        {"cavity.detuning", number, "0", Bound::any, {}},
        {"cavity.reflectivity", number, "0.99", Bound::non_negative, {}},
        {"cavity.length", number, "0.1", Bound::positive, {}},
        {"cavity.fill_fraction", number, "0.5", Bound::non_negative, {}},

        {"fp.delta_min", number, "-2", Bound::any, {}},
        {"fp.delta_max", number, "2", Bound::any, {}},
        {"fp.n", integer, "4001", Bound::positive, {}},

        {"dispersion.x_min", number, "-5", Bound::any, {}},
        {"dispersion.x_max", number, "5", Bound::any, {}},
        {"dispersion.n", integer, "1001", Bound::positive, {}},

        {"density.min", number, "1e10", Bound::positive, {}},
        {"density.max", number, "1e13", Bound::positive, {}},
        {"density.n", integer, "31", Bound::positive, {}},

        {"fig2.zetas", list, "1", Bound::non_negative, {}},
        {"fig2.delays", list, "-0.5", Bound::any, {}},
        {"fig2.include_linear", integer, "0", Bound::non_negative, {}},

        {"sweep.scenario", text, "pump-probe", Bound::any, sweepable},
        {"sweep.key", text, "grid.zeta_end", Bound::any, {}},
        {"sweep.values", list, "0.5, 1, 2", Bound::any, {}},
        {"sweep.workers", integer, "2", Bound::positive, {}},
    };
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& text, double& out)
{
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (begin != end && *begin == '+')
        ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool parse_int(const std::string& text, int& out)
{
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (begin != end && *begin == '+')
        ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

void check_bound(const KeySpec& spec, double v, std::size_t line)
{
    const bool ok = spec.bound == Bound::any || (spec.bound == Bound::non_negative && v >= 0.0) ||
                    (spec.bound == Bound::positive && v > 0.0);
    if (!ok)
        throw ConfigError(line, spec.key + " must be " +
                                    (spec.bound == Bound::positive ? "positive" : "non-negative") +
                                    ", got " + std::to_string(v));
}

} // namespace

const std::vector<KeySpec>& keys()
{
    static const std::vector<KeySpec> table = make_keys();
    return table;
}

const KeySpec* find_key(const std::string& key)
{
    for (const auto& spec : keys())
        if (spec.key == key)
            return &spec;
    return nullptr;
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::string item;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        item = trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!item.empty()) {
            double v = 0.0;
            if (!parse_double(item, v))
                throw ConfigError(0, "'" + item + "' is not a number");
            out.push_back(v);
        } else if (comma != std::string::npos) {
            throw ConfigError(0, "empty list element in '" + text + "'");
        }
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

ParamSet ParamSet::defaults()
{
    ParamSet p;
    for (const auto& spec : keys()) {
        p.values_[spec.key] = spec.default_value;
        p.sources_[spec.key] = "default";
    }
    return p;
}

void ParamSet::set(const std::string& key, const std::string& value, const std::string& source,
                   std::size_t line)
{
    const KeySpec* spec = find_key(key);
    if (!spec)
        throw ConfigError(line, "unknown key '" + key + "'");

    switch (spec->type) {
    case KeyType::number: {
        double v = 0.0;
        if (!parse_double(value, v))
            throw ConfigError(line, key + ": '" + value + "' is not a number");
        check_bound(*spec, v, line);
        break;
    }
    case KeyType::integer: {
        int v = 0;
        if (!parse_int(value, v))
            throw ConfigError(line, key + ": '" + value + "' is not an integer");
        check_bound(*spec, v, line);
        break;
    }
    case KeyType::list: {
        std::vector<double> items;
        try {
            items = parse_list(value);
        } catch (const ConfigError& e) {
            throw ConfigError(line, key + ": " + e.what());
        }
        for (double v : items)
            check_bound(*spec, v, line);
        break;
    }
    case KeyType::text:
        if (!spec->choices.empty() &&
            std::find(spec->choices.begin(), spec->choices.end(), value) == spec->choices.end())
            throw ConfigError(line, key + ": unsupported value '" + value + "'");
        if (key == "sweep.key") {
            const KeySpec* target = find_key(value);
            if (!target || (target->type != KeyType::number && target->type != KeyType::integer))
                throw ConfigError(line, "sweep.key must name a numeric key, got '" + value + "'");
        }
        break;
    }
    values_[key] = value;
    sources_[key] = source;
}

const std::string& ParamSet::raw(const std::string& key) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError(0, "unknown key '" + key + "'");
    return it->second;
}

double ParamSet::number(const std::string& key) const
{
    double v = 0.0;
    if (!parse_double(raw(key), v))
        throw ConfigError(0, key + " is not numeric");
    return v;
}

int ParamSet::integer(const std::string& key) const
{
    int v = 0;
    if (!parse_int(raw(key), v))
        throw ConfigError(0, key + " is not an integer");
    return v;
}

const std::string& ParamSet::text(const std::string& key) const { return raw(key); }

std::vector<double> ParamSet::list(const std::string& key) const { return parse_list(raw(key)); }

const std::string& ParamSet::source(const std::string& key) const
{
    const auto it = sources_.find(key);
    if (it == sources_.end())
        throw ConfigError(0, "unknown key '" + key + "'");
    return it->second;
}

void apply_config_file(ParamSet& params, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(0, "cannot open config file '" + path.string() + "'");

    std::set<std::string> seen;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(number, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(number, "missing key");
        if (!seen.insert(key).second)
            throw ConfigError(number, "duplicate key '" + key + "'");
        params.set(key, value, "config", number);
    }
}

ParamSet parse_config(const std::filesystem::path& path)
{
    ParamSet params = ParamSet::defaults();
    apply_config_file(params, path);
    return params;
}

void apply_override(ParamSet& params, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError(0, "override '" + assignment + "' is not of the form key=value");
    params.set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), "override");
}

} // namespace polariton::config
