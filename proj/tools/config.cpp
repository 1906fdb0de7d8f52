#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace csgauge::cli {

namespace {

using nlohmann::json;

// Hands out typed values and remembers which keys were read, so that
// leftovers can be reported as unknown.
class Reader {
public:
    explicit Reader(const std::string& text) {
        try {
            doc_ = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!doc_.is_object()) throw ConfigError("config must be a JSON object");
        for (const auto& [k, v] : doc_.items())
            if (v.is_structured()) throw ConfigError("config key '" + k + "' must hold a scalar value");
    }

    template <class T>
    void get(const std::string& key, T& out) {
        seen_.insert(key);
        auto it = doc_.find(key);
        if (it == doc_.end()) return;
        out = convert<T>(key, *it);
    }

    template <class T>
    void require(const std::string& key, T& out) {
        if (!doc_.contains(key)) throw ConfigError("missing required config key '" + key + "'");
        get(key, out);
    }

    void finish() const {
        for (const auto& [k, v] : doc_.items())
            if (!seen_.count(k)) throw ConfigError("unknown config key '" + k + "'");
    }

private:
    template <class T>
    static T convert(const std::string& key, const json& v) {
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) throw ConfigError("config key '" + key + "' must be a boolean");
            return v.get<bool>();
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
            return v.get<std::string>();
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
            if (!v.is_number_unsigned()) throw ConfigError("config key '" + key + "' must be a nonnegative integer");
            return v.get<std::uint64_t>();
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
            return v.get<T>();
        } else {
            if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
            const double d = v.get<double>();
            if (!std::isfinite(d)) throw ConfigError("config key '" + key + "' must be finite");
            return d;
        }
    }

    json doc_;
    std::set<std::string> seen_;
};

void check(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

void read_packets(Reader& r, const std::string& prefix, PacketSpec& p) {
    r.get(prefix + "amplitude", p.amplitude);
    r.get(prefix + "width", p.width);
    r.get(prefix + "packets", p.packets);
    r.get(prefix + "max_carrier", p.max_carrier);
    r.get(prefix + "spread", p.spread);
    check(p.amplitude >= 0.0, "'" + prefix + "amplitude' must be >= 0");
    check(p.width > 0.0, "'" + prefix + "width' must be > 0");
    check(p.packets >= 0, "'" + prefix + "packets' must be >= 0");
    check(p.max_carrier >= 0.0 && p.spread >= 0.0, "'" + prefix + "max_carrier' and '" + prefix + "spread' must be >= 0");
}

}  // namespace

SimulateConfig parse_simulate(const std::string& text) {
    Reader r(text);
    SimulateConfig c;
    r.get("system", c.system);
    r.get("n1", c.n1);
    r.get("n2", c.n2);
    r.get("length", c.length);
    r.get("dt", c.dt);
    r.get("T", c.T);
    r.get("mass", c.mass);
    r.get("scheme", c.scheme);
    r.get("picard_nodes", c.picard_nodes);
    r.get("picard_max_iterations", c.picard_max_iterations);
    r.get("picard_tolerance", c.picard_tolerance);
    r.require("seed", c.seed);
    read_packets(r, "", c.field);
    read_packets(r, "gauge_", c.gauge);
    r.get("dealias", c.dealias);
    r.get("couple_gauge", c.couple_gauge);
    r.get("compensate_mass", c.compensate_mass);
    r.get("sample_every", c.sample_every);
    r.get("snapshot_every", c.snapshot_every);
    r.get("diagnostics_csv", c.diagnostics_csv);
    r.get("snapshot_prefix", c.snapshot_prefix);
    r.finish();

    check(c.system == "csd" || c.system == "csh", "'system' must be \"csd\" or \"csh\"");
    check(c.scheme == "exponential" || c.scheme == "picard", "'scheme' must be \"exponential\" or \"picard\"");
    check(c.n1 >= 4 && c.n2 >= 4 && c.n1 % 2 == 0 && c.n2 % 2 == 0, "'n1' and 'n2' must be even and >= 4");
    check(c.length > 0.0, "'length' must be > 0");
    check(c.dt > 0.0 && c.T > 0.0, "'dt' and 'T' must be > 0");
    check(c.mass >= 0.0, "'mass' must be >= 0");
    check(c.system == "csd" || c.mass == 0.0, "'mass' applies to the csd system only");
    const double steps = std::round(c.T / c.dt);
    check(steps >= 1.0 && steps < 1e9 && std::abs(steps * c.dt - c.T) <= 1e-9 * c.T, "'T' must be a multiple of 'dt'");
    c.steps = static_cast<int>(steps);
    check(c.picard_nodes >= 5 && (c.picard_nodes - 1) % 4 == 0, "'picard_nodes' must be 4k + 1 with k >= 1");
    check(c.picard_max_iterations >= 1, "'picard_max_iterations' must be >= 1");
    check(c.picard_tolerance > 0.0, "'picard_tolerance' must be > 0");
    check(c.scheme != "picard" || c.steps % (c.picard_nodes - 1) == 0,
          "with the picard scheme T / dt must be a multiple of picard_nodes - 1");
    check(c.sample_every >= 1, "'sample_every' must be >= 1");
    check(c.snapshot_every >= 0 && c.snapshot_every % c.sample_every == 0,
          "'snapshot_every' must be a nonnegative multiple of 'sample_every'");
    check(!c.diagnostics_csv.empty() && !c.snapshot_prefix.empty(), "output names must be nonempty");
    return c;
}

FeasibilityConfig parse_feasibility(const std::string& text) {
    Reader r(text);
    FeasibilityConfig c;
    std::string system = "csd";
    r.get("system", system);
    r.get("s_min", c.scan.s_min);
    r.get("s_max", c.scan.s_max);
    r.get("b_min", c.scan.b_min);
    r.get("b_max", c.scan.b_max);
    r.get("eps0", c.scan.eps0);
    r.get("resolution", c.scan.resolution);
    r.get("eps", c.eps);
    r.get("region_csv", c.region_csv);
    r.get("report_jsonl", c.report_jsonl);
    r.finish();
    try {
        c.scan.system = xsb::parse_system(system);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    check(c.scan.s_max > c.scan.s_min && c.scan.b_max > c.scan.b_min, "scan ranges must be nonempty");
    check(c.scan.resolution >= 64, "'resolution' must be >= 64");
    check(c.scan.eps0 > 0.0 && c.eps > 0.0, "'eps0' and 'eps' must be > 0");
    return c;
}

NullformsConfig parse_nullforms(const std::string& text) {
    Reader r(text);
    NullformsConfig c;
    r.get("nt", c.setup.nt);
    r.get("n", c.setup.n);
    r.get("tlength", c.setup.tlength);
    r.get("length", c.setup.length);
    r.get("trials", c.setup.trials);
    r.require("seed", c.setup.seed);
    r.get("probe_samples", c.probe_samples);
    r.get("dominance_csv", c.dominance_csv);
    r.finish();
    check(c.setup.nt >= 2 && c.setup.n >= 2 && c.setup.nt % 2 == 0 && c.setup.n % 2 == 0,
          "'nt' and 'n' must be even and >= 2");
    check(c.setup.nt <= kNullformLatticeCap && c.setup.n <= kNullformLatticeCap,
          "'nt' and 'n' must not exceed " + std::to_string(kNullformLatticeCap));
    check(c.setup.tlength > 0.0 && c.setup.length > 0.0, "'tlength' and 'length' must be > 0");
    check(c.setup.trials >= 1 && c.probe_samples >= 1, "'trials' and 'probe_samples' must be >= 1");
    return c;
}

NormsConfig parse_norms(const std::string& text) {
    Reader r(text);
    NormsConfig c;
    r.require("snapshot", c.snapshot);
    r.get("s", c.s);
    r.get("output", c.output);
    r.finish();
    return c;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace csgauge::cli
