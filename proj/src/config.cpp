#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "dib/sweep.hpp"

namespace dib {

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& what) {
    std::ostringstream os;
    const YAML::Mark mark = node.Mark();
    if (mark.line >= 0) os << "line " << mark.line + 1 << ": ";
    os << "field '" << field << "': " << what;
    throw ConfigError(os.str());
}

void check_keys(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
    if (!node.IsMap()) fail(node, where.empty() ? "<root>" : where, "expected a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.contains(key)) fail(kv.first, where.empty() ? key : where + "." + key, "unknown key");
    }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& field, const char* type_name) {
    if (!node.IsScalar()) fail(node, field, std::string("expected ") + type_name);
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        fail(node, field, std::string("expected ") + type_name);
    }
}

template <typename T>
std::vector<T> sequence(const YAML::Node& node, const std::string& field, const char* type_name) {
    if (!node.IsSequence()) fail(node, field, "expected a list");
    std::vector<T> out;
    for (std::size_t i = 0; i < node.size(); ++i)
        out.push_back(scalar<T>(node[i], field + "[" + std::to_string(i) + "]", type_name));
    return out;
}

template <typename T>
void optional_scalar(const YAML::Node& parent, const char* key, const std::string& field, const char* type_name, T& dst) {
    if (const YAML::Node node = parent[key]) dst = scalar<T>(node, field, type_name);
}

}  // namespace

SweepSpec parse_sweep_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError("line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (!root || root.IsNull()) throw ConfigError("empty configuration document");
    check_keys(root, "", {"mode", "grid", "snr_db", "channel", "qci_bits", "monte_carlo", "output", "threads"});

    SweepSpec spec;
    const YAML::Node mode = root["mode"];
    if (!mode) fail(root, "mode", "required");
    const auto mode_name = scalar<std::string>(mode, "mode", "string");
    if (mode_name == "snr_sweep")
        spec.mode = SweepMode::snr_sweep;
    else if (mode_name == "capacity_sweep")
        spec.mode = SweepMode::capacity_sweep;
    else if (mode_name == "single_point")
        spec.mode = SweepMode::single_point;
    else
        fail(mode, "mode", "expected one of snr_sweep, capacity_sweep, single_point");

    const YAML::Node grid = root["grid"];
    if (!grid) fail(root, "grid", "required");
    spec.grid = sequence<double>(grid, "grid", "number");
    if (spec.grid.empty()) fail(grid, "grid", "must not be empty");
    for (std::size_t i = 1; i < spec.grid.size(); ++i)
        if (!(spec.grid[i] > spec.grid[i - 1])) fail(grid[i], "grid", "values must be strictly increasing");

    optional_scalar(root, "snr_db", "snr_db", "number", spec.snr_db);

    if (const YAML::Node ch = root["channel"]) {
        check_keys(ch, "channel", {"M", "N1", "N2", "C1", "C2"});
        optional_scalar(ch, "M", "channel.M", "integer", spec.base.m);
        optional_scalar(ch, "N1", "channel.N1", "integer", spec.base.n1);
        optional_scalar(ch, "N2", "channel.N2", "integer", spec.base.n2);
        optional_scalar(ch, "C1", "channel.C1", "number", spec.base.c1);
        optional_scalar(ch, "C2", "channel.C2", "number", spec.base.c2);
        for (const char* key : {"M", "N1", "N2"})
            if (ch[key] && ch[key].as<int>() < 1) fail(ch[key], std::string("channel.") + key, "must be >= 1");
        for (const char* key : {"C1", "C2"})
            if (ch[key] && !(ch[key].as<double>() >= 0.0)) fail(ch[key], std::string("channel.") + key, "must be >= 0");
    }

    if (const YAML::Node bits = root["qci_bits"]) {
        spec.qci_bits = sequence<int>(bits, "qci_bits", "integer");
        for (std::size_t i = 0; i < spec.qci_bits.size(); ++i)
            if (spec.qci_bits[i] < 0 || spec.qci_bits[i] > 12) fail(bits[i], "qci_bits", "each value must lie in [0, 12]");
    }

    if (const YAML::Node mc = root["monte_carlo"]) {
        check_keys(mc, "monte_carlo", {"samples", "seed", "grid_samples"});
        optional_scalar(mc, "samples", "monte_carlo.samples", "integer", spec.mc.samples);
        optional_scalar(mc, "seed", "monte_carlo.seed", "unsigned 64-bit integer", spec.mc.seed);
        optional_scalar(mc, "grid_samples", "monte_carlo.grid_samples", "integer", spec.mc.grid_samples);
        if (mc["samples"] && spec.mc.samples < 1) fail(mc["samples"], "monte_carlo.samples", "must be >= 1");
    }

    if (const YAML::Node out = root["output"]) {
        check_keys(out, "output", {"path", "format"});
        optional_scalar(out, "path", "output.path", "string", spec.output_path);
        if (const YAML::Node fmt = out["format"]) {
            const auto f = scalar<std::string>(fmt, "output.format", "string");
            if (f == "csv")
                spec.format = OutputFormat::csv;
            else if (f == "json")
                spec.format = OutputFormat::json;
            else
                fail(fmt, "output.format", "expected csv or json");
        }
    }

    if (const YAML::Node th = root["threads"]) {
        const int t = scalar<int>(th, "threads", "integer");
        if (t < 1) fail(th, "threads", "must be >= 1");
        spec.threads = static_cast<unsigned>(t);
    }

    spec.validate();
    return spec;
}

SweepSpec load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sweep_config(buf.str());
}

}  // namespace dib
