#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dib/matrix_stat.hpp"
#include "dib/qci.hpp"
#include "dib/sweep.hpp"

namespace dib {

namespace {

using nlohmann::json;

const char* mode_name(SweepMode m) {
    switch (m) {
        case SweepMode::snr_sweep: return "snr_sweep";
        case SweepMode::capacity_sweep: return "capacity_sweep";
        case SweepMode::single_point: return "single_point";
    }
    return "snr_sweep";
}

SweepMode mode_from(const std::string& s) {
    if (s == "snr_sweep") return SweepMode::snr_sweep;
    if (s == "capacity_sweep") return SweepMode::capacity_sweep;
    if (s == "single_point") return SweepMode::single_point;
    throw std::invalid_argument("unknown sweep mode '" + s + "'");
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_number(*v) : "NA"; }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string to_csv(const SweepResult& result) {
    std::ostringstream os;
    os << "snr_db,c_bits,r_ub";
    for (int b : result.spec.qci_bits) os << ",r_lb1_B" << b;
    os << ",r_lb2,r_lb2_stderr\n";
    for (const RatePoint& p : result.points) {
        os << format_number(p.snr_db) << ',' << format_number(p.c_bits) << ',' << optional_cell(p.r_ub);
        for (int b : result.spec.qci_bits) {
            const auto it = p.r_lb1.find(b);
            const bool ok = it != p.r_lb1.end() && it->second.status == QciCell::Status::ok;
            os << ',' << (ok ? format_number(it->second.value) : std::string("NA"));
        }
        os << ',' << optional_cell(p.r_lb2) << ',' << optional_cell(p.r_lb2_stderr) << '\n';
    }
    return os.str();
}

std::string to_json(const SweepResult& result) {
    const SweepSpec& s = result.spec;
    const Quadrature quad;
    const QciOptions qci;
    json meta = {
        {"version", kVersion},
        {"mode", mode_name(s.mode)},
        {"seed", s.mc.seed},
        {"samples", s.mc.samples},
        {"grid_samples", s.mc.grid_samples},
        {"snr_db", s.snr_db},
        {"grid", s.grid},
        {"qci_bits", s.qci_bits},
        {"channel", {{"M", s.base.m}, {"N1", s.base.n1}, {"N2", s.base.n2}, {"C1", s.base.c1}, {"C2", s.base.c2}}},
        {"tolerances",
         {{"quadrature_abs", quad.abs_tol},
          {"quadrature_rel", quad.rel_tol},
          {"water_level_log_width", 1e-13},
          {"qci_duality_gap", qci.tol},
          {"scalar_solver", qci.scalar_tol}}},
    };
    json points = json::array();
    for (const RatePoint& p : result.points) {
        json lb1 = json::object();
        for (const auto& [bits, cell] : p.r_lb1) {
            const std::string key = std::to_string(bits);
            switch (cell.status) {
                case QciCell::Status::ok: lb1[key] = cell.value; break;
                case QciCell::Status::infeasible: lb1[key] = "infeasible"; break;
                case QciCell::Status::failed: lb1[key] = "error"; break;
            }
        }
        points.push_back({{"snr_db", p.snr_db},
                          {"c_bits", p.c_bits},
                          {"r_ub", optional_json(p.r_ub)},
                          {"r_lb1", lb1},
                          {"r_lb2", optional_json(p.r_lb2)},
                          {"r_lb2_stderr", optional_json(p.r_lb2_stderr)},
                          {"errors", p.errors}});
    }
    return json{{"metadata", meta}, {"points", points}}.dump(2) + "\n";
}

SweepResult parse_result_json(const std::string& text) {
    const json doc = json::parse(text);
    const json& meta = doc.at("metadata");
    SweepResult result;
    SweepSpec& s = result.spec;
    s.mode = mode_from(meta.at("mode").get<std::string>());
    s.mc.seed = meta.at("seed").get<std::uint64_t>();
    s.mc.samples = meta.at("samples").get<std::size_t>();
    s.mc.grid_samples = meta.at("grid_samples").get<std::size_t>();
    s.snr_db = meta.at("snr_db").get<double>();
    s.grid = meta.at("grid").get<std::vector<double>>();
    s.qci_bits = meta.at("qci_bits").get<std::vector<int>>();
    const json& ch = meta.at("channel");
    s.base.m = ch.at("M").get<int>();
    s.base.n1 = ch.at("N1").get<int>();
    s.base.n2 = ch.at("N2").get<int>();
    s.base.c1 = ch.at("C1").get<double>();
    s.base.c2 = ch.at("C2").get<double>();
    s.format = OutputFormat::json;

    for (const json& jp : doc.at("points")) {
        RatePoint p;
        p.snr_db = jp.at("snr_db").get<double>();
        p.c_bits = jp.at("c_bits").get<double>();
        p.r_ub = optional_from(jp.at("r_ub"));
        for (const auto& [key, cell] : jp.at("r_lb1").items()) {
            const int bits = std::stoi(key);
            if (cell.is_number())
                p.r_lb1[bits] = QciCell::ok(cell.get<double>());
            else if (cell.get<std::string>() == "infeasible")
                p.r_lb1[bits] = QciCell::infeasible();
            else
                p.r_lb1[bits] = QciCell::failed();
        }
        p.r_lb2 = optional_from(jp.at("r_lb2"));
        p.r_lb2_stderr = optional_from(jp.at("r_lb2_stderr"));
        p.errors = jp.at("errors").get<std::vector<std::string>>();
        result.points.push_back(std::move(p));
    }
    return result;
}

void emit(const SweepResult& result, std::ostream& out) {
    if (result.points.empty()) throw std::invalid_argument("emit: no points to write");
    out << (result.spec.format == OutputFormat::csv ? to_csv(result) : to_json(result));
    if (!out) throw std::runtime_error("emit: write failed");
}

void emit(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit: cannot open " + path.string());
    emit(result, out);
    out.close();
    if (!out) throw std::runtime_error("emit: write failed for " + path.string());
}

}  // namespace dib
