#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dib/sweep.hpp"

using namespace dib;

namespace {

std::string config_error(const std::string& text) {
    try {
        parse_sweep_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

SweepSpec small_spec() {
    SweepSpec spec;
    spec.mode = SweepMode::capacity_sweep;
    spec.grid = {2.0, 8.0, 20.0};
    spec.snr_db = 20.0;
    spec.base = ChannelConfig{2, 2, 3, 1.0, 0.0, 0.0};
    spec.qci_bits = {1, 2};
    spec.mc = {256, 5, 5000};
    return spec;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("parse_sweep_config - full document") {
    const SweepSpec spec = parse_sweep_config(R"(
mode: capacity_sweep
grid: [5, 10, 15]
snr_db: 30
channel: {M: 2, N1: 3, N2: 4, C1: 1, C2: 2}
qci_bits: [0, 3]
monte_carlo: {samples: 77, seed: 18446744073709551615, grid_samples: 1000}
output: {path: out.json, format: json}
threads: 2
)");
    CHECK(spec.mode == SweepMode::capacity_sweep);
    CHECK(spec.grid == std::vector<double>{5, 10, 15});
    CHECK(spec.snr_db == 30.0);
    CHECK(spec.base.m == 2);
    CHECK(spec.base.n2 == 4);
    CHECK(spec.base.c2 == 2.0);
    CHECK(spec.qci_bits == std::vector<int>{0, 3});
    CHECK(spec.mc.samples == 77);
    CHECK(spec.mc.seed == 18446744073709551615ULL);
    CHECK(spec.output_path == "out.json");
    CHECK(spec.format == OutputFormat::json);
    CHECK(spec.threads == 2);
}

TEST_CASE("parse_sweep_config - diagnostics carry line and field") {
    CHECK(config_error("mode: snr_sweep\ngrid: []\n").find("line 2: field 'grid'") != std::string::npos);
    CHECK(config_error("mode: snr_sweep\ngrid: [10, 5]\n").find("strictly increasing") != std::string::npos);
    CHECK(config_error("mode: snr_sweep\ngrid: [1]\nchannel: {M: 0}\n").find("field 'channel.M'") != std::string::npos);
    CHECK(config_error("mode: snr_sweep\ngrid: [1]\nbogus: 1\n").find("line 3: field 'bogus': unknown key") != std::string::npos);
    CHECK(config_error("mode: sideways\ngrid: [1]\n").find("field 'mode'") != std::string::npos);
    CHECK(config_error("grid: [1]\n").find("field 'mode': required") != std::string::npos);
    CHECK(config_error("mode: snr_sweep\ngrid: [1, x]\n").find("field 'grid[1]': expected number") != std::string::npos);
    CHECK(config_error("mode: snr_sweep\ngrid: [1]\nqci_bits: [-1]\n").find("qci_bits") != std::string::npos);
    CHECK(config_error("mode: snr_sweep\ngrid: [1]\nmonte_carlo: {samples: 0}\n").find("monte_carlo.samples") != std::string::npos);
    CHECK(config_error("mode: [unclosed\n").find("line") != std::string::npos);
    CHECK(config_error("").find("empty") != std::string::npos);
    CHECK(config_error("mode: single_point\ngrid: [1, 2]\n").find("single_point") != std::string::npos);
    CHECK_THROWS_AS(load_sweep_config("/nonexistent/config.yaml"), ConfigError);
}

TEST_CASE("run_sweep - empty grid is rejected before any work") {
    SweepSpec spec = small_spec();
    spec.grid.clear();
    CHECK_THROWS_AS(run_sweep(spec), ConfigError);
}

TEST_CASE("presets") {
    const SweepSpec fig2 = preset("fig2");
    CHECK(fig2.mode == SweepMode::snr_sweep);
    CHECK(fig2.grid == std::vector<double>{0, 10, 20, 30, 40, 50});
    CHECK(fig2.base.c1 == 40.0);
    CHECK(fig2.qci_bits == std::vector<int>{1, 2, 3, 4});
    const SweepSpec fig3 = preset("fig3");
    CHECK(fig3.mode == SweepMode::capacity_sweep);
    CHECK(fig3.grid.front() == 5.0);
    CHECK(fig3.grid.back() == 60.0);
    CHECK(fig3.snr_db == 40.0);
    CHECK_THROWS_AS(preset("fig9"), ConfigError);
}

TEST_CASE("run_sweep - rows, infeasible cells and CSV layout") {
    SweepSpec spec = small_spec();
    const SweepResult r = run_sweep(spec);
    REQUIRE(r.points.size() == 3);
    CHECK_FALSE(r.any_failure());
    // H_sum = M B = 2 and 4 bits: C = 2 admits neither grid, C = 8 both.
    CHECK(r.points[0].r_lb1.at(1).status == QciCell::Status::infeasible);
    CHECK(r.points[0].r_lb1.at(2).status == QciCell::Status::infeasible);
    CHECK(r.points[1].r_lb1.at(2).status == QciCell::Status::ok);
    for (const RatePoint& p : r.points) {
        CHECK(p.snr_db == 20.0);
        REQUIRE(p.r_ub);
        for (const auto& [bits, cell] : p.r_lb1)
            if (cell.status == QciCell::Status::ok) CHECK(cell.value <= *p.r_ub);
        CHECK(*p.r_lb2 <= *p.r_ub + 3.0 * *p.r_lb2_stderr);
    }

    const std::string csv = to_csv(r);
    CHECK(count_lines(csv) == 4);
    CHECK(csv.substr(0, csv.find('\n')) == "snr_db,c_bits,r_ub,r_lb1_B1,r_lb1_B2,r_lb2,r_lb2_stderr");
    std::istringstream lines(csv);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(row.find(",NA,NA,") != std::string::npos);
    CHECK(row.rfind("20,2,", 0) == 0);
}

TEST_CASE("run_sweep - deterministic across thread counts") {
    SweepSpec spec = small_spec();
    const std::string serial = to_csv(run_sweep(spec));
    spec.threads = 3;
    const SweepResult par = run_sweep(spec);
    CHECK(to_csv(par) == serial);
    spec.mc.seed = 6;
    CHECK(to_csv(run_sweep(spec)) != serial);
}

TEST_CASE("run_sweep - per-point errors do not abort the sweep") {
    SweepSpec spec = small_spec();
    spec.base.m = 3;  // wider than relay 1, so channel inversion is impossible
    const SweepResult r = run_sweep(spec);
    CHECK(r.any_failure());
    for (const RatePoint& p : r.points) {
        CHECK(p.r_ub);
        CHECK(p.r_lb2);
        CHECK(p.r_lb1.at(1).status == QciCell::Status::failed);
    }
    CHECK(to_csv(r).find("NA") != std::string::npos);
}

TEST_CASE("to_json - metadata and bit-exact round trip") {
    SweepSpec spec = small_spec();
    spec.format = OutputFormat::json;
    const SweepResult r = run_sweep(spec);
    const std::string text = to_json(r);
    CHECK(text.find("\"version\": \"0.1.0\"") != std::string::npos);
    CHECK(text.find("\"seed\": 5") != std::string::npos);
    CHECK(text.find("\"infeasible\"") != std::string::npos);

    const SweepResult back = parse_result_json(text);
    CHECK(back.points == r.points);
    CHECK(back.spec.mc.seed == spec.mc.seed);
    CHECK(back.spec.grid == spec.grid);
    CHECK(to_json(back) == text);

    // Awkward doubles survive too.
    SweepResult odd = r;
    odd.points[0].r_ub = 0.1 + 0.2;
    odd.points[0].r_lb2 = 1e-310;
    odd.points[0].r_lb1[1] = QciCell::failed();
    CHECK(parse_result_json(to_json(odd)).points == odd.points);
}

TEST_CASE("emit - files and errors") {
    SweepSpec spec = small_spec();
    spec.grid = {8.0};
    const SweepResult r = run_sweep(spec);
    const auto path = std::filesystem::temp_directory_path() / "dib_emit_test.csv";
    emit(r, path);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == to_csv(r));
    std::filesystem::remove(path);

    CHECK_THROWS(emit(r, std::filesystem::path("/nonexistent/dir/out.csv")));
    SweepResult empty{spec, {}};
    CHECK_THROWS_AS(emit(empty, std::cout), std::invalid_argument);
}

TEST_CASE("format_number - shortest round trip") {
    CHECK(format_number(40.0) == "40");
    CHECK(format_number(0.1) == "0.1");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}
