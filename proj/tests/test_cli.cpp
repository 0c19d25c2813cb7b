#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ghartree/io.hpp"
#include "../src/runconfig.hpp"

using namespace ghartree;
using nlohmann::json;

namespace {

std::filesystem::path temp_dir(const char* tag) {
    auto dir = std::filesystem::temp_directory_path() / (std::string("ghartree_test_") + tag);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// set by ctest; the subprocess checks are skipped in bare runs
const char* cli_path() { return std::getenv("GHARTREE_CLI"); }

int run_cli(const std::string& args, std::string* stdout_text = nullptr) {
    const std::filesystem::path out = temp_dir("cli_io") / "stdout.txt";
    const std::string cmd = std::string(cli_path()) + " " + args + " > " + out.string() + " 2> " +
                            out.string() + ".err";
    const int rc = std::system(cmd.c_str());
    if (stdout_text != nullptr)
        *stdout_text = slurp(out);
    return WEXITSTATUS(rc);
}

} // namespace

TEST_CASE("run config parses and rejects unknown keys") {
    const RunConfig cfg = parse_config({"N=3", "p=5", "b=1", "n=64", "L=10", "beta=0.7"});
    CHECK(cfg.params.dimension == 3);
    CHECK(cfg.params.power == 5.0);
    CHECK(cfg.grid_n == 64);
    CHECK(cfg.beta == 0.7);
    CHECK_THROWS_AS(parse_config({"unknown_key=1"}), ConfigError);
    CHECK_THROWS_AS(parse_config({"N=three"}), ConfigError);
    CHECK_THROWS_AS(parse_config({"no-equals"}), ConfigError);
    CHECK_THROWS_AS(parse_config({"rule=banana"}), ConfigError);
}

TEST_CASE("config files support comments and blanks") {
    const auto dir = temp_dir("cfg");
    const auto path = dir / "run.cfg";
    std::ofstream(path) << "# a comment\nN=3\n  p=3 # trailing\n\nb=1\n";
    const auto entries = read_config_file(path.string());
    REQUIRE(entries.size() == 3);
    const RunConfig cfg = parse_config(entries);
    CHECK(cfg.params.power == 3.0);
    CHECK_THROWS_AS(read_config_file((dir / "missing.cfg").string()), ConfigError);
}

TEST_CASE("canonical config text is stable and hash-friendly") {
    const RunConfig a = parse_config({"N=3", "p=3", "b=1"});
    const RunConfig b = parse_config({"b=1", "p=3", "N=3"});
    CHECK(a.canonical_text() == b.canonical_text());
    CHECK(fnv1a64(a.canonical_text()) == fnv1a64(b.canonical_text()));
    const RunConfig c = parse_config({"N=3", "p=3", "b=1", "beta=1.5"});
    CHECK(fnv1a64(a.canonical_text()) != fnv1a64(c.canonical_text()));
    CHECK(hash_hex(fnv1a64(a.canonical_text())).size() == 16);
}

TEST_CASE("GHFD checkpoint round trip") {
    const Grid grid(2, 16, 4.0);
    ComplexField f(grid);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        f.values[i] = Complex(std::sin(0.1 * static_cast<double>(i)),
                              std::cos(0.2 * static_cast<double>(i)));
    const auto path = temp_dir("ckpt") / "field.ghfd";
    write_checkpoint(path.string(), f);
    const ComplexField g = read_checkpoint(path.string());
    CHECK(g.grid == grid);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(f.values[i] == g.values[i]); // bit-exact
    // corrupt magic
    std::ofstream(path, std::ios::binary) << "NOPE";
    CHECK_THROWS(read_checkpoint(path.string()));
}

TEST_CASE("csv rows carry the observables schema") {
    CHECK(csv_header(3) == "t,mass,energy,grad_norm_sq,z,variance,variance_rate,px,py,pz");
    ObservableSet s;
    s.time = 0.5;
    s.mass = 1.25;
    s.dim = 2;
    const std::string row = csv_row(s);
    CHECK(row.substr(0, 8) == "0.5,1.25");
    CHECK(std::count(row.begin(), row.end(), ',') == 8);
}

TEST_CASE("cli: params subcommand emits the criticality report") {
    if (cli_path() == nullptr)
        return; // exercised through ctest
    const auto out = temp_dir("cli_params");
    std::string text;
    const int rc = run_cli("params N=3 p=5 b=1 --out " + out.string(), &text);
    CHECK(rc == 0);
    const json j = json::parse(text);
    CHECK(j["s_c"].get<double>() == doctest::Approx(1.0));
    CHECK(j["class"] == "energy-critical");
    CHECK(std::filesystem::exists(out / "params.json"));
}

TEST_CASE("cli: invalid configs exit 2 with a JSON error") {
    if (cli_path() == nullptr)
        return;
    const auto out = temp_dir("cli_bad");
    CHECK(run_cli("params N=3 p=1 b=1 --out " + out.string()) == 2);
    CHECK(run_cli("params bogus_key=1 --out " + out.string()) == 2);
    CHECK(run_cli("evolve N=3 p=3 b=1 dt0=1e-9 dt_floor=1e-3 --out " + out.string()) == 2);
}

TEST_CASE("cli: supercritical thresholds reproduce the worked values") {
    if (cli_path() == nullptr)
        return;
    const auto out = temp_dir("cli_thresh");
    std::string text;
    CHECK(run_cli("thresholds N=3 p=7 b=1 --out " + out.string(), &text) == 0);
    const json j = json::parse(slurp(out / "thresholds.json"));
    CHECK(j["thresholds"]["negative_energy"].get<double>() ==
          doctest::Approx(1.3946799).epsilon(1e-6));
    CHECK(j["thresholds"]["criterion_blowup"].get<double>() ==
          doctest::Approx(1.17278).epsilon(1e-4));
}

TEST_CASE("cli: evolve writes deterministic trajectories and resumable checkpoints") {
    if (cli_path() == nullptr)
        return;
    const auto out1 = temp_dir("cli_ev1");
    const auto out2 = temp_dir("cli_ev2");
    const std::string common = "evolve N=3 p=3 b=1 n=16 L=6 beta=0.5 gamma=1 dt0=0.005 "
                               "t_end=0.05 record_stride=2 --threads 1 --out ";
    CHECK(run_cli(common + out1.string()) == 0);
    CHECK(run_cli(common + out2.string()) == 0);
    const std::string csv1 = slurp(out1 / "trajectory.csv");
    CHECK(csv1 == slurp(out2 / "trajectory.csv")); // byte-identical at fixed threads
    CHECK(csv1.find("t,mass,energy,grad_norm_sq,z,variance,variance_rate,px,py,pz") !=
          std::string::npos);
    CHECK(std::filesystem::exists(out1 / "final.ghfd"));

    // resume from the final checkpoint
    const auto out3 = temp_dir("cli_ev3");
    CHECK(run_cli(common + out3.string() + " --resume " + (out1 / "final.ghfd").string()) == 0);
    const json j = json::parse(slurp(out3 / "evolve.json"));
    CHECK(j["status"] == "reached-t-end");
}

TEST_CASE("cli: sweep emits the band structure") {
    if (cli_path() == nullptr)
        return;
    const auto out = temp_dir("cli_sweep");
    CHECK(run_cli("sweep N=3 p=7 b=1 beta_min=0.5 beta_max=1.6 beta_steps=12 --threads 2 --out " +
                  out.string()) == 0);
    const std::string csv = slurp(out / "sweep.csv");
    CHECK(csv.find("undetermined") != std::string::npos);
    CHECK(csv.find("criterion-blowup") != std::string::npos);
    CHECK(csv.find("negative-energy-blowup") != std::string::npos);
}
