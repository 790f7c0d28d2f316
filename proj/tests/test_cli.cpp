#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "mtpa/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

// Each test case works in its own directory so artifact assertions cannot
// bleed between cases.
fs::path case_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "mtpa-cli-tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

RunResult run_cli(const fs::path& cwd, const std::string& args, const std::string& env = "") {
    fs::path out_path = cwd / "_stdout.txt";
    fs::path err_path = cwd / "_stderr.txt";
    std::string cmd = "cd " + cwd.string() + " && " + (env.empty() ? "" : env + " ") +
                      std::string(MTPA_CLI_PATH) + " " + args + " > " + out_path.string() +
                      " 2> " + err_path.string();
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    RunResult r;
    r.code = WEXITSTATUS(rc);
    r.out = mtpa::read_file(out_path.string());
    r.err = mtpa::read_file(err_path.string());
    return r;
}

void write_text(const fs::path& path, const std::string& text) {
    mtpa::write_file(path.string(), text);
}

json load_json(const fs::path& path) { return json::parse(mtpa::read_file(path.string())); }

const std::string kBaConfig = R"(model = "ba"
types = 2
steps = 2000
seed = 11

[batch]
kind = "constant"
value = 1

[initial]
preset = "parallel"

[census]
cap = 10
)";

} // namespace

TEST_CASE("cli: exit codes separate usage errors from runtime failures") {
    auto dir = case_dir("exit-codes");
    CHECK(run_cli(dir, "").code == 2);
    CHECK(run_cli(dir, "--definitely-not-a-flag").code == 2);
    CHECK(run_cli(dir, "simulate").code == 2);          // missing --config
    CHECK(run_cli(dir, "--help").code == 0);

    auto missing = run_cli(dir, "simulate --config nope.toml");
    CHECK(missing.code == 1);
    CHECK(missing.err.find("error") != std::string::npos);

    write_text(dir / "bad.toml", "model = \"zz\"\ntypes = 1\nsteps = 1\n");
    auto bad = run_cli(dir, "simulate --config bad.toml");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("config error") != std::string::npos);
}

TEST_CASE("cli: simulate writes byte-stable artifacts with checksummed manifests") {
    auto dir = case_dir("simulate");
    write_text(dir / "ba.toml", kBaConfig);

    CHECK(run_cli(dir, "simulate --config ba.toml --out a.csv").code == 0);
    CHECK(run_cli(dir, "simulate --config ba.toml --out b.csv").code == 0);
    std::string a = mtpa::read_file((dir / "a.csv").string());
    std::string b = mtpa::read_file((dir / "b.csv").string());
    CHECK(a == b);

    auto census = mtpa::parse_census_csv(a);
    CHECK(census.type_count == 2);
    CHECK(census.census.cap == 10);
    CHECK(census.census.vertex_total == 2002);  // parallel pair + one vertex per step
    CHECK(census.meta.at("seed") == "11");

    json manifest = load_json(dir / "a.csv.manifest.json");
    CHECK(manifest.at("command") == "simulate");
    CHECK(manifest.at("spec").at("model") == "ba");
    CHECK(manifest.at("spec").at("steps") == 2000);
    CHECK(manifest.at("spec").at("seed") == 11);
    CHECK(manifest.contains("wall_clock_seconds"));
    REQUIRE(manifest.at("outputs").size() == 1);
    const auto& entry = manifest.at("outputs").at(0);
    CHECK(entry.at("path") == "a.csv");
    CHECK(entry.at("bytes") == a.size());
    CHECK(entry.at("fnv1a64") == mtpa::fnv1a64_hex(a));
}

TEST_CASE("cli: snapshots and checkpoints come out of one run") {
    auto dir = case_dir("snapshots");
    write_text(dir / "snap.toml", R"(model = "ba"
types = 2
steps = 600
seed = 4

[batch]
kind = "constant"
value = 1

[census]
schedule = [100, 500]
cap = 8
)");
    CHECK(run_cli(dir, "simulate --config snap.toml --out snap.csv --checkpoint-out ck.json")
              .code == 0);

    auto early = mtpa::parse_census_csv(mtpa::read_file((dir / "snap.step100.csv").string()));
    CHECK(early.census.vertex_total == 102);
    auto mid = mtpa::parse_census_csv(mtpa::read_file((dir / "snap.step500.csv").string()));
    CHECK(mid.census.vertex_total == 502);
    auto final_census = mtpa::parse_census_csv(mtpa::read_file((dir / "snap.csv").string()));
    CHECK(final_census.census.vertex_total == 602);

    auto graph = mtpa::parse_checkpoint_json(mtpa::read_file((dir / "ck.json").string()));
    CHECK(graph.step() == 600);
    CHECK(graph.type_count() == 2);

    // all four artifacts are in the manifest
    json manifest = load_json(dir / "snap.csv.manifest.json");
    CHECK(manifest.at("outputs").size() == 4);
}

TEST_CASE("cli: the simulate to compare pipeline closes at realistic scale") {
    auto dir = case_dir("pipeline");
    write_text(dir / "ba.toml", kBaConfig);
    CHECK(run_cli(dir, "simulate --config ba.toml --out census.csv").code == 0);
    CHECK(run_cli(dir, "theory --from-run census.csv --out th.csv").code == 0);

    auto th = mtpa::parse_theory_csv(mtpa::read_file((dir / "th.csv").string()));
    CHECK(th.table.cap == 10);  // inherited from the census cap

    auto cmp = run_cli(dir, "compare census.csv th.csv --out report.json");
    CHECK(cmp.code == 0);
    CHECK(cmp.out.find("sup_distance") != std::string::npos);
    json report = load_json(dir / "report.json");
    CHECK(report.at("n") == 2000);
    CHECK(report.at("cap") == 10);
    CHECK(report.at("sup_distance").get<double>() < 0.05);
    double zeta_sum = 0.0;
    for (const auto& z : report.at("zeta")) zeta_sum += z.get<double>();
    CHECK(zeta_sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cli: theory tabulates the single-type closed form") {
    auto dir = case_dir("theory-direct");
    auto r = run_cli(dir, "theory --model ba --types 1 --m 1 --zeta 1 --dmax 3");
    CHECK(r.code == 0);
    CHECK(r.out.find("1,0.666666666667") != std::string::npos);
    CHECK(r.out.find("2,0.166666666667") != std::string::npos);
    CHECK(r.out.find("3,0.0666666666667") != std::string::npos);
    // stdout-only invocations leave no files behind
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().filename().string().rfind("_std", 0) != 0) ++files;
    CHECK(files == 0);
}

TEST_CASE("cli: fit-tail recovers the tail exponent from the marginal") {
    auto dir = case_dir("fit-tail");
    CHECK(run_cli(dir, "theory --model ba --types 1 --m 1 --zeta 1 --marginal 1 --lmax 400 "
                       "--out marg.csv")
              .code == 0);
    CHECK(run_cli(dir, "fit-tail marg.csv --lmin 100 --lmax 400 --out fit.json").code == 0);
    json fit = load_json(dir / "fit.json");
    CHECK(fit.at("points") == 301);
    double slope = fit.at("slope").get<double>();
    CHECK(slope > -3.05);
    CHECK(slope < -2.95);
}

TEST_CASE("cli: ensemble reports replicas and their aggregate deterministically") {
    auto dir = case_dir("ensemble");
    write_text(dir / "ens.toml", R"(model = "ba"
types = 2
steps = 300
seed = 3

[batch]
kind = "constant"
value = 1
)");
    CHECK(run_cli(dir, "ensemble --config ens.toml --replicas 4 --jobs 2 --out ens.json").code ==
          0);
    json ens = load_json(dir / "ens.json");
    REQUIRE(ens.at("runs").size() == 4);
    for (std::size_t r = 0; r < 4; ++r)
        CHECK(ens.at("runs").at(r).at("replica") == r);
    double mean_sum = 0.0;
    for (const auto& z : ens.at("aggregate").at("zeta_mean")) mean_sum += z.get<double>();
    CHECK(mean_sum == doctest::Approx(1.0).epsilon(1e-9));

    // per-replica zeta table rides along under the default derived name
    std::string zeta_csv = mtpa::read_file((dir / "ens.zeta.csv").string());
    CHECK(zeta_csv.find("replica,zeta_1,zeta_2") != std::string::npos);
    CHECK(std::count(zeta_csv.begin(), zeta_csv.end(), '\n') == 6);  // meta + header + 4 rows

    // a serial rerun reproduces the parallel run bit for bit
    CHECK(run_cli(dir, "ensemble --config ens.toml --replicas 4 --jobs 1 --out ens1.json").code ==
          0);
    CHECK(load_json(dir / "ens1.json").at("runs") == ens.at("runs"));
}

TEST_CASE("cli: probe reads a frozen checkpoint") {
    auto dir = case_dir("probe");
    write_text(dir / "one.toml", R"(model = "ba"
types = 1
steps = 500
seed = 13

[batch]
kind = "constant"
value = 1
)");
    CHECK(run_cli(dir, "simulate --config one.toml --out c.csv --checkpoint-out ck.json").code ==
          0);
    CHECK(run_cli(dir, "probe --checkpoint ck.json --config one.toml --d 3 --samples 20000 "
                       "--out probe.json")
              .code == 0);
    json probe = load_json(dir / "probe.json");
    CHECK(probe.at("scale_n") == 501);
    CHECK(probe.at("samples") == 20000);
    CHECK(probe.at("d") == json::array({3}));
    CHECK(probe.at("augmented").is_boolean());
    CHECK(probe.at("u_hat").at("value").get<double>() > 0.0);
    REQUIRE(probe.at("r_hat").size() == 1);
    // unit batches: the newborn carries one edge, so multi-edge and
    // degree-3-newborn events are impossible, not merely rare
    CHECK(probe.at("multi_hat").at("value").get<double>() == 0.0);
    CHECK(probe.at("q_hat").at("value").get<double>() == 0.0);

    CHECK(run_cli(dir, "probe --checkpoint ck.json --config one.toml --d 1,1").code == 2);
}

TEST_CASE("cli: seed resolution prefers flag, then config, then environment") {
    auto dir = case_dir("seeds");
    write_text(dir / "noseed.toml", R"(model = "ba"
types = 2
steps = 400

[batch]
kind = "constant"
value = 1
)");
    auto bytes = [&](const std::string& name) {
        return mtpa::read_file((dir / name).string());
    };

    CHECK(run_cli(dir, "simulate --config noseed.toml --out a.csv", "MULTITYPE_PA_SEED=42").code ==
          0);
    CHECK(run_cli(dir, "simulate --config noseed.toml --out b.csv", "MULTITYPE_PA_SEED=42").code ==
          0);
    CHECK(bytes("a.csv") == bytes("b.csv"));

    // the flag reaches the same stream as the env var carrying the same seed
    CHECK(run_cli(dir, "simulate --config noseed.toml --seed 42 --out c.csv").code == 0);
    CHECK(bytes("c.csv") == bytes("a.csv"));

    // and overrides the env var when both are present
    CHECK(run_cli(dir, "simulate --config noseed.toml --seed 7 --out d.csv",
                  "MULTITYPE_PA_SEED=42")
              .code == 0);
    CHECK(bytes("d.csv") != bytes("a.csv"));

    // a config seed shadows the environment entirely
    write_text(dir / "seeded.toml", kBaConfig);
    CHECK(run_cli(dir, "simulate --config seeded.toml --out e.csv", "MULTITYPE_PA_SEED=42").code ==
          0);
    CHECK(run_cli(dir, "simulate --config seeded.toml --out f.csv").code == 0);
    CHECK(bytes("e.csv") == bytes("f.csv"));

    auto invalid = run_cli(dir, "simulate --config noseed.toml --out g.csv",
                           "MULTITYPE_PA_SEED=abc");
    CHECK(invalid.code == 2);
}
