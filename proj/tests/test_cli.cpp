#include <doctest.h>

#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

// The CLI path arrives via TPGRASS_CLI, set by the ctest harness. Direct runs
// of the test binary without it skip these cases.
#define REQUIRE_CLI(cli)                                   \
  if ((cli).bin.empty()) {                                 \
    MESSAGE("TPGRASS_CLI not set; run through ctest");     \
    return;                                                \
  }

struct CliRunner {
  std::string bin;
  fs::path dir;

  CliRunner() {
    const char* env = std::getenv("TPGRASS_CLI");
    bin = env ? env : "";
    dir = fs::temp_directory_path() / ("tpgrass-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~CliRunner() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }

  fs::path write(const std::string& name, const std::string& content) const {
    const fs::path p = dir / name;
    std::ofstream(p) << content;
    return p;
  }

  // returns exit code; stdout/stderr captured into files
  int run(const std::string& args, std::string* out = nullptr, std::string* err = nullptr) const {
    const fs::path so = dir / "stdout.txt", se = dir / "stderr.txt";
    const std::string cmd = bin + " " + args + " >" + so.string() + " 2>" + se.string();
    const int status = std::system(cmd.c_str());
    if (out) *out = slurp(so);
    if (err) *err = slurp(se);
    return WEXITSTATUS(status);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

}  // namespace

TEST_CASE("cli: plucker prints lex-ordered coordinates with exact fractions") {
  CliRunner cli;
  REQUIRE_CLI(cli);
  const auto f = cli.write("vdm.txt", "1 1 1 1\n1 2 4 8\n");
  std::string out;
  CHECK(cli.run("plucker " + f.string(), &out) == 0);
  CHECK(out == "12:1 13:3 14:7 23:2 24:6 34:4\n");

  const auto g = cli.write("frac.txt", "1 1/2\n");
  CHECK(cli.run("plucker " + g.string(), &out) == 0);
  CHECK(out == "1:1 2:1/2\n");
}

TEST_CASE("cli: plucker on an identity block has a single nonzero coordinate") {
  CliRunner cli;
  REQUIRE_CLI(cli);
  const auto f = cli.write("id.txt", "1 0 0 0\n0 1 0 0\n");
  std::string out;
  CHECK(cli.run("plucker " + f.string(), &out) == 0);
  CHECK(out == "12:1 13:0 14:0 23:0 24:0 34:0\n");
}

TEST_CASE("cli: malformed token produces exit 2 with a location diagnostic") {
  CliRunner cli;
  REQUIRE_CLI(cli);
  const auto f = cli.write("bad.txt", "1 1//2\n");
  std::string out, err;
  CHECK(cli.run("plucker " + f.string(), &out, &err) == 2);
  CHECK(err.find("line 1") != std::string::npos);

  const auto g = cli.write("sing.txt", "1 2 3\n2 4 6\n");
  CHECK(cli.run("plucker " + g.string(), &out, &err) == 2);
}

TEST_CASE("cli: classify emits the flat record and always exits 0 on success") {
  CliRunner cli;
  REQUIRE_CLI(cli);
  const auto f = cli.write("vdm.txt", "1 1 1 1\n1 2 4 8\n");
  std::string out;
  CHECK(cli.run("classify " + f.string(), &out) == 0);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["positive"] == true);
  CHECK(j["nonnegative"] == true);
  CHECK(j["all_nonzero"] == true);
  CHECK(j["generic"] == true);
  CHECK(j["failed_condition"].is_null());
  CHECK(j["witness"].is_null());

  const auto c = cli.write("coord.txt", "1 0 0 0\n0 0 1 0\n");
  CHECK(cli.run("classify " + c.string(), &out) == 0);
  const auto jc = nlohmann::json::parse(out);
  CHECK(jc["positive"] == false);
  CHECK(jc["nonnegative"] == true);
  CHECK(jc["all_nonzero"] == false);
  CHECK(jc["generic"] == false);

  const auto m = cli.write("mixed.txt", "1 -1 1\n");
  CHECK(cli.run("classify " + m.string(), &out) == 0);
  const auto jm = nlohmann::json::parse(out);
  CHECK(jm["positive"] == false);
  CHECK(jm["all_nonzero"] == true);
  CHECK(jm["generic"] == true);
}

TEST_CASE("cli: decimal input flips to floating unless exact mode is forced") {
  CliRunner cli;
  REQUIRE_CLI(cli);
  const auto f = cli.write("dec.txt", "1 0.5\n");
  std::string out, err;
  CHECK(cli.run("plucker " + f.string(), &out) == 0);
  CHECK(cli.run("plucker --mode exact " + f.string(), &out, &err) == 2);
  CHECK(err.find("decimal") != std::string::npos);
}

TEST_CASE("cli: flow requires floating mode and validates dimensions") {
  CliRunner cli;
  REQUIRE_CLI(cli);
  const auto f = cli.write("start.txt", "2 3 1\n");
  std::string out, err;
  CHECK(cli.run("flow --start-file " + f.string() + " --mode exact", &out, &err) == 2);
  CHECK(err.find("floating") != std::string::npos);
  CHECK(cli.run("flow --start-file " + f.string() + " --n 4", &out, &err) == 2);
  CHECK(cli.run("flow --start-file " + f.string() + " --n 3 --k 1 --epsilon 1e-8", &out) == 0);
  const auto j = nlohmann::json::parse(out);
  CHECK(!j["converged_at"].is_null());
  CHECK(j["gap_ratio"].get<double>() == doctest::Approx(0.2431).epsilon(1e-3));
}

TEST_CASE("cli: flow csv format") {
  CliRunner cli;
  REQUIRE_CLI(cli);
  const auto f = cli.write("start.txt", "2 3 1\n");
  std::string out;
  CHECK(cli.run("flow --start-file " + f.string() + " --format csv", &out) == 0);
  CHECK(out.rfind("n,distance,min_margin,sign_ok\n", 0) == 0);
}

TEST_CASE("cli: sample round-trips through classify with the guaranteed verdict") {
  CliRunner cli;
  REQUIRE_CLI(cli);
  const fs::path mat = cli.dir / "sampled.txt";
  std::string out;
  CHECK(cli.run("sample --sampler vandermonde --n 5 --k 2 --seed 21 --output " + mat.string(), &out) == 0);
  CHECK(cli.run("classify " + mat.string(), &out) == 0);
  CHECK(nlohmann::json::parse(out)["positive"] == true);

  CHECK(cli.run("sample --sampler mixed_sign --n 4 --k 2 --seed 3 --output " + mat.string(), &out) == 0);
  CHECK(cli.run("classify " + mat.string(), &out) == 0);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["all_nonzero"] == true);
  CHECK(j["positive"] == false);
}

TEST_CASE("cli: sampler spec round trip reproduces the matrix byte for byte") {
  CliRunner cli;
  REQUIRE_CLI(cli);
  const fs::path m1 = cli.dir / "m1.txt", m2 = cli.dir / "m2.txt", spec = cli.dir / "spec.json";
  std::string out;
  CHECK(cli.run("sample --sampler random_rational --n 5 --k 3 --seed 77 --bound 4 --output " + m1.string() +
                    " --emit-spec " + spec.string(),
                &out) == 0);
  CHECK(cli.run("sample --from-spec " + spec.string() + " --output " + m2.string(), &out) == 0);
  CHECK(CliRunner::slurp(m1) == CliRunner::slurp(m2));
  CHECK(!CliRunner::slurp(m1).empty());
}

TEST_CASE("cli: suite exit-status discipline") {
  CliRunner cli;
  REQUIRE_CLI(cli);
  std::string out;
  CHECK(cli.run("suite --n 3 --k 1 --samples 12 --seed 2", &out) == 0);
  CHECK(nlohmann::json::parse(out)["verdict"] == "pass");
  CHECK(cli.run("suite --n 3 --k 1 --samples 12 --seed 2 --inject-fault", &out) == 1);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["verdict"] == "fail");
  REQUIRE(j["failures"].size() == 1);
  CHECK(j["failures"][0]["check"] == "fault_injection");
  CHECK(cli.run("suite --n 3 --k 1 --samples 0 --seed 2", &out) == 2);
  CHECK(cli.run("nonsense-subcommand", &out) == 2);
  CHECK(cli.run("suite --n 3", &out) == 2);  // missing required --k
  CHECK(cli.run("suite --n 3 --k 1 --samples 8 --seed 2 --format csv", &out) == 0);
  CHECK(out.rfind("index,kind,", 0) == 0);
}

TEST_CASE("cli: verify passes on a positive sampler start and rejects mixed starts") {
  CliRunner cli;
  REQUIRE_CLI(cli);
  std::string out, err;
  CHECK(cli.run("verify --n 4 --k 2 --sampler vandermonde --seed 7", &out) == 0);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["verdict"] == "pass");
  CHECK(j["n0"] == 0);
  CHECK(cli.run("verify --n 4 --k 2 --sampler mixed_sign --seed 7", &out, &err) == 2);
  CHECK(err.find("hypothesis") != std::string::npos);
}

TEST_CASE("cli: TPGRASS_OUTPUT_DIR resolves relative outputs") {
  CliRunner cli;
  REQUIRE_CLI(cli);
  std::string out;
  const std::string cmd = "TPGRASS_OUTPUT_DIR=" + cli.dir.string() + " " + cli.bin +
                          " suite --n 2 --k 1 --samples 4 --seed 9 --output envtest.json >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists(cli.dir / "envtest.json"));
}
