#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "helpers.hpp"
#include "mosp/cli.hpp"
#include "mosp/io.hpp"

using namespace mosp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "mosp");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "mosp_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const std::string kExample = std::string(MOSP_TEST_DATA) + "/example1.json";
const std::string kExample2 = std::string(MOSP_TEST_DATA) + "/example2_schedule.json";

}  // namespace

TEST_CASE("solve") {
  for (const char* algo : {"auto", "bruteforce", "dp", "ilp"}) {
    const Run r = run({"solve", kExample, "-a", algo});
    CAPTURE(algo);
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("makespan 5") == 0);
  }
  CHECK(run({"solve", kExample, "-O", "sumc"}).out.find("sumc 30") == 0);
  CHECK(run({"solve", kExample, "-O", "sumc", "-a", "ilp"}).code == cli::kUsage);

  const Run no = run({"solve", kExample, "-t", "4"});
  CHECK(no.code == cli::kNo);
  CHECK(no.out == "no\n");
  CHECK(run({"solve", kExample, "-t", "5", "-a", "ilp"}).code == cli::kOk);

  const fs::path dir = scratch_dir("solve");
  const std::string result = (dir / "result.json").string();
  REQUIRE(run({"solve", kExample, "-O", "sumc", "-o", result}).code == cli::kOk);
  const auto doc = read_json_file(result);
  CHECK(doc["value"] == 30);
  CHECK(doc["proven_optimal"] == true);
  CHECK(run({"verify", kExample, result, "-O", "sumc"}).code == cli::kOk);
}

TEST_CASE("budget exhaustion exits with a resource error") {
  const fs::path dir = scratch_dir("budget");
  const std::string path = (dir / "big.json").string();
  write_instance(Instance(Orgs{{2, {5, 4, 4, 3, 3, 2, 2}}, {1, {3, 3, 2, 1}}}), path);
  const Run r = run({"solve", path, "-O", "sumc", "-a", "bruteforce", "--node-budget", "5"});
  CHECK(r.code == cli::kResource);
  CHECK(r.err.find("\"error\":\"resource\"") != std::string::npos);
}

TEST_CASE("verify") {
  const Run ok = run({"verify", kExample, kExample2});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out.find("feasible: yes") != std::string::npos);
  CHECK(ok.out.find("individually rational: yes") != std::string::npos);
  const Run bad = run({"verify", kExample, kExample2, "-O", "sumc"});
  CHECK(bad.code == cli::kNo);
  CHECK(bad.out.find("VIOLATED") != std::string::npos);
  CHECK(run({"verify", kExample, "/nonexistent/schedule.json"}).code == cli::kUsage);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"solve"}).code == cli::kUsage);
  CHECK(run({"solve", kExample, "-O", "weighted"}).code == cli::kUsage);
  CHECK(run({"solve", kExample, "-a", "magic"}).code == cli::kUsage);
  CHECK(run({"solve", "/nonexistent.json"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("generate") {
  const Run a = run({"generate", "random", "--seed", "9"});
  const Run b = run({"generate", "random", "--seed", "9"});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(instance_from_json(nlohmann::json::parse(a.out)).org_count() >= 1);

  const fs::path dir = scratch_dir("generate");
  const std::string out = (dir / "gadget.json").string();
  REQUIRE(run({"generate", "sumc-np", "--tp", "13:4,4,5,4,4,5", "-o", out}).code == cli::kOk);
  CHECK(parse_instance(out).org_count() == 4);
  const auto cert = read_json_file(dir / "gadget.cert.json");
  CHECK(cert["target"] == 130);
  CHECK(run({"solve", out, "-O", "sumc", "-t", "130"}).code == cli::kOk);

  const Run bp = run({"generate", "binpack", "--integers", "2,2,2", "--capacity", "3", "--bins", "3"});
  CHECK(nlohmann::json::parse(bp.out)["target"] == 48);
  CHECK(run({"generate", "dp-hard", "--tp", "7:2,2,3"}).code == cli::kUsage);
  CHECK(run({"generate", "theta2p", "--set-a", "6:2,2,2", "--set-b", "13:4,4,4,4,4,6"}).code == cli::kOk);
  CHECK(run({"generate", "sumc-np", "--tp", "13:4,4"}).code == cli::kUsage);
}

TEST_CASE("bench") {
  const fs::path empty = scratch_dir("bench-empty");
  const Run e = run({"bench", empty.string()});
  CHECK(e.code == cli::kOk);
  CHECK(e.out.find("instance,algorithm,status") == 0);

  const fs::path dir = scratch_dir("bench");
  for (std::uint64_t seed = 0; seed < 6; ++seed)
    write_instance(testing_support::small_instance(seed, 7, 3), dir / ("i" + std::to_string(seed) + ".json"));
  const Run r = run({"bench", dir.string(), "-j", "2"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("# mismatches: 0") != std::string::npos);
  CHECK(r.out.find("i5.json,ilp,") != std::string::npos);
  const Run s = run({"bench", dir.string(), "-O", "sumc", "-a", "bruteforce,dp"});
  CHECK(s.code == cli::kOk);
  CHECK(s.out.find(",ilp,") == std::string::npos);
}
