#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "specdpp/cli.hpp"

using namespace specdpp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "specdpp_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

nlohmann::json without_runtime(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  j.erase("runtime_seconds");
  return j;
}

}  // namespace

TEST_CASE("weyl writes counts") {
  const auto r = run({"weyl", "--manifold", "sphere2", "--lambdas", "10,20,40"});
  CHECK(r.code == kExitOk);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[1].rfind("10,100,", 0) == 0);
  CHECK(l[2].rfind("20,400,", 0) == 0);
}

TEST_CASE("sample with a single point") {
  const auto r = run({"sample", "--manifold", "circle", "--lambda", "0", "--replicas", "1",
                      "--seed", "7"});
  CHECK(r.code == kExitOk);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "replica,index,space,c1");
  CHECK(l[1].rfind("0,0,manifold,", 0) == 0);
}

TEST_CASE("points csv pads coordinates for the sphere and chart") {
  auto r = run({"sample", "--manifold", "sphere2", "--lambda", "3", "--replicas", "2"});
  CHECK(r.code == kExitOk);
  auto l = lines(r.out);
  CHECK(l[0] == "replica,index,space,c1,c2,c3");
  CHECK(l.size() == 1 + 2 * 9);
  r = run({"sample", "--manifold", "sphere2", "--lambda", "10", "--replicas", "3", "--chart"});
  CHECK(r.code == kExitOk);
  l = lines(r.out);
  REQUIRE(l.size() > 1);
  CHECK(l[1].find(",chart,") != std::string::npos);
}

TEST_CASE("kernel table header") {
  const auto r = run({"kernel", "--manifold", "torus:2", "--lambda", "5", "--grid-radius", "1"});
  CHECK(r.code == kExitOk);
  const auto l = lines(r.out);
  CHECK(l[0] == "u1,u2,v1,v2,value");
  CHECK(l.size() == 1 + 25);
  const auto u = run({"kernel", "--kind", "universal", "--dim", "1", "--grid-radius", "1"});
  CHECK(u.code == kExitOk);
  CHECK(lines(u.out)[0] == "u1,v1,value");
}

TEST_CASE("gap defaults the quadrature order") {
  const auto r = run({"gap", "--manifold", "circle", "--lambda", "3.5", "--arc", "0.5"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["config"]["quad_order"] == 64);
  for (const char* key : {"command", "config", "results", "errors_se", "slopes", "runtime_seconds"})
    CHECK(j.contains(key));
  CHECK(j["command"] == "gap");
  const double g = j["results"]["scalars"]["gap_probability"];
  CHECK(g > 0.0);
  CHECK(g < 1.0);
}

TEST_CASE("json commands") {
  auto r = run({"converge", "--manifold", "circle", "--lambdas", "20,40,80,160", "--eps",
                "1.5707963267948966,1.0471975511965976"});
  CHECK(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["slopes"].size() == 2);
  CHECK(j["config"]["eps_resolved"].size() == 2);

  r = run({"pcf", "--manifold", "circle", "--lambda", "20", "--replicas", "1000", "--window",
           "4", "--seed", "3"});
  CHECK(r.code == kExitOk);
  j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "pcf");
  CHECK(!j["errors_se"].empty());

  r = run({"laplace", "--manifold", "circle", "--lambda", "3.5", "--replicas", "2000", "--test",
           "bump"});
  CHECK(r.code == kExitOk);
  j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "laplace");

  r = run({"weyl", "--manifold", "torus:2", "--lambdas", "10,20,40", "--report",
           scratch("weyl.json").string()});
  CHECK(r.code == kExitOk);
  j = nlohmann::json::parse(slurp(scratch("weyl.json")));
  CHECK(j["command"] == "weyl");
  CHECK(j["slopes"].size() == 1);
}

TEST_CASE("configuration errors exit with code 2") {
  auto r = run({"bogus"});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("weyl") != std::string::npos);
  CHECK(run({}).code == kExitConfig);
  CHECK(run({"weyl", "--manifold", "circle", "--lambda", "-1"}).code == kExitConfig);
  CHECK(run({"sample", "--manifold", "circle", "--lambda", "2", "--eps", "4"}).code == kExitConfig);
  CHECK(run({"sample", "--manifold", "klein", "--lambda", "2"}).code == kExitConfig);
  CHECK(run({"sample", "--manifold", "circle"}).code == kExitConfig);
  CHECK(run({"gap", "--lambda", "3.5", "--quad-order", "1"}).code == kExitConfig);
  CHECK(run({"pcf", "--manifold", "sphere2", "--lambda", "10", "--replicas", "1000"}).code ==
        kExitConfig);
  CHECK(run({"sample", "--manifold", "sphere2", "--lambda", "3", "--point", "1,2"}).code ==
        kExitConfig);
  CHECK(run({"weyl", "--lambda", "2", "--unknown-flag", "1"}).code == kExitConfig);
}

TEST_CASE("config file with flag override") {
  const auto path = scratch("run.conf");
  {
    std::ofstream f(path);
    f << "manifold=sphere2\nlambda=10\nreplicas=2\nseed=5\n";
  }
  auto r = run({"sample", "--config", path.string()});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out).size() == 1 + 200);
  const auto flagged = run({"sample", "--config", path.string(), "--lambda", "3"});
  CHECK(flagged.code == kExitOk);
  CHECK(lines(flagged.out).size() == 1 + 18);
  const auto direct = run({"sample", "--manifold", "sphere2", "--lambda", "10", "--replicas", "2",
                           "--seed", "5"});
  CHECK(direct.out == r.out);
  CHECK(run({"sample", "--config", scratch("missing.conf").string()}).code == kExitConfig);
}

TEST_CASE("identical arguments give identical files") {
  const auto a = scratch("a.csv"), b = scratch("b.csv");
  const std::vector<std::string> base{"sample", "--manifold", "torus:2", "--lambda", "4",
                                      "--replicas", "20", "--seed", "11", "--out"};
  auto args = base;
  args.push_back(a.string());
  CHECK(run(args).code == kExitOk);
  args = base;
  args.push_back(b.string());
  args.insert(args.end(), {"--threads", "2"});
  CHECK(run(args).code == kExitOk);
  CHECK(!slurp(a).empty());
  CHECK(slurp(a) == slurp(b));

  const std::vector<std::string> gap{"gap", "--manifold", "circle", "--lambda", "3.5"};
  CHECK(without_runtime(run(gap).out) == without_runtime(run(gap).out));
  const std::vector<std::string> laplace{"laplace", "--lambda", "3.5", "--replicas", "1000",
                                         "--seed", "9"};
  CHECK(without_runtime(run(laplace).out) == without_runtime(run(laplace).out));
}
