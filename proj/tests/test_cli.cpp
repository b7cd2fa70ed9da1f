#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = distgraph::cli::execute(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("distgraph_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("sphere") {
  auto r = run({"sphere", "--d", "5", "--lambda", "2", "--count-only"});
  CHECK(r.code == 0);
  CHECK(r.out == "40\n");
  CHECK(r.err.find("--lambda 2") != std::string::npos);
  r = run({"sphere", "--d", "2", "--lambda", "1"});
  CHECK(r.out == "d=2 lambda=1 count=4\n-1 0\n0 -1\n0 1\n1 0\n");
  CHECK(run({"sphere", "--d", "0", "--lambda", "2"}).code == 2);
  CHECK(run({"sphere", "--d", "5", "--lambda", "1.5"}).code == 2);
  CHECK(run({"sphere", "--d", "8", "--lambda", "40", "--max-points", "10"}).code == 4);
}

TEST_CASE("count") {
  auto r = run({"count", "--graph", "K3", "--d", "5", "--lambda", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");
  CHECK(run({"count", "--graph", "P1", "--d", "5", "--lambda", "2"}).out == "40\n");
  CHECK(run({"count", "--graph", "Q9", "--d", "5", "--lambda", "2"}).code == 2);
  CHECK(run({"count", "--d", "5", "--lambda", "2"}).code == 2);
  CHECK(run({"count", "--graph", "P1", "--d", "9", "--lambda", "30", "--max-points", "100"}).code == 4);
}

TEST_CASE("graph files") {
  const auto p = scratch("g.json");
  {
    std::ofstream f(p);
    f << R"({"name":"tri","vertex_count":3,"edges":[[1,2],[2,3],[1,3]]})";
  }
  auto r = run({"count", "--graph-file", p.string(), "--d", "5", "--lambda", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == run({"count", "--graph", "K3", "--d", "5", "--lambda", "2"}).out);
  {
    std::ofstream f(p);
    f << "{not json";
  }
  CHECK(run({"count", "--graph-file", p.string(), "--d", "5", "--lambda", "2"}).code == 2);
  std::filesystem::remove(p);
}

TEST_CASE("admissible") {
  auto r = run({"admissible", "--graph", "K3", "--d", "5", "--min", "1", "--max", "9"});
  CHECK(r.code == 0);
  CHECK(r.out == "2,4,6,8\n");
  CHECK(run({"admissible", "--graph", "K3", "--d", "5", "--min", "-1", "--max", "9"}).code == 2);
}

TEST_CASE("eval") {
  auto r = run({"eval", "--graph", "P1", "--d", "5", "--lambda", "2", "--fn", "delta", "--fn", "ones:3"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(1.0));
  CHECK(j["inputs"]["args"].size() == 11);
  CHECK(run({"eval", "--graph", "K3", "--d", "5", "--lambda", "3", "--fn", "ball"}).code == 3);
  CHECK(run({"eval", "--graph", "K3", "--d", "5", "--lambda", "2", "--fn", "ball", "--mode", "x"}).code == 2);
  CHECK(run({"eval", "--graph", "K3", "--d", "5", "--lambda", "2", "--fn", "ball", "--strategy", "tree"}).code == 2);
  CHECK(run({"eval", "--graph", "K3", "--d", "5", "--lambda", "2", "--fn", "ball", "--fn", "ball"}).code == 2);
  r = run({"eval", "--graph", "K3", "--d", "5", "--lambda", "3", "--fn", "ball", "--mode", "raw"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["raw"].get<double>() == 0.0);
}

TEST_CASE("sweep and fit") {
  const auto csv = scratch("t.csv");
  auto r = run({"sweep", "--graph", "P1", "--d", "5", "--lambdas", "4,8,12,16", "--fn", "ball", "--p", "3/2",
                "--out", csv.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const std::string text = slurp(csv);
  CHECK(text.rfind("lambda,n_config,", 0) == 0);
  const auto same = run({"sweep", "--graph", "P1", "--d", "5", "--lambdas", "4:16:4", "--fn", "ball", "--p",
                         "3/2,3/2", "--threads", "2"});
  CHECK(same.out == text);
  r = run({"fit", "--table", csv.string()});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.size() == 4);
  CHECK(j.contains("slope"));
  CHECK(j.contains("intercept"));
  CHECK(j.contains("max_residual"));
  CHECK(j.contains("lambda_count"));
  CHECK(run({"sweep", "--graph", "K3", "--d", "5", "--lambdas", "2,3", "--fn", "ball", "--p", "inf"}).code == 3);
  CHECK(run({"sweep", "--graph", "P1", "--d", "5", "--lambdas", "2,3", "--fn", "ball", "--p", "0.5"}).code == 2);
  CHECK(run({"sweep", "--graph", "P1", "--d", "5", "--lambdas", "2,3", "--fn", "ball", "--p", "1/2"}).code == 2);
  CHECK(run({"fit", "--table", "/nonexistent.csv"}).code == 2);
  std::filesystem::remove(csv);
}

TEST_CASE("region") {
  auto r = run({"region", "--graph", "P1", "--d", "5", "--point", "1/2,1/2"});
  CHECK(r.code == 0);
  CHECK(r.out == "boundary\n");
  CHECK(run({"region", "--graph", "P1", "--d", "5", "--point", "0.5,0.5"}).code == 2);
  CHECK(run({"region", "--graph", "P1", "--d", "4", "--point", "1/2,1/2"}).code == 2);
  CHECK(run({"region", "--name", "K3", "--d", "7", "--point", "1/2,1/2,1/2"}).out == "boundary\n");
  r = run({"region", "--name", "P2", "--d", "7", "--cross-validate", "50", "--seed", "3"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["samples"] == 50);
  CHECK(j["seed"] == 3);
  CHECK(j["disagreements"].empty());
  CHECK(r.out == run({"region", "--name", "P2", "--d", "7", "--cross-validate", "50", "--seed", "3"}).out);
  r = run({"region", "--graph", "C4", "--d", "7"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).contains("vertices"));
  CHECK(run({"region", "--d", "7"}).code == 2);
}

TEST_CASE("probe and counterexample") {
  auto r = run({"probe", "--graph", "P2", "--d", "5", "--assign", "S,delta,S", "--lambdas", "4,8,12,16"});
  CHECK(r.code == 0);
  CHECK(std::abs(nlohmann::json::parse(r.out)["fit"]["slope"].get<double>()) < 1e-9);
  CHECK(run({"probe", "--graph", "P2", "--d", "5", "--assign", "S,delta", "--lambdas", "4,8"}).code == 2);
  CHECK(run({"probe", "--graph", "K3", "--d", "5", "--assign", "delta,delta,delta", "--lambdas", "2,4,6,8"}).code ==
        3);
  r = run({"counterexample", "--d", "5", "--lmin", "2", "--lmax", "12"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("C4"));
  CHECK(j.contains("C4t"));
  CHECK(j["C4"]["conjectured_bound_slope"] == "-5/6");
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"sphere", "--d", "5"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("report round trip") {
  const auto dir = scratch("rep");
  const auto plan = scratch("plan.json");
  {
    std::ofstream f(plan);
    f << R"({"invocations":[
      {"name":"p1","args":["sweep","--graph","P1","--d","5","--lambdas","4,8,12,16","--fn","ball","--p","3/2"]},
      {"args":["region","--name","P2","--d","7","--cross-validate","20","--seed","5"]}]})";
  }
  auto r = run({"report", "--plan", plan.string(), "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(std::filesystem::exists(dir / "p1.csv"));
  CHECK(std::filesystem::exists(dir / "1_region.json"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest.contains("library_version"));
  CHECK(manifest.contains("wall_clock_seconds"));
  CHECK(manifest["items"].size() == 2);

  // the manifest is itself a plan
  const auto again = scratch("rep2");
  r = run({"report", "--plan", (dir / "manifest.json").string(), "--out-dir", again.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(again / "p1.csv") == slurp(dir / "p1.csv"));
  CHECK(slurp(again / "1_region.json") == slurp(dir / "1_region.json"));

  // each item's recorded args reproduce it
  const auto args = manifest["items"][0]["inputs"]["args"].get<std::vector<std::string>>();
  CHECK(run(args).out == slurp(dir / "p1.csv"));

  {
    std::ofstream f(plan);
    f << R"({"invocations":[]})";
  }
  CHECK(run({"report", "--plan", plan.string(), "--out-dir", scratch("rep3").string()}).code == 2);
  {
    std::ofstream f(plan);
    f << R"({"invocations":[{"args":["count","--graph","K3","--d","5","--lambda","1","--max-points","1"]}]})";
  }
  CHECK(run({"report", "--plan", plan.string(), "--out-dir", scratch("rep4").string()}).code == 4);
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(again);
  std::filesystem::remove(plan);
}
