#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "pgdus/tools/app.hpp"

using nlohmann::json;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pgdus::tools::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) cells.push_back(cell);
  if (!line.empty() && line.back() == sep) cells.emplace_back();
  return cells;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "pgdus_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("fit emits json with the published shape", "[cli]") {
  const auto r = run({"fit", "--model", "pgduse", "--data", "lawless", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  for (const char* key : {"model", "params", "log_likelihood", "aic", "bic", "ks_d", "p_value", "converged"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["model"] == "PGDUSE");
  CHECK_THAT(j["params"]["lambda"].get<double>(), WithinAbs(0.0336214, 5e-5));
  CHECK_THAT(j["params"]["theta"].get<double>(), WithinAbs(3.8065763, 5e-3));
  CHECK(j["converged"] == true);
}

TEST_CASE("fit table for the exponential model", "[cli]") {
  const auto r = run({"fit", "--model", "ed", "--data", "lawless"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0.01384308") != std::string::npos);
}

TEST_CASE("fit reports dataset errors", "[cli]") {
  const auto empty = scratch("empty.txt");
  std::ofstream(empty) << "# nothing here\n";
  const auto r = run({"fit", "--model", "pgduse", "--data", empty.string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("EmptyDataset") != std::string::npos);

  const auto neg = scratch("negative.txt");
  std::ofstream(neg) << "1.0\n-2.0\n";
  const auto n = run({"fit", "--data", neg.string()});
  CHECK(n.code != 0);
  CHECK(n.err.find("line 2") != std::string::npos);

  CHECK(run({"fit", "--model", "weibull"}).code != 0);
  CHECK(run({"fit", "--format", "xml"}).code == pgdus::tools::kUsage);
  CHECK(run({}).code == pgdus::tools::kUsage);
}

TEST_CASE("compare ranks PGDUSE first and carries footnotes", "[cli]") {
  const auto r = run({"compare", "--data", "lawless"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() > 2);
  CHECK(ls[1].rfind("PGDUSE", 0) == 0);
  CHECK(r.out.find("Notes:") != std::string::npos);
  CHECK(r.out.find("-127.4622") != std::string::npos);

  const auto one = run({"compare", "--data", "lawless", "--models", "ed", "--format", "json"});
  REQUIRE(one.code == 0);
  CHECK(json::parse(one.out)["rows"].size() == 1);
}

TEST_CASE("compare csv and json carry identical numbers", "[cli][property]") {
  const auto c = run({"compare", "--format", "csv"});
  const auto j = run({"compare", "--format", "json"});
  REQUIRE(c.code == 0);
  REQUIRE(j.code == 0);
  const auto doc = json::parse(j.out);
  const auto ls = lines(c.out);
  const auto header = split(ls[0]);
  std::size_t row = 0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    if (ls[i].rfind("#", 0) == 0) continue;
    const auto cells = split(ls[i]);
    REQUIRE(cells.size() == header.size());
    const auto& jr = doc["rows"][row++];
    CHECK(cells[1] == jr["model"].get<std::string>());
    for (const char* key : {"log_likelihood", "aic", "bic", "ks_d", "p_value"}) {
      const auto col = std::find(header.begin(), header.end(), key) - header.begin();
      CHECK_THAT(std::stod(cells[col]), WithinAbs(jr[key].get<double>(), 1e-12));
    }
    CHECK_THAT(std::stod(cells[3]), WithinRel(jr["params"][cells[2]].get<double>(), 1e-15));
  }
  CHECK(row == 5);
  CHECK(c.out.find("\n# ") != std::string::npos);
}

TEST_CASE("eval evaluates per point and reports domain errors per row", "[cli]") {
  const auto r = run({"eval", "--model", "pgduse", "--params", "1,2", "--fn", "cdf", "--at", "1.0",
                      "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK_THAT(json::parse(r.out)["values"][0]["value"].get<double>(),
             WithinRel(oracle::frozen::kCdf_l1_t2_x1, 1e-12));

  const auto q = run({"eval", "--model", "pgduse", "--params", "1,2", "--fn", "quantile", "--at",
                      "0,1,0.5", "--format", "json"});
  CHECK(q.code == pgdus::tools::kFailure);
  const auto v = json::parse(q.out)["values"];
  REQUIRE(v.size() == 3);
  CHECK(v[0]["value"].get<double>() == 0.0);
  CHECK(v[1]["error"] == "DomainError");
  CHECK(v[2].contains("value"));

  CHECK(run({"eval", "--model", "pgduse", "--params", "1", "--at", "1"}).code != 0);
  CHECK(run({"eval", "--model", "pgduse", "--params", "1,2", "--fn", "mode", "--at", "1"}).code != 0);
}

TEST_CASE("sample is deterministic", "[cli]") {
  const std::vector<std::string> args{"sample", "--model", "pgduse", "--params", "1,2", "--n", "5", "--seed", "9"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out).size() == 5);

  const auto none = run({"sample", "--model", "pgduse", "--params", "1,2", "--n", "0"});
  CHECK(none.code == 0);
  CHECK(none.out.empty());

  const auto big = run({"sample", "--model", "pgduse", "--params", "1,2", "--n", "10000", "--seed", "1"});
  double mean = 0.0;
  for (const auto& l : lines(big.out)) mean += std::stod(l) / 10000.0;
  // sd of PGDUSE(1, 2) is about 1.07
  CHECK_THAT(mean, WithinAbs(oracle::frozen::kMean_l1_t2, 3.0 * 1.07 / 100.0));
}

TEST_CASE("plotdata writes three 512-row grids", "[cli]") {
  const auto dir = scratch("plots");
  fs::remove_all(dir);
  const auto r = run({"plotdata", "--data", "lawless", "--out", dir.string()});
  REQUIRE(r.code == 0);
  for (const char* name : {"density.csv", "hazard.csv", "ecdf.csv"}) {
    std::ifstream f(dir / name);
    std::stringstream ss;
    ss << f.rdbuf();
    const auto ls = lines(ss.str());
    CHECK(ls.size() == 513);
    CHECK(split(ls[0])[0] == "x");
  }

  std::ifstream f(dir / "ecdf.csv");
  std::stringstream ss;
  ss << f.rdbuf();
  const auto ls = lines(ss.str());
  CHECK(split(ls[0])[1] == "ecdf");
  CHECK(std::stod(split(ls.back())[1]) == 1.0);

  std::ifstream d(dir / "density.csv");
  std::stringstream ds;
  ds << d.rdbuf();
  const auto dl = lines(ds.str());
  const auto header = split(dl[0]);
  const auto col = std::find(header.begin(), header.end(), "PGDUSE") - header.begin();
  double area = 0.0;
  for (std::size_t i = 2; i < dl.size(); ++i) {
    const auto a = split(dl[i - 1]);
    const auto b = split(dl[i]);
    area += 0.5 * (std::stod(b[0]) - std::stod(a[0])) * (std::stod(a[col]) + std::stod(b[col]));
  }
  CHECK_THAT(area, WithinAbs(1.0, 0.01));

  const auto custom = run({"plotdata", "--model", "ed", "--params", "0.5", "--grid-points", "20",
                           "--grid-quantile", "0.9", "--out", (dir / "custom").string()});
  REQUIRE(custom.code == 0);
  std::ifstream c(dir / "custom" / "hazard.csv");
  std::stringstream cs;
  cs << c.rdbuf();
  CHECK(lines(cs.str()).size() == 21);
}

TEST_CASE("output redirection", "[cli]") {
  const auto path = scratch("fit.json");
  const auto r = run({"fit", "--model", "ed", "--format", "json", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  CHECK(json::parse(f)["model"] == "ED");
  CHECK(run({"fit", "--out", "/nonexistent-dir/x.json"}).code != 0);
}
