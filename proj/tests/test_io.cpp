#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "spinnet/catalog.hpp"
#include "spinnet/io.hpp"

using namespace spinnet;

namespace {

const char* kFigureDoc = R"({
  "mode": "multipartite",
  "name": "figure1",
  "clusters": [
    {"size": 2, "gamma": 1.0},
    {"size": 2, "gamma": 2.0},
    {"size": 3, "gamma": 3.0},
    {"size": 1, "gamma": 4.0}
  ],
  "couplings": [
    {"j": 1, "k": 2, "zz": 1.0},
    {"j": 2, "k": 3, "zz": 1.0},
    {"j": 2, "k": 4, "zz": 1.0},
    {"j": 3, "k": 4, "zz": 1.0}
  ]
})";

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("spinnet_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const auto p = path / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
};

}  // namespace

TEST_CASE("parsing the example network document") {
  const auto spec = parse_spec(kFigureDoc);
  CHECK(spec.mode == SpecMode::multipartite);
  CHECK(spec.name == "figure1");
  CHECK(spec.network.n_clusters() == 4);
  CHECK(spec.network.total_spins() == 8);
  CHECK(spec.network.edges().size() == 4);
  CHECK(spec.gammas_ok);

  // matches the built-in catalog network
  const auto fig = figure1_spec();
  CHECK(spec.network.clusters.size() == fig.clusters.size());
  for (size_t j = 0; j < fig.clusters.size(); ++j) {
    CHECK(spec.network.clusters[j].size == fig.clusters[j].size);
    CHECK(spec.network.clusters[j].gamma == fig.clusters[j].gamma);
  }
  CHECK(spec.network.couplings == fig.couplings);
}

TEST_CASE("single-cluster and spin-level documents") {
  const auto one = parse_spec(R"({"mode":"multipartite","clusters":[{"size":3,"gamma":1.5}]})");
  CHECK(one.network.n_clusters() == 1);
  CHECK(one.gammas_ok);

  const auto sl = parse_spec(
      R"({"mode":"spin_level","gammas":[1,1,2],"couplings":[{"i":1,"k":3,"zz":1},{"i":2,"k":3,"zz":2}]})");
  CHECK(sl.mode == SpecMode::spin_level);
  CHECK(sl.spins.n_spins() == 3);
  CHECK(sl.spins.coupling(0, 2) == 1.0);
  CHECK(sl.spins.coupling(1, 2) == 2.0);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(parse_spec("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec(R"({"clusters":[]})"), std::invalid_argument);  // no mode
  CHECK_THROWS_AS(parse_spec(R"({"mode":"multipartite","clusters":[]})"), std::invalid_argument);
  CHECK_THROWS_AS(
      parse_spec(R"({"mode":"multipartite","clusters":[{"size":0,"gamma":1}]})"),
      std::invalid_argument);
  // unknown fields are rejected (strict schema)
  CHECK_THROWS_AS(
      parse_spec(R"({"mode":"multipartite","clusters":[{"size":1,"gamma":1}],"extra":1})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_spec(
          R"({"mode":"multipartite","clusters":[{"size":1,"gamma":1,"spin":0.5}]})"),
      std::invalid_argument);
  // out-of-range and duplicate edges
  CHECK_THROWS_AS(
      parse_spec(
          R"({"mode":"multipartite","clusters":[{"size":1,"gamma":1},{"size":1,"gamma":2}],"couplings":[{"j":1,"k":3,"zz":1}]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_spec(
          R"({"mode":"multipartite","clusters":[{"size":1,"gamma":1},{"size":1,"gamma":2}],"couplings":[{"j":2,"k":1,"zz":1}]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_spec(
          R"({"mode":"multipartite","clusters":[{"size":1,"gamma":1},{"size":1,"gamma":2}],"couplings":[{"j":1,"k":2,"zz":1},{"j":1,"k":2,"zz":2}]})"),
      std::invalid_argument);
}

TEST_CASE("repeated gammas parse but refuse classification") {
  const auto spec = parse_spec(
      R"({"mode":"multipartite","clusters":[{"size":1,"gamma":1},{"size":1,"gamma":1}],"couplings":[{"j":1,"k":2,"zz":1}]})");
  CHECK_FALSE(spec.gammas_ok);
  CHECK_THROWS_AS(classify_network(spec, {}, false), std::invalid_argument);
}

TEST_CASE("classification report for the example network") {
  const auto spec = parse_spec(kFigureDoc);
  const auto report = classify_network(spec, {}, false);
  CHECK(report.records.size() == 8);
  CHECK(report.full_dim == 256);
  CHECK(report.bookkeeping_ok);
  CHECK(report.bookkeeping_sum == 256);
  CHECK_FALSE(report.system_subspace_controllable);

  // T_{2,0,3,1} is present and not controllable
  bool found = false;
  for (const auto& rec : report.records) {
    if (rec.selection.labels == std::vector<int>{2, 0, 3, 1}) {
      found = true;
      CHECK_FALSE(rec.descriptor.controllable);
      CHECK(rec.descriptor.total_algebra_dim == 66);
      CHECK(rec.multiplicity == 1);
    }
    if (rec.selection.labels == std::vector<int>{2, 0, 1, 1})
      CHECK(rec.multiplicity == 2);  // two copies of V^1 in cluster 3
  }
  CHECK(found);
}

TEST_CASE("report emission is deterministic and round-trips") {
  const auto spec = parse_spec(kFigureDoc);
  const auto report = classify_network(spec, {}, false);

  const auto json1 = emit_report(report, ReportFormat::json);
  const auto json2 = emit_report(classify_network(spec, {}, false), ReportFormat::json);
  CHECK(json1 == json2);  // byte-identical

  const auto parsed = parse_report(json1);
  CHECK(emit_report(parsed, ReportFormat::json) == json1);  // field-for-field

  const auto text = emit_report(report, ReportFormat::text);
  CHECK(text.find("T_{2,0,3,1}") != std::string::npos);
  CHECK(text.find("not-controllable") != std::string::npos);
}

TEST_CASE("oracle results and caching") {
  TempDir tmp;
  const char* doc = R"({
    "mode": "multipartite", "name": "scaled",
    "clusters": [{"size":1,"gamma":1},{"size":1,"gamma":2},{"size":2,"gamma":3},{"size":1,"gamma":4}],
    "couplings": [{"j":1,"k":2,"zz":1},{"j":2,"k":3,"zz":1},{"j":2,"k":4,"zz":1},{"j":3,"k":4,"zz":1}]
  })";
  const auto spec = parse_spec(doc);
  auto report = classify_network(spec, {}, false);
  const std::string cache = (tmp.path / "cache").string();
  add_oracle_results(report, {}, 2, cache);
  CHECK(report.all_match);
  for (const auto& rec : report.records) {
    CHECK(rec.verified);
    CHECK(rec.match);
    CHECK(rec.blocks_verified);
  }

  // second run hits the cache and reproduces the same report
  auto report2 = classify_network(spec, {}, false);
  add_oracle_results(report2, {}, 1, cache);
  CHECK(emit_report(report2, ReportFormat::json) == emit_report(report, ReportFormat::json));
  CHECK(std::filesystem::exists(cache));
  CHECK_FALSE(std::filesystem::is_empty(cache));
}

TEST_CASE("cli subcommands") {
  TempDir tmp;
  const auto spec_path = tmp.file("fig.json", kFigureDoc);
  const auto small_path = tmp.file("small.json", R"({
    "mode": "multipartite",
    "clusters": [{"size":2,"gamma":1},{"size":1,"gamma":2}],
    "couplings": [{"j":1,"k":2,"zz":1}]
  })");
  const auto sl_path = tmp.file("sl.json",
      R"({"mode":"spin_level","gammas":[1,1,2],"couplings":[{"i":1,"k":3,"zz":1},{"i":2,"k":3,"zz":1}]})");

  CHECK(run_cli({"decompose", "--n", "3"}) == 0);
  CHECK(run_cli({"enumerate", "--spec", spec_path}) == 0);
  CHECK(run_cli({"enumerate", "--spec", spec_path, "--all-copies"}) == 0);
  CHECK(run_cli({"classify", "--spec", spec_path}) == 0);
  CHECK(run_cli({"classify", "--spec", spec_path, "--format", "json"}) == 0);
  CHECK(run_cli({"classify", "--spec", spec_path, "--subspace", "2,0,3,1"}) == 0);
  CHECK(run_cli({"verify", "--spec", small_path, "--jobs", "2"}) == 0);
  CHECK(run_cli({"verify", "--spec", small_path, "--all-copies", "--format", "json"}) == 0);
  CHECK(run_cli({"verify", "--spec", sl_path}) == 0);
  CHECK(run_cli({"closure", "--spec", sl_path}) == 0);
  CHECK(run_cli({"closure", "--spec", small_path, "--full"}) == 0);

  // input errors exit with 2
  CHECK(run_cli({"classify", "--spec", tmp.file("bad.json", "{")}) == 2);
  CHECK(run_cli({"classify", "--spec", (tmp.path / "missing.json").string()}) == 2);
  CHECK(run_cli({"classify", "--spec", spec_path, "--subspace", "9,9,9,9"}) == 2);
  CHECK(run_cli({"verify", "--spec", spec_path}) == 2);  // exceeds the default cap
  CHECK(run_cli({"nonsense"}) == 2);

  // repeated gammas: classify refuses, oracle-only closure works
  const auto rep_path = tmp.file("rep.json",
      R"({"mode":"multipartite","clusters":[{"size":1,"gamma":1},{"size":1,"gamma":1}],"couplings":[{"j":1,"k":2,"zz":1}]})");
  CHECK(run_cli({"classify", "--spec", rep_path}) == 2);
  CHECK(run_cli({"closure", "--spec", rep_path, "--full"}) == 0);
}
