#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "spinnet/catalog.hpp"
#include "spinnet/classify.hpp"

using namespace spinnet;

namespace {
SubspaceSelection sel_of(std::vector<int> labels) {
  SubspaceSelection s;
  s.copies.assign(labels.size(), 1);
  s.labels = std::move(labels);
  return s;
}
}  // namespace

TEST_CASE("associated graphs of the example network") {
  const auto fig = figure1_spec();

  const auto full = associated_graph(sel_of({2, 2, 3, 1}), fig);
  CHECK(full.nodes == std::vector<int>{0, 1, 2, 3});
  CHECK(full.edges.size() == 4);

  const auto cut = associated_graph(sel_of({2, 0, 3, 1}), fig);
  CHECK(cut.nodes == std::vector<int>{0, 2, 3});
  CHECK(cut.edges == std::vector<std::pair<int, int>>{{2, 3}});
  const auto comps = connected_components(cut);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<int>{0});
  CHECK(comps[1] == std::vector<int>{2, 3});

  const auto empty = associated_graph(sel_of({0, 0, 1, 1}), fig);
  CHECK(empty.nodes == std::vector<int>{2, 3});

  SpinNetworkSpec pair;
  pair.clusters = {{2, 1.0}, {2, 2.0}};
  pair.couplings[{0, 1}] = Coupling{1.0, 0.0, 0.0};
  const auto none = associated_graph(sel_of({0, 0}), pair);
  CHECK(none.nodes.empty());
  CHECK(connected_components(none).empty());
}

TEST_CASE("descriptor predictions for the example network") {
  const auto fig = figure1_spec();

  const auto split = predict_descriptor(sel_of({2, 0, 3, 1}), fig);
  REQUIRE(split.blocks.size() == 2);
  CHECK(split.blocks[0].kind == BlockKind::spin_irrep);
  CHECK(split.blocks[0].f == 2);
  CHECK(split.blocks[0].space_dim == 3);
  CHECK(split.blocks[0].algebra_dim == 3);
  CHECK(split.blocks[1].kind == BlockKind::full_su);
  CHECK(split.blocks[1].space_dim == 8);  // dim(V^3) * dim(V^1) = 4 * 2
  CHECK(split.blocks[1].algebra_dim == 63);
  CHECK(split.total_algebra_dim == 66);
  CHECK_FALSE(split.controllable);

  const auto top = predict_descriptor(sel_of({2, 2, 3, 1}), fig);
  REQUIRE(top.blocks.size() == 1);
  CHECK(top.blocks[0].space_dim == 72);
  CHECK(top.blocks[0].algebra_dim == 5183);
  CHECK(top.controllable);

  SpinNetworkSpec one;
  one.clusters = {{3, 1.0}};
  const auto single = predict_descriptor(sel_of({3}), one);
  REQUIRE(single.blocks.size() == 1);
  CHECK(single.blocks[0].kind == BlockKind::spin_irrep);
  CHECK(single.blocks[0].algebra_dim == 3);
  CHECK_FALSE(single.controllable);
}

TEST_CASE("controllability verdicts") {
  const auto fig = figure1_spec();
  CHECK(is_subspace_controllable(sel_of({2, 2, 3, 1}), fig));
  CHECK(is_subspace_controllable(sel_of({0, 2, 1, 1}), fig));
  CHECK_FALSE(is_subspace_controllable(sel_of({2, 0, 3, 1}), fig));

  SpinNetworkSpec pair;
  pair.clusters = {{2, 1.0}, {2, 2.0}};
  pair.couplings[{0, 1}] = Coupling{1.0, 0.0, 0.0};
  CHECK_FALSE(is_subspace_controllable(sel_of({0, 0}), pair));
  CHECK_FALSE(is_subspace_controllable(sel_of({2, 0}), pair));
  CHECK(is_subspace_controllable(sel_of({2, 2}), pair));
}

TEST_CASE("single-node blocks of dimension two agree with full su") {
  // the two theorem cases coincide on 2-dimensional spaces: 3 = 2^2 - 1
  SpinNetworkSpec pair;
  pair.clusters = {{1, 1.0}, {1, 2.0}};
  pair.couplings[{0, 1}] = Coupling{1.0, 0.0, 0.0};
  const auto d = predict_descriptor(sel_of({1, 0}), pair);
  REQUIRE(d.blocks.size() == 1);
  CHECK(d.blocks[0].kind == BlockKind::spin_irrep);
  CHECK(d.blocks[0].algebra_dim == d.blocks[0].space_dim * d.blocks[0].space_dim - 1);
}

TEST_CASE("descriptor consistency across the catalog") {
  for (const auto& [name, spec] : catalog_networks(2, 5)) {
    for (const auto& sel : enumerate_subspaces(spec, true)) {
      const auto d = predict_descriptor(sel, spec);
      long total = 0;
      long space = 1;
      for (const auto& blk : d.blocks) {
        total += blk.algebra_dim;
        space *= blk.space_dim;
        CHECK(blk.algebra_dim ==
              (blk.kind == BlockKind::spin_irrep ? 3 : blk.space_dim * blk.space_dim - 1));
      }
      CHECK(total == d.total_algebra_dim);
      // product over non-removed nodes equals D^S restricted to them
      long expect_space = 1;
      for (size_t j = 0; j < sel.labels.size(); ++j)
        if (sel.labels[j] >= 1) expect_space *= sel.labels[j] + 1;
      CHECK(space == expect_space);
    }
  }
}

TEST_CASE("node set never grows when a label is zeroed") {
  std::mt19937 rng(7);
  const auto nets = catalog_networks(3, 5);
  std::uniform_int_distribution<size_t> pick_net(0, nets.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& spec = nets[pick_net(rng)].spec;
    const auto sels = enumerate_subspaces(spec, true);
    std::uniform_int_distribution<size_t> pick_sel(0, sels.size() - 1);
    auto sel = sels[pick_sel(rng)];
    const auto before = associated_graph(sel, spec).nodes;
    std::uniform_int_distribution<size_t> pick_cluster(0, sel.labels.size() - 1);
    sel.labels[pick_cluster(rng)] = 0;
    const auto after = associated_graph(sel, spec).nodes;
    CHECK(after.size() <= before.size());
    for (int v : after) CHECK(std::find(before.begin(), before.end(), v) != before.end());
  }
}

TEST_CASE("disconnected input networks classify per component") {
  SpinNetworkSpec spec;
  spec.clusters = {{1, 1.0}, {1, 2.0}, {1, 3.0}, {1, 4.0}};
  spec.couplings[{0, 1}] = Coupling{1.0, 0.0, 0.0};
  spec.couplings[{2, 3}] = Coupling{1.0, 0.0, 0.0};
  CHECK_FALSE(spec.connected());
  const auto d = predict_descriptor(sel_of({1, 1, 1, 1}), spec);
  REQUIRE(d.blocks.size() == 2);
  CHECK(d.blocks[0].algebra_dim == 15);
  CHECK(d.blocks[1].algebra_dim == 15);
  CHECK_FALSE(d.controllable);
}
