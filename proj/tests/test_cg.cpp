#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinnet/catalog.hpp"
#include "spinnet/cg.hpp"

using namespace spinnet;

namespace {
const Complex im(0, 1);
}

TEST_CASE("cluster decompositions via the tensor recursion") {
  auto d1 = decompose_cluster(1);
  CHECK(d1.multiplicities == std::map<int, int>{{1, 1}});
  auto d2 = decompose_cluster(2);
  CHECK(d2.multiplicities == std::map<int, int>{{0, 1}, {2, 1}});
  auto d3 = decompose_cluster(3);
  CHECK(d3.multiplicities == std::map<int, int>{{1, 2}, {3, 1}});

  for (int n = 1; n <= 8; ++n) {
    const auto d = decompose_cluster(n);
    CHECK(d.dimension_sum() == (1L << n));
    CHECK(d.labels().front() == n);
    CHECK(d.labels().back() == (n % 2 ? 1 : 0));
  }
  CHECK_THROWS_AS(decompose_cluster(0), std::invalid_argument);
}

TEST_CASE("ladder operators raise and lower the S_z eigenvalue") {
  for (int n = 1; n <= 4; ++n) {
    const Matrix sz = collective_S(Axis::z, n);
    const Matrix sp = raising_operator(n);
    CHECK((commutator(sz, sp) - sp).norm() < 1e-12);  // [S_z, S_+] = S_+
    Vector all_up = Vector::Zero(1L << n);
    all_up(0) = 1.0;
    CHECK((sp * all_up).norm() < 1e-12);
  }
}

TEST_CASE("highest weight vectors") {
  const auto hw1 = highest_weight_vectors(1, 1);
  REQUIRE(hw1.size() == 1);
  CHECK(std::abs(hw1[0](0)) == doctest::Approx(1.0));

  // two-spin singlet: the antisymmetric combination
  const auto hw0 = highest_weight_vectors(2, 0);
  REQUIRE(hw0.size() == 1);
  Vector singlet = Vector::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  CHECK(std::abs(singlet.dot(hw0[0])) == doctest::Approx(1.0));

  const auto hw31 = highest_weight_vectors(3, 1);
  REQUIRE(hw31.size() == 2);
  const Matrix sp = raising_operator(3);
  const Matrix sz = collective_S(Axis::z, 3);
  for (const auto& v : hw31) {
    CHECK(v.norm() == doctest::Approx(1.0));
    CHECK((sp * v).norm() < 1e-10);
    CHECK((sz * v - 0.5 * v).norm() < 1e-10);
  }
  CHECK(std::abs(hw31[0].dot(hw31[1])) < 1e-10);

  CHECK_THROWS_AS(highest_weight_vectors(2, 1), std::invalid_argument);
}

TEST_CASE("irrep ladder bases") {
  const auto b1 = irrep_basis(1, 1, 1);
  REQUIRE(b1.size() == 2);
  CHECK(std::abs(b1[0](0)) == doctest::Approx(1.0));
  CHECK(std::abs(b1[1](1)) == doctest::Approx(1.0));

  // triplet ladder from the all-up state
  const auto b2 = irrep_basis(2, 2, 1);
  REQUIRE(b2.size() == 3);
  Vector mid = Vector::Zero(4);
  mid(1) = mid(2) = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(b2[0](0)) == doctest::Approx(1.0));
  CHECK(std::abs(mid.dot(b2[1])) == doctest::Approx(1.0));
  CHECK(std::abs(b2[2](3)) == doctest::Approx(1.0));

  // weight-basis property of the restriction of S_z
  for (auto [n, f, copy] : {std::tuple{3, 1, 2}, {4, 2, 3}, {3, 3, 1}}) {
    const auto vecs = irrep_basis(n, f, copy);
    REQUIRE(static_cast<int>(vecs.size()) == f + 1);
    const Matrix sz = collective_S(Axis::z, n);
    Matrix b(vecs[0].size(), static_cast<long>(vecs.size()));
    for (size_t k = 0; k < vecs.size(); ++k) b.col(static_cast<long>(k)) = vecs[k];
    const Matrix r = b.adjoint() * sz * b;
    for (int k = 0; k <= f; ++k)
      CHECK(std::abs(r(k, k) - (f / 2.0 - k)) < 1e-10);
    CHECK((r - r.diagonal().asDiagonal().toDenseMatrix()).norm() < 1e-10);
  }

  CHECK_THROWS_AS(irrep_basis(3, 1, 3), std::invalid_argument);
}

TEST_CASE("subspace bases") {
  SpinNetworkSpec one;
  one.clusters = {{2, 1.0}};
  const auto top = subspace_basis(SubspaceSelection{{2}, {1}}, one, 64);
  CHECK(top.columns.cols() == 3);
  CHECK((top.columns.adjoint() * top.columns - Matrix::Identity(3, 3)).norm() < 1e-12);

  // the example network selection (2,0,3,1): 3*1*4*2 = 24 columns
  const auto fig = figure1_spec();
  const auto b = subspace_basis(SubspaceSelection{{2, 0, 3, 1}, {1, 1, 1, 1}}, fig, 256);
  CHECK(b.columns.rows() == 256);
  CHECK(b.columns.cols() == 24);
  CHECK((b.columns.adjoint() * b.columns - Matrix::Identity(24, 24)).norm() < 1e-10);

  // default cap rejects the 256-dimensional full space
  CHECK_THROWS_AS(subspace_basis(SubspaceSelection{{2, 0, 3, 1}, {1, 1, 1, 1}}, fig),
                  std::invalid_argument);

  // invariance of the span under every reduced generator
  const auto scaled = figure1_scaled_spec();
  const auto gens = reduced_generators(scaled);
  for (const auto& sel : enumerate_subspaces(scaled, true)) {
    const auto basis = subspace_basis(sel, scaled, 64);
    for (const auto& g : gens) {
      const Matrix gb = g * basis.columns;
      const Matrix leak = gb - basis.columns * (basis.columns.adjoint() * gb);
      CHECK(leak.norm() < 1e-10);
    }
  }
}

TEST_CASE("restriction") {
  SpinNetworkSpec two;
  two.clusters = {{2, 1.0}, {1, 2.0}};
  two.couplings[{0, 1}] = Coupling{1.0, 0.0, 0.0};

  // Casimir restricts to its scalar
  const auto basis = subspace_basis(SubspaceSelection{{2, 1}, {1, 1}}, two, 64);
  const Matrix cas = cluster_operator(casimir(2), 0, two);
  const Matrix r = restrict_operator(cas, basis);
  CHECK((r - 2.0 * Matrix::Identity(6, 6)).norm() < 1e-10);

  // local operators vanish on V^0
  const auto basis0 = subspace_basis(SubspaceSelection{{0, 1}, {1, 1}}, two, 64);
  const Matrix local = im * cluster_collective(Axis::z, 0, two);
  CHECK(restrict_operator(local, basis0).norm() < 1e-12);

  // restricted coupling terms are traceless
  const Matrix coupling =
      im * (cluster_collective(Axis::z, 0, two) * cluster_collective(Axis::z, 1, two));
  CHECK(std::abs(restrict_operator(coupling, basis).trace()) < 1e-12);

  // an operator that does not preserve the subspace is an error
  const Matrix bad = single_spin(Axis::x, 0, 3);
  CHECK_THROWS_AS(restrict_operator(bad, basis), std::runtime_error);
}

TEST_CASE("subspace enumeration") {
  const auto fig = figure1_spec();
  CHECK(enumerate_subspaces(fig, true).size() == 8);
  CHECK(enumerate_subspaces(fig, false).size() == 12);

  SpinNetworkSpec one;
  one.clusters = {{2, 1.0}};
  CHECK(enumerate_subspaces(one, true).size() == 2);

  // dimension bookkeeping over distinct labels
  long sum = 0;
  for (const auto& sel : enumerate_subspaces(fig, true))
    sum += selection_multiplicity(sel, fig) * sel.dim();
  CHECK(sum == fig.full_dim());
}

TEST_CASE("full symmetry-adapted basis is complete and orthonormal") {
  for (const auto& clusters :
       {std::vector<Cluster>{{3, 1.0}, {1, 2.0}}, std::vector<Cluster>{{2, 1.0}, {2, 2.0}}}) {
    SpinNetworkSpec spec;
    spec.clusters = clusters;
    spec.couplings[{0, 1}] = Coupling{1.0, 0.0, 0.0};
    const Matrix u = full_symmetry_basis(spec, 64);
    const long d = spec.full_dim();
    CHECK(u.rows() == d);
    CHECK(u.cols() == d);
    CHECK((u.adjoint() * u - Matrix::Identity(d, d)).norm() < 1e-10);
  }
}

TEST_CASE("selection names follow the tuple notation") {
  CHECK(SubspaceSelection{{2, 0, 3, 1}, {1, 1, 1, 1}}.name() == "T_{2,0,3,1}");
}
