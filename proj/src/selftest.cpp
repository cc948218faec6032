#include "spinnet/selftest.hpp"

#include <Eigen/Eigenvalues>

#include <functional>
#include <iostream>
#include <map>

#include "spinnet/catalog.hpp"
#include "spinnet/io.hpp"
#include "spinnet/verify.hpp"

namespace spinnet {

namespace {

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

class Checker {
 public:
  explicit Checker(std::ostream& os) : os_(os) {}
  void check(const std::string& name, const std::function<bool()>& fn) {
    bool ok = false;
    std::string detail;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    os_ << (ok ? "ok   " : "FAIL ") << name;
    if (!ok && !detail.empty()) os_ << " (" << detail << ")";
    os_ << "\n";
    all_ok_ = all_ok_ && ok;
  }
  bool all_ok() const { return all_ok_; }

 private:
  std::ostream& os_;
  bool all_ok_ = true;
};

std::vector<Matrix> perm_invariant_generators(int n, bool with_identity) {
  const Complex i(0, 1);
  std::vector<Matrix> gens = {i * pair_sum_I(Axis::z, Axis::z, n)};
  for (Axis a : kAxes) gens.push_back(i * collective_S(a, n));
  if (with_identity) {
    const long d = pow2_checked(n);
    gens.push_back(i * Matrix::Identity(d, d));
  }
  return gens;
}

// generated dimension of the permutation-invariant algebra: full su part per
// distinct irrep label plus the scalar sector spanned by the traced
// generators (I_zz and optionally the identity)
long perm_invariant_generated_dim(int n, bool with_identity) {
  long su_part = 0;
  for (int f : decompose_cluster(n).labels()) su_part += static_cast<long>(f + 1) * (f + 1) - 1;
  return su_part + (with_identity ? 2 : 1);
}

}  // namespace

bool run_selftest(std::ostream& os, double tol) {
  Checker c(os);
  const Complex im(0, 1);
  const ClosureOptions copts{tol, 0};

  c.check("pauli matrices: squares and anticommutators", [&] {
    for (Axis a : kAxes) {
      const Matrix p = pauli(a);
      if ((p * p - 0.25 * Matrix::Identity(2, 2)).norm() > 0) return false;
    }
    for (auto [a, b] : {std::pair{Axis::x, Axis::y}, {Axis::y, Axis::z}, {Axis::z, Axis::x}}) {
      const Matrix pa = pauli(a), pb = pauli(b);
      if ((pa * pb + pb * pa).norm() > 0) return false;
    }
    return true;
  });

  c.check("cyclic commutation relations, n = 1..5", [&] {
    for (int n = 1; n <= 5; ++n) {
      const Matrix sx = collective_S(Axis::x, n), sy = collective_S(Axis::y, n),
                   sz = collective_S(Axis::z, n);
      if ((commutator(im * sx, im * sy) - im * sz).norm() > 1e-12) return false;
      if ((commutator(im * sy, im * sz) - im * sx).norm() > 1e-12) return false;
      if ((commutator(im * sz, im * sx) - im * sy).norm() > 1e-12) return false;
    }
    return true;
  });

  c.check("S_g^2 = (n/4) 1 + 2 I_gg, n = 2..5", [&] {
    for (int n = 2; n <= 5; ++n) {
      const long d = pow2_checked(n);
      for (Axis g : kAxes) {
        const Matrix s = collective_S(g, n);
        const Matrix rhs = (n / 4.0) * Matrix::Identity(d, d) + 2.0 * pair_sum_I(g, g, n);
        if ((s * s - rhs).norm() > 1e-12) return false;
      }
    }
    return true;
  });

  c.check("Casimir spectra f/2 (f/2+1) with multiplicities m(n,f)(f+1), n <= 6", [&] {
    for (int n = 1; n <= 6; ++n) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(casimir(n));
      std::map<long, long> counts;  // rounded 1e6 * eigenvalue -> count
      for (long i = 0; i < es.eigenvalues().size(); ++i)
        counts[std::lround(es.eigenvalues()(i) * 1e6)]++;
      const auto dec = decompose_cluster(n);
      if (counts.size() != dec.multiplicities.size()) return false;
      for (int f : dec.labels()) {
        const double want = (f / 2.0) * (f / 2.0 + 1.0);
        const auto it = counts.find(std::lround(want * 1e6));
        if (it == counts.end() || it->second != static_cast<long>(dec.multiplicity(f)) * (f + 1))
          return false;
      }
    }
    return true;
  });

  c.check("Clebsch-Gordan dimension identity, n <= 6", [&] {
    for (int n = 1; n <= 6; ++n) {
      const auto dec = decompose_cluster(n);
      if (dec.dimension_sum() != pow2_checked(n)) return false;
      if (dec.labels().back() != (n % 2 == 0 ? 0 : 1)) return false;
    }
    return true;
  });

  c.check("sum of squared block dims equals C(n+3,n), n = 2..6", [&] {
    for (int n = 2; n <= 6; ++n) {
      long t = 0;
      for (int f : decompose_cluster(n).labels()) t += static_cast<long>(f + 1) * (f + 1);
      if (t != binomial(n + 3, n)) return false;
    }
    return true;
  });

  c.check("permutation-invariant algebra generation counts, n = 2..4", [&] {
    // the generated Lie algebra carries one scalar direction per traced
    // generator; for n = 2, 3 (two irrep labels) this meets the space
    // dimension C(n+3,n), for n = 4 it is one short of it
    for (int n = 2; n <= 4; ++n) {
      const auto bare = lie_closure(perm_invariant_generators(n, false), copts);
      if (bare.dim() != perm_invariant_generated_dim(n, false)) return false;
      if (bare.has_trace_direction) return false;
      const auto with_id = lie_closure(perm_invariant_generators(n, true), copts);
      if (with_id.dim() != perm_invariant_generated_dim(n, true)) return false;
      if (!with_id.has_trace_direction) return false;
      if (n <= 3 && with_id.dim() != binomial(n + 3, n)) return false;
    }
    return true;
  });

  c.check("restrictions generate u(f+1): (n,f) = (3,1), (4,2), (4,0)", [&] {
    for (auto [n, f] : {std::pair{3, 1}, {4, 2}, {4, 0}}) {
      SpinNetworkSpec one;
      one.clusters = {{n, 1.0}};
      SubspaceSelection sel{{f}, {1}};
      const auto basis = subspace_basis(sel, one, 64);
      const long d = pow2_checked(n);
      std::vector<Matrix> gens;
      for (const Matrix& g : perm_invariant_generators(n, false))
        gens.push_back(restrict_operator(g, basis));
      gens.push_back(restrict_operator(im * Matrix::Identity(d, d), basis));
      if (lie_closure(gens, copts).dim() != static_cast<long>(f + 1) * (f + 1)) return false;
    }
    return true;
  });

  c.check("Dynkin maximality probes (2,2), (2,3), (3,3)", [&] {
    for (auto [r, s] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
      if (!dynkin_check(r, s, 1, copts)) return false;
      if (su_direct_sum_closure_dim(r, s, copts) != static_cast<long>(r) * r + s * s - 2)
        return false;
    }
    return true;
  });

  c.check("split-coupling pair: equal couplings give su(6)+su(2), split give su(8)", [&] {
    VerifyOptions vo;
    vo.tol = tol;
    const auto eq = verify_full_space(split_coupling_spec(1, 1), vo);
    if (eq.measured_dim != 38 || !eq.structure_checked) return false;
    if (!eq.block_diagonal_ok || !eq.copies_equal || !eq.tuple_ranks_ok) return false;
    if (!eq.reconstruction_match) return false;
    const auto split = verify_full_space(split_coupling_spec(1, 2), vo);
    return split.measured_dim == 63;
  });

  c.check("coupling-term membership and generator reduction, two clusters", [&] {
    SpinNetworkSpec pair;
    pair.clusters = {{1, 1.0}, {1, 2.0}};
    pair.couplings[{0, 1}] = Coupling{1.0, 0.0, 0.0};
    VerifyOptions vo;
    vo.tol = tol;
    const auto eq = check_generator_reduction(pair, vo);
    if (eq.max_coupling_residual > 1e-8) return false;
    if (eq.reduced_dim != eq.unreduced_dim || eq.reduced_dim != 15) return false;
    SpinNetworkSpec two;
    two.clusters = {{2, 1.0}, {1, 2.0}};
    two.couplings[{0, 1}] = Coupling{1.0, 0.0, 0.0};
    const auto eq2 = check_generator_reduction(two, vo);
    return eq2.reduced_dim == eq2.unreduced_dim && eq2.reduced_dim == 38 &&
           eq2.max_coupling_residual < 1e-8;
  });

  c.check("subspace bases: orthonormal, invariant, block diagonal", [&] {
    const auto spec = figure1_scaled_spec();
    const auto gens = reduced_generators(spec);
    for (const auto& sel : enumerate_subspaces(spec, false)) {
      const auto basis = subspace_basis(sel, spec, 64);
      const long ds = basis.columns.cols();
      if ((basis.columns.adjoint() * basis.columns - Matrix::Identity(ds, ds)).norm() > 1e-10)
        return false;
      for (const auto& g : gens) (void)restrict_operator(g, basis, 1e-10);  // throws on leakage
    }
    const Matrix u = full_symmetry_basis(spec, 64);
    const long d = spec.full_dim();
    if ((u.adjoint() * u - Matrix::Identity(d, d)).norm() > 1e-10) return false;
    const auto sels = enumerate_subspaces(spec, false);
    for (const auto& g : gens) {
      const Matrix y = u.adjoint() * g * u;
      Matrix bd = Matrix::Zero(d, d);
      long off = 0;
      for (const auto& sel : sels) {
        const long ds = sel.dim();
        bd.block(off, off, ds, ds) = y.block(off, off, ds, ds);
        off += ds;
      }
      if ((y - bd).norm() > 1e-10) return false;
    }
    return true;
  });

  c.check("copy-independence of restricted collective operators", [&] {
    for (auto [n, f] : {std::pair{3, 1}, {4, 2}}) {
      const int copies = decompose_cluster(n).multiplicity(f);
      for (Axis a : kAxes) {
        const Matrix s = collective_S(a, n);
        Matrix first;
        for (int copy = 1; copy <= copies; ++copy) {
          const auto vecs = irrep_basis(n, f, copy);
          Matrix b(s.rows(), static_cast<long>(vecs.size()));
          for (size_t k = 0; k < vecs.size(); ++k) b.col(static_cast<long>(k)) = vecs[k];
          const Matrix r = b.adjoint() * s * b;
          if (copy == 1)
            first = r;
          else if ((r - first).norm() > 1e-10)
            return false;
        }
      }
    }
    return true;
  });

  c.check("Casimir restriction is the scalar f/2 (f/2+1)", [&] {
    SpinNetworkSpec two;
    two.clusters = {{2, 1.0}, {1, 2.0}};
    two.couplings[{0, 1}] = Coupling{1.0, 0.0, 0.0};
    for (const auto& sel : enumerate_subspaces(two, true)) {
      const auto basis = subspace_basis(sel, two, 64);
      for (int j = 0; j < 2; ++j) {
        const Matrix cas = cluster_operator(casimir(two.cluster_size(j)), j, two);
        const Matrix r = restrict_operator(cas, basis);
        const int f = sel.labels[static_cast<size_t>(j)];
        const double want = (f / 2.0) * (f / 2.0 + 1.0);
        if ((r - want * Matrix::Identity(r.rows(), r.cols())).norm() > 1e-10) return false;
      }
    }
    return true;
  });

  os << (c.all_ok() ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
  return c.all_ok();
}

}  // namespace spinnet
