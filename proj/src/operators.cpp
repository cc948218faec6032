#include "spinnet/operators.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <set>

namespace spinnet {

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix pauli(Axis a) {
  Matrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (a) {
    case Axis::x:
      m << 0, 0.5, 0.5, 0;
      break;
    case Axis::y:
      m << 0, 0.5 * i, -0.5 * i, 0;
      break;
    case Axis::z:
      m << 0.5, 0, 0, -0.5;
      break;
  }
  return m;
}

Matrix single_spin(Axis a, int pos, int n) {
  if (n < 1) throw std::invalid_argument("single_spin: n must be >= 1");
  if (pos < 0 || pos >= n) throw std::invalid_argument("single_spin: position out of range");
  const long pre = pow2_checked(pos);
  const long post = pow2_checked(n - pos - 1);
  Matrix out = kron(Matrix::Identity(pre, pre), pauli(a));
  return kron(out, Matrix::Identity(post, post));
}

Matrix collective_S(Axis a, int n) {
  if (n < 1) throw std::invalid_argument("collective_S: n must be >= 1");
  const long d = pow2_checked(n);
  Matrix out = Matrix::Zero(d, d);
  for (int l = 0; l < n; ++l) out += single_spin(a, l, n);
  return out;
}

Matrix pair_sum_I(Axis g, Axis b, int n) {
  if (n < 1) throw std::invalid_argument("pair_sum_I: n must be >= 1");
  const long d = pow2_checked(n);
  Matrix out = Matrix::Zero(d, d);
  if (n == 1) return out;  // one-spin clusters: I_gb taken to be zero
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      out += single_spin(g, p, n) * single_spin(b, q, n);
      if (g != b) out += single_spin(b, p, n) * single_spin(g, q, n);
    }
  }
  return out;
}

Matrix casimir(int n) {
  if (n < 1) throw std::invalid_argument("casimir: n must be >= 1");
  Matrix sx = collective_S(Axis::x, n);
  Matrix sy = collective_S(Axis::y, n);
  Matrix sz = collective_S(Axis::z, n);
  return sx * sx + sy * sy + sz * sz;
}

Matrix cluster_operator(const Matrix& op, int j, const SpinNetworkSpec& spec) {
  const int N = spec.n_clusters();
  if (j < 0 || j >= N) throw std::invalid_argument("cluster_operator: cluster index out of range");
  const long dj = pow2_checked(spec.cluster_size(j));
  if (op.rows() != dj || op.cols() != dj)
    throw std::invalid_argument("cluster_operator: operator dimension does not match cluster");
  long pre = 1, post = 1;
  for (int k = 0; k < j; ++k) pre *= pow2_checked(spec.cluster_size(k));
  for (int k = j + 1; k < N; ++k) post *= pow2_checked(spec.cluster_size(k));
  Matrix out = kron(Matrix::Identity(pre, pre), op);
  return kron(out, Matrix::Identity(post, post));
}

Matrix cluster_collective(Axis a, int j, const SpinNetworkSpec& spec) {
  return cluster_operator(collective_S(a, spec.cluster_size(j)), j, spec);
}

Matrix drift_generator(const SpinNetworkSpec& spec) {
  spec.validate();
  const long d = spec.full_dim();
  Matrix h = Matrix::Zero(d, d);
  for (const auto& [jk, c] : spec.couplings) {
    if (!c.nonzero()) continue;
    const auto [j, k] = jk;
    if (c.zz != 0.0)
      h += c.zz * (cluster_collective(Axis::z, j, spec) * cluster_collective(Axis::z, k, spec));
    if (c.xx != 0.0)
      h += c.xx * (cluster_collective(Axis::x, j, spec) * cluster_collective(Axis::x, k, spec));
    if (c.yy != 0.0)
      h += c.yy * (cluster_collective(Axis::y, j, spec) * cluster_collective(Axis::y, k, spec));
  }
  return Complex(0.0, 1.0) * h;
}

std::array<Matrix, 3> control_generators(const SpinNetworkSpec& spec) {
  spec.validate();
  const long d = spec.full_dim();
  std::array<Matrix, 3> out = {Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d)};
  for (int ai = 0; ai < 3; ++ai) {
    for (int j = 0; j < spec.n_clusters(); ++j)
      out[static_cast<size_t>(ai)] += spec.gamma(j) * cluster_collective(kAxes[ai], j, spec);
    out[static_cast<size_t>(ai)] *= Complex(0.0, 1.0);
  }
  return out;
}

std::vector<Matrix> reduced_generators(const SpinNetworkSpec& spec) {
  spec.validate();
  if (!spec.gammas_distinct_nonzero())
    throw std::invalid_argument(
        "reduced_generators: gyromagnetic ratios must be pairwise distinct and nonzero");
  const Complex i(0.0, 1.0);
  std::vector<Matrix> gens;
  for (int j = 0; j < spec.n_clusters(); ++j)
    for (Axis a : kAxes) gens.push_back(i * cluster_collective(a, j, spec));
  for (const auto& [jk, c] : spec.couplings) {
    const auto [j, k] = jk;
    if (c.zz != 0.0)
      gens.push_back(i * (cluster_collective(Axis::z, j, spec) * cluster_collective(Axis::z, k, spec)));
    if (c.xx != 0.0)
      gens.push_back(i * (cluster_collective(Axis::x, j, spec) * cluster_collective(Axis::x, k, spec)));
    if (c.yy != 0.0)
      gens.push_back(i * (cluster_collective(Axis::y, j, spec) * cluster_collective(Axis::y, k, spec)));
  }
  return gens;
}

Matrix spin_level_drift(const SpinLevelSpec& spec) {
  spec.validate();
  const int n = spec.n_spins();
  const long d = spec.full_dim();
  Matrix h = Matrix::Zero(d, d);
  for (const auto& [ik, v] : spec.zz) {
    if (v == 0.0) continue;
    h += v * (single_spin(Axis::z, ik.first, n) * single_spin(Axis::z, ik.second, n));
  }
  return Complex(0.0, 1.0) * h;
}

std::array<Matrix, 3> spin_level_controls(const SpinLevelSpec& spec) {
  spec.validate();
  const int n = spec.n_spins();
  const long d = spec.full_dim();
  std::array<Matrix, 3> out = {Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d)};
  for (int ai = 0; ai < 3; ++ai) {
    for (int l = 0; l < n; ++l)
      out[static_cast<size_t>(ai)] += spec.gammas[static_cast<size_t>(l)] * single_spin(kAxes[ai], l, n);
    out[static_cast<size_t>(ai)] *= Complex(0.0, 1.0);
  }
  return out;
}

std::vector<Matrix> spin_level_generators(const SpinLevelSpec& spec) {
  spec.validate();
  const int n = spec.n_spins();
  const Complex i(0.0, 1.0);
  std::vector<Matrix> gens;
  gens.push_back(spin_level_drift(spec));

  // collective locals per distinct nonzero gamma value, in order of first appearance
  std::vector<double> seen;
  for (double g : spec.gammas) {
    if (g == 0.0 || std::find(seen.begin(), seen.end(), g) != seen.end()) continue;
    seen.push_back(g);
    const long d = spec.full_dim();
    for (Axis a : kAxes) {
      Matrix s = Matrix::Zero(d, d);
      for (int l = 0; l < n; ++l)
        if (spec.gammas[static_cast<size_t>(l)] == g) s += single_spin(a, l, n);
      gens.push_back(i * s);
    }
  }
  return gens;
}

bool SpinNetworkSpec::connected() const {
  const int N = n_clusters();
  if (N == 0) return false;
  std::vector<int> stack = {0};
  std::vector<bool> seen(static_cast<size_t>(N), false);
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int j = stack.back();
    stack.pop_back();
    for (const auto& [jk, c] : couplings) {
      if (!c.nonzero()) continue;
      int other = -1;
      if (jk.first == j) other = jk.second;
      if (jk.second == j) other = jk.first;
      if (other >= 0 && !seen[static_cast<size_t>(other)]) {
        seen[static_cast<size_t>(other)] = true;
        ++count;
        stack.push_back(other);
      }
    }
  }
  return count == N;
}

void SpinNetworkSpec::validate() const {
  if (clusters.empty()) throw std::invalid_argument("network must have at least one cluster");
  for (const auto& c : clusters)
    if (c.size < 1) throw std::invalid_argument("cluster sizes must be positive");
  for (const auto& [jk, c] : couplings) {
    (void)c;
    if (jk.first < 0 || jk.second >= n_clusters() || jk.first >= jk.second)
      throw std::invalid_argument("coupling indices must satisfy 0 <= j < k < N");
  }
  (void)full_dim();  // overflow guard
}

void SpinLevelSpec::validate() const {
  if (gammas.empty()) throw std::invalid_argument("spin-level spec must have at least one spin");
  for (const auto& [ik, v] : zz) {
    (void)v;
    if (ik.first < 0 || ik.second >= n_spins() || ik.first >= ik.second)
      throw std::invalid_argument("coupling indices must satisfy 0 <= i < k < n");
  }
  (void)full_dim();
}

}  // namespace spinnet
