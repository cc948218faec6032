#include "spinnet/cg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <functional>
#include <sstream>

namespace spinnet {

namespace {

constexpr double kNullTol = 1e-9;  // singular values below kNullTol * s_max count as zero

int popcount_long(long v) {
  int c = 0;
  while (v) {
    c += static_cast<int>(v & 1);
    v >>= 1;
  }
  return c;
}

// basis states of n spins with a given number of down spins
std::vector<long> weight_states(int n, int downs) {
  std::vector<long> out;
  const long d = pow2_checked(n);
  for (long b = 0; b < d; ++b)
    if (popcount_long(b) == downs) out.push_back(b);
  return out;
}

}  // namespace

ClusterDecomposition decompose_cluster(int n) {
  if (n < 1) throw std::invalid_argument("decompose_cluster: n must be >= 1");
  std::map<int, int> m = {{1, 1}};
  for (int k = 2; k <= n; ++k) {
    std::map<int, int> next;
    for (const auto& [f, mult] : m) {
      next[f + 1] += mult;
      if (f - 1 >= 0) next[f - 1] += mult;
    }
    m = std::move(next);
  }
  ClusterDecomposition out;
  out.n = n;
  out.multiplicities = std::move(m);
  return out;
}

std::string SubspaceSelection::name() const {
  std::ostringstream os;
  os << "T_{";
  for (size_t j = 0; j < labels.size(); ++j) {
    if (j) os << ",";
    os << labels[j];
  }
  os << "}";
  return os.str();
}

Matrix raising_operator(int n) {
  const Complex i(0.0, 1.0);
  Matrix sx = collective_S(Axis::x, n);
  Matrix sy = collective_S(Axis::y, n);
  Matrix plus = sx + i * sy;
  Matrix minus = sx - i * sy;
  // the raising operator annihilates the all-up state (maximal S_z)
  Vector all_up = Vector::Zero(pow2_checked(n));
  all_up(0) = 1.0;
  const bool plus_raises = (plus * all_up).norm() < 1e-12;
  return plus_raises ? plus : minus;
}

Matrix lowering_operator(int n) { return raising_operator(n).adjoint(); }

std::vector<Vector> highest_weight_vectors(int n, int f) {
  const auto decomp = decompose_cluster(n);
  const int mult = decomp.multiplicity(f);
  if (mult <= 0) throw std::invalid_argument("highest_weight_vectors: label not in decomposition");

  const int downs = (n - f) / 2;
  const auto cols = weight_states(n, downs);
  const long d0 = static_cast<long>(cols.size());

  Matrix kernel;  // d0 x mult, coordinates within the weight space
  if (downs == 0) {
    kernel = Matrix::Identity(1, 1);
  } else {
    const auto rows = weight_states(n, downs - 1);
    Matrix sp = raising_operator(n);
    Matrix m(static_cast<long>(rows.size()), d0);
    for (long r = 0; r < m.rows(); ++r)
      for (long c = 0; c < m.cols(); ++c) m(r, c) = sp(rows[static_cast<size_t>(r)], cols[static_cast<size_t>(c)]);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = (sv.size() ? sv(0) : 0.0) * kNullTol;
    long rank = 0;
    for (long s = 0; s < sv.size(); ++s)
      if (sv(s) > cut) ++rank;
    kernel = svd.matrixV().rightCols(d0 - rank);
  }
  if (kernel.cols() != mult)
    throw std::logic_error("highest_weight_vectors: kernel dimension does not match multiplicity");

  // deterministic copy ordering: column-pivoted orthogonalization of the
  // kernel projector (depends only on the subspace, not on SVD output)
  Matrix proj = kernel * kernel.adjoint();
  Eigen::ColPivHouseholderQR<Matrix> qr(proj);
  Matrix q = qr.householderQ();
  Matrix basis = q.leftCols(mult);

  std::vector<Vector> out;
  const long full = pow2_checked(n);
  for (int c = 0; c < mult; ++c) {
    Vector v = Vector::Zero(full);
    for (long r = 0; r < d0; ++r) v(cols[static_cast<size_t>(r)]) = basis(r, c);
    // fix the overall phase: largest-magnitude entry made real positive
    long imax = 0;
    for (long r = 1; r < full; ++r)
      if (std::abs(v(r)) > std::abs(v(imax))) imax = r;
    Complex ph = v(imax) / std::abs(v(imax));
    out.push_back(v / ph);
  }
  return out;
}

std::vector<Vector> irrep_basis(int n, int f, int copy_index) {
  const auto hw = highest_weight_vectors(n, f);
  if (copy_index < 1 || copy_index > static_cast<int>(hw.size()))
    throw std::invalid_argument("irrep_basis: copy index out of range");
  Matrix lower = lowering_operator(n);
  std::vector<Vector> out;
  out.push_back(hw[static_cast<size_t>(copy_index - 1)]);
  for (int k = 0; k < f; ++k) {
    Vector w = lower * out.back();
    const double nw = w.norm();
    if (nw < 1e-9)
      throw std::logic_error("irrep_basis: lowering chain collapsed before reaching length f+1");
    out.push_back(w / nw);
  }
  if ((lower * out.back()).norm() > 1e-8)
    throw std::logic_error("irrep_basis: lowering operator does not annihilate the lowest state");
  return out;
}

SubspaceBasis subspace_basis(const SubspaceSelection& sel, const SpinNetworkSpec& spec,
                             long dim_cap) {
  spec.validate();
  const int N = spec.n_clusters();
  if (static_cast<int>(sel.labels.size()) != N || static_cast<int>(sel.copies.size()) != N)
    throw std::invalid_argument("subspace_basis: selection arity does not match network");
  if (spec.full_dim() > dim_cap)
    throw std::invalid_argument("subspace_basis: full-space dimension exceeds the configured cap");

  Matrix b = Matrix::Identity(1, 1);
  for (int j = 0; j < N; ++j) {
    const auto vecs = irrep_basis(spec.cluster_size(j), sel.labels[static_cast<size_t>(j)],
                                  sel.copies[static_cast<size_t>(j)]);
    Matrix bj(vecs[0].size(), static_cast<long>(vecs.size()));
    for (size_t c = 0; c < vecs.size(); ++c) bj.col(static_cast<long>(c)) = vecs[c];
    b = kron(b, bj);
  }
  return SubspaceBasis{sel, std::move(b)};
}

Matrix restrict_operator(const Matrix& op, const SubspaceBasis& basis, double leak_tol) {
  const Matrix& b = basis.columns;
  if (op.rows() != b.rows() || op.cols() != b.rows())
    throw std::invalid_argument("restrict_operator: operator does not act on the basis space");
  Matrix ob = op * b;
  Matrix res = b.adjoint() * ob;
  const double leakage = (ob - b * res).norm();
  if (leakage > leak_tol * std::max(1.0, op.norm()))
    throw std::runtime_error("restrict_operator: operator leaks out of the invariant subspace");
  return res;
}

std::vector<SubspaceSelection> enumerate_subspaces(const SpinNetworkSpec& spec,
                                                   bool distinct_labels_only) {
  spec.validate();
  const int N = spec.n_clusters();
  std::vector<ClusterDecomposition> decos;
  for (int j = 0; j < N; ++j) decos.push_back(decompose_cluster(spec.cluster_size(j)));

  std::vector<SubspaceSelection> out;
  SubspaceSelection cur;
  cur.labels.assign(static_cast<size_t>(N), 0);
  cur.copies.assign(static_cast<size_t>(N), 1);

  // lexicographic product, cluster 1 slowest, labels descending
  std::function<void(int)> rec = [&](int j) {
    if (j == N) {
      out.push_back(cur);
      return;
    }
    for (int f : decos[static_cast<size_t>(j)].labels()) {
      cur.labels[static_cast<size_t>(j)] = f;
      const int copies = distinct_labels_only ? 1 : decos[static_cast<size_t>(j)].multiplicity(f);
      for (int c = 1; c <= copies; ++c) {
        cur.copies[static_cast<size_t>(j)] = c;
        rec(j + 1);
      }
    }
  };
  rec(0);
  return out;
}

long selection_multiplicity(const SubspaceSelection& sel, const SpinNetworkSpec& spec) {
  long m = 1;
  for (int j = 0; j < spec.n_clusters(); ++j)
    m *= decompose_cluster(spec.cluster_size(j)).multiplicity(sel.labels[static_cast<size_t>(j)]);
  return m;
}

Matrix full_symmetry_basis(const SpinNetworkSpec& spec, long dim_cap) {
  const long d = spec.full_dim();
  if (d > dim_cap)
    throw std::invalid_argument("full_symmetry_basis: full-space dimension exceeds the configured cap");
  Matrix u(d, d);
  long col = 0;
  for (const auto& sel : enumerate_subspaces(spec, false)) {
    const auto b = subspace_basis(sel, spec, dim_cap);
    u.block(0, col, d, b.columns.cols()) = b.columns;
    col += b.columns.cols();
  }
  if (col != d) throw std::logic_error("full_symmetry_basis: dimension bookkeeping failed");
  return u;
}

}  // namespace spinnet
