#ifndef SPINNET_CLOSURE_HPP
#define SPINNET_CLOSURE_HPP

#include <cstdint>
#include <vector>

#include "spinnet/types.hpp"

namespace spinnet {

/// Skew-Hermitian D x D matrices form a real vector space of dimension D^2;
/// these helpers flatten to/from real coordinate rows (Re part then Im part,
/// column-major), so the Euclidean dot product equals Re tr(A^dag B).
Eigen::RowVectorXd vec_matrix(const Matrix& m);
Matrix unvec_matrix(const Eigen::RowVectorXd& row, long d);

/// Incrementally grown orthonormal row span with a fixed acceptance
/// tolerance. Used for rank bookkeeping and as the closure's basis store.
class RowSpan {
 public:
  RowSpan(long cols, double tol) : cols_(cols), tol_(tol), rows_(0, cols) {}

  /// Projects v onto the orthogonal complement of the span (two passes);
  /// if the residual norm exceeds tol, appends the normalized residual.
  bool try_insert(Eigen::RowVectorXd v);

  /// Norm of v minus its projection onto the span.
  double residual_norm(Eigen::RowVectorXd v) const;

  /// Replaces the most recently inserted row (caller keeps orthonormality).
  void replace_last(const Eigen::RowVectorXd& v) { rows_.row(dim_ - 1) = v; }

  long dim() const { return dim_; }
  long cols() const { return cols_; }
  double tol() const { return tol_; }
  /// The first dim() rows are the orthonormal basis.
  auto rows() const { return rows_.topRows(dim_); }

 private:
  void project(Eigen::RowVectorXd& v) const;
  void reserve_row();

  long cols_;
  double tol_;
  long dim_ = 0;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows_;
};

struct ClosureOptions {
  double tol = kClosureTol;  // rank decisions, relative to unit-normalized generators
  long ambient_cap = 0;      // 0: D^2 - 1 for traceless inputs, D^2 otherwise
};

/// The real Lie algebra generated by a set of skew-Hermitian matrices,
/// computed by iterated commutators with orthogonal projection.
struct ClosureResult {
  long matrix_dim = 0;  // D
  int rounds = 0;
  bool saturated_early = false;    // stopped because dim hit the ambient cap
  bool has_trace_direction = false;  // a basis direction with nonzero trace (from non-traceless inputs)
  RowSpan span;

  long dim() const { return span.dim(); }
  Matrix basis_element(long i) const;
  std::vector<Matrix> basis() const;
};

ClosureResult lie_closure(const std::vector<Matrix>& generators, const ClosureOptions& opts = {});

/// Relative residual of op against span(result), |op - proj(op)| / |op|.
double span_residual(const Matrix& op, const ClosureResult& result);

bool in_span(const Matrix& op, const ClosureResult& result, double tol);

/// Closure certificate: max relative residual of [b_i, b_j] against the span
/// over sampled basis pairs.
double max_sampled_commutator_residual(const ClosureResult& result, int samples, std::uint64_t seed);

}  // namespace spinnet

#endif
