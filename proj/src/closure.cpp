#include "spinnet/closure.hpp"

#include <algorithm>
#include <random>

namespace spinnet {

namespace {
constexpr long kChunk = 256;       // candidate commutators per projection batch
constexpr double kTraceTol = 1e-9; // tracelessness threshold on unit-norm elements

double row_trace_abs(const Eigen::RowVectorXd& row, long d) {
  double re = 0, im = 0;
  for (long k = 0; k < d; ++k) {
    re += row(k * d + k);
    im += row(d * d + k * d + k);
  }
  return std::hypot(re, im);
}

// commutators of skew-Hermitian matrices are skew and traceless exactly;
// removing the floating-point remainder keeps normalized small residuals
// from amplifying it
void hygiene(Matrix& m, bool traceless) {
  m = 0.5 * (m - m.adjoint().eval());
  if (traceless) m.diagonal().array() -= m.trace() / static_cast<double>(m.rows());
}
}  // namespace

Eigen::RowVectorXd vec_matrix(const Matrix& m) {
  const long d = m.rows();
  Eigen::RowVectorXd row(2 * d * d);
  Eigen::Map<Eigen::MatrixXd>(row.data(), d, d) = m.real();
  Eigen::Map<Eigen::MatrixXd>(row.data() + d * d, d, d) = m.imag();
  return row;
}

Matrix unvec_matrix(const Eigen::RowVectorXd& row, long d) {
  Matrix m(d, d);
  m.real() = Eigen::Map<const Eigen::MatrixXd>(row.data(), d, d);
  m.imag() = Eigen::Map<const Eigen::MatrixXd>(row.data() + d * d, d, d);
  return m;
}

void RowSpan::project(Eigen::RowVectorXd& v) const {
  if (dim_ == 0) return;
  v.noalias() -= (v * rows_.topRows(dim_).transpose()) * rows_.topRows(dim_);
}

void RowSpan::reserve_row() {
  if (dim_ < rows_.rows()) return;
  const long grown = std::max<long>(64, 2 * rows_.rows());
  rows_.conservativeResize(grown, cols_);
}

bool RowSpan::try_insert(Eigen::RowVectorXd v) {
  project(v);
  if (v.norm() <= tol_) return false;
  project(v);  // reorthogonalization pass
  const double n = v.norm();
  if (n <= tol_) return false;
  reserve_row();
  rows_.row(dim_++) = v / n;
  return true;
}

double RowSpan::residual_norm(Eigen::RowVectorXd v) const {
  project(v);
  project(v);
  return v.norm();
}

Matrix ClosureResult::basis_element(long i) const {
  return unvec_matrix(span.rows().row(i), matrix_dim);
}

std::vector<Matrix> ClosureResult::basis() const {
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(dim()));
  for (long i = 0; i < dim(); ++i) out.push_back(basis_element(i));
  return out;
}

ClosureResult lie_closure(const std::vector<Matrix>& generators, const ClosureOptions& opts) {
  if (opts.tol <= 0) throw std::invalid_argument("lie_closure: tolerance must be positive");
  long d = 0;
  for (const auto& g : generators) {
    if (d == 0) d = g.rows();
    if (g.rows() != d || g.cols() != d)
      throw std::invalid_argument("lie_closure: generators must be square matrices of equal dimension");
    if (!is_skew_hermitian(g, 1e-10))
      throw std::invalid_argument("lie_closure: generators must be skew-Hermitian");
  }
  if (d == 0) d = 1;

  bool traceless_inputs = true;
  for (const auto& g : generators)
    if (std::abs(g.trace()) > kTraceTol * std::max(1.0, g.norm())) traceless_inputs = false;

  long cap = traceless_inputs ? d * d - 1 : d * d;
  if (opts.ambient_cap > 0) cap = std::min(cap, opts.ambient_cap);

  ClosureResult result{d, 0, false, false, RowSpan(2 * d * d, opts.tol)};
  auto& span = result.span;

  // pin the stored row back onto the skew (and traceless) subspace; this is
  // exact for commutator-generated directions and keeps normalization of
  // small residuals from amplifying floating-point remainders. Stored rows
  // are traceless, so the correction preserves orthonormality.
  auto fix_last_row = [&]() {
    Matrix m = unvec_matrix(span.rows().row(span.dim() - 1), d);
    hygiene(m, traceless_inputs);
    Eigen::RowVectorXd v = vec_matrix(m);
    const double n = v.norm();
    if (n < 0.5)
      throw std::logic_error("lie_closure: accepted direction was dominated by numerical noise");
    span.replace_last(v / n);
    if (traceless_inputs && row_trace_abs(span.rows().row(span.dim() - 1), d) > kTraceTol)
      throw std::logic_error("lie_closure: trace appeared in a closure of traceless generators");
  };

  // seed the span with unit-normalized generators
  for (const auto& g : generators) {
    if (span.dim() >= cap) break;
    const double n = g.norm();
    if (n < 1e-300) continue;
    Matrix gh = g / n;
    hygiene(gh, traceless_inputs);
    if (span.try_insert(vec_matrix(gh))) fix_last_row();
  }

  // rounds of (new x all) commutators, batched projection per chunk
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> cand(kChunk, 2 * d * d);
  long new_lo = 0;
  while (new_lo < span.dim() && span.dim() < cap) {
    const long new_hi = span.dim();
    // pairs (i, j) with i in the new range and j < i cover new x old and
    // each unordered new x new pair once
    std::vector<std::pair<long, long>> pairs;
    for (long i = new_lo; i < new_hi; ++i)
      for (long j = 0; j < i; ++j) pairs.emplace_back(i, j);

    for (size_t lo = 0; lo < pairs.size() && span.dim() < cap; lo += kChunk) {
      const long chunk = std::min<long>(kChunk, static_cast<long>(pairs.size() - lo));
      const long qdim = span.dim();  // snapshot; later insertions handled by try_insert
      long prev_i = -1;
      Matrix a;
      for (long c = 0; c < chunk; ++c) {
        const auto [i, j] = pairs[lo + static_cast<size_t>(c)];
        if (i != prev_i) {
          a = result.basis_element(i);
          prev_i = i;
        }
        const Matrix b = result.basis_element(j);
        Matrix comm = a * b;
        comm.noalias() -= b * a;
        hygiene(comm, traceless_inputs);
        cand.row(c) = vec_matrix(comm);
      }
      auto block = cand.topRows(chunk);
      block.noalias() -= (block * span.rows().topRows(qdim).transpose()) * span.rows().topRows(qdim);
      for (long c = 0; c < chunk && span.dim() < cap; ++c) {
        if (block.row(c).norm() <= opts.tol) continue;
        if (span.try_insert(block.row(c))) fix_last_row();
      }
    }
    result.rounds += 1;
    new_lo = new_hi;
  }
  result.saturated_early = span.dim() >= cap;

  // a nonzero-trace direction can only enter through non-traceless inputs;
  // detect it by projecting the identity onto the span
  if (!traceless_inputs && span.dim() > 0) {
    Eigen::RowVectorXd id = vec_matrix(Complex(0, 1) * Matrix::Identity(d, d));
    id /= id.norm();
    const double present = (id * span.rows().transpose()).norm();
    result.has_trace_direction = present > 1e-6;
  }
  return result;
}

double span_residual(const Matrix& op, const ClosureResult& result) {
  if (op.rows() != result.matrix_dim || op.cols() != result.matrix_dim)
    throw std::invalid_argument("span_residual: dimension mismatch");
  const double n = op.norm();
  if (n == 0.0) return 0.0;
  return result.span.residual_norm(vec_matrix(op)) / n;
}

bool in_span(const Matrix& op, const ClosureResult& result, double tol) {
  return span_residual(op, result) < tol;
}

double max_sampled_commutator_residual(const ClosureResult& result, int samples,
                                       std::uint64_t seed) {
  if (result.dim() < 2) return 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(0, result.dim() - 1);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const long i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const Matrix c = commutator(result.basis_element(i), result.basis_element(j));
    if (c.norm() < 1e-14) continue;
    worst = std::max(worst, result.span.residual_norm(vec_matrix(c)));
  }
  return worst;
}

}  // namespace spinnet
