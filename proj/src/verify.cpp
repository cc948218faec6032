#include "spinnet/verify.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace spinnet {

namespace {

constexpr double kRankTol = 1e-6;  // rank decisions on normalized block components

// flat-index map reordering tensor factors: order[p] = old factor at new position p
std::vector<long> tensor_reorder_map(const std::vector<long>& dims, const std::vector<int>& order) {
  const size_t m = dims.size();
  std::vector<long> stride_old(m, 1), stride_new(m, 1);
  for (size_t i = m; i-- > 1;) stride_old[i - 1] = stride_old[i] * dims[i];
  std::vector<long> nd(m);
  for (size_t p = 0; p < m; ++p) nd[p] = dims[static_cast<size_t>(order[p])];
  for (size_t p = m; p-- > 1;) stride_new[p - 1] = stride_new[p] * nd[p];
  long total = 1;
  for (long d : dims) total *= d;
  std::vector<long> to_new(static_cast<size_t>(total));
  for (long o = 0; o < total; ++o) {
    long n = 0;
    for (size_t p = 0; p < m; ++p) {
      const size_t i = static_cast<size_t>(order[p]);
      const long digit = (o / stride_old[i]) % dims[i];
      n += digit * stride_new[p];
    }
    to_new[static_cast<size_t>(o)] = n;
  }
  return to_new;
}

Matrix apply_index_map(const Matrix& x, const std::vector<long>& to_new) {
  Matrix out(x.rows(), x.cols());
  for (long r = 0; r < x.rows(); ++r)
    for (long c = 0; c < x.cols(); ++c)
      out(to_new[static_cast<size_t>(r)], to_new[static_cast<size_t>(c)]) = x(r, c);
  return out;
}

// partial trace keeping factor `keep` of a grouped tensor space
Matrix partial_trace_keep(const Matrix& x, const std::vector<long>& dims, size_t keep) {
  long pre = 1, post = 1;
  for (size_t g = 0; g < keep; ++g) pre *= dims[g];
  for (size_t g = keep + 1; g < dims.size(); ++g) post *= dims[g];
  const long dh = dims[keep];
  Matrix out = Matrix::Zero(dh, dh);
  for (long a = 0; a < pre; ++a)
    for (long b = 0; b < dh; ++b)
      for (long bp = 0; bp < dh; ++bp)
        for (long c = 0; c < post; ++c)
          out(b, bp) += x((a * dh + b) * post + c, (a * dh + bp) * post + c);
  return out;
}

Matrix embed_factor(const Matrix& m, const std::vector<long>& dims, size_t pos) {
  long pre = 1, post = 1;
  for (size_t g = 0; g < pos; ++g) pre *= dims[g];
  for (size_t g = pos + 1; g < dims.size(); ++g) post *= dims[g];
  Matrix out = kron(Matrix::Identity(pre, pre), m);
  return kron(out, Matrix::Identity(post, post));
}

Matrix traceless_part(const Matrix& m) {
  return m - (m.trace() / static_cast<double>(m.rows())) * Matrix::Identity(m.rows(), m.cols());
}

// checks that every element splits as a sum of per-component terms, that the
// per-component spans have the predicted ranks, and that single-node
// components stay inside the restricted su(2) action
bool check_component_structure(const ClosureResult& closure,
                               const LieAlgebraDescriptor& predicted,
                               const SubspaceSelection& sel, const SpinNetworkSpec& spec,
                               const SubspaceBasis& basis, const VerifyOptions& opts) {
  std::vector<int> active;  // clusters with f >= 1, original order
  for (int j = 0; j < spec.n_clusters(); ++j)
    if (sel.labels[static_cast<size_t>(j)] >= 1) active.push_back(j);
  if (active.empty()) return closure.dim() == 0;

  std::vector<long> dims_active;
  for (int j : active) dims_active.push_back(sel.labels[static_cast<size_t>(j)] + 1);

  // new factor order: components in descriptor order, clusters ascending inside
  std::vector<int> order;
  std::vector<long> comp_dims;
  for (const auto& blk : predicted.blocks) {
    long d = 1;
    for (int j : blk.clusters) {
      const auto it = std::find(active.begin(), active.end(), j);
      order.push_back(static_cast<int>(it - active.begin()));
      d *= sel.labels[static_cast<size_t>(j)] + 1;
    }
    comp_dims.push_back(d);
  }
  const auto to_new = tensor_reorder_map(dims_active, order);
  const long D = basis.columns.cols();

  // restricted su(2) action spans for single-node components
  std::vector<RowSpan> spin_spans;
  std::vector<RowSpan> rank_spans;
  for (size_t h = 0; h < predicted.blocks.size(); ++h) {
    const auto& blk = predicted.blocks[h];
    rank_spans.emplace_back(2 * comp_dims[h] * comp_dims[h], kRankTol);
    RowSpan s3(2 * comp_dims[h] * comp_dims[h], kRankTol);
    if (blk.kind == BlockKind::spin_irrep) {
      for (Axis a : kAxes) {
        const Matrix local = Complex(0, 1) * cluster_collective(a, blk.clusters[0], spec);
        Matrix r = apply_index_map(restrict_operator(local, basis, opts.leak_tol), to_new);
        Matrix m = traceless_part(partial_trace_keep(r, comp_dims, h)) *
                   (static_cast<double>(comp_dims[h]) / static_cast<double>(D));
        s3.try_insert(vec_matrix(m / m.norm()));
      }
    }
    spin_spans.push_back(std::move(s3));
  }

  for (long e = 0; e < closure.dim(); ++e) {
    const Matrix xp = apply_index_map(closure.basis_element(e), to_new);
    Matrix recon = Matrix::Zero(D, D);
    for (size_t h = 0; h < predicted.blocks.size(); ++h) {
      Matrix m = traceless_part(partial_trace_keep(xp, comp_dims, h)) *
                 (static_cast<double>(comp_dims[h]) / static_cast<double>(D));
      recon += embed_factor(m, comp_dims, h);
      const double nm = m.norm();
      if (nm > 1e-9) {
        const Eigen::RowVectorXd v = vec_matrix(m / nm);
        if (predicted.blocks[h].kind == BlockKind::spin_irrep &&
            spin_spans[h].residual_norm(v) > opts.block_tol * 10) {
          return false;
        }
        rank_spans[h].try_insert(v);
      }
    }
    if ((xp - recon).norm() > opts.block_tol) return false;
  }
  for (size_t h = 0; h < predicted.blocks.size(); ++h)
    if (rank_spans[h].dim() != predicted.blocks[h].algebra_dim) return false;
  return true;
}

// symmetry-adapted diagnostics shared by the full-space overloads; w maps the
// generator coordinates to the symmetry-adapted basis of `spec`
void full_space_diagnostics(const ClosureResult& closure, const Matrix& w,
                            const SpinNetworkSpec& spec, const VerifyOptions& opts,
                            FullSpaceReport& report) {
  const auto selections = enumerate_subspaces(spec, false);
  std::vector<long> offsets(selections.size() + 1, 0);
  for (size_t s = 0; s < selections.size(); ++s)
    offsets[s + 1] = offsets[s] + selections[s].dim();

  // distinct label tuples in enumeration order, with their copy offsets
  std::vector<TupleBlockStats> tuples;
  std::map<std::vector<int>, size_t> tuple_index;
  std::vector<std::vector<size_t>> tuple_members;
  for (size_t s = 0; s < selections.size(); ++s) {
    const auto& labels = selections[s].labels;
    auto it = tuple_index.find(labels);
    if (it == tuple_index.end()) {
      tuple_index.emplace(labels, tuples.size());
      SubspaceSelection rep{labels, std::vector<int>(labels.size(), 1)};
      TupleBlockStats st;
      st.labels = labels;
      st.subspace_dim = rep.dim();
      st.multiplicity = selection_multiplicity(rep, spec);
      st.predicted_dim = predict_descriptor(rep, spec).total_algebra_dim;
      tuples.push_back(std::move(st));
      tuple_members.push_back({s});
    } else {
      tuple_members[it->second].push_back(s);
    }
  }

  std::vector<RowSpan> rank_spans;
  for (const auto& t : tuples) rank_spans.emplace_back(2 * t.subspace_dim * t.subspace_dim, kRankTol);

  bool diag_ok = true, copies_ok = true;
  for (long e = 0; e < closure.dim(); ++e) {
    const Matrix x = closure.basis_element(e);
    const Matrix y = w.adjoint() * x * w;
    Matrix bd = Matrix::Zero(y.rows(), y.cols());
    for (size_t s = 0; s < selections.size(); ++s) {
      const long o = offsets[s], d = offsets[s + 1] - offsets[s];
      bd.block(o, o, d, d) = y.block(o, o, d, d);
    }
    if ((y - bd).norm() > opts.block_tol) diag_ok = false;
    for (size_t t = 0; t < tuples.size(); ++t) {
      const size_t s0 = tuple_members[t][0];
      const long o0 = offsets[s0], d = tuples[t].subspace_dim;
      const Matrix b0 = y.block(o0, o0, d, d);
      for (size_t mi = 1; mi < tuple_members[t].size(); ++mi) {
        const long oc = offsets[tuple_members[t][mi]];
        if ((y.block(oc, oc, d, d) - b0).norm() > opts.block_tol) copies_ok = false;
      }
      const double nb = b0.norm();
      if (nb > 1e-9) rank_spans[t].try_insert(vec_matrix(b0 / nb));
    }
  }

  report.structure_checked = true;
  report.block_diagonal_ok = diag_ok;
  report.copies_equal = copies_ok;
  report.tuple_ranks_ok = true;
  report.reconstruction_sum = 0;
  for (size_t t = 0; t < tuples.size(); ++t) {
    tuples[t].measured_rank = rank_spans[t].dim();
    if (tuples[t].measured_rank != tuples[t].predicted_dim) report.tuple_ranks_ok = false;
    report.reconstruction_sum += tuples[t].predicted_dim;
  }
  report.reconstruction_match = report.measured_dim == report.reconstruction_sum;
  report.tuples = std::move(tuples);
}

}  // namespace

std::vector<Matrix> restricted_reduced_generators(const SpinNetworkSpec& spec,
                                                  const SubspaceBasis& basis, double leak_tol) {
  std::vector<Matrix> out;
  for (const auto& g : reduced_generators(spec)) {
    Matrix r = restrict_operator(g, basis, leak_tol);
    if (r.norm() > 1e-12) out.push_back(std::move(r));
  }
  return out;
}

PredictionCheck verify_prediction(const SpinNetworkSpec& spec, const SubspaceSelection& sel,
                                  const VerifyOptions& opts) {
  PredictionCheck check;
  check.selection = sel;
  check.subspace_dim = sel.dim();
  check.predicted = predict_descriptor(sel, spec);

  const auto basis = subspace_basis(sel, spec, opts.dim_cap);
  const auto gens = restricted_reduced_generators(spec, basis, opts.leak_tol);
  const auto closure = lie_closure(gens, ClosureOptions{opts.tol, 0});

  check.measured_dim = closure.dim();
  check.match = check.measured_dim == check.predicted.total_algebra_dim;
  check.identity_direction = closure.has_trace_direction;
  check.rounds = closure.rounds;
  check.saturated_early = closure.saturated_early;
  check.block_structure_ok =
      !opts.check_blocks ||
      check_component_structure(closure, check.predicted, sel, spec, basis, opts);
  return check;
}

FullSpaceReport verify_full_space(const SpinNetworkSpec& spec, const VerifyOptions& opts) {
  spec.validate();
  if (spec.full_dim() > opts.dim_cap)
    throw std::invalid_argument("verify_full_space: full-space dimension exceeds the configured cap");

  std::vector<Matrix> gens = {drift_generator(spec)};
  for (auto& b : control_generators(spec)) gens.push_back(std::move(b));
  const auto closure = lie_closure(gens, ClosureOptions{opts.tol, 0});

  FullSpaceReport report;
  report.full_dim = spec.full_dim();
  report.measured_dim = closure.dim();
  report.rounds = closure.rounds;
  report.has_trace_direction = closure.has_trace_direction;

  if (opts.check_blocks && spec.gammas_distinct_nonzero()) {
    const Matrix u = full_symmetry_basis(spec, opts.dim_cap);
    full_space_diagnostics(closure, u, spec, opts, report);
  }
  return report;
}

FullSpaceReport verify_full_space(const SpinLevelSpec& spec, const VerifyOptions& opts) {
  spec.validate();
  if (spec.full_dim() > opts.dim_cap)
    throw std::invalid_argument("verify_full_space: full-space dimension exceeds the configured cap");

  std::vector<Matrix> gens = {spin_level_drift(spec)};
  for (auto& b : spin_level_controls(spec)) gens.push_back(std::move(b));
  const auto closure = lie_closure(gens, ClosureOptions{opts.tol, 0});

  FullSpaceReport report;
  report.full_dim = spec.full_dim();
  report.measured_dim = closure.dim();
  report.rounds = closure.rounds;
  report.has_trace_direction = closure.has_trace_direction;

  const auto ue = uniform_equivalent(spec);
  if (opts.check_blocks && ue && ue->spec.gammas_distinct_nonzero()) {
    // reorder spins into grouped order, then use the equivalent network's
    // symmetry-adapted basis
    std::vector<long> dims(static_cast<size_t>(spec.n_spins()), 2);
    const auto to_new = tensor_reorder_map(dims, ue->spin_order);
    const Matrix u = full_symmetry_basis(ue->spec, opts.dim_cap);
    Matrix w(u.rows(), u.cols());
    for (long r = 0; r < u.rows(); ++r) w.row(r) = u.row(to_new[static_cast<size_t>(r)]);
    full_space_diagnostics(closure, w, ue->spec, opts, report);
  }
  return report;
}

std::optional<UniformEquivalent> uniform_equivalent(const SpinLevelSpec& spec) {
  spec.validate();
  std::vector<double> values;
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < spec.n_spins(); ++i) {
    const double g = spec.gammas[static_cast<size_t>(i)];
    auto it = std::find(values.begin(), values.end(), g);
    if (it == values.end()) {
      values.push_back(g);
      groups.push_back({i});
    } else {
      groups[static_cast<size_t>(it - values.begin())].push_back(i);
    }
  }
  for (const auto& grp : groups)
    for (size_t a = 0; a < grp.size(); ++a)
      for (size_t b = a + 1; b < grp.size(); ++b)
        if (spec.coupling(grp[a], grp[b]) != 0.0) return std::nullopt;

  UniformEquivalent ue;
  for (size_t g = 0; g < groups.size(); ++g) {
    ue.spec.clusters.push_back({static_cast<int>(groups[g].size()), values[g]});
    for (int i : groups[g]) ue.spin_order.push_back(i);
  }
  for (size_t g = 0; g < groups.size(); ++g) {
    for (size_t h = g + 1; h < groups.size(); ++h) {
      const double v = spec.coupling(groups[g][0], groups[h][0]);
      for (int i : groups[g])
        for (int k : groups[h])
          if (spec.coupling(i, k) != v) return std::nullopt;
      if (v != 0.0)
        ue.spec.couplings[{static_cast<int>(g), static_cast<int>(h)}] = Coupling{v, 0.0, 0.0};
    }
  }
  return ue;
}

EquivalenceCheck check_generator_reduction(const SpinNetworkSpec& spec,
                                           const VerifyOptions& opts) {
  spec.validate();
  if (spec.full_dim() > opts.dim_cap)
    throw std::invalid_argument("check_generator_reduction: dimension exceeds the configured cap");

  EquivalenceCheck out;
  out.reduced_dim = lie_closure(reduced_generators(spec), ClosureOptions{opts.tol, 0}).dim();

  std::vector<Matrix> ungated = {drift_generator(spec)};
  for (auto& b : control_generators(spec)) ungated.push_back(std::move(b));
  const auto closure = lie_closure(ungated, ClosureOptions{opts.tol, 0});
  out.unreduced_dim = closure.dim();

  for (const auto& [jk, c] : spec.couplings) {
    if (c.zz == 0.0) continue;
    const Matrix term = Complex(0, 1) * (cluster_collective(Axis::z, jk.first, spec) *
                                         cluster_collective(Axis::z, jk.second, spec));
    out.max_coupling_residual = std::max(out.max_coupling_residual, span_residual(term, closure));
  }
  return out;
}

std::vector<Matrix> su_basis(int r) {
  if (r < 2) throw std::invalid_argument("su_basis: r must be >= 2");
  const Complex i(0, 1);
  std::vector<Matrix> out;
  for (int p = 0; p < r; ++p) {
    for (int q = p + 1; q < r; ++q) {
      Matrix e = Matrix::Zero(r, r);
      e(p, q) = 1;
      out.push_back(e - e.transpose().eval());
      Matrix f = Matrix::Zero(r, r);
      f(p, q) = 1;
      f(q, p) = 1;
      out.push_back(i * f);
    }
  }
  for (int p = 1; p < r; ++p) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(r);
    d.head(p).setOnes();
    d(p) = -p;
    Matrix m = Matrix::Zero(r, r);
    m.diagonal() = (i / d.norm()) * d.cast<Complex>();
    out.push_back(m);
  }
  return out;
}

namespace {
std::vector<Matrix> su_pair_generators(int r, int s) {
  std::vector<Matrix> gens;
  const Matrix ir = Matrix::Identity(r, r), is = Matrix::Identity(s, s);
  for (const auto& m : su_basis(r)) gens.push_back(kron(m, is));
  for (const auto& m : su_basis(s)) gens.push_back(kron(ir, m));
  return gens;
}
}  // namespace

long su_direct_sum_closure_dim(int r, int s, const ClosureOptions& opts) {
  return lie_closure(su_pair_generators(r, s), opts).dim();
}

bool dynkin_check(int r, int s, std::uint64_t seed, const ClosureOptions& opts) {
  if (r < 2 || s < 2) throw std::invalid_argument("dynkin_check: r and s must be >= 2");
  auto gens = su_pair_generators(r, s);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  auto random_traceless_hermitian = [&](int n) {
    Matrix g(n, n);
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b) g(a, b) = Complex(dist(rng), dist(rng));
    Matrix h = (g + g.adjoint()) / 2.0;
    return traceless_part(h).eval();
  };

  RowSpan base(2L * r * s * r * s, 1e-9);
  for (const auto& g : gens) base.try_insert(vec_matrix(g / g.norm()));
  Matrix bridge;
  for (int attempt = 0; attempt < 16; ++attempt) {
    bridge = Complex(0, 1) * kron(random_traceless_hermitian(r), random_traceless_hermitian(s));
    if (base.residual_norm(vec_matrix(bridge / bridge.norm())) > 0.01) break;
  }
  gens.push_back(bridge);
  const long full = static_cast<long>(r) * s * static_cast<long>(r) * s - 1;
  return lie_closure(gens, opts).dim() == full;
}

}  // namespace spinnet
