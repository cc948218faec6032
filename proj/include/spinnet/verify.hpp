#ifndef SPINNET_VERIFY_HPP
#define SPINNET_VERIFY_HPP

#include <cstdint>
#include <optional>

#include "spinnet/classify.hpp"
#include "spinnet/closure.hpp"

namespace spinnet {

struct VerifyOptions {
  double tol = kClosureTol;       // closure rank tolerance
  long dim_cap = kDefaultDimCap;  // max full-space dimension for dense work
  double leak_tol = kLeakTol;     // subspace invariance leakage
  double block_tol = 1e-7;        // block-structure residuals on unit-norm elements
  bool check_blocks = true;       // verify the direct-sum structure, not just dimensions
};

/// Reduced generators restricted to an invariant subspace, zero restrictions
/// dropped.
std::vector<Matrix> restricted_reduced_generators(const SpinNetworkSpec& spec,
                                                  const SubspaceBasis& basis,
                                                  double leak_tol = kLeakTol);

/// Oracle-vs-theorem comparison for one invariant subspace.
struct PredictionCheck {
  SubspaceSelection selection;
  long subspace_dim = 0;
  LieAlgebraDescriptor predicted;
  long measured_dim = 0;
  bool match = false;
  bool identity_direction = false;  // must stay false for traceless generators
  bool block_structure_ok = false;  // measured basis decomposes per component
  int rounds = 0;
  bool saturated_early = false;
};

PredictionCheck verify_prediction(const SpinNetworkSpec& spec, const SubspaceSelection& sel,
                                  const VerifyOptions& opts = {});

struct TupleBlockStats {
  std::vector<int> labels;
  long subspace_dim = 0;
  long multiplicity = 0;
  long predicted_dim = 0;   // Theorem-1 prediction for this label tuple
  long measured_rank = 0;   // rank of the closure's projection onto the tuple block
};

/// Full-space closure of the ungated generators {iA, iB_x, iB_y, iB_z} plus
/// symmetry-adapted diagnostics. reconstruction_match (measured dim equals
/// the sum of per-tuple predictions) is reported, not asserted: blocks with
/// identical generator action can act jointly, making the sum an upper bound.
struct FullSpaceReport {
  long full_dim = 0;
  long measured_dim = 0;
  int rounds = 0;
  bool has_trace_direction = false;
  bool structure_checked = false;
  bool block_diagonal_ok = false;
  bool copies_equal = false;
  bool tuple_ranks_ok = false;
  long reconstruction_sum = 0;
  bool reconstruction_match = false;
  std::vector<TupleBlockStats> tuples;
};

FullSpaceReport verify_full_space(const SpinNetworkSpec& spec, const VerifyOptions& opts = {});
FullSpaceReport verify_full_space(const SpinLevelSpec& spec, const VerifyOptions& opts = {});

/// Grouping of a per-spin model into a uniform multipartite network: spins
/// grouped by equal gamma, couplings uniform between groups and absent within
/// them. spin_order lists original spin indices in grouped order.
struct UniformEquivalent {
  SpinNetworkSpec spec;
  std::vector<int> spin_order;
};
std::optional<UniformEquivalent> uniform_equivalent(const SpinLevelSpec& spec);

/// Lemma-level consistency of the generator reduction: closure dimensions of
/// the reduced and ungated sets, and the worst membership residual of the
/// coupling terms i S_z^j S_z^k against the ungated closure.
struct EquivalenceCheck {
  long reduced_dim = 0;
  long unreduced_dim = 0;
  double max_coupling_residual = 0.0;
};
EquivalenceCheck check_generator_reduction(const SpinNetworkSpec& spec,
                                           const VerifyOptions& opts = {});

/// Orthonormal basis of su(r) (skew-Hermitian, traceless), r^2 - 1 elements.
std::vector<Matrix> su_basis(int r);

/// Closure dimension of su(r) x 1 + 1 x su(s) without a coupling term.
long su_direct_sum_closure_dim(int r, int s, const ClosureOptions& opts = {});

/// Maximality probe: su(r) x 1 + 1 x su(s) plus one random traceless A x B
/// must close to the full su(rs). Returns true iff the measured dimension is
/// (rs)^2 - 1.
bool dynkin_check(int r, int s, std::uint64_t seed, const ClosureOptions& opts = {});

}  // namespace spinnet

#endif
