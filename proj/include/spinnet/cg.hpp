#ifndef SPINNET_CG_HPP
#define SPINNET_CG_HPP

#include <map>
#include <string>
#include <vector>

#include "spinnet/network.hpp"
#include "spinnet/operators.hpp"

namespace spinnet {

/// Multiset of irreducible su(2) components of (V^1)^{tensor n}:
/// label f (dimension f+1) -> multiplicity m(n,f).
struct ClusterDecomposition {
  int n = 0;
  std::map<int, int> multiplicities;

  int multiplicity(int f) const {
    auto it = multiplicities.find(f);
    return it == multiplicities.end() ? 0 : it->second;
  }
  /// Labels n, n-2, ..., down to 1 or 0, in descending order.
  std::vector<int> labels() const {
    std::vector<int> out;
    for (auto it = multiplicities.rbegin(); it != multiplicities.rend(); ++it)
      out.push_back(it->first);
    return out;
  }
  long dimension_sum() const {
    long s = 0;
    for (const auto& [f, m] : multiplicities) s += static_cast<long>(m) * (f + 1);
    return s;
  }
};

/// Iterated Clebsch-Gordan multiplicities via the tensor-with-V^1 recursion
/// m(1,1) = 1, m(n,f) = m(n-1,f-1) + m(n-1,f+1).
ClusterDecomposition decompose_cluster(int n);

/// One irrep label per cluster plus a copy index (1-based) within the
/// degenerate copies of that label.
struct SubspaceSelection {
  std::vector<int> labels;
  std::vector<int> copies;  // same length as labels, each >= 1

  long dim() const {
    long d = 1;
    for (int f : labels) d *= f + 1;
    return d;
  }
  /// Paper-style name T_{f1,f2,...}.
  std::string name() const;
  bool operator==(const SubspaceSelection& o) const {
    return labels == o.labels && copies == o.copies;
  }
};

/// Orthonormal column basis of the invariant subspace F_1 x ... x F_N
/// inside the full 2^{sum n_j}-dimensional space.
struct SubspaceBasis {
  SubspaceSelection selection;
  Matrix columns;  // full_dim x D^S, orthonormal
};

/// The ladder operator that raises the S_z eigenvalue (sign fixed
/// empirically against the all-up state) and its adjoint.
Matrix raising_operator(int n);
Matrix lowering_operator(int n);

/// Orthonormal basis of ker(S_+) within the S_z = f/2 eigenspace; exactly
/// m(n,f) vectors, fixed deterministically by column-pivoted
/// orthogonalization of the kernel projector.
std::vector<Vector> highest_weight_vectors(int n, int f);

/// Ladder basis of the copy_index-th (1-based) spin-f/2 component:
/// v_0 = highest-weight vector, v_{k+1} = S_- v_k / |S_- v_k|.
std::vector<Vector> irrep_basis(int n, int f, int copy_index);

SubspaceBasis subspace_basis(const SubspaceSelection& sel, const SpinNetworkSpec& spec,
                             long dim_cap = kDefaultDimCap);

/// B^dag op B after checking that op maps span(B) into itself
/// (off-subspace leakage above leak_tol is an error, not a truncation).
Matrix restrict_operator(const Matrix& op, const SubspaceBasis& basis,
                         double leak_tol = kLeakTol);

/// All invariant-subspace selections of a network. With distinct_labels_only
/// one selection per label tuple (copy 1); otherwise all copy combinations.
std::vector<SubspaceSelection> enumerate_subspaces(const SpinNetworkSpec& spec,
                                                   bool distinct_labels_only);

/// Number of equal-dimension copies of the selection's label tuple,
/// prod_j m(n_j, f_j).
long selection_multiplicity(const SubspaceSelection& sel, const SpinNetworkSpec& spec);

/// Concatenation of all subspace bases (all copies): a full orthonormal
/// symmetry-adapted basis in enumeration order.
Matrix full_symmetry_basis(const SpinNetworkSpec& spec, long dim_cap = kDefaultDimCap);

}  // namespace spinnet

#endif
