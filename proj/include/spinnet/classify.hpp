#ifndef SPINNET_CLASSIFY_HPP
#define SPINNET_CLASSIFY_HPP

#include <utility>
#include <vector>

#include "spinnet/cg.hpp"
#include "spinnet/network.hpp"

namespace spinnet {

/// Connectivity graph with every V^0 cluster (and its edges) removed.
struct AssociatedGraph {
  std::vector<int> nodes;                    // cluster indices with f_j >= 1, ascending
  std::vector<std::pair<int, int>> edges;    // both endpoints present, nonzero coupling
};

AssociatedGraph associated_graph(const SubspaceSelection& sel, const SpinNetworkSpec& spec);

/// Maximal connected node sets, ordered by smallest node index,
/// nodes ascending within each.
std::vector<std::vector<int>> connected_components(const AssociatedGraph& g);

enum class BlockKind { spin_irrep, full_su };

/// One summand of the predicted subspace dynamical Lie algebra.
struct LieBlock {
  BlockKind kind = BlockKind::full_su;
  std::vector<int> clusters;  // component members
  int f = 0;                  // irrep label (spin_irrep blocks only)
  long space_dim = 0;         // product of (f_j + 1) over the component
  long algebra_dim = 0;       // 3 for spin_irrep, space_dim^2 - 1 for full_su
};

struct LieAlgebraDescriptor {
  std::vector<LieBlock> blocks;
  long total_algebra_dim = 0;
  bool controllable = false;
};

/// The graph-theoretic prediction: one block per connected component of the
/// associated graph (spin irrep of su(2) for single nodes, full su otherwise).
/// Copy indices are ignored; equal-label copies carry identical restrictions.
LieAlgebraDescriptor predict_descriptor(const SubspaceSelection& sel,
                                        const SpinNetworkSpec& spec);

/// True iff the associated graph is connected and has at least two nodes.
bool is_subspace_controllable(const SubspaceSelection& sel, const SpinNetworkSpec& spec);

}  // namespace spinnet

#endif
