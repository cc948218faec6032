#include "spinnet/classify.hpp"

#include <algorithm>

namespace spinnet {

AssociatedGraph associated_graph(const SubspaceSelection& sel, const SpinNetworkSpec& spec) {
  spec.validate();
  if (static_cast<int>(sel.labels.size()) != spec.n_clusters())
    throw std::invalid_argument("associated_graph: selection arity does not match network");
  AssociatedGraph g;
  for (int j = 0; j < spec.n_clusters(); ++j)
    if (sel.labels[static_cast<size_t>(j)] >= 1) g.nodes.push_back(j);
  for (const auto& [jk, c] : spec.couplings) {
    if (!c.nonzero()) continue;
    const bool j_in = sel.labels[static_cast<size_t>(jk.first)] >= 1;
    const bool k_in = sel.labels[static_cast<size_t>(jk.second)] >= 1;
    if (j_in && k_in) g.edges.push_back(jk);
  }
  return g;
}

std::vector<std::vector<int>> connected_components(const AssociatedGraph& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> pending = g.nodes;  // ascending already
  std::vector<bool> done;
  std::vector<int> comp;
  std::vector<int> stack;
  std::vector<int> seen;
  for (int start : g.nodes) {
    if (std::find(seen.begin(), seen.end(), start) != seen.end()) continue;
    comp.clear();
    stack = {start};
    seen.push_back(start);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const auto& [a, b] : g.edges) {
        int other = -1;
        if (a == v) other = b;
        if (b == v) other = a;
        if (other >= 0 && std::find(seen.begin(), seen.end(), other) == seen.end()) {
          seen.push_back(other);
          stack.push_back(other);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  return out;
}

LieAlgebraDescriptor predict_descriptor(const SubspaceSelection& sel,
                                        const SpinNetworkSpec& spec) {
  const auto g = associated_graph(sel, spec);
  const auto comps = connected_components(g);
  LieAlgebraDescriptor d;
  for (const auto& comp : comps) {
    LieBlock blk;
    blk.clusters = comp;
    long dim = 1;
    for (int j : comp) dim *= sel.labels[static_cast<size_t>(j)] + 1;
    blk.space_dim = dim;
    if (comp.size() == 1) {
      blk.kind = BlockKind::spin_irrep;
      blk.f = sel.labels[static_cast<size_t>(comp[0])];
      blk.algebra_dim = 3;
    } else {
      blk.kind = BlockKind::full_su;
      blk.algebra_dim = dim * dim - 1;
    }
    d.total_algebra_dim += blk.algebra_dim;
    d.blocks.push_back(std::move(blk));
  }
  d.controllable = comps.size() == 1 && g.nodes.size() >= 2;
  return d;
}

bool is_subspace_controllable(const SubspaceSelection& sel, const SpinNetworkSpec& spec) {
  return predict_descriptor(sel, spec).controllable;
}

}  // namespace spinnet
