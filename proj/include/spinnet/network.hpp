#ifndef SPINNET_NETWORK_HPP
#define SPINNET_NETWORK_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spinnet/types.hpp"

namespace spinnet {

/// Inter-cluster two-body coupling strengths (zz Ising plus optional xx/yy parts).
struct Coupling {
  double zz = 0.0;
  double xx = 0.0;
  double yy = 0.0;
  bool nonzero() const { return zz != 0.0 || xx != 0.0 || yy != 0.0; }
  bool operator==(const Coupling&) const = default;
};

struct Cluster {
  int size = 0;       // number of spin-1/2 particles
  double gamma = 0.0; // gyromagnetic ratio shared by the cluster
};

/// A multipartite network: clusters of indistinguishable spins plus
/// uniform couplings between clusters. Cluster indices are 0-based here;
/// I/O layers present them 1-based.
struct SpinNetworkSpec {
  std::vector<Cluster> clusters;
  std::map<std::pair<int, int>, Coupling> couplings;  // key (j,k), j<k

  int n_clusters() const { return static_cast<int>(clusters.size()); }
  int cluster_size(int j) const { return clusters.at(static_cast<size_t>(j)).size; }
  double gamma(int j) const { return clusters.at(static_cast<size_t>(j)).gamma; }

  int total_spins() const {
    int t = 0;
    for (const auto& c : clusters) t += c.size;
    return t;
  }
  long full_dim() const { return pow2_checked(total_spins()); }

  Coupling coupling(int j, int k) const {
    if (j > k) std::swap(j, k);
    auto it = couplings.find({j, k});
    return it == couplings.end() ? Coupling{} : it->second;
  }

  /// Edges of the connectivity graph (pairs with a nonzero coupling).
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [jk, c] : couplings)
      if (c.nonzero()) out.push_back(jk);
    return out;
  }

  bool gammas_distinct_nonzero() const {
    for (size_t j = 0; j < clusters.size(); ++j) {
      if (clusters[j].gamma == 0.0) return false;
      for (size_t k = j + 1; k < clusters.size(); ++k)
        if (clusters[j].gamma == clusters[k].gamma) return false;
    }
    return true;
  }

  bool connected() const;

  /// Structural validation (sizes, index ranges). Throws std::invalid_argument.
  void validate() const;
};

/// Per-spin model: every spin has its own gamma and zz coupling to other
/// spins. Used only by the numerical oracle, never by the graph classifier.
struct SpinLevelSpec {
  std::vector<double> gammas;
  std::map<std::pair<int, int>, double> zz;  // key (i,k), i<k

  int n_spins() const { return static_cast<int>(gammas.size()); }
  long full_dim() const { return pow2_checked(n_spins()); }

  double coupling(int i, int k) const {
    if (i > k) std::swap(i, k);
    auto it = zz.find({i, k});
    return it == zz.end() ? 0.0 : it->second;
  }

  void validate() const;
};

}  // namespace spinnet

#endif
