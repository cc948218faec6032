#ifndef SPINNET_CATALOG_HPP
#define SPINNET_CATALOG_HPP

#include <string>
#include <vector>

#include "spinnet/network.hpp"

namespace spinnet {

struct NamedNetwork {
  std::string name;
  SpinNetworkSpec spec;
};

/// The four-cluster example network: sizes (2,2,3,1), gammas 1..4, unit
/// Ising couplings on edges 1-2, 2-3, 2-4, 3-4.
SpinNetworkSpec figure1_spec();

/// Same connectivity with cluster sizes (1,1,2,1), small enough for the
/// dense oracle at the default cap.
SpinNetworkSpec figure1_scaled_spec();

/// Three spins with gammas (1,1,2); zz couplings of spins 1,2 to spin 3.
SpinLevelSpec split_coupling_spec(double j13, double j23);

/// Sweep catalog: every cluster-size partition of total spins in
/// [min_spins, max_spins], line/star/complete coupling graphs (deduplicated),
/// gammas 1..N, unit Ising couplings.
std::vector<NamedNetwork> catalog_networks(int min_spins = 2, int max_spins = 5);

}  // namespace spinnet

#endif
