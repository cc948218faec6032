#include "spinnet/catalog.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace spinnet {

namespace {

std::vector<std::vector<int>> partitions(int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(total, total);
  return out;
}

std::vector<std::pair<int, int>> graph_edges(const std::string& kind, int n) {
  std::vector<std::pair<int, int>> edges;
  if (n < 2) return edges;
  if (kind == "line") {
    for (int j = 0; j + 1 < n; ++j) edges.emplace_back(j, j + 1);
  } else if (kind == "star") {
    for (int j = 1; j < n; ++j) edges.emplace_back(0, j);
  } else {  // complete
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) edges.emplace_back(j, k);
  }
  return edges;
}

}  // namespace

SpinNetworkSpec figure1_spec() {
  SpinNetworkSpec spec;
  spec.clusters = {{2, 1.0}, {2, 2.0}, {3, 3.0}, {1, 4.0}};
  for (auto [j, k] : {std::pair{0, 1}, {1, 2}, {1, 3}, {2, 3}})
    spec.couplings[{j, k}] = Coupling{1.0, 0.0, 0.0};
  return spec;
}

SpinNetworkSpec figure1_scaled_spec() {
  SpinNetworkSpec spec = figure1_spec();
  spec.clusters = {{1, 1.0}, {1, 2.0}, {2, 3.0}, {1, 4.0}};
  return spec;
}

SpinLevelSpec split_coupling_spec(double j13, double j23) {
  SpinLevelSpec spec;
  spec.gammas = {1.0, 1.0, 2.0};
  if (j13 != 0.0) spec.zz[{0, 2}] = j13;
  if (j23 != 0.0) spec.zz[{1, 2}] = j23;
  return spec;
}

std::vector<NamedNetwork> catalog_networks(int min_spins, int max_spins) {
  std::vector<NamedNetwork> out;
  for (int total = min_spins; total <= max_spins; ++total) {
    for (const auto& part : partitions(total)) {
      const int n = static_cast<int>(part.size());
      std::set<std::set<std::pair<int, int>>> seen_edge_sets;
      for (const char* kind : {"line", "star", "complete"}) {
        const auto edges = graph_edges(kind, n);
        if (n >= 2 && edges.empty()) continue;
        std::set<std::pair<int, int>> key(edges.begin(), edges.end());
        if (!seen_edge_sets.insert(key).second) continue;  // line == star == complete for small n

        SpinNetworkSpec spec;
        for (int j = 0; j < n; ++j) spec.clusters.push_back({part[static_cast<size_t>(j)], 1.0 + j});
        for (auto e : edges) spec.couplings[e] = Coupling{1.0, 0.0, 0.0};

        std::ostringstream name;
        name << "spins" << total << "_p";
        for (size_t j = 0; j < part.size(); ++j) name << (j ? "-" : "") << part[j];
        if (n >= 2) name << "_" << kind;
        out.push_back({name.str(), std::move(spec)});
        if (n < 2) break;  // no edges: single entry
      }
    }
  }
  return out;
}

}  // namespace spinnet
