#include "spinnet/io.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace spinnet {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& ctx) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      throw std::invalid_argument("unknown field \"" + key + "\" in " + ctx);
  }
}

int get_index(const json& obj, const char* key, int n, const std::string& ctx) {
  if (!obj.contains(key) || !obj[key].is_number_integer())
    throw std::invalid_argument(ctx + ": \"" + key + "\" must be an integer");
  const int v = obj[key].get<int>();
  if (v < 1 || v > n)
    throw std::invalid_argument(ctx + ": index " + std::to_string(v) + " out of range 1.." +
                                std::to_string(n));
  return v - 1;  // documents are 1-based
}

double get_number(const json& obj, const char* key, const std::string& ctx, bool required,
                  double fallback = 0.0) {
  if (!obj.contains(key)) {
    if (required) throw std::invalid_argument(ctx + ": missing \"" + key + "\"");
    return fallback;
  }
  if (!obj[key].is_number()) throw std::invalid_argument(ctx + ": \"" + key + "\" must be a number");
  return obj[key].get<double>();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

ordered_json spec_to_json(const ParsedSpec& spec) {
  ordered_json j;
  j["mode"] = spec.mode == SpecMode::multipartite ? "multipartite" : "spin_level";
  if (!spec.name.empty()) j["name"] = spec.name;
  if (!spec.notes.empty()) j["notes"] = spec.notes;
  if (spec.mode == SpecMode::multipartite) {
    j["clusters"] = ordered_json::array();
    for (const auto& c : spec.network.clusters)
      j["clusters"].push_back({{"size", c.size}, {"gamma", c.gamma}});
    j["couplings"] = ordered_json::array();
    for (const auto& [jk, c] : spec.network.couplings)
      j["couplings"].push_back({{"j", jk.first + 1},
                                {"k", jk.second + 1},
                                {"zz", c.zz},
                                {"xx", c.xx},
                                {"yy", c.yy}});
  } else {
    j["gammas"] = spec.spins.gammas;
    j["couplings"] = ordered_json::array();
    for (const auto& [ik, v] : spec.spins.zz)
      j["couplings"].push_back({{"i", ik.first + 1}, {"k", ik.second + 1}, {"zz", v}});
  }
  return j;
}

std::string canonical_spec_string(const ParsedSpec& spec) { return spec_to_json(spec).dump(); }

// ---- closure result cache ------------------------------------------------

struct CachedClosure {
  long measured_dim = -1;
  int rounds = 0;
  bool saturated_early = false;
  bool identity_direction = false;
  bool blocks_verified = false;
};

std::optional<CachedClosure> cache_lookup(const std::string& dir, const std::string& key) {
  if (dir.empty()) return std::nullopt;
  const auto path = std::filesystem::path(dir) / (key + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    json j = json::parse(in);
    CachedClosure c;
    c.measured_dim = j.at("measured_dim").get<long>();
    c.rounds = j.at("rounds").get<int>();
    c.saturated_early = j.at("saturated_early").get<bool>();
    c.identity_direction = j.at("identity_direction").get<bool>();
    c.blocks_verified = j.at("blocks_verified").get<bool>();
    return c;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable cache entries are ignored
  }
}

void cache_store(const std::string& dir, const std::string& key, const CachedClosure& c) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  ordered_json j{{"schema_version", 1},
                 {"measured_dim", c.measured_dim},
                 {"rounds", c.rounds},
                 {"saturated_early", c.saturated_early},
                 {"identity_direction", c.identity_direction},
                 {"blocks_verified", c.blocks_verified}};
  const auto final_path = std::filesystem::path(dir) / (key + ".json");
  const auto tmp_path = std::filesystem::path(dir) / (key + ".tmp");
  {
    std::ofstream out(tmp_path);
    out << j.dump(2) << "\n";
  }
  std::filesystem::rename(tmp_path, final_path, ec);  // atomic publish
}

}  // namespace

ParsedSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("spec document is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("spec document must be a JSON object");
  if (!j.contains("mode") || !j["mode"].is_string())
    throw std::invalid_argument("spec document needs a string \"mode\"");

  ParsedSpec spec;
  const std::string mode = j["mode"].get<std::string>();
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw std::invalid_argument("\"name\" must be a string");
    spec.name = j["name"].get<std::string>();
  }
  if (j.contains("notes")) {
    if (!j["notes"].is_string()) throw std::invalid_argument("\"notes\" must be a string");
    spec.notes = j["notes"].get<std::string>();
  }

  if (mode == "multipartite") {
    spec.mode = SpecMode::multipartite;
    check_keys(j, {"mode", "name", "notes", "clusters", "couplings"}, "spec document");
    if (!j.contains("clusters") || !j["clusters"].is_array() || j["clusters"].empty())
      throw std::invalid_argument("multipartite spec needs a nonempty \"clusters\" array");
    for (const auto& cj : j["clusters"]) {
      if (!cj.is_object()) throw std::invalid_argument("cluster entries must be objects");
      check_keys(cj, {"size", "gamma"}, "cluster entry");
      if (!cj.contains("size") || !cj["size"].is_number_integer() || cj["size"].get<int>() < 1)
        throw std::invalid_argument("cluster \"size\" must be a positive integer");
      Cluster c;
      c.size = cj["size"].get<int>();
      c.gamma = get_number(cj, "gamma", "cluster entry", true);
      spec.network.clusters.push_back(c);
    }
    const int n = spec.network.n_clusters();
    if (j.contains("couplings")) {
      if (!j["couplings"].is_array()) throw std::invalid_argument("\"couplings\" must be an array");
      for (const auto& ej : j["couplings"]) {
        if (!ej.is_object()) throw std::invalid_argument("coupling entries must be objects");
        check_keys(ej, {"j", "k", "zz", "xx", "yy"}, "coupling entry");
        const int a = get_index(ej, "j", n, "coupling entry");
        const int b = get_index(ej, "k", n, "coupling entry");
        if (a >= b) throw std::invalid_argument("coupling entries must have j < k");
        if (spec.network.couplings.count({a, b}))
          throw std::invalid_argument("duplicate coupling entry for edge " + std::to_string(a + 1) +
                                      "-" + std::to_string(b + 1));
        Coupling c;
        c.zz = get_number(ej, "zz", "coupling entry", true);
        c.xx = get_number(ej, "xx", "coupling entry", false);
        c.yy = get_number(ej, "yy", "coupling entry", false);
        spec.network.couplings[{a, b}] = c;
      }
    }
    spec.network.validate();
    spec.gammas_ok = spec.network.gammas_distinct_nonzero();
  } else if (mode == "spin_level") {
    spec.mode = SpecMode::spin_level;
    check_keys(j, {"mode", "name", "notes", "gammas", "couplings"}, "spec document");
    if (!j.contains("gammas") || !j["gammas"].is_array() || j["gammas"].empty())
      throw std::invalid_argument("spin_level spec needs a nonempty \"gammas\" array");
    for (const auto& g : j["gammas"]) {
      if (!g.is_number()) throw std::invalid_argument("\"gammas\" must contain numbers");
      spec.spins.gammas.push_back(g.get<double>());
    }
    const int n = spec.spins.n_spins();
    if (j.contains("couplings")) {
      if (!j["couplings"].is_array()) throw std::invalid_argument("\"couplings\" must be an array");
      for (const auto& ej : j["couplings"]) {
        if (!ej.is_object()) throw std::invalid_argument("coupling entries must be objects");
        check_keys(ej, {"i", "k", "zz"}, "coupling entry");
        const int a = get_index(ej, "i", n, "coupling entry");
        const int b = get_index(ej, "k", n, "coupling entry");
        if (a >= b) throw std::invalid_argument("coupling entries must have i < k");
        if (spec.spins.zz.count({a, b}))
          throw std::invalid_argument("duplicate coupling entry for pair " + std::to_string(a + 1) +
                                      "-" + std::to_string(b + 1));
        spec.spins.zz[{a, b}] = get_number(ej, "zz", "coupling entry", true);
      }
    }
    spec.spins.validate();
  } else {
    throw std::invalid_argument("\"mode\" must be \"multipartite\" or \"spin_level\"");
  }
  return spec;
}

ClassificationReport classify_network(const ParsedSpec& spec,
                                      const std::vector<SubspaceSelection>& selections,
                                      bool all_copies) {
  if (spec.mode != SpecMode::multipartite)
    throw std::invalid_argument("theorem classification requires a multipartite spec");
  if (!spec.gammas_ok)
    throw std::invalid_argument(
        "classification requires pairwise distinct nonzero gyromagnetic ratios; "
        "this spec is limited to oracle-only commands");
  const auto& net = spec.network;
  net.validate();

  ClassificationReport report;
  report.spec = spec;
  report.all_copies = all_copies;
  report.full_dim = net.full_dim();

  const auto sels = selections.empty() ? enumerate_subspaces(net, !all_copies) : selections;
  const bool complete = selections.empty();

  for (const auto& sel : sels) {
    SelectionRecord rec;
    rec.selection = sel;
    rec.subspace_dim = sel.dim();
    rec.multiplicity = selection_multiplicity(sel, net);
    rec.graph = associated_graph(sel, net);
    rec.descriptor = predict_descriptor(sel, net);
    if (rec.descriptor.controllable) ++report.controllable_count;
    report.bookkeeping_sum += all_copies ? rec.subspace_dim : rec.multiplicity * rec.subspace_dim;
    report.records.push_back(std::move(rec));
  }
  report.system_subspace_controllable =
      complete && report.controllable_count == static_cast<long>(report.records.size());
  report.bookkeeping_ok = !complete || report.bookkeeping_sum == report.full_dim;
  if (!complete) report.bookkeeping_sum = 0;
  return report;
}

void add_oracle_results(ClassificationReport& report, const VerifyOptions& opts, int jobs,
                        const std::string& cache_dir) {
  const auto& net = report.spec.network;
  const std::string canon = canonical_spec_string(report.spec);

  std::atomic<size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= report.records.size()) break;
      auto& rec = report.records[i];
      try {
        std::ostringstream key_src;
        key_src << canon << "|sel:";
        for (size_t v = 0; v < rec.selection.labels.size(); ++v)
          key_src << rec.selection.labels[v] << "." << rec.selection.copies[v] << ",";
        key_src << "|tol:" << fmt_num(opts.tol) << "|cap:" << opts.dim_cap
                << "|blocks:" << opts.check_blocks;
        const std::string key = hex16(fnv1a(key_src.str()));

        if (auto hit = cache_lookup(cache_dir, key)) {
          rec.verified = true;
          rec.measured_dim = hit->measured_dim;
          rec.match = hit->measured_dim == rec.descriptor.total_algebra_dim;
          rec.identity_direction = hit->identity_direction;
          rec.blocks_verified = hit->blocks_verified;
          continue;
        }
        const auto check = verify_prediction(net, rec.selection, opts);
        rec.verified = true;
        rec.measured_dim = check.measured_dim;
        rec.match = check.match;
        rec.identity_direction = check.identity_direction;
        rec.blocks_verified = check.block_structure_ok;
        cache_store(cache_dir, key,
                    CachedClosure{check.measured_dim, check.rounds, check.saturated_early,
                                  check.identity_direction, check.block_structure_ok});
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  const int nthreads = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  report.with_oracle = true;
  report.all_match = true;
  for (const auto& rec : report.records)
    if (!rec.match) report.all_match = false;
}

namespace {

ordered_json record_to_json(const SelectionRecord& rec, bool with_oracle) {
  ordered_json r;
  r["name"] = rec.selection.name();
  r["labels"] = rec.selection.labels;
  r["copies"] = rec.selection.copies;
  r["dim"] = rec.subspace_dim;
  r["multiplicity"] = rec.multiplicity;
  ordered_json graph;
  graph["nodes"] = ordered_json::array();
  for (int v : rec.graph.nodes) graph["nodes"].push_back(v + 1);
  graph["edges"] = ordered_json::array();
  for (const auto& [a, b] : rec.graph.edges) graph["edges"].push_back({a + 1, b + 1});
  r["graph"] = graph;
  r["components"] = ordered_json::array();
  ordered_json blocks = ordered_json::array();
  for (const auto& blk : rec.descriptor.blocks) {
    ordered_json cj = ordered_json::array();
    for (int v : blk.clusters) cj.push_back(v + 1);
    r["components"].push_back(cj);
    ordered_json bj;
    bj["kind"] = blk.kind == BlockKind::spin_irrep ? "spin_irrep" : "full_su";
    bj["clusters"] = cj;
    if (blk.kind == BlockKind::spin_irrep) bj["f"] = blk.f;
    bj["space_dim"] = blk.space_dim;
    bj["algebra_dim"] = blk.algebra_dim;
    blocks.push_back(bj);
  }
  r["blocks"] = blocks;
  r["predicted_dim"] = rec.descriptor.total_algebra_dim;
  r["controllable"] = rec.descriptor.controllable;
  if (with_oracle) {
    r["measured_dim"] = rec.measured_dim;
    r["match"] = rec.match;
    r["identity_direction"] = rec.identity_direction;
    r["blocks_verified"] = rec.blocks_verified;
  }
  return r;
}

std::string emit_text(const ClassificationReport& report) {
  std::ostringstream os;
  const auto& net = report.spec.network;
  os << "network: " << (report.spec.name.empty() ? "(unnamed)" : report.spec.name) << " — "
     << net.n_clusters() << " clusters, " << net.total_spins() << " spins, full dim "
     << report.full_dim << "\n";
  os << "clusters:";
  for (int j = 0; j < net.n_clusters(); ++j)
    os << " " << (j + 1) << ":(n=" << net.cluster_size(j) << ", gamma=" << fmt_num(net.gamma(j))
       << ")";
  os << "\ncouplings:";
  for (const auto& [jk, c] : net.couplings) {
    os << " " << (jk.first + 1) << "-" << (jk.second + 1) << ":zz=" << fmt_num(c.zz);
    if (c.xx != 0.0) os << ",xx=" << fmt_num(c.xx);
    if (c.yy != 0.0) os << ",yy=" << fmt_num(c.yy);
  }
  os << "\ndecompositions:\n";
  for (int j = 0; j < net.n_clusters(); ++j) {
    const auto dec = decompose_cluster(net.cluster_size(j));
    os << "  cluster " << (j + 1) << " (n=" << net.cluster_size(j) << "):";
    for (int f : dec.labels()) {
      os << " V^" << f;
      if (dec.multiplicity(f) > 1) os << " x" << dec.multiplicity(f);
    }
    os << "\n";
  }
  os << "selections:\n";
  for (const auto& rec : report.records) {
    os << "  " << rec.selection.name() << "  dim " << rec.subspace_dim << "  mult "
       << rec.multiplicity << "  ";
    if (rec.descriptor.blocks.empty()) {
      os << "trivial [0]";
    } else {
      for (size_t b = 0; b < rec.descriptor.blocks.size(); ++b) {
        const auto& blk = rec.descriptor.blocks[b];
        if (b) os << " + ";
        if (blk.kind == BlockKind::spin_irrep)
          os << "su(2)|V^" << blk.f << " [" << blk.algebra_dim << "]";
        else
          os << "su(" << blk.space_dim << ") [" << blk.algebra_dim << "]";
      }
    }
    os << "  total " << rec.descriptor.total_algebra_dim;
    os << (rec.descriptor.controllable ? "  controllable" : "  not-controllable");
    if (rec.verified) {
      os << "  measured " << rec.measured_dim << (rec.match ? " MATCH" : " MISMATCH");
      if (!rec.blocks_verified) os << " BLOCKS-FAIL";
      if (rec.identity_direction) os << " IDENTITY-DIRECTION";
    }
    os << "\n";
  }
  os << "summary: " << report.records.size() << " selections, " << report.controllable_count
     << " controllable; system subspace controllable: "
     << (report.system_subspace_controllable ? "yes" : "no") << "\n";
  if (report.bookkeeping_sum > 0)
    os << "bookkeeping: sum over subspaces " << report.bookkeeping_sum << " vs full dim "
       << report.full_dim << (report.bookkeeping_ok ? " ok" : " MISMATCH") << "\n";
  if (report.with_oracle)
    os << "oracle: " << (report.all_match ? "all selections match" : "MISMATCH DETECTED") << "\n";
  return os.str();
}

}  // namespace

std::string emit_report(const ClassificationReport& report, ReportFormat format) {
  if (format == ReportFormat::text) return emit_text(report);
  ordered_json j;
  j["schema_version"] = report.schema_version;
  j["spec"] = spec_to_json(report.spec);
  j["full_dim"] = report.full_dim;
  j["all_copies"] = report.all_copies;
  j["with_oracle"] = report.with_oracle;
  j["selections"] = ordered_json::array();
  for (const auto& rec : report.records)
    j["selections"].push_back(record_to_json(rec, report.with_oracle));
  ordered_json summary;
  summary["selection_count"] = report.records.size();
  summary["controllable_count"] = report.controllable_count;
  summary["system_subspace_controllable"] = report.system_subspace_controllable;
  summary["bookkeeping"] = {{"sum", report.bookkeeping_sum},
                            {"full_dim", report.full_dim},
                            {"ok", report.bookkeeping_ok}};
  if (report.with_oracle) summary["all_match"] = report.all_match;
  j["summary"] = summary;
  return j.dump(2) + "\n";
}

ClassificationReport parse_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("report is not valid JSON: ") + e.what());
  }
  ClassificationReport report;
  report.schema_version = j.at("schema_version").get<int>();
  if (report.schema_version != 1)
    throw std::invalid_argument("unsupported report schema version");
  report.spec = parse_spec(j.at("spec").dump());
  report.full_dim = j.at("full_dim").get<long>();
  report.all_copies = j.at("all_copies").get<bool>();
  report.with_oracle = j.at("with_oracle").get<bool>();
  for (const auto& rj : j.at("selections")) {
    SelectionRecord rec;
    rec.selection.labels = rj.at("labels").get<std::vector<int>>();
    rec.selection.copies = rj.at("copies").get<std::vector<int>>();
    rec.subspace_dim = rj.at("dim").get<long>();
    rec.multiplicity = rj.at("multiplicity").get<long>();
    for (const auto& v : rj.at("graph").at("nodes")) rec.graph.nodes.push_back(v.get<int>() - 1);
    for (const auto& e : rj.at("graph").at("edges"))
      rec.graph.edges.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
    for (const auto& bj : rj.at("blocks")) {
      LieBlock blk;
      blk.kind = bj.at("kind").get<std::string>() == "spin_irrep" ? BlockKind::spin_irrep
                                                                  : BlockKind::full_su;
      for (const auto& v : bj.at("clusters")) blk.clusters.push_back(v.get<int>() - 1);
      if (bj.contains("f")) blk.f = bj.at("f").get<int>();
      blk.space_dim = bj.at("space_dim").get<long>();
      blk.algebra_dim = bj.at("algebra_dim").get<long>();
      rec.descriptor.blocks.push_back(std::move(blk));
      rec.descriptor.total_algebra_dim += rec.descriptor.blocks.back().algebra_dim;
    }
    rec.descriptor.controllable = rj.at("controllable").get<bool>();
    if (report.with_oracle) {
      rec.verified = true;
      rec.measured_dim = rj.at("measured_dim").get<long>();
      rec.match = rj.at("match").get<bool>();
      rec.identity_direction = rj.at("identity_direction").get<bool>();
      rec.blocks_verified = rj.at("blocks_verified").get<bool>();
    }
    report.records.push_back(std::move(rec));
  }
  const auto& summary = j.at("summary");
  report.controllable_count = summary.at("controllable_count").get<long>();
  report.system_subspace_controllable = summary.at("system_subspace_controllable").get<bool>();
  report.bookkeeping_sum = summary.at("bookkeeping").at("sum").get<long>();
  report.bookkeeping_ok = summary.at("bookkeeping").at("ok").get<bool>();
  if (report.with_oracle) report.all_match = summary.at("all_match").get<bool>();
  return report;
}

}  // namespace spinnet
