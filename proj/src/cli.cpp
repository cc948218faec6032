#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "spinnet/catalog.hpp"
#include "spinnet/io.hpp"
#include "spinnet/selftest.hpp"

namespace spinnet {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<SubspaceSelection> requested_selections(const ParsedSpec& spec,
                                                    const std::string& subspace_arg) {
  std::vector<SubspaceSelection> out;
  if (subspace_arg.empty()) return out;
  SubspaceSelection sel;
  std::stringstream ss(subspace_arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      sel.labels.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("--subspace expects a comma-separated list of integers");
    }
  }
  const auto& net = spec.network;
  if (static_cast<int>(sel.labels.size()) != net.n_clusters())
    throw std::invalid_argument("--subspace needs one label per cluster");
  for (int j = 0; j < net.n_clusters(); ++j) {
    const auto dec = decompose_cluster(net.cluster_size(j));
    if (dec.multiplicity(sel.labels[static_cast<size_t>(j)]) == 0)
      throw std::invalid_argument("label " + std::to_string(sel.labels[static_cast<size_t>(j)]) +
                                  " is not in the decomposition of cluster " + std::to_string(j + 1));
  }
  sel.copies.assign(sel.labels.size(), 1);
  out.push_back(std::move(sel));
  return out;
}

void print_full_space_report(const FullSpaceReport& rep, std::ostream& os) {
  os << "full-space closure: dim " << rep.measured_dim << " on dim-" << rep.full_dim
     << " space, " << rep.rounds << " rounds";
  if (rep.has_trace_direction) os << ", identity direction present";
  os << "\n";
  if (!rep.structure_checked) {
    os << "symmetry-adapted diagnostics: skipped (no classifiable uniform structure)\n";
    return;
  }
  os << "block diagonal: " << (rep.block_diagonal_ok ? "ok" : "FAIL")
     << "; equal copies: " << (rep.copies_equal ? "ok" : "FAIL")
     << "; per-tuple ranks: " << (rep.tuple_ranks_ok ? "ok" : "FAIL") << "\n";
  for (const auto& t : rep.tuples) {
    os << "  T_{";
    for (size_t i = 0; i < t.labels.size(); ++i) os << (i ? "," : "") << t.labels[i];
    os << "} dim " << t.subspace_dim << " x" << t.multiplicity << ": predicted "
       << t.predicted_dim << ", block rank " << t.measured_rank << "\n";
  }
  os << "sum of per-tuple predictions " << rep.reconstruction_sum << " vs measured "
     << rep.measured_dim
     << (rep.reconstruction_match ? " (direct sum)" : " (blocks act jointly)") << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"subspace controllability of multipartite spin-1/2 networks"};
  app.require_subcommand(1);

  long cap = kDefaultDimCap;
  double tol = kClosureTol;

  auto add_cap = [&](CLI::App* cmd) {
    cmd->add_option("--cap", cap, "max full-space dimension for dense work")
        ->envname("SPINNET_DIM_CAP");
  };
  auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "closure rank tolerance");
  };

  // decompose
  auto* dec_cmd = app.add_subcommand("decompose", "Clebsch-Gordan decomposition of one cluster");
  int dec_n = 0;
  dec_cmd->add_option("--n", dec_n, "cluster size")->required();

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "list invariant subspaces of a network");
  std::string enum_spec;
  bool enum_all_copies = false;
  enum_cmd->add_option("--spec", enum_spec, "spec document (JSON)")->required();
  enum_cmd->add_flag("--all-copies", enum_all_copies, "one entry per copy, not per label tuple");

  // classify
  auto* cls_cmd = app.add_subcommand("classify", "graph-theoretic subspace classification");
  std::string cls_spec, cls_subspace, cls_format = "text";
  cls_cmd->add_option("--spec", cls_spec, "spec document (JSON)")->required();
  cls_cmd->add_option("--subspace", cls_subspace, "labels f1,f2,... of one subspace");
  cls_cmd->add_option("--format", cls_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "classification plus numerical closure oracle");
  std::string ver_spec, ver_subspace, ver_format = "text", ver_cache;
  bool ver_all_copies = false;
  int ver_jobs = 1;
  ver_cmd->add_option("--spec", ver_spec, "spec document (JSON)")->required();
  ver_cmd->add_option("--subspace", ver_subspace, "labels f1,f2,... of one subspace");
  ver_cmd->add_flag("--all-copies", ver_all_copies, "verify every copy separately");
  ver_cmd->add_option("--format", ver_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  ver_cmd->add_option("--jobs", ver_jobs, "parallel selection verifications")
      ->check(CLI::PositiveNumber);
  ver_cmd->add_option("--cache", ver_cache, "closure-result cache directory");
  add_tol(ver_cmd);
  add_cap(ver_cmd);

  // closure
  auto* clo_cmd = app.add_subcommand("closure", "raw Lie-closure dimensions");
  std::string clo_spec;
  bool clo_full = false;
  clo_cmd->add_option("--spec", clo_spec, "spec document (JSON)")->required();
  clo_cmd->add_flag("--full", clo_full, "use the ungated drift/control generators");
  add_tol(clo_cmd);
  add_cap(clo_cmd);

  // selftest
  auto* st_cmd = app.add_subcommand("selftest", "run the built-in invariant catalog");
  add_tol(st_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (dec_cmd->parsed()) {
      const auto dec = decompose_cluster(dec_n);
      std::cout << "cluster of " << dec_n << " spins:";
      for (int f : dec.labels()) {
        std::cout << " V^" << f;
        if (dec.multiplicity(f) > 1) std::cout << " x" << dec.multiplicity(f);
      }
      std::cout << "\ndimension check: sum m(n,f)(f+1) = " << dec.dimension_sum() << " vs 2^n = "
                << pow2_checked(dec_n)
                << (dec.dimension_sum() == pow2_checked(dec_n) ? " ok" : " MISMATCH") << "\n";
      return dec.dimension_sum() == pow2_checked(dec_n) ? 0 : 1;
    }

    if (enum_cmd->parsed()) {
      const auto spec = parse_spec(read_file(enum_spec));
      if (spec.mode != SpecMode::multipartite)
        throw std::invalid_argument("enumerate requires a multipartite spec");
      const auto sels = enumerate_subspaces(spec.network, !enum_all_copies);
      long sum = 0;
      for (const auto& sel : sels) {
        std::cout << sel.name();
        if (enum_all_copies) {
          std::cout << " copies (";
          for (size_t j = 0; j < sel.copies.size(); ++j)
            std::cout << (j ? "," : "") << sel.copies[j];
          std::cout << ")";
        }
        const long mult = selection_multiplicity(sel, spec.network);
        std::cout << "  dim " << sel.dim() << "  mult " << mult << "\n";
        sum += enum_all_copies ? sel.dim() : mult * sel.dim();
      }
      std::cout << sels.size() << " selections; dimension bookkeeping " << sum << " vs "
                << spec.network.full_dim()
                << (sum == spec.network.full_dim() ? " ok" : " MISMATCH") << "\n";
      return sum == spec.network.full_dim() ? 0 : 1;
    }

    if (cls_cmd->parsed()) {
      const auto spec = parse_spec(read_file(cls_spec));
      if (spec.mode == SpecMode::multipartite && !spec.gammas_ok)
        std::cerr << "warning: gammas are not pairwise distinct and nonzero\n";
      const auto report =
          classify_network(spec, requested_selections(spec, cls_subspace), false);
      std::cout << emit_report(report,
                               cls_format == "json" ? ReportFormat::json : ReportFormat::text);
      return 0;
    }

    if (ver_cmd->parsed()) {
      const auto spec = parse_spec(read_file(ver_spec));
      VerifyOptions opts;
      opts.tol = tol;
      opts.dim_cap = cap;
      if (spec.mode == SpecMode::spin_level) {
        const auto rep = verify_full_space(spec.spins, opts);
        print_full_space_report(rep, std::cout);
        const bool ok = !rep.structure_checked ||
                        (rep.block_diagonal_ok && rep.copies_equal && rep.tuple_ranks_ok);
        return ok ? 0 : 1;
      }
      if (!spec.gammas_ok)
        throw std::invalid_argument(
            "verify requires pairwise distinct nonzero gyromagnetic ratios "
            "(use `closure --full` for this spec)");
      auto report = classify_network(spec, requested_selections(spec, ver_subspace),
                                     ver_all_copies);
      add_oracle_results(report, opts, ver_jobs, ver_cache);
      std::cout << emit_report(report,
                               ver_format == "json" ? ReportFormat::json : ReportFormat::text);
      bool blocks_ok = true;
      for (const auto& rec : report.records)
        if (!rec.blocks_verified) blocks_ok = false;
      return report.all_match && blocks_ok ? 0 : 1;
    }

    if (clo_cmd->parsed()) {
      const auto spec = parse_spec(read_file(clo_spec));
      std::vector<Matrix> gens;
      if (spec.mode == SpecMode::multipartite) {
        if (spec.network.full_dim() > cap)
          throw std::invalid_argument("full-space dimension exceeds the cap");
        if (clo_full) {
          gens.push_back(drift_generator(spec.network));
          for (auto& b : control_generators(spec.network)) gens.push_back(std::move(b));
        } else {
          gens = reduced_generators(spec.network);
        }
      } else {
        if (spec.spins.full_dim() > cap)
          throw std::invalid_argument("full-space dimension exceeds the cap");
        if (clo_full) {
          gens.push_back(spin_level_drift(spec.spins));
          for (auto& b : spin_level_controls(spec.spins)) gens.push_back(std::move(b));
        } else {
          gens = spin_level_generators(spec.spins);
        }
      }
      const auto result = lie_closure(gens, ClosureOptions{tol, 0});
      std::cout << "generators: " << gens.size() << "\nclosure dim: " << result.dim()
                << "\nrounds: " << result.rounds
                << "\nsaturated at ambient cap: " << (result.saturated_early ? "yes" : "no")
                << "\nidentity direction: " << (result.has_trace_direction ? "yes" : "no")
                << "\n";
      return 0;
    }

    if (st_cmd->parsed()) return run_selftest(std::cout, tol) ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace spinnet
