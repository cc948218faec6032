#ifndef SPINNET_IO_HPP
#define SPINNET_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "spinnet/verify.hpp"

namespace spinnet {

enum class SpecMode { multipartite, spin_level };

/// A parsed and validated input document. For multipartite specs with
/// repeated or zero gammas parsing succeeds (oracle-only routing) and
/// gammas_ok is false; theorem classification then refuses the spec.
struct ParsedSpec {
  SpecMode mode = SpecMode::multipartite;
  SpinNetworkSpec network;
  SpinLevelSpec spins;
  std::string name;
  std::string notes;
  bool gammas_ok = true;
};

ParsedSpec parse_spec(const std::string& text);

struct SelectionRecord {
  SubspaceSelection selection;
  long subspace_dim = 0;
  long multiplicity = 0;
  AssociatedGraph graph;
  LieAlgebraDescriptor descriptor;
  bool verified = false;  // oracle fields filled in
  long measured_dim = -1;
  bool match = false;
  bool identity_direction = false;
  bool blocks_verified = false;
};

struct ClassificationReport {
  int schema_version = 1;
  ParsedSpec spec;
  bool all_copies = false;
  bool with_oracle = false;
  std::vector<SelectionRecord> records;
  long full_dim = 0;
  long controllable_count = 0;
  bool system_subspace_controllable = false;
  long bookkeeping_sum = 0;
  bool bookkeeping_ok = false;
  bool all_match = true;
};

/// Theorem-level classification of every selection (or the given ones).
ClassificationReport classify_network(const ParsedSpec& spec,
                                      const std::vector<SubspaceSelection>& selections,
                                      bool all_copies);

/// Runs the closure oracle on every record, in parallel when jobs > 1.
/// cache_dir, when nonempty, holds closure-result sidecar files keyed by
/// (spec, selection, tolerance, cap).
void add_oracle_results(ClassificationReport& report, const VerifyOptions& opts, int jobs,
                        const std::string& cache_dir);

enum class ReportFormat { text, json };

std::string emit_report(const ClassificationReport& report, ReportFormat format);

/// Inverse of emit_report for the JSON format.
ClassificationReport parse_report(const std::string& text);

/// CLI entry point; returns the process exit status
/// (0 pass, 1 mismatch, 2 input error).
int run_cli(const std::vector<std::string>& args);

}  // namespace spinnet

#endif
