#pragma once

// Batch verification suites and their JSON / CSV encodings.

#include <iosfwd>
#include <string>
#include <vector>

#include "elliptika/identity.hpp"

namespace elliptika {

struct Tolerances {
  double theorem31 = 1e-9;
  double corollary33 = 1e-9;
  double theorem32_n1 = 1e-7;
  /// Used for every N >= 2.
  double theorem32_higher = 1e-6;
  double degeneration = 1e-8;
  double classical = 1e-12;
};

enum class OutputFormat { json, csv };

struct SuiteConfig {
  std::string name = "default";
  std::vector<cplx> tau_list{cplx{0.0, 2.0}, cplx{0.3, 1.5}, cplx{0.0, 8.0}};
  std::vector<CoprimePair> pairs = coprime_pairs_up_to(5);
  std::vector<IdentityCase> cases = all_families();
  int N_max = 2;
  int samples = 16;
  Tolerances tolerances;
  OutputFormat output_format = OutputFormat::json;
  /// Empty means standard output.
  std::string output_path;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  /// Throws ConfigError: Im tau <= 0, samples < 1, N_max < 0, empty lists,
  /// non-positive tolerances.
  void validate() const;
};

struct SuiteSummary {
  int total = 0;
  int passed = 0;
  int failed = 0;
  int skipped_not_admissible = 0;
};

struct SuiteResult {
  std::vector<VerificationReport> reports;
  SuiteSummary summary;
  /// tau values outside the Gamma(2) fundamental domain, as warnings.
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

/// Runs every (case, pair, tau) cell. Reports come out in config order no
/// matter how the cells were scheduled. A non-admissible cell adds no
/// reports and counts once in skipped_not_admissible; a check that throws
/// becomes a failed report.
SuiteResult run_suite(const SuiteConfig& config);

/// Fixed key order, "%.17g" numbers; wall time is left out so output is
/// reproducible.
void write_json(std::ostream& out, const SuiteConfig& config, const SuiteResult& result);
void write_csv(std::ostream& out, const SuiteResult& result);

/// Writes in config.output_format to config.output_path (or stdout). Throws IoError.
void emit_result(const SuiteConfig& config, const SuiteResult& result);

/// "a+bi", "a-bi", "bi", "a", "i", "-i"; whitespace ignored. Throws ParseError.
cplx parse_complex(const std::string& text);

/// "ij:mn" such as "11:10". Throws ParseError.
IdentityCase parse_case(const std::string& text);

/// "a:b". Throws ParseError, ConfigError when not coprime.
CoprimePair parse_pair(const std::string& text);

/// "%.17g".
std::string format_number(double v);

/// Flat "key = value" file, '#' comments. List keys (tau, pairs, cases) take
/// comma-separated items. Unknown keys throw ConfigError; IoError when unreadable.
SuiteConfig load_config(const std::string& path);
SuiteConfig parse_config(std::istream& in);

/// ELLIPTIKA_LOG in {quiet, info, debug}; default info for the CLI.
void configure_logging_from_env();

}  // namespace elliptika
