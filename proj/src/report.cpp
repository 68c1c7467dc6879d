#include "elliptika/report.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "elliptika/errors.hpp"

namespace elliptika {

namespace {

// Degeneration error grows like exp(pi a Im z); the first few samples keep
// Im z small.
constexpr int kDegenerationSamples = 8;
constexpr double kDegenerationMinImTau = 6.0;

struct Cell {
  IdentityCase identity_case;
  CoprimePair pair;
  cplx tau;
};

struct CellOutcome {
  std::vector<VerificationReport> reports;
  bool skipped = false;
};

VerificationReport failed_report(const std::string& name, const Cell& cell, double tolerance,
                                 const std::string& what) {
  VerificationReport r;
  r.identity = name;
  r.identity_case = cell.identity_case;
  r.pair = cell.pair;
  r.tau = cell.tau;
  r.max_abs_residual = std::numeric_limits<double>::infinity();
  r.max_rel_residual = r.max_abs_residual;
  r.tolerance = tolerance;
  r.passed = false;
  r.metadata["error"] = what;
  return r;
}

template <class F>
void run_check(std::vector<VerificationReport>& out, const std::string& name, const Cell& cell,
               double tolerance, F&& check) {
  try {
    out.push_back(check());
  } catch (const std::exception& e) {
    spdlog::warn("{} {} ({},{}) tau={}{:+}i raised: {}", name, cell.identity_case.to_string(),
                 cell.pair.a(), cell.pair.b(), cell.tau.real(), cell.tau.imag(), e.what());
    out.push_back(failed_report(name, cell, tolerance, e.what()));
  }
}

CellOutcome run_cell(const SuiteConfig& config, const Cell& cell) {
  CellOutcome outcome;
  const IdentityCase& c = cell.identity_case;
  const CoprimePair& pair = cell.pair;
  if (!c.admissible(pair)) {
    outcome.skipped = true;
    return outcome;
  }
  const Tolerances& tol = config.tolerances;
  auto& out = outcome.reports;

  std::optional<EllipticContext> ctx;
  try {
    ctx.emplace(TauParameter(cell.tau), SeriesTruncation{});
  } catch (const std::exception& e) {
    out.push_back(failed_report("context", cell, 0.0, e.what()));
    return outcome;
  }
  std::vector<cplx> samples;
  try {
    samples = sample_points(c, pair, *ctx, config.samples);
  } catch (const std::exception& e) {
    out.push_back(failed_report("sampling", cell, 0.0, e.what()));
    return outcome;
  }
  const std::span<const cplx> all(samples);

  run_check(out, "theorem31", cell, tol.theorem31,
            [&] { return verify_theorem31(c, pair, *ctx, all, tol.theorem31); });
  run_check(out, "corollary33", cell, tol.corollary33,
            [&] { return verify_corollary33(c, pair, *ctx, tol.corollary33); });
  for (int N = 1; N <= config.N_max; ++N) {
    const double t = N == 1 ? tol.theorem32_n1 : tol.theorem32_higher;
    run_check(out, "theorem32_N" + std::to_string(N), cell, t,
              [&] { return verify_theorem32(c, pair, N, *ctx, ContourConfig{}, t); });
  }
  if (cell.tau.imag() >= kDegenerationMinImTau) {
    const auto head = all.first(std::min<std::size_t>(all.size(), kDegenerationSamples));
    run_check(out, "degeneration", cell, tol.degeneration,
              [&] { return degeneration_check(c, pair, *ctx, head, tol.degeneration); });
  }
  run_check(out, "classical_identity", cell, tol.classical,
            [&] { return verify_classical_identity(c, pair, *ctx, all, tol.classical); });
  run_check(out, "classical_reciprocity", cell, tol.classical,
            [&] { return verify_classical_reciprocity(c, pair, *ctx, tol.classical); });
  return outcome;
}

std::string tau_text(cplx tau) {
  return format_number(tau.real()) + (tau.imag() < 0 ? "-" : "+") +
         format_number(std::abs(tau.imag())) + "i";
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

// JSON has no infinity; a check that threw reports null.
std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

std::string json_complex(cplx v) { return "[" + json_number(v.real()) + ", " + json_number(v.imag()) + "]"; }

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::optional<double> parse_real(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  int v = 0;
  const std::string t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError("cannot parse " + what + " from '" + text + "'");
  }
  return v;
}

double parse_positive(const std::string& text, const std::string& key) {
  const auto v = parse_real(trim(text));
  if (!v || !(*v > 0.0)) throw ConfigError(key + " must be a positive number");
  return *v;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void SuiteConfig::validate() const {
  if (tau_list.empty()) throw ConfigError("tau list is empty");
  for (const cplx t : tau_list) {
    if (!(t.imag() > 0.0)) throw ConfigError("tau " + tau_text(t) + " has Im <= 0");
  }
  if (pairs.empty()) throw ConfigError("pair list is empty");
  if (cases.empty()) throw ConfigError("case list is empty");
  if (N_max < 0) throw ConfigError("N_max must be non-negative");
  if (samples < 1) throw ConfigError("samples must be at least 1");
  for (const double t : {tolerances.theorem31, tolerances.corollary33, tolerances.theorem32_n1,
                         tolerances.theorem32_higher, tolerances.degeneration,
                         tolerances.classical}) {
    if (!(t > 0.0)) throw ConfigError("tolerances must be positive");
  }
}

SuiteResult run_suite(const SuiteConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  SuiteResult result;
  for (const cplx t : config.tau_list) {
    if (!TauParameter(t).in_fundamental_domain()) {
      const std::string msg = "tau " + tau_text(t) + " lies outside the Gamma(2) fundamental domain";
      spdlog::warn("{}", msg);
      result.warnings.push_back(msg);
    }
  }

  std::vector<Cell> cells;
  for (const auto& c : config.cases) {
    for (const auto& p : config.pairs) {
      for (const cplx t : config.tau_list) cells.push_back({c, p, t});
    }
  }

  std::vector<CellOutcome> outcomes(cells.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      outcomes[k] = run_cell(config, cells[k]);
      spdlog::debug("cell {}/{} done", k + 1, cells.size());
    }
  };
  unsigned n_threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  n_threads = std::clamp<unsigned>(n_threads, 1, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t k = 0; k < cells.size(); ++k) {
    auto& o = outcomes[k];
    if (o.skipped) {
      ++result.summary.skipped_not_admissible;
      continue;
    }
    const bool outside = !TauParameter(cells[k].tau).in_fundamental_domain();
    for (auto& r : o.reports) {
      if (outside) r.metadata["warning"] = "tau outside the Gamma(2) fundamental domain";
      if (r.passed) {
        ++result.summary.passed;
      } else {
        ++result.summary.failed;
        spdlog::info("FAIL {} {} ({},{}) tau={} residual {:.3e} tol {:.1e}", r.identity,
                     r.identity_case.to_string(), r.pair.a(), r.pair.b(), tau_text(r.tau),
                     r.max_abs_residual, r.tolerance);
      }
      result.reports.push_back(std::move(r));
    }
  }
  result.summary.total = result.summary.passed + result.summary.failed +
                         result.summary.skipped_not_admissible;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  spdlog::info("suite {}: {} passed, {} failed, {} skipped in {:.2f}s", config.name,
               result.summary.passed, result.summary.failed,
               result.summary.skipped_not_admissible, result.wall_seconds);
  return result;
}

void write_json(std::ostream& out, const SuiteConfig& config, const SuiteResult& result) {
  const Tolerances& t = config.tolerances;
  out << "{\n  \"suite\": " << json_string(config.name) << ",\n  \"config\": {\n    \"tau\": [";
  for (std::size_t k = 0; k < config.tau_list.size(); ++k) {
    out << (k ? ", " : "") << json_complex(config.tau_list[k]);
  }
  out << "],\n    \"pairs\": [";
  for (std::size_t k = 0; k < config.pairs.size(); ++k) {
    out << (k ? ", " : "") << "[" << config.pairs[k].a() << ", " << config.pairs[k].b() << "]";
  }
  out << "],\n    \"cases\": [";
  for (std::size_t k = 0; k < config.cases.size(); ++k) {
    const auto& c = config.cases[k];
    out << (k ? ", " : "") << "[" << c.ij.i() << ", " << c.ij.j() << ", " << c.mn.i() << ", "
        << c.mn.j() << "]";
  }
  out << "],\n    \"N_max\": " << config.N_max << ",\n    \"samples\": " << config.samples
      << ",\n    \"tolerances\": {\"theorem31\": " << format_number(t.theorem31)
      << ", \"corollary33\": " << format_number(t.corollary33)
      << ", \"theorem32_n1\": " << format_number(t.theorem32_n1)
      << ", \"theorem32_higher\": " << format_number(t.theorem32_higher)
      << ", \"degeneration\": " << format_number(t.degeneration)
      << ", \"classical\": " << format_number(t.classical) << "}\n  },\n  \"reports\": [";
  for (std::size_t k = 0; k < result.reports.size(); ++k) {
    const auto& r = result.reports[k];
    const auto& c = r.identity_case;
    out << (k ? "," : "") << "\n    {\"identity\": " << json_string(r.identity) << ", \"case\": ["
        << c.ij.i() << ", " << c.ij.j() << ", " << c.mn.i() << ", " << c.mn.j()
        << "], \"pair\": [" << r.pair.a() << ", " << r.pair.b()
        << "], \"tau\": " << json_complex(r.tau)
        << ", \"max_abs_residual\": " << json_number(r.max_abs_residual)
        << ", \"tolerance\": " << json_number(r.tolerance)
        << ", \"passed\": " << (r.passed ? "true" : "false") << "}";
  }
  out << (result.reports.empty() ? "" : "\n  ") << "],\n  \"summary\": {\"total\": "
      << result.summary.total << ", \"passed\": " << result.summary.passed
      << ", \"failed\": " << result.summary.failed
      << ", \"skipped_not_admissible\": " << result.summary.skipped_not_admissible
      << "},\n  \"warnings\": [";
  for (std::size_t k = 0; k < result.warnings.size(); ++k) {
    out << (k ? ", " : "") << json_string(result.warnings[k]);
  }
  out << "]\n}\n";
}

void write_csv(std::ostream& out, const SuiteResult& result) {
  out << "identity,i,j,m,n,a,b,tau_re,tau_im,max_abs_residual,tolerance,passed\n";
  for (const auto& r : result.reports) {
    const auto& c = r.identity_case;
    out << r.identity << ',' << c.ij.i() << ',' << c.ij.j() << ',' << c.mn.i() << ','
        << c.mn.j() << ',' << r.pair.a() << ',' << r.pair.b() << ','
        << format_number(r.tau.real()) << ',' << format_number(r.tau.imag()) << ','
        << format_number(r.max_abs_residual) << ',' << format_number(r.tolerance) << ','
        << (r.passed ? "true" : "false") << '\n';
  }
}

void emit_result(const SuiteConfig& config, const SuiteResult& result) {
  const auto write = [&](std::ostream& os) {
    if (config.output_format == OutputFormat::json) {
      write_json(os, config, result);
    } else {
      write_csv(os, result);
    }
  };
  if (config.output_path.empty() || config.output_path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + config.output_path + " for writing");
  write(file);
  file.flush();
  if (!file) throw IoError("failed writing " + config.output_path);
}

cplx parse_complex(const std::string& text) {
  std::string s;
  for (const char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  const auto fail = [&]() -> ParseError {
    return ParseError("cannot parse complex number from '" + text + "'");
  };
  if (s.empty()) throw fail();
  if (s.back() != 'i') {
    const auto re = parse_real(s);
    if (!re) throw fail();
    return {*re, 0.0};
  }
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re_text = split == std::string::npos ? "" : body.substr(0, split);
  const std::string im_text = split == std::string::npos ? body : body.substr(split);
  double re = 0.0;
  if (!re_text.empty()) {
    const auto v = parse_real(re_text);
    if (!v) throw fail();
    re = *v;
  }
  double im = 0.0;
  if (im_text.empty() || im_text == "+") {
    im = 1.0;
  } else if (im_text == "-") {
    im = -1.0;
  } else {
    const auto v = parse_real(im_text);
    if (!v) throw fail();
    im = *v;
  }
  return {re, im};
}

IdentityCase parse_case(const std::string& text) {
  const std::string t = trim(text);
  const bool ok = t.size() == 5 && t[2] == ':' &&
                  std::all_of(t.begin(), t.end(), [](char ch) { return ch == '0' || ch == '1' || ch == ':'; });
  if (!ok) throw ParseError("case must look like 11:10, got '" + text + "'");
  const ParityIndex ij(t[0] - '0', t[1] - '0');
  const ParityIndex mn(t[3] - '0', t[4] - '0');
  if (!ij.is_function_index() || !mn.is_function_index()) {
    throw ParseError("case indices must not be (0,0): '" + text + "'");
  }
  return {ij, mn};
}

CoprimePair parse_pair(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("pair must look like a:b, got '" + text + "'");
  const int a = parse_int(text.substr(0, colon), "pair entry");
  const int b = parse_int(text.substr(colon + 1), "pair entry");
  try {
    return {a, b};
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

SuiteConfig parse_config(std::istream& in) {
  SuiteConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "name") {
      config.name = value;
    } else if (key == "tau") {
      config.tau_list.clear();
      for (const auto& item : split_list(value)) config.tau_list.push_back(parse_complex(item));
    } else if (key == "pairs") {
      config.pairs.clear();
      if (value == "all") {
        config.pairs = coprime_pairs_up_to(5);
      } else {
        for (const auto& item : split_list(value)) config.pairs.push_back(parse_pair(item));
      }
    } else if (key == "pair_bound") {
      config.pairs = coprime_pairs_up_to(parse_int(value, key));
    } else if (key == "cases") {
      config.cases.clear();
      if (value == "all") {
        config.cases = all_families();
      } else {
        for (const auto& item : split_list(value)) config.cases.push_back(parse_case(item));
      }
    } else if (key == "N_max") {
      config.N_max = parse_int(value, key);
    } else if (key == "samples") {
      config.samples = parse_int(value, key);
    } else if (key == "threads") {
      config.threads = static_cast<unsigned>(std::max(0, parse_int(value, key)));
    } else if (key == "format") {
      if (value == "json") {
        config.output_format = OutputFormat::json;
      } else if (value == "csv") {
        config.output_format = OutputFormat::csv;
      } else {
        throw ConfigError("format must be json or csv");
      }
    } else if (key == "output") {
      config.output_path = value;
    } else if (key == "tol.theorem31") {
      config.tolerances.theorem31 = parse_positive(value, key);
    } else if (key == "tol.corollary33") {
      config.tolerances.corollary33 = parse_positive(value, key);
    } else if (key == "tol.theorem32_n1") {
      config.tolerances.theorem32_n1 = parse_positive(value, key);
    } else if (key == "tol.theorem32_higher") {
      config.tolerances.theorem32_higher = parse_positive(value, key);
    } else if (key == "tol.degeneration") {
      config.tolerances.degeneration = parse_positive(value, key);
    } else if (key == "tol.classical") {
      config.tolerances.classical = parse_positive(value, key);
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  return parse_config(in);
}

void configure_logging_from_env() {
  auto logger = spdlog::get("elliptika");
  if (!logger) logger = spdlog::stderr_logger_mt("elliptika");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("ELLIPTIKA_LOG");
  const std::string level = env ? env : "info";
  if (level == "quiet") {
    spdlog::set_level(spdlog::level::off);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    spdlog::set_level(spdlog::level::info);
  }
}

}  // namespace elliptika
