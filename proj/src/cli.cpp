#include "cohft/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cohft/cohft_gamma.hpp"
#include "cohft/deformations.hpp"
#include "cohft/genus1_dimensions.hpp"
#include "cohft/topft.hpp"

namespace cohft {

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "text") return ReportFormat::Text;
  throw StructuralError("unknown format \"" + std::string(text) + "\" (expected json, csv or text)");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace

std::vector<BasisVector> parse_insertions(std::string_view text) {
  std::vector<std::string_view> tokens;
  while (true) {
    const auto comma = text.find(',');
    tokens.push_back(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (tokens.size() == 1 && tokens.front().empty()) return {};
  std::vector<BasisVector> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] != "...") {
      out.push_back(parse_basis_vector(tokens[i]));
      continue;
    }
    if (out.empty() || i + 1 >= tokens.size()) throw StructuralError("\"...\" needs a token on each side");
    const auto from = out.back();
    const auto to = parse_basis_vector(tokens[i + 1]);
    if (from.kind != to.kind || (!from.is_b() && !from.is_c()) || to.index <= from.index) {
      throw StructuralError("\"...\" must sit between b<i> and b<j> (or c<i>, c<j>) with i < j");
    }
    for (int index = from.index + 1; index < to.index; ++index) out.push_back({from.kind, index});
  }
  return out;
}

Mode resolve_mode(int deg, int m) {
  if ((deg - m) % 2 == 0) return Mode::Graded;
  if (deg % 2 == 0) return Mode::Ungraded;
  throw ValidationError("parity condition violated: deg=" + std::to_string(deg) + ", m=" + std::to_string(m) +
                        " (odd degree needs an odd number of markings)");
}

namespace {

Mode mode_from(const std::string& text, int deg, int m) {
  if (text == "auto") return resolve_mode(deg, m);
  return parse_mode(text);
}

struct SweepOptions {
  int h = -1;
  int m = -1;
  int deg = -1;
  std::string mode = "graded";
  int g_max = -1;
  int n_max = -1;
  int n_exh = 6;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  int jobs = 0;
  std::string output;
  std::string format = "json";
  std::string config;
};

void add_gamma_options(CLI::App* cmd, SweepOptions& o) {
  cmd->add_option("--h", o.h, "Genus h of gamma");
  cmd->add_option("--m", o.m, "Number of markings m of gamma");
  cmd->add_option("--deg", o.deg, "Cohomological degree of gamma");
  cmd->add_option("--mode", o.mode, "graded, ungraded or auto")->capture_default_str();
}

void add_sweep_options(CLI::App* cmd, SweepOptions& o) {
  cmd->add_option("--g-max", o.g_max, "Largest genus swept (default h+2)");
  cmd->add_option("--n-max", o.n_max, "Largest marking count swept (default m+3)");
  cmd->add_option("--n-exh", o.n_exh, "Enumerate all insertion tuples up to this length")->capture_default_str();
  cmd->add_option("--samples", o.samples, "Sampled tuples per (g,n) beyond n-exh")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
  cmd->add_option("--jobs", o.jobs, "Worker threads (default: available cores)");
  cmd->add_option("-o,--output", o.output, "Report file (default: standard output)");
  cmd->add_option("--format", o.format, "json, csv or text")->capture_default_str();
  cmd->add_option("--config", o.config, "key=value file; command-line flags take precedence");
}

/// Applies key=value pairs from the config file to options not given on the
/// command line.
void apply_config(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  for (const auto& item : CLI::ConfigINI().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    if (!item.parents.empty() && item.parents.front() != cmd->get_name()) continue;
    std::string name = item.name;
    std::replace(name.begin(), name.end(), '_', '-');
    auto* option = cmd->get_option_no_throw("--" + name);
    if (option == nullptr || name == "config") {
      throw ValidationError("config file " + path + ": unknown key \"" + item.name + "\"");
    }
    if (option->count() > 0) continue;
    for (const auto& value : item.inputs) option->add_result(value);
    option->run_callback();
  }
}

int jobs_from_env(int requested) {
  const char* env = std::getenv("COHFT_JOBS");
  if (env == nullptr || *env == '\0') return requested;
  int jobs = 0;
  const std::string_view text(env);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), jobs);
  if (ec != std::errc{} || ptr != text.data() + text.size() || jobs < 1) {
    throw ValidationError("COHFT_JOBS must be a positive integer, got \"" + std::string(text) + "\"");
  }
  return jobs;
}

SweepBounds bounds_from(const SweepOptions& o, int default_g_max, int default_n_max) {
  SweepBounds bounds;
  bounds.g_max = o.g_max >= 0 ? o.g_max : default_g_max;
  bounds.n_max = o.n_max >= 0 ? o.n_max : default_n_max;
  if (o.n_exh < 0) throw ValidationError("n_exh must be >= 0");
  bounds.n_exh = o.n_exh;
  bounds.sample_count = o.samples;
  bounds.seed = o.seed;
  bounds.jobs = jobs_from_env(o.jobs);
  if (bounds.jobs < 0) throw ValidationError("jobs must be >= 0");
  return bounds;
}

void require_gamma(const SweepOptions& o, const std::string& command) {
  if (o.h < 0 || o.m < 0 || o.deg < 0) {
    throw ValidationError(command + " needs --h, --m and --deg (each >= 0)");
  }
}

std::string render(const VerificationReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return to_json(report);
    case ReportFormat::Csv: return to_csv(report);
    case ReportFormat::Text: return to_text(report);
  }
  return to_json(report);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path);
  file << text;
  if (!file.flush()) throw IoError("error while writing " + path);
}

void summarize(const VerificationReport& report, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") return;
  const auto totals = report.tally.totals();
  out << (report.passed() ? "PASS" : "FAIL") << " passed=" << totals.passed << " failed=" << totals.failed
      << " untested=" << totals.untested << " report=" << path << "\n";
}

int cmd_eval(bool topft, const SweepOptions& o, int g, const std::string& insertion_text, std::ostream& out) {
  if (o.m < 0) throw ValidationError("eval needs --m >= 0");
  if (g < 0) throw ValidationError("eval needs --g >= 0");
  const auto insertions = parse_insertions(insertion_text);
  if (topft) {
    const Mode mode = o.mode == "auto" ? Mode::Graded : parse_mode(o.mode);
    const StateSpace space(o.m, mode);
    out << to_string(evaluate_topft_closed(space, g, insertions)) << "\n";
    return 0;
  }
  require_gamma(o, "eval");
  const auto gamma = FormalGamma::make(o.h, o.m, o.deg, mode_from(o.mode, o.deg, o.m));
  if (gamma.trivial_corner()) {
    // One-dimensional state space spanned by the unit.
    if (!std::all_of(insertions.begin(), insertions.end(), [](BasisVector v) { return v.is_a(); })) {
      throw StructuralError("(h,m)=(0,3) uses the trivial CohFT, whose only insertion is the unit 1");
    }
    out << to_string(evaluate_trivial_cohft(g, static_cast<int>(insertions.size()))) << "\n";
    return 0;
  }
  out << to_string(evaluate_omega_gamma(CohftGamma(gamma), g, insertions)) << "\n";
  return 0;
}

int cmd_verify(const SweepOptions& o, std::ostream& out) {
  require_gamma(o, "verify");
  SweepConfig config;
  config.h = o.h;
  config.m = o.m;
  config.deg = o.deg;
  config.mode = mode_from(o.mode, o.deg, o.m);
  config.bounds = bounds_from(o, o.h + 2, o.m + 3);
  config.output = o.output;
  config.format = parse_report_format(o.format);
  const auto gamma = FormalGamma::make(config.h, config.m, config.deg, config.mode);
  const auto report = verify_theorem_1(gamma, config.bounds);
  write_text(config.output, render(report, config.format), out);
  summarize(report, config.output, out);
  return report.passed() ? 0 : 1;
}

int cmd_deform_check(const SweepOptions& o, const std::string& table_path, const std::string& write_path,
                     bool mutate, std::ostream& out) {
  std::optional<DeformationTable> table;
  if (!table_path.empty()) {
    table = load_deformation_table(table_path);
  } else {
    require_gamma(o, "deform-check without --table");
    table = DeformationTable::correction_of(FormalGamma::make(o.h, o.m, o.deg, mode_from(o.mode, o.deg, o.m)));
  }
  if (mutate) {
    // Flip the sign of one nonzero value: the canonical all-b entry of a
    // generated table, else the first declared nonzero entry.
    std::optional<TableKey> key;
    if (const auto& gen = table->generator()) {
      key = TableKey{gen->h(), canonical_correction_tuple(gen->m(), gen->m())};
    } else {
      for (const auto& [k, value] : table->entries()) {
        if (!value.is_zero()) {
          key = k;
          break;
        }
      }
    }
    if (!key) throw ValidationError("--mutate needs a table with a nonzero entry");
    table->set(key->g, key->insertions, Rational(-1) * table->value(key->g, key->insertions));
  }
  if (!write_path.empty()) write_text(write_path, to_json(*table), out);

  const auto bounds = bounds_from(o, table->g_max(), table->n_max());
  auto report = check_deformation_axioms(*table, bounds);
  report.facts["isotropic"] = check_isotropic(*table, bounds);
  bool vanish = true;
  for (const auto& candidate : extract_minimal_candidates(*table, bounds)) {
    const int n = static_cast<int>(candidate.insertions.size());
    if (candidate.pullbacks_vanish) {
      report.tally.pass("minimal", candidate.g, n);
    } else {
      vanish = false;
      report.tally.fail({"minimal", candidate.g, n, to_string(std::span<const BasisVector>(candidate.insertions)), "",
                         to_string(candidate.value), "0", candidate.failure});
    }
  }
  report.facts["minimal_candidates_vanish"] = vanish;
  const auto format = parse_report_format(o.format);
  write_text(o.output, render(report, format), out);
  summarize(report, o.output, out);
  return report.passed() ? 0 : 1;
}

int cmd_dims(int n_max, bool grw, const std::string& format, std::ostream& out) {
  if (n_max < 1) throw ValidationError("dims needs --n-max >= 1");
  const auto csv = dims_csv(n_max, grw);
  if (format == "csv") {
    out << csv;
    return 0;
  }
  if (format != "text") throw ValidationError("dims supports --format csv or text");
  std::istringstream lines(csv);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) out << std::setw(12) << field;
    out << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification engine for the CohFT Omega^gamma built from a minimal class", "cohft"};
  app.require_subcommand(1);
  // --h is the genus of gamma, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");

  SweepOptions eval_opts;
  int eval_g = -1;
  std::string eval_insertions;
  bool eval_topft = false;
  auto* eval = app.add_subcommand("eval", "Evaluate Omega^gamma (or omega^m with --topft) on one insertion tuple");
  add_gamma_options(eval, eval_opts);
  eval->add_option("--g", eval_g, "Genus of the evaluation")->required();
  eval->add_option("--insertions", eval_insertions, "Comma-separated tokens a, b<i>, c<i>, d; \"...\" expands ranges")
      ->required();
  eval->add_flag("--topft", eval_topft, "Evaluate the topological field theory only");

  SweepOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Check the CohFT axioms for Omega^gamma over a sweep");
  add_gamma_options(verify, verify_opts);
  add_sweep_options(verify, verify_opts);

  SweepOptions deform_opts;
  std::string table_path;
  std::string write_path;
  bool mutate = false;
  auto* deform = app.add_subcommand("deform-check", "Check a first-order deformation table");
  deform->add_option("--table", table_path, "Deformation table (JSON)");
  add_gamma_options(deform, deform_opts);
  add_sweep_options(deform, deform_opts);
  deform->add_option("--write-table", write_path, "Write the (possibly generated) table as JSON");
  deform->add_flag("--mutate", mutate, "Flip the sign of one entry before checking");

  int dims_n_max = 20;
  bool dims_grw = false;
  std::string dims_format = "csv";
  auto* dims = app.add_subcommand("dims", "Dimensions of minimal classes on M_{1,n}");
  dims->add_option("--n-max", dims_n_max, "Largest n")->capture_default_str();
  dims->add_flag("--grw", dims_grw, "Emit dim Gr^W_k H^k(M_{1,n}) instead");
  dims->add_option("--format", dims_format, "csv or text")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::Validation);
  }

  try {
    if (*eval) return cmd_eval(eval_topft, eval_opts, eval_g, eval_insertions, out);
    if (*verify) {
      apply_config(verify, verify_opts.config);
      return cmd_verify(verify_opts, out);
    }
    if (*deform) {
      apply_config(deform, deform_opts.config);
      return cmd_deform_check(deform_opts, table_path, write_path, mutate, out);
    }
    if (*dims) return cmd_dims(dims_n_max, dims_grw, dims_format, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Io);
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Io);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Validation);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Validation);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Validation);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Validation);
  }
  return static_cast<int>(ExitCode::Validation);
}

}  // namespace cohft
