#include "cohft/report.hpp"

#include <sstream>

#include <json.hpp>

namespace cohft {

CheckCounts& CheckCounts::operator+=(const CheckCounts& other) {
  passed += other.passed;
  failed += other.failed;
  untested += other.untested;
  return *this;
}

void Tally::pass(const std::string& axiom, int g, int n, std::uint64_t count) {
  counts_[{axiom, g, n}].passed += count;
}

void Tally::untested(const std::string& axiom, int g, int n, std::uint64_t count) {
  counts_[{axiom, g, n}].untested += count;
}

void Tally::fail(Counterexample example) {
  counts_[{example.axiom, example.g, example.n}].failed += 1;
  if (examples_.size() < kMaxExamples) examples_.push_back(std::move(example));
}

void Tally::count_case(const std::string& name, std::uint64_t count) { cases_[name] += count; }

void Tally::merge(Tally&& other) {
  for (const auto& [key, c] : other.counts_) counts_[key] += c;
  for (auto& e : other.examples_) {
    if (examples_.size() >= kMaxExamples) break;
    examples_.push_back(std::move(e));
  }
  for (const auto& [name, c] : other.cases_) cases_[name] += c;
}

CheckCounts Tally::totals() const {
  CheckCounts total;
  for (const auto& [key, c] : counts_) total += c;
  return total;
}

bool VerificationReport::passed() const {
  if (tally.totals().failed != 0) return false;
  for (const auto& [name, value] : facts) {
    if (!value) return false;
  }
  return true;
}

namespace {

std::string status_of(const CheckCounts& c) {
  if (c.failed) return "fail";
  if (c.passed) return "pass";
  return "untested";
}

}  // namespace

std::string to_json(const VerificationReport& report) {
  using nlohmann::ordered_json;
  ordered_json out;
  out["kind"] = report.kind;
  if (report.gamma) {
    out["gamma"] = {{"h", report.gamma->h},
                    {"m", report.gamma->m},
                    {"deg", report.gamma->deg},
                    {"mode", report.gamma->mode},
                    {"branch", report.gamma->branch}};
  } else {
    out["gamma"] = nullptr;
  }
  out["sweep"] = {{"g_max", report.sweep.g_max},
                  {"n_max", report.sweep.n_max},
                  {"n_exh", report.sweep.n_exh},
                  {"seed", report.sweep.seed},
                  {"sample_count", report.sweep.sample_count}};
  ordered_json checks = ordered_json::array();
  for (const auto& [key, c] : report.tally.counts()) {
    const auto& [axiom, g, n] = key;
    checks.push_back({{"axiom", axiom},
                      {"g", g},
                      {"n", n},
                      {"insertions", "*"},
                      {"graph", "*"},
                      {"status", status_of(c)},
                      {"passed", c.passed},
                      {"failed", c.failed},
                      {"untested", c.untested}});
  }
  out["checks"] = std::move(checks);
  ordered_json examples = ordered_json::array();
  for (const auto& e : report.tally.counterexamples()) {
    examples.push_back({{"axiom", e.axiom},
                        {"g", e.g},
                        {"n", e.n},
                        {"insertions", e.insertions},
                        {"graph", e.graph},
                        {"lhs", e.lhs},
                        {"rhs", e.rhs},
                        {"detail", e.detail}});
  }
  out["counterexamples"] = std::move(examples);
  ordered_json cases = ordered_json::object();
  for (const auto& [name, c] : report.tally.cases()) cases[name] = c;
  out["cases"] = std::move(cases);
  ordered_json facts = ordered_json::object();
  for (const auto& [name, value] : report.facts) facts[name] = value;
  out["facts"] = std::move(facts);
  const auto totals = report.tally.totals();
  out["totals"] = {{"passed", totals.passed}, {"failed", totals.failed}, {"untested", totals.untested}};
  return out.dump(2) + "\n";
}

std::string to_csv(const VerificationReport& report) {
  std::ostringstream out;
  out << "axiom,g,n,status,passed,failed,untested\n";
  for (const auto& [key, c] : report.tally.counts()) {
    const auto& [axiom, g, n] = key;
    out << axiom << ',' << g << ',' << n << ',' << status_of(c) << ',' << c.passed << ',' << c.failed << ','
        << c.untested << '\n';
  }
  return out.str();
}

std::string to_text(const VerificationReport& report) {
  std::ostringstream out;
  out << report.kind;
  if (report.gamma) {
    out << " h=" << report.gamma->h << " m=" << report.gamma->m << " deg=" << report.gamma->deg
        << " mode=" << report.gamma->mode << " branch=" << report.gamma->branch;
  }
  out << "\nsweep g_max=" << report.sweep.g_max << " n_max=" << report.sweep.n_max << " n_exh=" << report.sweep.n_exh
      << " seed=" << report.sweep.seed << " samples=" << report.sweep.sample_count << "\n";
  for (const auto& [key, c] : report.tally.counts()) {
    const auto& [axiom, g, n] = key;
    out << "  " << axiom << " (g=" << g << ", n=" << n << "): " << status_of(c) << "  passed=" << c.passed
        << " failed=" << c.failed << " untested=" << c.untested << "\n";
  }
  for (const auto& [name, count] : report.tally.cases()) out << "  case " << name << ": " << count << "\n";
  for (const auto& [name, value] : report.facts) out << "  " << name << ": " << (value ? "true" : "false") << "\n";
  for (const auto& e : report.tally.counterexamples()) {
    out << "COUNTEREXAMPLE " << e.axiom << " g=" << e.g << " n=" << e.n << " insertions=" << e.insertions
        << " graph=" << e.graph << "\n    lhs: " << e.lhs << "\n    rhs: " << e.rhs;
    if (!e.detail.empty()) out << "\n    " << e.detail;
    out << "\n";
  }
  const auto totals = report.tally.totals();
  out << "totals passed=" << totals.passed << " failed=" << totals.failed << " untested=" << totals.untested << "\n";
  out << (report.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace cohft
