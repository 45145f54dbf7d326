#include "lapeig/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace lapeig {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::dacg: return "dacg";
    case SolverKind::jd: return "jd";
    case SolverKind::irlm: return "irlm";
  }
  return "?";
}

std::optional<SolverKind> parse_solver_kind(std::string_view name) {
  if (name == "dacg") return SolverKind::dacg;
  if (name == "jd") return SolverKind::jd;
  if (name == "irlm") return SolverKind::irlm;
  return std::nullopt;
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::stagnation: return "stagnation";
    case SolveStatus::inner_failure: return "inner_failure";
    case SolveStatus::verification_failed: return "verification_failed";
    case SolveStatus::error: return "error";
  }
  return "?";
}

namespace {

constexpr std::string_view kCsvHeader =
    "solver,neig,delta,mvp,outer_its,inner_its_total,wall_seconds,converged";

std::string format_double(double v, const char* pattern = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::vector<const SolverReport*> ordered(std::span<const SolverReport> reports) {
  std::vector<const SolverReport*> out;
  for (const auto& r : reports) out.push_back(&r);
  std::stable_sort(out.begin(), out.end(), [](const SolverReport* a, const SolverReport* b) {
    return static_cast<int>(a->solver) < static_cast<int>(b->solver);
  });
  return out;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = line.find(sep);
    out.push_back(line.substr(0, pos));
    if (pos == std::string_view::npos) break;
    line.remove_prefix(pos + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, const char* field) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string("parse_report_csv: bad ") + field + " '" +
                                std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string emit_report(std::span<const SolverReport> reports, ReportFormat format) {
  std::ostringstream out;
  const auto rows = ordered(reports);
  if (format == ReportFormat::csv) {
    out << kCsvHeader << '\n';
    for (const auto* r : rows) {
      out << to_string(r->solver) << ',' << r->neig << ',' << format_double(r->delta) << ','
          << r->mvp << ',' << (r->solver == SolverKind::dacg ? 0 : r->outer_its) << ','
          << r->inner_its_total << ',' << format_double(r->wall_seconds) << ','
          << (r->converged ? "true" : "false") << '\n';
    }
    return out.str();
  }
  char line[256];
  std::snprintf(line, sizeof line, "%-6s %6s %9s %10s %10s %12s %10s  %s\n", "solver", "neig",
                "delta", "outer its", "MVP", "inner its", "CPU (s)", "status");
  out << line;
  for (const auto* r : rows) {
    const std::string outer = r->solver == SolverKind::dacg ? "-" : std::to_string(r->outer_its);
    std::snprintf(line, sizeof line, "%-6s %6zu %9.1e %10s %10llu %12zu %10.3f  %s\n",
                  std::string(to_string(r->solver)).c_str(), static_cast<std::size_t>(r->neig),
                  r->delta, outer.c_str(), static_cast<unsigned long long>(r->mvp),
                  static_cast<std::size_t>(r->inner_its_total), r->wall_seconds,
                  std::string(to_string(r->status)).c_str());
    out << line;
    if (!r->message.empty()) out << "       " << r->message << '\n';
  }
  return out.str();
}

std::vector<SolverReport> parse_report_csv(std::string_view csv) {
  std::vector<SolverReport> out;
  bool header = true;
  while (!csv.empty()) {
    const auto pos = csv.find('\n');
    std::string_view line = csv.substr(0, pos);
    csv.remove_prefix(pos == std::string_view::npos ? csv.size() : pos + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) throw std::invalid_argument("parse_report_csv: unexpected header");
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 8) throw std::invalid_argument("parse_report_csv: expected 8 fields");
    SolverReport r;
    const auto kind = parse_solver_kind(f[0]);
    if (!kind) throw std::invalid_argument("parse_report_csv: unknown solver");
    r.solver = *kind;
    r.neig = parse_number<Index>(f[1], "neig");
    r.delta = parse_number<double>(f[2], "delta");
    r.mvp = parse_number<std::uint64_t>(f[3], "mvp");
    r.outer_its = parse_number<Index>(f[4], "outer_its");
    r.inner_its_total = parse_number<Index>(f[5], "inner_its_total");
    r.wall_seconds = parse_number<double>(f[6], "wall_seconds");
    if (f[7] == "true") {
      r.converged = true;
    } else if (f[7] == "false") {
      r.converged = false;
    } else {
      throw std::invalid_argument("parse_report_csv: bad converged flag");
    }
    r.status = r.converged ? SolveStatus::converged : SolveStatus::error;
    out.push_back(std::move(r));
  }
  if (header) throw std::invalid_argument("parse_report_csv: missing header");
  return out;
}

std::string emit_spectrum(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("emit_spectrum: no eigenvalues");
  std::ostringstream out;
  for (std::size_t j = 0; j < values.size(); ++j) {
    out << (j + 2) << ' ' << format_double(values[j] / values[0]) << '\n';
  }
  return out.str();
}

}  // namespace lapeig
