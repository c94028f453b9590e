#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sfista/instances.hpp"

namespace sfista {

struct TraceRecord {
  std::uint64_t k = 0;
  double a = 0.0;    // a_{k-1}
  double A = 0.0;    // A_k
  double tau = 0.0;  // tau_k
  double phi_y = 0.0;
  std::optional<double> gap;
  std::optional<double> norm_u;
  std::optional<double> norm_v;
  std::optional<double> eta_residual;
  std::int64_t elapsed_ns = 0;
};

inline constexpr const char* kTraceHeader =
    "k,a,A,tau,phi_y,gap,norm_u,norm_v,eta_residual,elapsed_ns";

inline void write_trace_csv(std::ostream& os, const std::vector<TraceRecord>& records) {
  auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  os << kTraceHeader << "\n";
  for (const auto& r : records) {
    os << r.k << ',' << format_real(r.a) << ',' << format_real(r.A) << ',' << format_real(r.tau)
       << ',' << format_real(r.phi_y) << ',' << opt(r.gap) << ',' << opt(r.norm_u) << ','
       << opt(r.norm_v) << ',' << opt(r.eta_residual) << ',' << r.elapsed_ns << "\n";
  }
}

inline std::vector<TraceRecord> read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTraceHeader)
    raise(ErrorKind::invalid_argument, "trace: missing or unexpected header");
  std::vector<TraceRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    if (!line.empty() && line.back() == ',') cols.emplace_back();
    if (cols.size() != 10) raise(ErrorKind::invalid_argument, "trace: expected 10 columns");
    auto opt = [](const std::string& s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return parse_real(s);
    };
    TraceRecord r;
    r.k = std::stoull(cols[0]);
    r.a = parse_real(cols[1]);
    r.A = parse_real(cols[2]);
    r.tau = parse_real(cols[3]);
    r.phi_y = parse_real(cols[4]);
    r.gap = opt(cols[5]);
    r.norm_u = opt(cols[6]);
    r.norm_v = opt(cols[7]);
    r.eta_residual = opt(cols[8]);
    r.elapsed_ns = std::stoll(cols[9]);
    out.push_back(r);
  }
  return out;
}

}  // namespace sfista
