#include "pucohom/report.hpp"

#include <algorithm>
#include <sstream>

namespace pucohom {

bool VerifyReport::ok() const {
  if (!failures.empty()) return false;
  return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.ok; });
}

std::string render_table(const VerifyReport& report) {
  std::ostringstream out;
  for (const auto& line : report.header) out << "# " << line << '\n';
  std::size_t wl = 3, wr = 3;
  for (const auto& r : report.rows) {
    wl = std::max(wl, r.lhs.size());
    wr = std::max(wr, r.rhs.size());
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  out << "degree  " << pad("lhs", wl) << "  " << pad("rhs", wr) << "  status\n";
  for (const auto& r : report.rows) {
    std::string d = std::to_string(r.degree);
    out << std::string(6 - std::min<std::size_t>(6, d.size()), ' ') << d << "  " << pad(r.lhs, wl) << "  "
        << pad(r.rhs, wr) << "  " << (r.ok ? "OK" : "FAIL") << '\n';
  }
  for (const auto& f : report.failures) out << "FAIL " << f << '\n';
  out << (report.ok() ? "PASS" : "FAIL") << ' ' << report.name << '\n';
  return out.str();
}

std::string render_csv(const VerifyReport& report) {
  std::ostringstream out;
  out << "degree,lhs_dim_or_factors,rhs_dim_or_factors,status\n";
  for (const auto& r : report.rows)
    out << r.degree << ',' << r.lhs << ',' << r.rhs << ',' << (r.ok ? "OK" : "FAIL") << '\n';
  return out.str();
}

}  // namespace pucohom
