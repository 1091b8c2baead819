#pragma once

// Degreewise verification reports and their text / CSV renderings.

#include <string>
#include <vector>

namespace pucohom {

struct VerifyRow {
  int degree = 0;
  std::string lhs;  // dimension or group type of the first side
  std::string rhs;
  bool ok = false;
};

struct VerifyReport {
  std::string name;                 // "main", "vistoli", "mui", ...
  std::vector<std::string> header;  // conventions and scope, one per line
  std::vector<VerifyRow> rows;
  std::vector<std::string> failures;  // degree and witness for each failed check

  bool ok() const;
};

// "# ..." header lines, an aligned table, then one "FAIL ..." line per
// failure and a closing PASS/FAIL line.
std::string render_table(const VerifyReport& report);
// degree,lhs_dim_or_factors,rhs_dim_or_factors,status
std::string render_csv(const VerifyReport& report);

}  // namespace pucohom
