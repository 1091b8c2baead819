#pragma once

// Uniform entry points used by the C API: every verification as a
// VerifyReport, and Hilbert functions of the computed objects.

#include "pucohom/presentations.hpp"

#include <optional>
#include <string_view>

namespace pucohom {

enum class VerifyTarget { Main, Vistoli, Mui, Dickson, ThetaProfile, Integral, E4 };
std::optional<VerifyTarget> parse_verify_target(std::string_view name);
std::string to_string(VerifyTarget target);

struct VerifyOptions {
  int p = 3;
  int n = 3;  // E4 only
  int max_degree = 24;
  ProfileRule rule = ProfileRule::GeneratedSubring;
};

VerifyReport run_verify(VerifyTarget target, const VerifyOptions& options, Engine& engine = default_engine());

enum class HilbertObject { K, L, R, R0, QuotientMain, QuotientVistoli };
std::optional<HilbertObject> parse_hilbert_object(std::string_view name);

struct HilbertRow {
  int degree = 0;
  std::string value;  // rank, dimension, or group type
  bool zero = false;
};

// One row per degree 0..max_degree; K and L skip odd degrees. K uses n,
// the others p.
std::vector<HilbertRow> hilbert_rows(HilbertObject object, int p, int n, int max_degree,
                                     Engine& engine = default_engine());

// Table: "<degree>: <value>" per row (zero rows of the graded pieces that
// live in every degree are left out). CSV: "degree,dim_or_factors" and
// every row.
std::string render_hilbert_table(HilbertObject object, const std::vector<HilbertRow>& rows);
std::string render_hilbert_csv(const std::vector<HilbertRow>& rows);

}  // namespace pucohom
