#include "pucohom/checks.hpp"

#include <sstream>

namespace pucohom {

namespace {

VerifyReport from_gamma(const std::string& name, const GammaCheckReport& g) {
  VerifyReport out;
  out.name = name;
  for (const auto& r : g.rows) out.rows.push_back({r.degree, std::to_string(r.fixed_dim), std::to_string(r.expected_dim), r.ok});
  for (const auto& r : g.rows)
    if (!r.ok)
      out.failures.push_back("degree " + std::to_string(r.degree) + ": fixed " + std::to_string(r.fixed_dim) +
                             ", expected " + std::to_string(r.expected_dim) + ", generated " +
                             std::to_string(r.generated_dim));
  for (const auto& f : g.failures) out.failures.push_back("identity fails: " + f);
  return out;
}

}  // namespace

std::optional<VerifyTarget> parse_verify_target(std::string_view name) {
  if (name == "main") return VerifyTarget::Main;
  if (name == "vistoli") return VerifyTarget::Vistoli;
  if (name == "mui") return VerifyTarget::Mui;
  if (name == "dickson") return VerifyTarget::Dickson;
  if (name == "theta-profile") return VerifyTarget::ThetaProfile;
  if (name == "integral") return VerifyTarget::Integral;
  if (name == "e4") return VerifyTarget::E4;
  return std::nullopt;
}

std::string to_string(VerifyTarget target) {
  switch (target) {
    case VerifyTarget::Main: return "main";
    case VerifyTarget::Vistoli: return "vistoli";
    case VerifyTarget::Mui: return "mui";
    case VerifyTarget::Dickson: return "dickson";
    case VerifyTarget::ThetaProfile: return "theta-profile";
    case VerifyTarget::Integral: return "integral";
    case VerifyTarget::E4: return "e4";
  }
  return "?";
}

VerifyReport run_verify(VerifyTarget target, const VerifyOptions& o, Engine& engine) {
  const std::string through = "verified through degree " + std::to_string(o.max_degree);
  const std::string pline = "p = " + std::to_string(o.p);
  VerifyReport out;
  switch (target) {
    case VerifyTarget::Main: return verify_main(o.p, o.max_degree, engine);
    case VerifyTarget::Vistoli: return verify_vistoli(o.p, o.max_degree, engine);
    case VerifyTarget::Mui:
      out = from_gamma("mui", mui_check(o.p, o.max_degree, engine));
      out.header = {pline + ", fixed subspace of F_p[xi, eta] (x) Lambda[a, b]",
                    "lhs = fixed dimension, rhs = dimension of F_p[f, h] (x) Lambda[s, y, z] / (ys, yz, fy + sz, y^2)",
                    through};
      return out;
    case VerifyTarget::Dickson:
      out = from_gamma("dickson", dickson_check(o.p, o.max_degree, engine));
      out.header = {pline + ", fixed subspace of F_p[xi, eta]",
                    "lhs = fixed dimension, rhs = dimension of F_p[f, h]", through};
      return out;
    case VerifyTarget::Integral:
      out = from_gamma("integral", integral_invariants_check(o.p, o.max_degree, engine));
      out.header = {pline + ", fixed subspace of Z[xi, eta, s]/(p xi, p eta, p s, s^2)",
                    "lhs = fixed rank, rhs = span of the monomials in s, f, h", through};
      return out;
    case VerifyTarget::ThetaProfile: {
      out.name = "theta-profile";
      const bool threshold = o.rule == ProfileRule::Threshold;
      out.header = {pline + ", image of Theta on K_p",
                    threshold ? "expected: zero below degree 2(p^2 - p), full from there on"
                              : "expected: full exactly when (p^2 - p) divides half the degree",
                    "lhs = observed, rhs = expected", through};
      for (const auto& r : theta_image_profile(o.p, o.max_degree, o.rule, engine)) {
        out.rows.push_back({r.degree, to_string(r.observed), to_string(r.expected), r.ok()});
        if (!r.ok())
          out.failures.push_back("degree " + std::to_string(r.degree) + ": image is " + to_string(r.observed) +
                                 ", expected " + to_string(r.expected));
      }
      return out;
    }
    case VerifyTarget::E4:
      out.name = "e4";
      out.header = {"n = " + std::to_string(o.n) + ", zero column of E_3 against K_n",
                    "lhs = rank of K_n, rhs = rank of the recomputed zero column", through};
      for (const auto& r : e4_zero_column_check(o.n, o.max_degree, engine)) {
        out.rows.push_back({r.degree, std::to_string(r.k_rank), std::to_string(r.zero_column_rank), r.ok});
        if (!r.ok) out.failures.push_back("degree " + std::to_string(r.degree) + ": lattices differ");
      }
      return out;
  }
  return out;
}

std::optional<HilbertObject> parse_hilbert_object(std::string_view name) {
  if (name == "K") return HilbertObject::K;
  if (name == "L") return HilbertObject::L;
  if (name == "R") return HilbertObject::R;
  if (name == "R0") return HilbertObject::R0;
  if (name == "quotient-main") return HilbertObject::QuotientMain;
  if (name == "quotient-vistoli") return HilbertObject::QuotientVistoli;
  return std::nullopt;
}

std::vector<HilbertRow> hilbert_rows(HilbertObject object, int p, int n, int max_degree, Engine& engine) {
  std::vector<HilbertRow> rows;
  auto dim_row = [](int d, std::size_t v) { return HilbertRow{d, std::to_string(v), v == 0}; };
  auto type_row = [](int d, const AbelianGroupType& t) { return HilbertRow{d, t.to_string(), t.is_zero()}; };
  switch (object) {
    case HilbertObject::K: {
      auto ranks = k_hilbert(n, max_degree, engine);
      for (std::size_t i = 0; i < ranks.size(); ++i) rows.push_back(dim_row(static_cast<int>(2 * i), ranks[i]));
      break;
    }
    case HilbertObject::L:
      for (int d = 0; d <= max_degree; d += 2) rows.push_back(dim_row(d, l_p_slice(p, d, engine).size()));
      break;
    case HilbertObject::R: {
      auto r = subring_R_slices(p, max_degree, engine);
      for (int d = 0; d <= max_degree; ++d) rows.push_back(dim_row(d, r.dims[static_cast<std::size_t>(d)]));
      break;
    }
    case HilbertObject::R0: {
      auto r = subring_R0_slices(p, max_degree, engine);
      for (int d = 0; d <= max_degree; ++d) rows.push_back(type_row(d, r.types[static_cast<std::size_t>(d)]));
      break;
    }
    case HilbertObject::QuotientMain: {
      auto q = main_theorem_quotient_slices(p, max_degree, engine);
      for (int d = 0; d <= max_degree; ++d) rows.push_back(dim_row(d, q.dims[static_cast<std::size_t>(d)]));
      break;
    }
    case HilbertObject::QuotientVistoli: {
      auto q = vistoli_quotient_slices(p, max_degree, engine);
      for (int d = 0; d <= max_degree; ++d) rows.push_back(type_row(d, q.types[static_cast<std::size_t>(d)]));
      break;
    }
  }
  return rows;
}

std::string render_hilbert_table(HilbertObject object, const std::vector<HilbertRow>& rows) {
  const bool all = object == HilbertObject::K || object == HilbertObject::L;
  std::ostringstream out;
  for (const auto& r : rows)
    if (all || !r.zero) out << r.degree << ": " << r.value << '\n';
  return out.str();
}

std::string render_hilbert_csv(const std::vector<HilbertRow>& rows) {
  std::ostringstream out;
  out << "degree,dim_or_factors\n";
  for (const auto& r : rows) out << r.degree << ',' << r.value << '\n';
  return out.str();
}

}  // namespace pucohom
