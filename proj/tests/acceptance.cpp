// Acceptance run: one PASS/FAIL line per criterion. With an argument, runs
// only the listed criteria (1..9). Exit status 0 iff every selected
// criterion passed.

#include "pucohom/checks.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace pucohom;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(3);
  out << s << "s";
  return out.str();
}

std::string failed_degrees(const std::vector<VerifyRow>& rows) {
  std::string out;
  for (const auto& r : rows)
    if (!r.ok) out += (out.empty() ? "" : ",") + std::to_string(r.degree);
  return out.empty() ? "none" : out;
}

// Theta(delta) from the product over i != j of (t_i - t_j).
Outcome criterion1() {
  Outcome o{true, ""};
  for (auto [p, limit] : {std::pair{3, 1.0}, std::pair{5, 120.0}}) {
    auto t0 = Clock::now();
    ThetaValue v = theta_eval(p, SigmaContext::get(p)->delta_in_t());
    double s = seconds_since(t0);
    ThetaValue want{p, 2 * (p * p - p), p - 1};
    bool ok = v == want && s < limit;
    o.ok = o.ok && ok;
    o.detail += "p=" + std::to_string(p) + ": " + v.to_string() + " in " + fmt_seconds(s) + "; ";
  }
  return o;
}

Outcome criterion2() {
  const int n = 3;
  auto sc = SigmaContext::get(n);
  Ring z = Ring::integers();
  auto s = [&](int i) { return Polynomial::generator(sc->sigma_table(), z, static_cast<std::size_t>(i - 1)); };
  auto c = [](int k) { return mpq_class(k); };
  Polynomial g2 = s(2).scaled(3) - s(1).pow(2);
  Polynomial g3 = s(3).scaled(27) - (s(1) * s(2)).scaled(9) + s(1).pow(3).scaled(2);
  Polynomial delta = (s(1).pow(3) * s(3)).scaled(c(4)) - s(1).pow(2) * s(2).pow(2) -
                     (s(1) * s(2) * s(3)).scaled(c(18)) + s(2).pow(3).scaled(c(4)) + s(3).pow(2).scaled(c(27));
  auto gens = k_generators(n, 12);
  std::vector<int> degrees;
  for (const auto& g : gens) degrees.push_back(g.degree);
  bool ok = degrees == std::vector<int>{4, 6, 12};
  const std::vector<Polynomial> expected = {g2, g3, delta};
  for (std::size_t i = 0; ok && i < gens.size(); ++i) {
    ok = gens[i].integral_count() == 1 && gens[i].representatives.size() == 1;
    if (!ok) break;
    const auto& rep = gens[i].representatives[0];
    ok = rep == expected[i] || rep == -expected[i] || is_decomposable(n, rep - expected[i]) ||
         is_decomposable(n, rep + expected[i]);
  }
  bool discriminant = sc->delta_polynomial() == delta;
  Polynomial mod3 = parse("1*s1^3*s3 - 1*s1^2*s2^2 + 1*s2^3", sc->sigma_table(), Ring::modp(3));
  bool reduced = delta.in_ring(Ring::modp(3)) == mod3;
  std::string detail = "generator degrees";
  for (int d : degrees) detail += " " + std::to_string(d);
  detail += "; discriminant formula " + std::string(discriminant ? "matches" : "differs");
  detail += "; delta mod 3 " + std::string(reduced ? "matches" : "differs");
  return {ok && discriminant && reduced, detail};
}

Outcome criterion3() {
  bool ok = true;
  std::string detail;
  for (auto [p, top] : {std::pair{3, 24}, std::pair{5, 44}}) {
    VerifyReport literal = run_verify(VerifyTarget::ThetaProfile, {p, 0, top, ProfileRule::Threshold});
    VerifyReport subring = run_verify(VerifyTarget::ThetaProfile, {p, 0, top, ProfileRule::GeneratedSubring});
    ok = ok && literal.ok();
    detail += "p=" + std::to_string(p) + ": threshold rule fails at degrees " + failed_degrees(literal.rows) +
              ", generated-subring rule " + (subring.ok() ? "holds" : "fails at " + failed_degrees(subring.rows)) + "; ";
  }
  return {ok, detail};
}

Outcome from_report(const VerifyReport& r, const std::string& label) {
  return {r.ok(), label + ": " + std::to_string(r.rows.size()) + " rows, failing degrees " + failed_degrees(r.rows) +
                      (r.failures.empty() ? "" : ", " + r.failures.front())};
}

Outcome criterion4() {
  auto a = from_report(run_verify(VerifyTarget::Dickson, {3, 0, 30}), "p=3 to 30");
  auto b = from_report(run_verify(VerifyTarget::Dickson, {5, 0, 48}), "p=5 to 48");
  return {a.ok && b.ok, a.detail + "; " + b.detail};
}

Outcome criterion5() {
  // mui_check also asserts ys = yz = fy + sz = 0, f = beta P1 beta (y) and
  // the restriction of h to eta^{p^2-p}.
  auto g = GammaModP::get(3);
  bool chain = g->bockstein(g->p1(g->bockstein(g->y()))) == g->f() &&
               g->restrict_to_tau(g->h()) == g->eta().pow(6);
  auto r = from_report(run_verify(VerifyTarget::Mui, {3, 0, 30}), "p=3 to 30");
  return {r.ok && chain, r.detail + "; f = beta P1 beta y and h|tau = eta^6 " + (chain ? "hold" : "fail")};
}

Outcome criterion6() { return from_report(run_verify(VerifyTarget::Integral, {3, 0, 24}), "p=3 to 24"); }

Outcome criterion7() {
  auto a = from_report(verify_main(3, 24), "p=3 to 24");
  auto b = from_report(verify_main(5, 16), "p=5 to 16");
  return {a.ok && b.ok, a.detail + "; " + b.detail + "; R identified with the mod-p cohomology via trusted injectivity"};
}

Outcome criterion8() {
  VerifyReport r = verify_vistoli(3, 24);
  auto q = vistoli_quotient_slices(3, 24);
  auto r0 = subring_R0_slices(3, 24);
  bool named = q.types[3].to_string() == "Z/3" && r0.types[3].to_string() == "Z/3" &&
               q.types[8].to_string() == "Z+Z/3" && r0.types[8].to_string() == "Z+Z/3";
  auto o = from_report(r, "p=3 to 24");
  return {o.ok && named, o.detail + "; degree 3: " + q.types[3].to_string() + ", degree 8: " + q.types[8].to_string()};
}

// dim quotient_d = dim (fixed subspace)_d + dim rho(I_3)_d, with the fixed
// dimensions taken from the Mui check rows; and L_3 has the Hilbert function
// of F_3[c1, delta].
Outcome criterion9() {
  const int p = 3, top = 24;
  auto q = main_theorem_quotient_slices(p, top);
  GammaCheckReport mui = mui_check(p, top);
  auto sigma = SigmaContext::get(p)->sigma_table();
  bool ok = mui.ok();
  std::string bad;
  for (int d = 0; d <= top; ++d) {
    std::size_t rho_i = 0;
    if (d > 0 && d % 2 == 0) {
      auto slice = DegreeSlice::enumerate(sigma, d);
      ModpSpan span(p, slice.size());
      for (const auto& u : i_basis(p, d).basis) span.insert(to_modp(slice.coordinates(u), p));
      rho_i = span.rank();
    }
    std::size_t fixed = mui.rows[static_cast<std::size_t>(d)].fixed_dim;
    if (q.dims[static_cast<std::size_t>(d)] != fixed + rho_i) {
      ok = false;
      bad += " " + std::to_string(d);
    }
    if (d % 2 == 0 && l_p_slice(p, d).size() != polynomial_algebra_dimension({2, 12}, d)) {
      ok = false;
      bad += " L" + std::to_string(d);
    }
  }
  return {ok, "quotient = invariants + rho(I) and L_3 = F_3[c1, delta] in degrees 0..24: " +
                  (bad.empty() ? std::string("all match") : "mismatch at" + bad)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9};
  const std::vector<std::string> names = {"theta-of-delta",        "k3-generators",         "theta-profile-threshold",
                                          "dickson",               "mui",                   "integral-invariants",
                                          "mod-p-presentation",    "integral-presentation", "p3-hilbert-function"};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::cerr << "usage: acceptance [criterion 1..9]...\n";
      return 2;
    }
    selected.insert(k);
  }
  if (selected.empty())
    for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) selected.insert(k);
  bool all = true;
  for (int k : selected) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(k - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << k << " " << names[static_cast<std::size_t>(k - 1)] << " (" << fmt_seconds(seconds_since(t0)) << "): "
              << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
