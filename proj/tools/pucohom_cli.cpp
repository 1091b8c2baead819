// Command-line front end. Talks to the library only through the C API.

#include "pucohom/pucohom.h"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

struct Context {
  pch_context* ctx = nullptr;
  Context() {
    if (pch_context_new(&ctx) != PCH_OK) ctx = nullptr;
  }
  ~Context() { pch_context_free(ctx); }
};

// Prints the returned text and turns the status into the exit code:
// 0 pass, 1 falsified, 2 usage, 3 internal error.
int finish(pch_context* ctx, pch_status status, char* text) {
  if (text) {
    std::fputs(text, stdout);
    pch_string_free(text);
  }
  switch (status) {
    case PCH_OK: return 0;
    case PCH_FALSIFIED:
      if (*pch_last_error(ctx)) std::cerr << "falsified: " << pch_last_error(ctx) << '\n';
      return 1;
    case PCH_INVALID_ARGUMENT:
      std::cerr << "error: " << pch_last_error(ctx) << '\n';
      return 2;
    default:
      std::cerr << "internal error: " << pch_last_error(ctx) << '\n';
      return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of BPU(p): slices, presentations and degreewise checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string cache_dir;
  std::string format = "table";
  unsigned workers = 1;
  std::optional<unsigned long long> seed;
  app.add_option("--cache-dir", cache_dir, "Directory for the on-disk slice cache");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv"}));
  app.add_option("--workers", workers, "Worker threads for degreewise work")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", seed, "Seed (recorded; the computations themselves are deterministic)");

  int p = 3, n = 3, deg = 0;
  std::optional<int> max_deg;
  std::string target, object, rule = "subring", poly;

  auto* kb = app.add_subcommand("k-basis", "Saturated Z-basis of K_n in one degree");
  kb->add_option("--n", n, "Number of variables")->required();
  kb->add_option("--deg", deg, "Cohomological degree")->required();

  auto* verify = app.add_subcommand("verify", "Degreewise verification; exit 1 on a failing degree");
  verify->add_option("target", target, "What to verify")
      ->required()
      ->check(CLI::IsMember({"main", "vistoli", "mui", "dickson", "theta-profile", "integral", "e4"}));
  verify->add_option("--p", p, "Odd prime");
  verify->add_option("--n", n, "Number of variables (e4)");
  verify->add_option("--max-deg", max_deg, "Largest degree (default 2p^2 - 2p + 4)");
  verify->add_option("--rule", rule, "Expected theta profile")->check(CLI::IsMember({"subring", "threshold"}));

  auto* hilbert = app.add_subcommand("hilbert", "Ranks, dimensions or group types degree by degree");
  hilbert->add_option("--object", object, "Graded object")
      ->required()
      ->check(CLI::IsMember({"K", "L", "R", "R0", "quotient-main", "quotient-vistoli"}));
  hilbert->add_option("--p", p, "Odd prime");
  hilbert->add_option("--n", n, "Number of variables (K)");
  hilbert->add_option("--max-deg", max_deg, "Largest degree (default 2p^2 - 2p + 4)");

  auto* theta = app.add_subcommand("theta", "Theta_p of a polynomial in s1..sp or t1..tp");
  theta->add_option("--p", p, "Odd prime");
  theta->add_option("--poly", poly, "Polynomial, e.g. \"-1*s1^2 + 3*s2\"")->required();

  int delta_p = 0;
  auto* delta = app.add_subcommand("delta", "The discriminant in s1..sn");
  delta->add_option("--n", n, "Number of variables")->required();
  delta->add_option("--p", delta_p, "Reduce mod this prime (0: over Z)");

  auto* gens = app.add_subcommand("k-generators", "Minimal generators of K_n by degree");
  gens->add_option("--n", n, "Number of variables")->required();
  gens->add_option("--max-deg", max_deg, "Largest degree")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Context c;
  if (!c.ctx) {
    std::cerr << "internal error: could not create a context\n";
    return 3;
  }
  if (seed) std::cerr << "seed: " << *seed << '\n';
  if (!cache_dir.empty() && pch_set_cache_dir(c.ctx, cache_dir.c_str()) != PCH_OK) return finish(c.ctx, PCH_INVALID_ARGUMENT, nullptr);
  if (pch_set_workers(c.ctx, workers) != PCH_OK) return finish(c.ctx, PCH_INVALID_ARGUMENT, nullptr);
  pch_set_format(c.ctx, format == "csv" ? PCH_FORMAT_CSV : PCH_FORMAT_TABLE);
  pch_set_profile_rule(c.ctx, rule == "threshold" ? PCH_PROFILE_THRESHOLD : PCH_PROFILE_GENERATED_SUBRING);
  const int top = max_deg.value_or(2 * p * p - 2 * p + 4);

  char* text = nullptr;
  pch_status status = PCH_OK;
  if (*kb) {
    status = pch_k_basis(c.ctx, n, deg, &text);
  } else if (*verify) {
    status = pch_verify(c.ctx, target.c_str(), p, n, top, &text);
  } else if (*hilbert) {
    status = pch_hilbert(c.ctx, object.c_str(), p, n, top, &text);
  } else if (*theta) {
    status = pch_theta(c.ctx, p, poly.c_str(), &text);
  } else if (*delta) {
    status = pch_delta(c.ctx, n, delta_p, &text);
  } else if (*gens) {
    status = pch_k_generators(c.ctx, n, top, &text);
  }
  return finish(c.ctx, status, text);
}
