#include "pucohom/pucohom.h"

#include "pucohom/checks.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>

using namespace pucohom;

struct pch_context {
  std::string cache_dir;
  unsigned workers = 1;
  pch_format format = PCH_FORMAT_TABLE;
  ProfileRule rule = ProfileRule::GeneratedSubring;
  std::unique_ptr<Engine> engine;
  std::string error;

  Engine& get_engine() {
    if (!engine) engine = std::make_unique<Engine>(EngineOptions{cache_dir, workers});
    return *engine;
  }
};

namespace {

class InvalidArgument : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

void require_p(int p) {
  if (p < 3 || p > 7 || !is_prime(p)) throw InvalidArgument("p must be an odd prime at most 7, got " + std::to_string(p));
}

void require_n(int n) {
  if (n < 1 || n > 11) throw InvalidArgument("n must be between 1 and 11, got " + std::to_string(n));
}

void require_max_degree(int d) {
  if (d < 2 || d > 400) throw InvalidArgument("max degree must be between 2 and 400, got " + std::to_string(d));
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn, mapping exceptions onto status codes and recording the message.
template <class Fn>
pch_status guarded(pch_context* ctx, char** out, Fn&& fn) {
  if (!ctx) return PCH_INVALID_ARGUMENT;
  ctx->error.clear();
  if (out) *out = nullptr;
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    ctx->error = e.what();
    return PCH_INVALID_ARGUMENT;
  } catch (const ParseError& e) {
    ctx->error = e.what();
    return PCH_INVALID_ARGUMENT;
  } catch (const TheoremViolation& e) {
    ctx->error = e.what();
    return PCH_FALSIFIED;
  } catch (const std::exception& e) {
    ctx->error = e.what();
    return PCH_COMPUTE_ERROR;
  } catch (...) {
    ctx->error = "unknown error";
    return PCH_COMPUTE_ERROR;
  }
}

}  // namespace

extern "C" {

pch_status pch_context_new(pch_context** out) {
  if (!out) return PCH_INVALID_ARGUMENT;
  *out = new (std::nothrow) pch_context();
  return *out ? PCH_OK : PCH_COMPUTE_ERROR;
}

void pch_context_free(pch_context* ctx) { delete ctx; }

pch_status pch_set_cache_dir(pch_context* ctx, const char* dir) {
  return guarded(ctx, nullptr, [&] {
    ctx->cache_dir = dir ? dir : "";
    ctx->engine.reset();
    return PCH_OK;
  });
}

pch_status pch_set_workers(pch_context* ctx, unsigned workers) {
  return guarded(ctx, nullptr, [&] {
    if (workers == 0 || workers > 256) throw InvalidArgument("workers must be between 1 and 256");
    ctx->workers = workers;
    ctx->engine.reset();
    return PCH_OK;
  });
}

pch_status pch_set_format(pch_context* ctx, pch_format format) {
  return guarded(ctx, nullptr, [&] {
    if (format != PCH_FORMAT_TABLE && format != PCH_FORMAT_CSV) throw InvalidArgument("unknown format");
    ctx->format = format;
    return PCH_OK;
  });
}

pch_status pch_set_profile_rule(pch_context* ctx, pch_profile_rule rule) {
  return guarded(ctx, nullptr, [&] {
    if (rule == PCH_PROFILE_GENERATED_SUBRING)
      ctx->rule = ProfileRule::GeneratedSubring;
    else if (rule == PCH_PROFILE_THRESHOLD)
      ctx->rule = ProfileRule::Threshold;
    else
      throw InvalidArgument("unknown profile rule");
    return PCH_OK;
  });
}

const char* pch_last_error(const pch_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }

void pch_string_free(char* s) { std::free(s); }

pch_status pch_k_basis(pch_context* ctx, int n, int degree, char** out) {
  return guarded(ctx, out, [&] {
    require_n(n);
    if (degree < 0) throw InvalidArgument("degree must be nonnegative");
    KSlice k = k_basis(n, degree, ctx->get_engine());
    std::string text;
    for (const auto& f : k.basis) text += serialize(f) + "\n";
    if (text.empty()) text = "(empty)\n";
    *out = dup(text);
    return PCH_OK;
  });
}

pch_status pch_verify(pch_context* ctx, const char* target, int p, int n, int max_degree, char** out) {
  return guarded(ctx, out, [&] {
    auto t = parse_verify_target(target ? target : "");
    if (!t) throw InvalidArgument(std::string("unknown verify target '") + (target ? target : "") + "'");
    if (*t == VerifyTarget::E4)
      require_n(n);
    else
      require_p(p);
    require_max_degree(max_degree);
    VerifyOptions options{p, n, max_degree, ctx->rule};
    VerifyReport report = run_verify(*t, options, ctx->get_engine());
    *out = dup(ctx->format == PCH_FORMAT_CSV ? render_csv(report) : render_table(report));
    return report.ok() ? PCH_OK : PCH_FALSIFIED;
  });
}

pch_status pch_hilbert(pch_context* ctx, const char* object, int p, int n, int max_degree, char** out) {
  return guarded(ctx, out, [&] {
    auto o = parse_hilbert_object(object ? object : "");
    if (!o) throw InvalidArgument(std::string("unknown object '") + (object ? object : "") + "'");
    if (*o == HilbertObject::K)
      require_n(n);
    else
      require_p(p);
    if (max_degree < 0 || max_degree > 400) throw InvalidArgument("max degree must be between 0 and 400");
    auto rows = hilbert_rows(*o, p, n, max_degree, ctx->get_engine());
    *out = dup(ctx->format == PCH_FORMAT_CSV ? render_hilbert_csv(rows) : render_hilbert_table(*o, rows));
    return PCH_OK;
  });
}

pch_status pch_theta(pch_context* ctx, int p, const char* polynomial, char** out) {
  return guarded(ctx, out, [&] {
    require_p(p);
    if (!polynomial) throw InvalidArgument("missing polynomial");
    auto sc = SigmaContext::get(p);
    // Pick the alphabet from the first generator name that appears.
    std::string text = polynomial;
    const TablePtr& table = text.find('t') != std::string::npos ? sc->t_table() : sc->sigma_table();
    Polynomial f = parse(text, table, Ring::integers());
    if (!f.is_zero() && !f.is_homogeneous()) throw InvalidArgument("polynomial is not homogeneous");
    *out = dup(theta_eval(p, f, f.is_zero() ? std::optional<int>(0) : std::nullopt).to_string() + "\n");
    return PCH_OK;
  });
}

pch_status pch_delta(pch_context* ctx, int n, int p, char** out) {
  return guarded(ctx, out, [&] {
    require_n(n);
    if (p != 0 && !is_prime(p)) throw InvalidArgument("p must be 0 or a prime");
    Polynomial d = SigmaContext::get(n)->delta_polynomial();
    if (p != 0) d = d.in_ring(Ring::modp(p));
    *out = dup(serialize(d) + "\n");
    return PCH_OK;
  });
}

pch_status pch_k_generators(pch_context* ctx, int n, int max_degree, char** out) {
  return guarded(ctx, out, [&] {
    require_n(n);
    require_max_degree(max_degree);
    std::ostringstream text;
    for (const auto& g : k_generators(n, max_degree, ctx->get_engine())) {
      text << g.degree << ": " << g.quotient.to_string() << ":";
      for (std::size_t i = 0; i < g.representatives.size(); ++i)
        text << (i ? "; " : " ") << serialize(g.representatives[i]);
      text << '\n';
    }
    *out = dup(text.str());
    return PCH_OK;
  });
}

}  // extern "C"
