#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pucohom/pucohom.h"

#include <string>

namespace {

struct Ctx {
  pch_context* c = nullptr;
  Ctx() { REQUIRE(pch_context_new(&c) == PCH_OK); }
  ~Ctx() { pch_context_free(c); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  pch_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("k_basis through the C API") {
  Ctx ctx;
  char* out = nullptr;
  REQUIRE(pch_k_basis(ctx.c, 3, 4, &out) == PCH_OK);
  CHECK(take(out) == "-1*s1^2 + 3*s2\n");
  REQUIRE(pch_k_basis(ctx.c, 3, 2, &out) == PCH_OK);
  CHECK(take(out) == "(empty)\n");
  REQUIRE(pch_k_basis(ctx.c, 3, 0, &out) == PCH_OK);
  CHECK(take(out) == "1\n");
}

TEST_CASE("invalid arguments set the error and leave out null") {
  Ctx ctx;
  char* out = reinterpret_cast<char*>(1);
  CHECK(pch_k_basis(ctx.c, 0, 4, &out) == PCH_INVALID_ARGUMENT);
  CHECK(out == nullptr);
  CHECK(std::string(pch_last_error(ctx.c)).find("n must be") != std::string::npos);
  CHECK(pch_verify(ctx.c, "main", 9, 3, 10, &out) == PCH_INVALID_ARGUMENT);
  CHECK(pch_verify(ctx.c, "nonsense", 3, 3, 10, &out) == PCH_INVALID_ARGUMENT);
  CHECK(pch_hilbert(ctx.c, "Q", 3, 3, 10, &out) == PCH_INVALID_ARGUMENT);
  CHECK(pch_theta(ctx.c, 3, "1*s1 + 2*q7", &out) == PCH_INVALID_ARGUMENT);
  CHECK(std::string(pch_last_error(ctx.c)).find("position 9") != std::string::npos);
  CHECK(pch_set_workers(ctx.c, 0) == PCH_INVALID_ARGUMENT);
  CHECK(pch_k_basis(nullptr, 3, 4, &out) == PCH_INVALID_ARGUMENT);
  // A successful call clears the error.
  REQUIRE(pch_k_basis(ctx.c, 3, 4, &out) == PCH_OK);
  take(out);
  CHECK(std::string(pch_last_error(ctx.c)).empty());
}

TEST_CASE("theta and delta") {
  Ctx ctx;
  char* out = nullptr;
  REQUIRE(pch_delta(ctx.c, 3, 3, &out) == PCH_OK);
  CHECK(take(out) == "1*s1^3*s3 + 2*s1^2*s2^2 + 1*s2^3\n");
  REQUIRE(pch_delta(ctx.c, 2, 0, &out) == PCH_OK);
  CHECK(take(out) == "-1*s1^2 + 4*s2\n");
  REQUIRE(pch_theta(ctx.c, 3, "-1*s1^2 + 3*s2", &out) == PCH_OK);
  CHECK(take(out) == "0\n");
  REQUIRE(pch_theta(ctx.c, 5, "1*t1", &out) == PCH_OK);
  CHECK(take(out) == "1*eta\n");
}

TEST_CASE("verify returns FALSIFIED with the report for a failing rule") {
  Ctx ctx;
  char* out = nullptr;
  REQUIRE(pch_set_format(ctx.c, PCH_FORMAT_CSV) == PCH_OK);
  CHECK(pch_verify(ctx.c, "theta-profile", 3, 0, 16, &out) == PCH_OK);
  take(out);
  REQUIRE(pch_set_profile_rule(ctx.c, PCH_PROFILE_THRESHOLD) == PCH_OK);
  CHECK(pch_verify(ctx.c, "theta-profile", 3, 0, 16, &out) == PCH_FALSIFIED);
  std::string csv = take(out);
  CHECK(csv.find("14,0,full,FAIL\n") != std::string::npos);
}

TEST_CASE("hilbert and k_generators") {
  Ctx ctx;
  char* out = nullptr;
  REQUIRE(pch_hilbert(ctx.c, "quotient-vistoli", 3, 0, 4, &out) == PCH_OK);
  CHECK(take(out) == "0: Z\n3: Z/3\n4: Z\n");
  REQUIRE(pch_hilbert(ctx.c, "K", 0, 2, 8, &out) == PCH_OK);
  CHECK(take(out) == "0: 1\n2: 0\n4: 1\n6: 0\n8: 1\n");
  REQUIRE(pch_k_generators(ctx.c, 2, 8, &out) == PCH_OK);
  CHECK(take(out) == "4: Z: -1*s1^2 + 4*s2\n");
}
