#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wfp/config.hpp"

using namespace wfp;
constexpr double kPi = std::numbers::pi;

TEST_CASE("window width for eps 1e-12 and half the Nyquist band") {
  WfpConfig c = derive_params(1e-12, 0.5, 0.01, 6, Boundary::periodic);
  CHECK(c.W == 35);
  CHECK(c.b == doctest::Approx(27.6310).epsilon(1e-5));
  CHECK(c.b == std::log(1e12));
  CHECK(c.delta == doctest::Approx(35 * 0.01));
  CHECK(c.mMax == 35 + 3);
  CHECK(c.nL == c.W);
  CHECK(c.nF == 2 * c.K + 1);
  CHECK(c.dtProj == 52);
}

TEST_CASE("K is the ceiling of pi/dt") {
  CHECK(derive_params(1e-12, 0.5, kPi / 100, 2, Boundary::periodic).K == 100);
  CHECK(derive_params(1e-12, 0.5, 0.01, 2, Boundary::periodic).K == 315);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(derive_params(1e-12, 0.0, 0.01, 2, Boundary::periodic), ValidationError);
  CHECK_THROWS_AS(derive_params(1e-12, 1.0, 0.01, 2, Boundary::periodic), ValidationError);
  CHECK_THROWS_AS(derive_params(1e-12, 0.5, 0.01, 3, Boundary::periodic), ValidationError);
  CHECK_THROWS_AS(derive_params(2.0, 0.5, 0.01, 2, Boundary::periodic), ValidationError);
  CHECK_THROWS_AS(derive_params(1e-12, 0.5, 0.1, 2, Boundary::periodic), ValidationError);  // delta = 3.5 > pi
  CHECK_THROWS_AS(parse_boundary("dirichlet"), ValidationError);
}

TEST_CASE("suggest_dt") {
  CHECK(suggest_dt(100, 0.5) == doctest::Approx(kPi / 200));
  CHECK(suggest_dt(1, 0.5) == doctest::Approx(kPi / 2));
  // e^{-K0^2/(4 mu)} = eps
  double K0 = gaussian_bandlimit(30, 1e-12);
  CHECK(K0 == doctest::Approx(57.58).epsilon(1e-3));
  CHECK(std::exp(-K0 * K0 / 120) == doctest::Approx(1e-12).epsilon(1e-9));
}

TEST_CASE("geometry validation") {
  WfpConfig c = derive_params(1e-12, 0.5, 0.01, 2, Boundary::free_space);
  CHECK_FALSE(validate_geometry({kPi - c.delta}, c).ok);
  CHECK(validate_geometry({0.0}, c).ok);
  auto r = validate_geometry({0.0, 3.1, -0.5, -3.1}, c);
  CHECK(r.offending == std::vector<int>{1, 3});
  WfpConfig per = derive_params(1e-12, 0.5, 0.01, 2, Boundary::periodic);
  CHECK(validate_geometry({kPi}, per).ok);
}

TEST_CASE("re-deriving from own outputs is idempotent") {
  WfpConfig a = derive_params(1e-10, 0.4, 0.013, 4, Boundary::free_space);
  WfpConfig b = derive_params(a.eps, a.gamma, a.dt, a.p, a.bc);
  CHECK(a.W == b.W);
  CHECK(a.K == b.K);
  CHECK(a.delta == b.delta);
  CHECK(a.mMax == b.mMax);
  CHECK(a.dtProj == b.dtProj);
}

TEST_CASE("bandlimit budget and projection period hold over a parameter sweep") {
  for (double eps : {1e-14, 1e-12, 1e-8, 1e-4})
    for (double gamma : {0.25, 0.5, 0.75})
      for (double dt : {0.001, 0.003, 0.01}) {
        WfpConfig c;
        try {
          c = derive_params(eps, gamma, dt, 6, Boundary::periodic);
        } catch (const ValidationError&) {
          continue;  // delta >= pi
        }
        CHECK(2 * c.b / (c.W * dt) <= gamma * (kPi / dt) * (1 + 1.0 / c.W));
        CHECK(c.dtProj >= c.W);
        CHECK(c.dtProj <= 2 * c.W);
        CHECK(c.delta < kPi);
      }
}
