#include <catch2/catch_amalgamated.hpp>

#include "ptrop/semiflat.hpp"

#include <sstream>

using namespace ptrop;

namespace {

Potential quadratic2(size_t grid = 16) {
  return make_potential(2, {{-1, 1}, {-1, 1}}, grid,
                        parse_expr("(* 0.5 (+ (pow y0 2) (pow y1 2)))"));
}

Potential exp2d(size_t grid = 64) {
  return make_potential(2, {{0, 1}, {0, 1}}, grid, parse_expr("(+ (exp y0) (exp y1))"));
}

}  // namespace

TEST_CASE("expression parsing and evaluation") {
  auto e = parse_expr("(+ (* 2 y0) (exp y1) (- 1))");
  REQUIRE(e->eval({3, 0}) == Catch::Approx(6 + 1 - 1));
  REQUIRE_THROWS(parse_expr("(bogus y0)"));
  REQUIRE_THROWS(parse_expr("(+ y0"));

  std::istringstream in("dim=2 box=0..1,0..1 grid=8\n(+ (exp y0) (exp y1))\n");
  auto p = read_potential_text(in);
  REQUIRE(p.dim == 2);
  REQUIRE(p.grid == 8);
  REQUIRE(p.f({0, 0}) == Catch::Approx(2.0));
}

TEST_CASE("finite-difference stencils converge at order h^2") {
  auto p = exp2d();
  DVec y = {0.3, 0.6};
  double exact_g = std::exp(0.3);
  double e1 = std::fabs(fd_gradient(p, y, 0.1)[0] - exact_g);
  double e2 = std::fabs(fd_gradient(p, y, 0.05)[0] - exact_g);
  REQUIRE(e1 / e2 == Catch::Approx(4.0).margin(0.5));

  double exact_h = std::exp(0.6);
  double h1 = std::fabs(fd_hessian(p, y, 0.1)[1][1] - exact_h);
  double h2 = std::fabs(fd_hessian(p, y, 0.05)[1][1] - exact_h);
  REQUIRE(h1 / h2 == Catch::Approx(4.0).margin(0.5));
}

TEST_CASE("convexity validation") {
  REQUIRE(validate_convexity(quadratic2()));
  auto bad = make_potential(1, {{-1, 1}}, 8, parse_expr("(- (pow y0 2))"));
  REQUIRE_FALSE(validate_convexity(bad));
}

TEST_CASE("gradient inversion solves the quadratic case exactly") {
  auto p = quadratic2();
  DVec y = invert_gradient(p, {0.25, -0.5});
  REQUIRE(y[0] == Catch::Approx(0.25).margin(1e-9));
  REQUIRE(y[1] == Catch::Approx(-0.5).margin(1e-9));
}

TEST_CASE("newton divergence reports the query point") {
  // exp has gradient image (0, inf); a negative target is unreachable
  auto p = make_potential(1, {{0, 1}}, 8, parse_expr("(exp y0)"));
  REQUIRE_THROWS_WITH(invert_gradient(p, {-1.0}),
                      Catch::Matchers::ContainsSubstring("-1"));
}

TEST_CASE("legendre transform of the quadratic is self-dual") {
  auto p = quadratic2();
  auto q = legendre_transform(p);
  for (double t : {-0.4, 0.0, 0.3}) {
    DVec y = {t, -t};
    REQUIRE(q.f(y) == Catch::Approx(0.5 * (t * t + t * t)).margin(1e-9));
  }
}

TEST_CASE("legendre transform of sum of exponentials has the closed form") {
  auto p = exp2d(16);
  auto q = legendre_transform(p);
  // K* = sum yi log yi - yi on the gradient image (1..e per axis)
  for (double a : {1.2, 1.9, 2.5}) {
    DVec yv = {a, 1.1};
    double expect = a * std::log(a) - a + 1.1 * std::log(1.1) - 1.1;
    REQUIRE(q.f(yv) == Catch::Approx(expect).margin(1e-8));
  }
}

TEST_CASE("double transform returns the original potential") {
  auto p = exp2d(8);
  REQUIRE(legendre_involution_error(p) < 1e-6);
}

TEST_CASE("monge-ampere residuals") {
  REQUIRE(monge_ampere_residual(quadratic2()) < 1e-8);

  auto quart = make_potential(1, {{1, 2}}, 16, parse_expr("(pow y0 4)"));
  REQUIRE(monge_ampere_residual(quart) > 0.1);

  auto bent = make_potential(
      2, {{-0.1, 0.1}, {-0.1, 0.1}}, 8,
      parse_expr("(+ (* 0.5 (pow y0 2)) (* 0.5 (pow y1 2)) (* 0.1 (pow y0 3)))"));
  double r = monge_ampere_residual(bent);
  REQUIRE(r > 0);
  REQUIRE(r < 0.1);
}

TEST_CASE("hessian duality for quadratic and diagonal potentials") {
  auto rep = hessian_duality_check(quadratic2());
  REQUIRE(rep.hessian_deviation < 1e-6);
  REQUIRE(rep.gradient_deviation < 1e-9);

  // K = y0^2/2 + y1^2: inverse hessian diag(1, 1/2)
  auto p = make_potential(2, {{-1, 1}, {-1, 1}}, 16,
                          parse_expr("(+ (* 0.5 (pow y0 2)) (pow y1 2))"));
  auto rep2 = hessian_duality_check(p);
  REQUIRE(rep2.hessian_deviation < 1e-6);
  REQUIRE(rep2.gradient_deviation < 1e-8);
}

TEST_CASE("hessian duality for the exponential potential at grid 64") {
  auto rep = hessian_duality_check(exp2d(64));
  REQUIRE(rep.hessian_deviation < 1e-5);
  REQUIRE(rep.gradient_deviation < 1e-6);
}
