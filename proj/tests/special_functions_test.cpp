#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "oracle_helpers.hpp"
#include "sfcdf/special_functions.hpp"

using namespace sfcdf;
namespace ts = testing_support;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("std_normal_pdf") {
  CHECK(std_normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
  CHECK(std_normal_pdf(1.0) == std_normal_pdf(-1.0));
  // reference: 60-digit evaluation of exp(-x^2/2)/sqrt(2 pi)
  CHECK(std_normal_pdf(3.0) == doctest::Approx(0.004431848411938007175602).epsilon(1e-15));
  CHECK(std_normal_pdf(kInf) == 0.0);
  CHECK(std_normal_pdf(-kInf) == 0.0);
  CHECK(std_normal_pdf(40.0) == 0.0); // underflows
}

TEST_CASE("std_normal_cdf basics and limits") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std_normal_cdf(-kInf) == 0.0);
  CHECK(std_normal_cdf(kInf) == 1.0);
  // reference: inverted high-precision erf
  CHECK(std::fabs(std_normal_cdf(1.959963985) - 0.975) < 1e-9);
  CHECK(std_normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-15));
}

TEST_CASE("std_normal_cdf complement identity within one ulp") {
  ts::ParamRng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double x = rng.uniform(-38.0, 38.0);
    const double sum = std_normal_cdf(x) + std_normal_cdf(-x);
    CAPTURE(x);
    CHECK(std::fabs(sum - 1.0) <= std::numeric_limits<double>::epsilon());
  }
}

TEST_CASE("std_normal_cdf is monotone") {
  double prev = 0.0;
  for (double x = -40.0; x <= 40.0; x += 0.125) {
    const double v = std_normal_cdf(x);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("log_std_normal_cdf") {
  CHECK(log_std_normal_cdf(0.0) == doctest::Approx(-0.6931471805599453).epsilon(1e-15));
  const double near_one = log_std_normal_cdf(8.0);
  CHECK(near_one < 0.0);
  CHECK(near_one > -1e-15);
  // reference: 60-digit tail quadrature
  CHECK(log_std_normal_cdf(-20.0) ==
        doctest::Approx(-203.9171553710972639368).epsilon(1e-14));
  CHECK(log_std_normal_cdf(-38.0) ==
        doctest::Approx(-726.5572160188201300965).epsilon(1e-14));
  CHECK(log_std_normal_cdf(-5.0) ==
        doctest::Approx(-15.06499839398872573608).epsilon(1e-14));
  CHECK(log_std_normal_cdf(-kInf) == -kInf);
  CHECK(log_std_normal_cdf(kInf) == 0.0);

  SUBCASE("no underflow far below the erfc range") {
    const double v = log_std_normal_cdf(-400.0);
    CHECK(std::isfinite(v));
    CHECK(v < -79000.0);
  }
  SUBCASE("continuity across the asymptotic switch at -10") {
    const double left = log_std_normal_cdf(-10.0000001);
    const double right = log_std_normal_cdf(-9.9999999);
    CHECK(std::fabs(left - right) < 1e-5);
    CHECK(left < right);
  }
  SUBCASE("matches log(cdf) where the direct form is safe") {
    for (double x = -9.5; x <= 5.0; x += 0.25) {
      CHECK(log_std_normal_cdf(x) ==
            doctest::Approx(std::log(std_normal_cdf(x))).epsilon(1e-13));
    }
  }
}

TEST_CASE("owen_t special values") {
  CHECK(owen_t(0.0, 1.0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(owen_t(0.0, -1.0) == doctest::Approx(-0.125).epsilon(1e-15));
  for (double h : {-7.0, -1.0, 0.0, 0.5, 3.0, kInf}) CHECK(owen_t(h, 0.0) == 0.0);
  CHECK(owen_t(kInf, 0.7) == 0.0);
  CHECK(owen_t(-kInf, -3.0) == 0.0);
  // reference: (1 - Phi(2))/2 at 60 digits
  CHECK(owen_t(2.0, kInf) ==
        doctest::Approx(0.01137506597408960360014).epsilon(1e-12));
  CHECK(owen_t(1.0, -1.0) == -owen_t(1.0, 1.0));
}

TEST_CASE("owen_t frozen references") {
  // 60-80 digit quadrature of the defining integral
  CHECK(owen_t(0.5, 2.0) == doctest::Approx(0.1415806036539783934666).epsilon(1e-14));
  CHECK(owen_t(3.0, 0.7) == doctest::Approx(0.000659107520102909814162).epsilon(1e-14));
  CHECK(owen_t(0.125, 0.3) == doctest::Approx(0.04601526694096544583159).epsilon(1e-14));
  CHECK(owen_t(6.0, 0.999) == doctest::Approx(4.932938220133676902989e-10).epsilon(1e-13));
  SUBCASE("deep tail keeps relative accuracy") {
    CHECK(owen_t(20.0, 0.5) ==
          doctest::Approx(1.3768120593031168475e-89).epsilon(1e-12));
    CHECK(owen_t(32.0, 0.7) ==
          doctest::Approx(2.726040301756198046e-225).epsilon(1e-12));
    CHECK(owen_t(32.0, 1.0) ==
          doctest::Approx(2.726040301756198045981e-225).epsilon(1e-12));
  }
}

TEST_CASE("owen_t symmetry identities hold exactly") {
  ts::ParamRng rng(23);
  for (int i = 0; i < 1000; ++i) {
    const double h = rng.uniform(-50.0, 50.0);
    const double g = rng.uniform(-50.0, 50.0);
    CAPTURE(h);
    CAPTURE(g);
    CHECK(owen_t(-h, g) == owen_t(h, g));
    CHECK(owen_t(h, -g) == -owen_t(h, g));
  }
}

TEST_CASE("owen_t large-g limit") {
  ts::ParamRng rng(29);
  for (int i = 0; i < 200; ++i) {
    const double h = rng.uniform(-8.0, 8.0);
    const double limit = 0.5 * (1.0 - std_normal_cdf(std::fabs(h)));
    CAPTURE(h);
    CHECK(std::fabs(owen_t(h, kInf) - limit) <= 1e-14);
    CHECK(std::fabs(owen_t(h, 1e9) - limit) <= 1e-14);
  }
}

TEST_CASE("owen_t inversion identity") {
  // T(h,g) = 1/2 Phi(h) + 1/2 Phi(gh) - Phi(h) Phi(gh) - T(gh, 1/g) - 1/2 [g < 0]
  ts::ParamRng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const double h = rng.uniform(-4.0, 4.0);
    double g = rng.uniform(-5.0, 5.0);
    if (std::fabs(g) < 1e-3) g = 1e-3;
    const double lhs = owen_t(h, g);
    const double rhs = 0.5 * std_normal_cdf(h) + 0.5 * std_normal_cdf(g * h) -
                       std_normal_cdf(h) * std_normal_cdf(g * h) - owen_t(g * h, 1.0 / g) -
                       (g < 0.0 ? 0.5 : 0.0);
    CAPTURE(h);
    CAPTURE(g);
    CHECK(std::fabs(lhs - rhs) <= 1e-13);
  }
}

TEST_CASE("owen_t agrees with direct quadrature of the defining integral") {
  ts::ParamRng rng(37);
  for (int i = 0; i < 200; ++i) {
    const double h = rng.uniform(-6.0, 6.0);
    const double g = rng.uniform(-8.0, 8.0);
    CAPTURE(h);
    CAPTURE(g);
    CHECK(std::fabs(owen_t(h, g) - ts::owen_t_by_quadrature(h, g)) <= 1e-13);
  }
}

TEST_CASE("bvn_cdf special values and limits") {
  CHECK(bvn_cdf(0.0, 0.0, 0.0) == doctest::Approx(0.25).epsilon(1e-15));
  // reference: 1/4 + asin(1/2)/(2 pi) = 1/3 exactly
  CHECK(bvn_cdf(0.0, 0.0, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  for (double k : {-2.0, 0.3, 5.0}) {
    for (double rho : {-0.8, 0.0, 0.6}) {
      CHECK(bvn_cdf(kInf, k, rho) == std_normal_cdf(k));
      CHECK(bvn_cdf(k, kInf, rho) == std_normal_cdf(k));
      CHECK(bvn_cdf(-kInf, k, rho) == 0.0);
      CHECK(bvn_cdf(k, -kInf, rho) == 0.0);
    }
  }
  SUBCASE("degenerate correlations") {
    CHECK(bvn_cdf(0.3, -1.0, 1.0) == std_normal_cdf(-1.0));
    CHECK(bvn_cdf(0.3, -0.2, -1.0) ==
          doctest::Approx(std_normal_cdf(0.3) + std_normal_cdf(-0.2) - 1.0).epsilon(1e-14));
    CHECK(bvn_cdf(-1.0, 0.5, -1.0) == 0.0);
  }
  SUBCASE("rejects correlations outside [-1, 1]") {
    CHECK_THROWS_AS(bvn_cdf(0.0, 0.0, 1.0000001), std::domain_error);
    CHECK_THROWS_AS(bvn_cdf(0.0, 0.0, -1.5), std::domain_error);
    CHECK_THROWS_AS(bvn_cdf(0.0, 0.0, std::numeric_limits<double>::quiet_NaN()),
                    std::domain_error);
  }
}

TEST_CASE("bvn_cdf frozen references") {
  // 50-digit quadrature of the defining double integral
  struct Case {
    double h, k, rho, want;
  };
  static constexpr Case cases[] = {
      {0.5, 0.3, 0.6, 0.516319322441456089},
      {-1, -1, 0.9, 0.115490337428358302},
      {2, 1, -0.95, 0.818594614120363741},
      {-1, 2, -0.5, 0.145389036920940316},
      {1.2, -0.4, 0.35, 0.327543049638260979},
      {-2.5, 0.7, 0.8, 0.00620965875440075529},
      {0.3, 0.3, -0.999, 0.235822844377905266},
      {3, 3, 0.99, 0.998401723935360433},
      {-0.5, -0.5, 0.95, 0.263982272818763404},
      {-3, 2, 0.97, 0.00134989803163009453},
      {1, -1, -0.7, 0.0746758723058086302},
      {0.01, -0.02, 0.93, 0.437915065096871302},
      {-8, -8, 0.5, 1.78866054859018517e-21},
      {-8, -5, -0.6, 2.44777542183048517e-50},
      {-10, -7, 0.70710678118654757, 4.406125533987216e-24},
      {-6, 4, 0.2, 9.86587598463021893e-10},
      {-2, -2, 0.999, 0.0217871069406350899},
      {4, -4, -0.3, 3.16035058271666483e-5},
      {0.7, 0.7, 0.7, 0.660301621358311179},
      {-1.5, 2.5, 0.926, 0.066807201268858066},
      {-1.5, 2.5, -0.926, 0.0606265641740692247},
      {2.2, -3.1, 0.924, 0.000967603213218356602},
  };
  for (const auto& c : cases) {
    CAPTURE(c.h);
    CAPTURE(c.k);
    CAPTURE(c.rho);
    const double got = bvn_cdf(c.h, c.k, c.rho);
    CHECK(std::fabs(got - c.want) <= 5e-15);
    CHECK(got == doctest::Approx(c.want).epsilon(2e-13)); // relative, deep cases included
  }
}

TEST_CASE("bvn_cdf deep-tail conditional ratios keep relative accuracy") {
  struct Case {
    double h, k, rho, ratio;
  };
  static constexpr Case cases[] = {
      {-12, -8, 0.70710678118654757, 0.77813241949212944},
      {-32, -22.63, 0.70710678118654757, 0.510974710572853454},
      {-16, -11.5, 0.6, 0.0100136008005322531},
      {-9, -2, 0.3, 0.778603957252433886},
      {-20, -19, 0.9, 0.0146802883570728335},
      {-8.5, 3, -0.4, 0.313544064406674902},
      {-10, -3.5, -0.25, 2.48075114883777313e-10},
      {-32, -31, 0.99, 0.999999661999374235},
      {-12, -14, 0.5, 2.24073534344122735e-20},
      {-8, -5.6568542494923806, 0.70710678118654757, 0.547760277196333647},
  };
  for (const auto& c : cases) {
    CAPTURE(c.h);
    CAPTURE(c.k);
    CAPTURE(c.rho);
    const double got = bvn_cdf(c.h, c.k, c.rho) / std_normal_cdf(c.h);
    CHECK(got == doctest::Approx(c.ratio).epsilon(5e-12));
  }
}

TEST_CASE("bvn_cdf symmetry and monotonicity") {
  ts::ParamRng rng(41);
  for (int i = 0; i < 500; ++i) {
    const double h = rng.uniform(-10.0, 4.0);
    const double k = rng.uniform(-10.0, 4.0);
    const double rho = rng.uniform(-0.999, 0.999);
    CAPTURE(h);
    CAPTURE(k);
    CAPTURE(rho);
    const double v = bvn_cdf(h, k, rho);
    CHECK(std::fabs(v - bvn_cdf(k, h, rho)) <= 2e-15 * std::max(1.0, v));
    CHECK(bvn_cdf(h + 0.25, k, rho) >= v - 1e-15);
    CHECK(bvn_cdf(h, k + 0.25, rho) >= v - 1e-15);
  }
}

TEST_CASE("bvn_cdf at zero correlation factorizes") {
  ts::ParamRng rng(43);
  for (int i = 0; i < 300; ++i) {
    const double h = rng.uniform(-8.0, 8.0);
    const double k = rng.uniform(-8.0, 8.0);
    const double want = std_normal_cdf(h) * std_normal_cdf(k);
    CHECK(std::fabs(bvn_cdf(h, k, 0.0) - want) <= 1e-14);
  }
}

TEST_CASE("bvn_cdf matches the 2-d quadrature oracle") {
  struct Point {
    double h, k, rho;
  };
  static constexpr Point points[] = {
      {0.0, 0.0, 0.5},  {0.5, 0.3, 0.6},   {-1.0, 2.0, -0.5}, {-2.0, -1.0, 0.8},
      {1.0, 1.0, -0.9}, {-0.3, 0.4, 0.95}, {2.5, -1.5, 0.3},  {0.0, -2.0, -0.97},
  };
  for (const auto& p : points) {
    CAPTURE(p.h);
    CAPTURE(p.k);
    CAPTURE(p.rho);
    CHECK(std::fabs(bvn_cdf(p.h, p.k, p.rho) - ts::bvn_by_2d_quadrature(p.h, p.k, p.rho)) <=
          5e-15);
  }
}

TEST_CASE("bvn_cdf reproduces the phi*Phi integral transform") {
  // BvN(a/sqrt(1+b^2), y, -b/sqrt(1+b^2)) == int_{-inf}^{y} phi(t) Phi(a+bt) dt
  ts::ParamRng rng(47);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform(-5.0, 5.0);
    double b = rng.uniform(-6.0, 6.0);
    if (std::fabs(b) < 1e-3) b = 1e-3;
    const double y = rng.uniform(-6.0, 6.0);
    const double root = std::sqrt(1.0 + b * b);
    const double got = bvn_cdf(a / root, y, -b / root);
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(y);
    CHECK(std::fabs(got - ts::phi_phi_integral(a, b, y)) <= 1e-12);
  }
}
