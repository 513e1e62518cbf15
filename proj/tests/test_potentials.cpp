#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "morsept/error.hpp"
#include "morsept/potentials.hpp"

using namespace morsept;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sech2(double x) { return 1.0 / (std::cosh(x) * std::cosh(x)); }

// Closed form of int_0^rho exp[-(2l-1)r - 2l e^{-r}] dr through u = 2l e^{-r}.
double morse_mass_closed(double l, double rho) {
  const double s = 2 * l - 1;
  return std::pow(2 * l, 1 - 2 * l) *
         (lower_incomplete_gamma(s, 2 * l) - lower_incomplete_gamma(s, 2 * l * std::exp(-rho)));
}

double central_difference(const RealFunction& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

}  // namespace

TEST_SUITE("parameters") {
  TEST_CASE("validation") {
    CHECK_THROWS_AS(MorseParams(0.5, 1.0), DomainError);
    CHECK_THROWS_AS(MorseParams(0.2, 1.0), DomainError);
    CHECK_THROWS_AS(MorseParams(kInf, 1.0), DomainError);
    CHECK_THROWS_AS(MorseParams(4.5, 0.0), DomainError);
    CHECK_THROWS_AS(MorseParams(4.5, -1.0), DomainError);
    CHECK_THROWS_AS(MorseParams(4.5, std::nan("")), DomainError);
    CHECK_THROWS_AS(PTParams(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(PTParams(4.0, 0.0), DomainError);
    CHECK(MorseParams(4.5, 1.0).a() == 4.0);
    CHECK_NOTHROW(MorseParams(4.5, kInf));
  }
}

TEST_SUITE("morse") {
  TEST_CASE("shifted and partner") {
    CHECK(morse_shifted(MorseParams(4.5, 1), 0.0) == doctest::Approx(-4.25).epsilon(1e-15));
    CHECK(morse_shifted(MorseParams(4.5, 1), 60.0) == doctest::Approx(16.0).epsilon(1e-15));
    CHECK(morse_shifted(MorseParams(1, 1), std::log(2.0)) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(morse_partner(MorseParams(4.5, 1), 0.0) == doctest::Approx(4.75).epsilon(1e-15));
    CHECK(morse_partner(MorseParams(4.5, 1), 60.0) == doctest::Approx(16.0).epsilon(1e-15));
    CHECK(morse_partner(MorseParams(1, 1), std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("base potentials come from the superpotential") {
    const MorseParams p(3.7, 1.0);
    for (double rho = -2.0; rho <= 8.0; rho += 0.37) {
      const double w = morse_w_prime(p, rho);
      CHECK(w == doctest::Approx(3.7 * (1 - std::exp(-rho)) - 0.5).epsilon(1e-14));
      CHECK(morse_shifted(p, rho) == doctest::Approx(w * w - morse_w_second(p, rho)).epsilon(1e-12));
      CHECK(morse_partner(p, rho) == doctest::Approx(w * w + morse_w_second(p, rho)).epsilon(1e-12));
      CHECK(morse_w_second(p, rho) == doctest::Approx(central_difference(
                                          [&p](double x) { return morse_w_prime(p, x); }, rho))
                                          .epsilon(1e-8));
    }
  }

  TEST_CASE("q at the origin") {
    for (double l : {1.0, 4.5})
      for (double g : {0.5, 2.0})
        CHECK(q_morse(MorseParams(l, g), 0.0) == doctest::Approx(std::exp(-2 * l) / g).epsilon(1e-14));
  }

  TEST_CASE("q against the incomplete-gamma denominator") {
    const double expected = std::exp(-1.0 - 2.0 * std::exp(-1.0)) / (1.0 + morse_mass_closed(1.0, 1.0));
    CHECK(std::abs(q_morse(MorseParams(1, 1), 1.0) - expected) < 1e-10);
    for (double rho : {-1.5, -0.3, 0.7, 4.0, 12.0}) {
      const double l = 4.5;
      const double n = std::exp(-(2 * l - 1) * rho - 2 * l * std::exp(-rho));
      CHECK(q_morse(MorseParams(l, 0.7), rho) ==
            doctest::Approx(n / (0.7 + morse_mass_closed(l, rho))).epsilon(1e-11));
    }
  }

  TEST_CASE("large gamma removes the deformation") {
    CHECK(q_morse(MorseParams(4.5, 1e12), 0.3) < 1e-15);
    CHECK(q_morse(MorseParams(4.5, kInf), 0.3) == 0.0);
    CHECK(q_morse_derivative(MorseParams(4.5, kInf), 0.3) == 0.0);
    for (double rho : {-1.0, 0.0, 2.0})
      CHECK(morse_generalized(MorseParams(4.5, kInf), rho) == morse_shifted(MorseParams(4.5, 1), rho));
    CHECK(f_morse(MorseParams(2.0, kInf), 1.0) == doctest::Approx(2.0 * (1 - std::exp(-1.0)) - 0.5));
  }

  TEST_CASE("hand-evaluated derivative and generalized potential") {
    const MorseParams p(1, 1);
    const double e2 = std::exp(-2.0), e4 = std::exp(-4.0);
    CHECK(q_morse_derivative(p, 0.0) == doctest::Approx(e2 - e4).epsilon(1e-14));
    CHECK(morse_generalized(p, 0.0) == doctest::Approx(-0.75 - 2 * (e2 - e4)).epsilon(1e-14));
    CHECK(f_morse(p, 0.0) == doctest::Approx(-0.5 + e2).epsilon(1e-14));
  }

  TEST_CASE("analytic derivative matches central differences") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 5.0);
    const MorseParams p(2.5, 1.0);
    for (int i = 0; i < 20; ++i) {
      const double rho = u(rng);
      const double fd = central_difference([&p](double x) { return q_morse(p, x); }, rho);
      CHECK(std::abs(q_morse_derivative(p, rho) - fd) < 1e-6);
    }
  }

  TEST_CASE("generalized potential approaches the threshold") {
    const MorseParams p(2.5, 1.0);
    CHECK(morse_generalized(p, 40.0) == doctest::Approx(4.0).epsilon(1e-12));
  }
}

TEST_SUITE("poschl-teller") {
  TEST_CASE("shifted and partner") {
    CHECK(pt_shifted(PTParams(4, 1), 0.0) == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(pt_shifted(PTParams(4, 1), 40.0) == doctest::Approx(16.0).epsilon(1e-15));
    CHECK(pt_shifted(PTParams(4, 1), -40.0) == doctest::Approx(16.0).epsilon(1e-15));
    CHECK(std::abs(pt_shifted(PTParams(1, 1), std::log(1 + std::sqrt(2.0)))) < 1e-15);
    CHECK(pt_partner(PTParams(4, 1), 0.0) == doctest::Approx(4.0).epsilon(1e-15));
    for (double rho = -5.0; rho <= 5.0; rho += 0.5)
      CHECK(pt_partner(PTParams(1, 1), rho) == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("base potentials come from the superpotential") {
    const PTParams p(2.3, 1.0);
    for (double rho = -6.0; rho <= 6.0; rho += 0.41) {
      const double w = pt_w_prime(p, rho);
      CHECK(pt_shifted(p, rho) == doctest::Approx(w * w - pt_w_second(p, rho)).epsilon(1e-12));
      CHECK(pt_partner(p, rho) == doctest::Approx(w * w + pt_w_second(p, rho)).epsilon(1e-12));
    }
  }

  TEST_CASE("q closed forms") {
    for (double mu : {0.5, 4.0})
      CHECK(q_pt(PTParams(mu, 2.5), 0.0) == doctest::Approx(1 / 2.5).epsilon(1e-15));
    CHECK(std::abs(q_pt(PTParams(1, 1), 1.0) - sech2(1.0) / (1 + std::tanh(1.0))) < 1e-10);
    CHECK(q_pt(PTParams(1, 1), -1.5) == doctest::Approx(sech2(1.5) / (1 - std::tanh(1.5))).epsilon(1e-12));
    CHECK(q_pt(PTParams(4, kInf), 0.2) == 0.0);
  }

  TEST_CASE("hand-evaluated generalized potential") {
    const PTParams p(1, 1);
    CHECK(q_pt_derivative(p, 0.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(pt_generalized(p, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f_pt(p, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f_pt(PTParams(3, kInf), 0.7) == doctest::Approx(3 * std::tanh(0.7)).epsilon(1e-15));
    for (double rho : {-2.0, 0.5})
      CHECK(pt_generalized(PTParams(3, kInf), rho) == pt_shifted(PTParams(3, 1), rho));
  }

  TEST_CASE("analytic derivative matches central differences") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    const PTParams p(3.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const double rho = u(rng);
      const double fd = central_difference([&p](double x) { return q_pt(p, x); }, rho);
      CHECK(std::abs(q_pt_derivative(p, rho) - fd) < 1e-6);
    }
  }
}

TEST_SUITE("riccati") {
  TEST_CASE("base superpotential is an exact solution") {
    const MorseParams p(2.5, kInf);
    const Grid grid(-1.0, 6.0, 7001);
    const double r = riccati_residual([&p](double x) { return morse_w_prime(p, x); },
                                      [&p](double x) { return morse_w_prime(p, x); },
                                      [&p](double x) { return morse_w_second(p, x); }, grid);
    CHECK(r < 1e-8);
  }

  TEST_CASE("deformed Morse solution") {
    const MorseParams p(2.5, 1.0);
    const double r = riccati_residual([&p](double x) { return f_morse(p, x); },
                                      [&p](double x) { return morse_w_prime(p, x); },
                                      [&p](double x) { return morse_w_second(p, x); },
                                      Grid(-1.0, 6.0, 7001));
    CHECK(r < 1e-6);
  }

  TEST_CASE("deformed Poschl-Teller solution") {
    const PTParams p(3.0, 1.0);
    const double r = riccati_residual([&p](double x) { return f_pt(p, x); },
                                      [&p](double x) { return pt_w_prime(p, x); },
                                      [&p](double x) { return pt_w_second(p, x); },
                                      Grid(-5.0, 5.0, 10001));
    CHECK(r < 1e-6);
  }

  TEST_CASE("a wrong solution is detected") {
    const PTParams p(3.0, 1.0);
    const double r = riccati_residual([&p](double x) { return f_pt(p, x) + 0.01; },
                                      [&p](double x) { return pt_w_prime(p, x); },
                                      [&p](double x) { return pt_w_second(p, x); },
                                      Grid(-5.0, 5.0, 1001));
    CHECK(r > 1e-3);
  }
}

TEST_SUITE("families") {
  TEST_CASE("cached evaluation agrees with direct integration") {
    const MorseFamily morse(MorseParams(4.5, 0.8));
    const PoschlTellerFamily pt(PTParams(4.0, 0.8));
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 45.0);
    for (int i = 0; i < 60; ++i) {
      const double rho = u(rng);
      CHECK(morse.q(rho) == doctest::Approx(q_morse(morse.params(), rho)).epsilon(1e-12));
      CHECK(pt.q(rho - 20.0) == doctest::Approx(q_pt(pt.params(), rho - 20.0)).epsilon(1e-12));
      CHECK(morse.generalized(rho) ==
            doctest::Approx(morse_generalized(morse.params(), rho)).epsilon(1e-12));
      CHECK(pt.superpotential(rho - 20.0) ==
            doctest::Approx(f_pt(pt.params(), rho - 20.0)).epsilon(1e-12));
    }
  }

  TEST_CASE("thresholds and exact levels") {
    const MorseFamily morse(MorseParams(4.5, 1.0));
    const PoschlTellerFamily pt(PTParams(4.0, 1.0));
    CHECK(morse.continuum_threshold() == 16.0);
    CHECK(pt.continuum_threshold() == 16.0);
    CHECK(morse.analytic_bound_count() == 4);
    CHECK(PoschlTellerFamily(PTParams(2.5, 1.0)).analytic_bound_count() == 3);
    for (int n = 0; n < 4; ++n) {
      CHECK(morse.analytic_level(n) == n * (8.0 - n));
      CHECK(pt.analytic_level(n) == n * (8.0 - n));
    }
    CHECK(morse.name() == "morse");
    CHECK(pt.name() == "pt");
  }

  TEST_CASE("deformation vanishes at the ends of the default boxes") {
    for (double g : {0.5, 1.0, 10.0}) {
      const MorseFamily morse(MorseParams(4.5, g));
      const PoschlTellerFamily pt(PTParams(4.0, g));
      const Grid mg = morse.default_grid();
      const Grid pg = pt.default_grid();
      CHECK(std::abs(morse.generalized(mg.max()) - morse.shifted(mg.max())) < 1e-8);
      CHECK(std::abs(pt.generalized(pg.max()) - pt.shifted(pg.max())) < 1e-8);
      CHECK(std::abs(pt.generalized(pg.min()) - pt.shifted(pg.min())) < 1e-8);
    }
  }

  TEST_CASE("q decreases strictly with gamma and stays positive") {
    for (double rho = 0.0; rho <= 6.0; rho += 0.5) {
      double previous_m = kInf, previous_p = kInf;
      for (double g : {0.5, 1.0, 2.0, 10.0, 100.0}) {
        const double qm = MorseFamily(MorseParams(4.5, g)).q(rho);
        const double qp = PoschlTellerFamily(PTParams(4.0, g)).q(rho);
        CHECK(qm > 0.0);
        CHECK(qp > 0.0);
        CHECK(qm < previous_m);
        CHECK(qp < previous_p);
        previous_m = qm;
        previous_p = qp;
      }
    }
  }

  TEST_CASE("Morse denominator keeps a positive floor for moderate gamma") {
    // D(-inf) = gamma - (2 lambda)^{1 - 2 lambda} Gamma(2 lambda - 1, 2 lambda)
    const double l = 4.5;
    const double floor_mass = std::pow(2 * l, 1 - 2 * l) * upper_incomplete_gamma(2 * l - 1, 2 * l);
    const MorseFamily morse(MorseParams(l, 0.5));
    CHECK(morse.rho_min() == -kInf);
    CHECK(morse.denominator(-30.0) == doctest::Approx(0.5 - floor_mass).epsilon(1e-12));
    CHECK(morse.default_grid().min() == -2.0);
  }

  TEST_CASE("tiny gamma opens a singular point") {
    const MorseFamily morse(MorseParams(4.5, 1e-5));
    REQUIRE(std::isfinite(morse.rho_min()));
    CHECK(std::abs(morse.denominator(morse.rho_min())) < 1e-12);
    CHECK(morse.denominator(morse.rho_min() + 0.01) > 0.0);
    CHECK_THROWS_AS(morse.q(morse.rho_min() - 0.1), SingularConfigurationError);
    CHECK_THROWS_AS(q_morse(morse.params(), morse.rho_min() - 0.1), SingularConfigurationError);
    CHECK(morse.default_grid().min() == doctest::Approx(std::max(morse.rho_min() + 0.5, -2.0)));

    // int_0^inf cosh^{-2 mu} = (sqrt(pi)/2) Gamma(mu) / Gamma(mu + 1/2), about 0.457 for mu = 4
    const double b = 0.5 * std::sqrt(std::numbers::pi) * std::tgamma(4.0) / std::tgamma(4.5);
    CHECK(PoschlTellerFamily(PTParams(4.0, b * 1.001)).rho_min() == -kInf);
    const PoschlTellerFamily pt(PTParams(4.0, b * 0.999));
    REQUIRE(std::isfinite(pt.rho_min()));
    CHECK(std::abs(pt.denominator(pt.rho_min())) < 1e-12);
    try {
      (void)pt.q(pt.rho_min() - 0.5);
      FAIL("expected SingularConfigurationError");
    } catch (const SingularConfigurationError& e) {
      CHECK(e.rho() == doctest::Approx(pt.rho_min() - 0.5));
    }
    CHECK(pt.default_grid().min() == doctest::Approx(pt.rho_min() + 0.5));
  }

  TEST_CASE("tabulate") {
    const MorseFamily morse(MorseParams(4.5, 1.0));
    const Grid g(-1.0, 3.0, 41);
    const auto curve = tabulate([&morse](double x) { return morse.generalized(x); }, g);
    REQUIRE(curve.values.size() == g.size());
    CHECK(curve.values[10] == morse.generalized(g.node(10)));
    CHECK_THROWS_AS(tabulate([](double x) { return 1.0 / x; }, Grid(-1.0, 1.0, 21)), DomainError);
  }
}
