#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "morsept/error.hpp"
#include "morsept/transforms.hpp"

using namespace morsept;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> on_plan(const HankelPlan& plan, const RealFunction& g) {
  std::vector<double> out;
  for (double t : plan.nodes()) out.push_back(g(t));
  return out;
}

// Sonine: int_0^1 t (1 - t^2)^4 J_0(t s) dt = 2^4 4! J_5(s) / s^5
double bump_transform(double s) {
  if (s < 1e-3) return 0.1;
  return 384.0 * std::cyl_bessel_j(5.0, s) / std::pow(s, 5);
}

}  // namespace

TEST_SUITE("plan") {
  TEST_CASE("uniform layout") {
    const HankelPlan plan = HankelPlan::uniform(3, 40.0, 16);
    CHECK(plan.order() == 3);
    CHECK(plan.size() == 16);
    CHECK(plan.t_max() == 40.0);
    CHECK(plan.nodes().front() == doctest::Approx(2.5));
    CHECK(plan.weights().front() == doctest::Approx(2.5));
    CHECK(plan.weights().back() == doctest::Approx(1.25));
    CHECK(plan.origin_step() == doctest::Approx(2.5));
    CHECK(HankelPlan(0, {1.0, 2.0}, {1.0, 1.0}).origin_step() == 0.0);
    const HankelPlan fine = plan.refined(2);
    CHECK(fine.size() == 32);
    CHECK(fine.t_max() == 40.0);
    CHECK(fine.order() == 3);
  }

  TEST_CASE("invariants are enforced") {
    CHECK_THROWS_AS(HankelPlan(-1, {1.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(HankelPlan(0, {0.0, 1.0}, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(HankelPlan(0, {1.0, 1.0}, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(HankelPlan(0, {1.0, 2.0}, {1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(HankelPlan(0, {1.0, 2.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(HankelPlan::uniform(0, -1.0, 10), DomainError);
    CHECK_THROWS_AS(HankelPlan::uniform(0, 1.0, 2), DomainError);
  }
}

TEST_SUITE("angular reduction") {
  TEST_CASE("trivial cases") {
    CHECK(std::abs(angular_phase_integral(0.0, 0, 0.3) - 2 * kPi) < 1e-14);
    CHECK(std::abs(angular_phase_integral(0.0, 1, 1.1)) < 1e-14);
    const auto v = angular_phase_integral(1.0, 1, 0.0);
    CHECK(std::abs(v - std::complex<double>(0.0, -2 * kPi * 0.4400505857449335)) < 1e-9);
  }

  TEST_CASE("phase integral equals 2 pi (-i)^m e^{i m phi'} J_m(x)") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);
    for (int m = 0; m <= 8; ++m) {
      std::complex<double> phase = 1.0;
      for (int k = 0; k < m; ++k) phase *= std::complex<double>(0.0, -1.0);
      for (int s = 0; s < 16; ++s) {
        const double phi = u(rng);
        for (double x = 0.0; x <= 20.0; x += 0.5) {
          const auto expected = 2 * kPi * phase * std::polar(1.0, m * phi) * std::cyl_bessel_j(double(m), x);
          INFO("m = " << m << ", x = " << x << ", phi' = " << phi);
          CHECK(std::abs(angular_phase_integral(x, m, phi) - expected) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("negative orders") {
    const auto v = angular_phase_integral(3.0, -2, 0.0);
    CHECK(std::abs(v - std::complex<double>(-2 * kPi * std::cyl_bessel_j(2.0, 3.0), 0.0)) < 1e-12);
  }

  TEST_CASE("non-finite input") { CHECK_THROWS_AS(angular_phase_integral(INFINITY, 0, 0.0), DomainError); }
}

TEST_SUITE("hankel") {
  TEST_CASE("the Gaussian is self-reciprocal") {
    const HankelPlan plan = HankelPlan::uniform(0, 40.0, 8192);
    const auto g = on_plan(plan, [](double t) { return std::exp(-t * t / 2); });
    for (double tp = 0.0; tp <= 5.0; tp += 0.125) {
      const HankelResult r = hankel(g, plan, tp);
      CHECK(std::abs(r.value - std::exp(-tp * tp / 2)) < 1e-6);
      CHECK_FALSE(r.truncated);
    }
  }

  TEST_CASE("first-order Gaussian pair") {
    // int t (t e^{-t^2/2}) J_1(t s) dt = s e^{-s^2/2}
    const HankelPlan plan = HankelPlan::uniform(1, 40.0, 8192);
    for (double tp = 0.25; tp <= 5.0; tp += 0.25)
      CHECK(std::abs(hankel([](double t) { return t * std::exp(-t * t / 2); }, plan, tp).value -
                     tp * std::exp(-tp * tp / 2)) < 1e-6);
  }

  TEST_CASE("zero maps to zero") {
    const HankelPlan plan = HankelPlan::uniform(2, 40.0, 1024);
    CHECK(hankel([](double) { return 0.0; }, plan, 1.7).value == 0.0);
  }

  TEST_CASE("slow decay is flagged") {
    const HankelPlan plan = HankelPlan::uniform(0, 10.0, 1024);
    CHECK(hankel([](double t) { return std::exp(-0.1 * t); }, plan, 1.0).truncated);
    CHECK_THROWS_AS(hankel(std::vector<double>(10, 0.0), plan, 1.0), DomainError);
  }

  TEST_CASE("1/t through the oscillatory path") {
    for (double tp : {0.5, 1.0, 2.0, 5.0}) {
      const auto r = hankel_oscillatory([](double t) { return 1.0 / t; }, 0, tp, 1e-11);
      CHECK(std::abs(tp * r.value - 1.0) < 1e-6);
    }
  }

  TEST_CASE("compact bump: closed form and Parseval") {
    const auto bump = [](double t) { return t < 1.0 ? std::pow(1 - t * t, 4) : 0.0; };
    const HankelPlan plan = HankelPlan::uniform(0, 1.0, 2048);
    const auto g = on_plan(plan, bump);
    for (double s : {0.5, 3.0, 10.0, 25.0})
      CHECK(std::abs(hankel(g, plan, s).value - bump_transform(s)) < 1e-7);

    const double ds = 0.02;
    double rhs = 0.0;
    for (int k = 1; k * ds <= 60.0; ++k) {
      const double s = k * ds;
      const double h = hankel(g, plan, s).value;
      rhs += ds * s * h * h;
    }
    const double lhs = 1.0 / 18.0;  // int_0^1 t (1 - t^2)^8 dt
    CHECK(std::abs(lhs - rhs) < 1e-5);
  }
}

TEST_SUITE("wavefunction map") {
  TEST_CASE("zero radial function") {
    const HankelPlan plan = HankelPlan::uniform(3, 40.0, 1024);
    const std::vector<double> zero(plan.size(), 0.0);
    const std::vector<double> tp{0.5, 1.0, 2.0};
    const auto u = wavefunction_map(zero, plan, tp);
    CHECK(u.quarter_turns == 3);
    for (double v : u.u.values) CHECK(v == 0.0);
    CHECK(u.u.nodes == tp);
  }

  TEST_CASE("Gaussian pair") {
    const HankelPlan plan = HankelPlan::uniform(0, 40.0, 8192);
    const auto g = on_plan(plan, [](double t) { return std::exp(-t * t / 2); });
    std::vector<double> tp;
    for (double s = 0.0; s <= 4.0; s += 0.5) tp.push_back(s);
    const auto u = wavefunction_map(g, plan, tp);
    CHECK(u.quarter_turns == 0);
    for (std::size_t i = 0; i < tp.size(); ++i) {
      const double expected = 2 * kPi * std::pow(1 + tp[i] * tp[i], 1.5) * std::exp(-tp[i] * tp[i] / 2);
      CHECK(u.u.values[i] == doctest::Approx(expected).epsilon(1e-6));
    }
  }

  TEST_CASE("Gaussian pair keeps its L2 norm") {
    // int t g^2 dt = 1/2; the mapped side, with the (1 + t'^2)^{3/2} weight removed, by Simpson in t'
    const HankelPlan plan = HankelPlan::uniform(0, 40.0, 8192);
    const auto g = on_plan(plan, [](double t) { return std::exp(-t * t / 2); });
    const int intervals = 1200;
    const double ds = 12.0 / intervals;
    std::vector<double> tp;
    for (int k = 0; k <= intervals; ++k) tp.push_back(k * ds);
    const auto u = wavefunction_map(g, plan, tp);
    double mapped = 0.0;
    for (int k = 0; k <= intervals; ++k) {
      const double h = u.u.values[k] / (2 * kPi * std::pow(1 + tp[k] * tp[k], 1.5));
      const double w = (k == 0 || k == intervals) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      mapped += w * ds / 3 * tp[k] * h * h;
    }
    CHECK(std::abs(mapped - 0.5) < 1e-6);
  }

  TEST_CASE("hydrogen-like radial state maps onto sech^m") {
    // int_0^inf t^{m+1} e^{-t} J_m(t s) dt = 2 (2s)^m Gamma(m + 3/2) / (sqrt(pi) (1 + s^2)^{m + 3/2}),
    // so U(s) is proportional to s^m / (1 + s^2)^m = sech^m(rho) with s = e^{-rho}.
    for (int m : {1, 3, 4}) {
      const HankelPlan plan = HankelPlan::uniform(m, 40.0, 16384);
      const auto r = on_plan(plan, [m](double t) { return std::pow(t, m) * std::exp(-t); });
      std::vector<double> tp;
      for (double rho = -3.0; rho <= 3.0; rho += 0.25) tp.push_back(std::exp(-rho));
      const auto u = wavefunction_map(r, plan, tp);
      CHECK(u.quarter_turns == m % 4);
      CHECK_FALSE(u.truncated);
      const double c = 2 * kPi * 2 * std::pow(2.0, m) * std::tgamma(m + 1.5) / std::sqrt(kPi);
      for (std::size_t i = 0; i < tp.size(); ++i) {
        const double expected = c * std::pow(tp[i] / (1 + tp[i] * tp[i]), m);
        INFO("m = " << m << ", t' = " << tp[i]);
        CHECK(std::abs(u.u.values[i] - expected) < 1e-8 * c);
      }
    }
  }

  TEST_CASE("resampling a tabulated state onto the plan") {
    const double lambda = 4.5;
    SampledFunction f;
    for (int i = 0; i <= 4000; ++i) {
      const double rho = -2.0 + 27.0 * i / 4000;
      const double t = lambda * std::exp(-rho);
      f.nodes.push_back(rho);
      f.values.push_back(std::pow(t, 4) * std::exp(-t));
    }
    const HankelPlan plan = HankelPlan::uniform(4, 40.0, 4096);
    const auto r = morse_radial_on_plan(f, lambda, plan);
    for (std::size_t k = 0; k < plan.size(); k += 64) {
      const double t = plan.nodes()[k];
      const double expected = t > lambda * std::exp(2.0) ? 0.0 : std::pow(t, 4) * std::exp(-t);
      CHECK(std::abs(r[k] - expected) < 1e-8);
    }
  }
}

TEST_SUITE("potential term") {
  TEST_CASE("vanishing deformation maps zero to zero") {
    std::vector<double> tp;
    for (double s = 0.1; s <= 3.0; s += 0.1) tp.push_back(s);
    const auto report = potential_term_map(MorseParams(4.5, 1e12), PTParams(4.0, 1e12), 4,
                                           HankelPlan::uniform(4, 40.0, 8192), tp);
    CHECK(report.max_residual < 1e-8);
    CHECK(report.refinement[0].nodes == 8192);
    CHECK(report.refinement[1].nodes == 16384);
  }

  TEST_CASE("report layout and refinement trace") {
    std::vector<double> tp;
    for (double s = 0.1; s <= 3.0; s += 0.29) tp.push_back(s);
    const auto report = potential_term_map(MorseParams(4.5, 1.0), PTParams(4.0, 1.0), 4,
                                           HankelPlan::uniform(4, 40.0, 16384), tp);
    REQUIRE(report.lhs.size() == tp.size());
    REQUIRE(report.rhs.size() == tp.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < tp.size(); ++i) {
      CHECK(report.residual[i] == report.lhs[i] - report.rhs[i]);
      worst = std::max(worst, std::abs(report.residual[i]));
    }
    CHECK(report.max_residual == worst);
    CHECK(report.refinement[0].max_residual == worst);
    CHECK(std::abs(report.refinement[1].max_residual - worst) < 1e-6 * std::max(1.0, worst));
    CHECK_FALSE(report.truncated);
  }

  TEST_CASE("truncation radius is adequate") {
    std::vector<double> tp{0.1, 0.5, 1.0, 2.0, 3.0};
    const auto a = potential_term_map(MorseParams(4.5, 1.0), PTParams(4.0, 1.0), 4,
                                      HankelPlan::uniform(4, 40.0, 16384), tp);
    const auto b = potential_term_map(MorseParams(4.5, 1.0), PTParams(4.0, 1.0), 4,
                                      HankelPlan::uniform(4, 80.0, 32768), tp);
    for (std::size_t i = 0; i < tp.size(); ++i) CHECK(std::abs(a.lhs[i] - b.lhs[i]) < 1e-6);
  }

  TEST_CASE("both sides must share gamma") {
    const std::vector<double> tp{1.0};
    CHECK_THROWS_AS(potential_term_map(MorseParams(4.5, 1.0), PTParams(4.0, 2.0), 4,
                                       HankelPlan::uniform(4, 40.0, 64), tp),
                    DomainError);
  }
}
