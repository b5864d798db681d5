#include <doctest.h>

#include <cmath>
#include <complex>
#include <ncdq/lattice_algebra.hpp>
#include <numbers>
#include <random>

using namespace ncdq;

namespace {

FourierElement sample_element(std::mt19937_64& rng, int n, int radius, int modes) {
  std::uniform_int_distribution<int> idx(-radius, radius);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  FourierElement a(n);
  for (int m = 0; m < modes; ++m) {
    LatticeIndex k(2 * n);
    for (auto& ki : k) ki = idx(rng);
    a.add_coeff(k, Complex(coef(rng), coef(rng)));
  }
  return a;
}

std::vector<double> sample_point(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  std::vector<double> x(d);
  for (auto& xi : x) xi = u(rng);
  return x;
}

}  // namespace

TEST_CASE("basis elements and coefficient bookkeeping") {
  auto a = FourierElement::basis(1, {2, -1}, Complex(0.5, 0.25));
  CHECK(a.n() == 1);
  CHECK(a.dim() == 2);
  CHECK(a.mode_count() == 1);
  CHECK(a.coeff({2, -1}) == Complex(0.5, 0.25));
  CHECK(a.coeff({0, 0}) == Complex(0.0));

  a.add_coeff({2, -1}, Complex(-0.5, -0.25));
  CHECK(a.empty());  // exact cancellation is pruned

  a.set_coeff({1, 1}, Complex(1e-16, 0));
  CHECK(a.empty());  // below the prune threshold

  CHECK_THROWS_AS(FourierElement::basis(1, {1, 0, 0}), DimensionMismatch);
  CHECK_THROWS_AS(FourierElement(0), DimensionMismatch);
}

TEST_CASE("vector space operations and equality") {
  auto a = FourierElement::basis(1, {1, 0});
  auto b = FourierElement::basis(1, {0, 1}, Complex(0, 2));
  auto s = a + b;
  CHECK(s.mode_count() == 2);
  CHECK(s.coeff({1, 0}) == Complex(1.0));
  auto d = s - b;
  CHECK(d == a);
  auto z = s - s;
  CHECK(z.empty());
  auto sc = Complex(2, 0) * a;
  CHECK(sc.coeff({1, 0}) == Complex(2.0));
}

TEST_CASE("support radius") {
  FourierElement a(2);
  CHECK(a.support_radius() == 0);
  a.set_coeff({0, 3, -4, 1}, 1.0);
  a.set_coeff({1, 0, 0, 0}, 1.0);
  CHECK(a.support_radius() == 4);
}

TEST_CASE("undeformed product is the pointwise product of functions") {
  std::mt19937_64 rng(101);
  auto ek = FourierElement::basis(1, {1, 0});
  auto el = FourierElement::basis(1, {0, 1});
  auto p = multiply_undeformed(ek, el);
  CHECK(p.mode_count() == 1);
  CHECK(p.coeff({1, 1}) == Complex(1.0));

  for (int trial = 0; trial < 20; ++trial) {
    auto a = sample_element(rng, 1, 3, 4);
    auto b = sample_element(rng, 1, 3, 4);
    auto ab = multiply_undeformed(a, b);
    auto x = sample_point(rng, 2);
    auto direct = evaluate_point(a, x) * evaluate_point(b, x);
    CHECK(std::abs(evaluate_point(ab, x) - direct) < 1e-12);
  }

  auto a2 = sample_element(rng, 2, 2, 3);
  auto b1 = sample_element(rng, 1, 2, 3);
  CHECK_THROWS_AS(multiply_undeformed(a2, b1), DimensionMismatch);
}

TEST_CASE("involution conjugates the function") {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = sample_element(rng, 1, 3, 5);
    auto as = involution(a);
    auto x = sample_point(rng, 2);
    CHECK(std::abs(evaluate_point(as, x) - std::conj(evaluate_point(a, x))) < 1e-13);
    CHECK(involution(as) == a);
  }
  // hermitian elements are the fixed points
  auto h = FourierElement::basis(1, {1, 0}, Complex(0.3, 0.4));
  h.add_coeff({-1, 0}, Complex(0.3, -0.4));
  h.add_coeff({0, 0}, 1.0);
  CHECK(h.is_hermitian());
  CHECK(involution(h) == h);
}

TEST_CASE("translation action shifts the argument") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = sample_element(rng, 1, 3, 5);
    auto u = sample_point(rng, 2);
    auto x = sample_point(rng, 2);
    auto shifted = act(u, a);
    std::vector<double> xu = {x[0] + u[0], x[1] + u[1]};
    CHECK(std::abs(evaluate_point(shifted, x) - evaluate_point(a, xu)) < 1e-12);
    // the action is isometric for the coefficient l1 norm
    CHECK(l1_norm(shifted) == doctest::Approx(l1_norm(a)).epsilon(1e-14));
  }
}

TEST_CASE("derivative acts as the Fourier multiplier (ik)^beta") {
  auto a = FourierElement::basis(1, {2, -3}, Complex(1, 1));
  auto da = derivative({1, 0}, a);
  CHECK(da.coeff({2, -3}) == Complex(0, 2) * Complex(1, 1));
  auto d2 = derivative({1, 2}, a);
  // (i*2) * (i*(-3))^2 = 2i * (-9) = -18i
  CHECK(d2.coeff({2, -3}) == Complex(0, -18) * Complex(1, 1));
  // beta = 0 is the identity
  CHECK(derivative({0, 0}, a) == a);
  CHECK_THROWS_AS(derivative({1}, a), DimensionMismatch);
  CHECK_THROWS_AS(derivative({-1, 0}, a), DimensionMismatch);
}

TEST_CASE("seminorm bracket encloses the sup norm") {
  std::mt19937_64 rng(104);
  // single modes: both sides are exactly 1 at mu = 0
  for (int k1 = -2; k1 <= 2; ++k1) {
    for (int k2 = -2; k2 <= 2; ++k2) {
      auto e = FourierElement::basis(1, {k1, k2});
      auto br = seminorm(e);
      CHECK(br.upper == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(br.lower == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(br.lower <= br.upper + 1e-13);
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    auto a = sample_element(rng, 1, 3, 6);
    SeminormSpec spec;
    spec.mu = 1;
    auto br = seminorm(a, spec);
    CHECK(br.lower <= br.upper + 1e-12);
    // grid evaluations are dominated by the l1 bound mode by mode
    auto x = sample_point(rng, 2);
    CHECK(std::abs(evaluate_point(a, x)) <= br.upper + 1e-12);
  }
}

TEST_CASE("haar trace picks the constant coefficient") {
  auto a = FourierElement::basis(1, {0, 0}, Complex(0.7, -0.1));
  a.add_coeff({3, 1}, Complex(5, 5));
  CHECK(haar_trace(a) == Complex(0.7, -0.1));
  CHECK(haar_trace(FourierElement(2)) == Complex(0.0));
}

TEST_CASE("multi-index enumeration") {
  auto idx = multi_indices_up_to(2, 2);
  // |beta| <= 2 over 2 slots: 1 + 2 + 3 = 6
  CHECK(idx.size() == 6);
  CHECK(idx.front() == std::vector<int>{0, 0});
  for (const auto& beta : idx) {
    int total = 0;
    for (int b : beta) total += b;
    CHECK(total <= 2);
  }
  // counts follow the stars-and-bars formula in higher dimension
  CHECK(multi_indices_up_to(4, 3).size() == 35);
}

TEST_CASE("lattice helpers") {
  CHECK(lattice_add({1, 2}, {3, -5}) == LatticeIndex{4, -3});
  CHECK(lattice_neg({1, -2}) == LatticeIndex{-1, 2});
  CHECK(lattice_max_abs({3, -7}) == 7);
  CHECK(lattice_dot({1, 2}, {0.5, 0.25}) == doctest::Approx(1.0));
}
