#include <doctest.h>

#include <cmath>
#include <ncdq/star_product.hpp>
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

}  // namespace

TEST_CASE("twist cocycle values and identities") {
  auto data = DeformationData::standard(1, 0.8);
  TwistCocycle sigma(data);
  // standard geometry: k^T inv(Theta)^T l = k1 l2 - k2 l1
  CHECK(sigma.angle({1, 0}, {0, 1}) == doctest::Approx(-0.4));
  CHECK(std::abs(sigma.phase({1, 0}, {0, 1}) - std::polar(1.0, -0.4)) < 1e-15);
  CHECK(sigma.phase({0, 0}, {5, -3}) == Complex(1.0));
  CHECK(sigma.phase({5, -3}, {0, 0}) == Complex(1.0));

  std::mt19937_64 rng(301);
  std::uniform_int_distribution<int> idx(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    LatticeIndex k{idx(rng), idx(rng)}, l{idx(rng), idx(rng)}, m{idx(rng), idx(rng)};
    CHECK(std::abs(std::abs(sigma.phase(k, l)) - 1.0) < 1e-15);
    CHECK(std::abs(sigma.phase(k, l) - std::conj(sigma.phase(l, k))) < 1e-15);
    auto lhs = sigma.phase(k, l) * sigma.phase(lattice_add(k, l), m);
    auto rhs = sigma.phase(l, m) * sigma.phase(k, lattice_add(l, m));
    CHECK(std::abs(lhs - rhs) < 1e-14);
  }

  TwistCocycle classical(DeformationData::standard(1, 0.0));
  CHECK(classical.phase({3, 1}, {-2, 5}) == Complex(1.0));
}

TEST_CASE("star product on single modes") {
  const double hbar = 0.8;
  auto data = DeformationData::standard(1, hbar);
  auto ex = FourierElement::basis(1, {1, 0});
  auto ey = FourierElement::basis(1, {0, 1});
  auto p = star_product(data, ex, ey);
  CHECK(p.mode_count() == 1);
  CHECK(std::abs(p.coeff({1, 1}) - std::polar(1.0, -hbar / 2)) < 1e-15);

  // commutator of the two coordinate modes
  auto c = star_commutator(data, ex, ey);
  CHECK(std::abs(c.coeff({1, 1}) - Complex(0, -2 * std::sin(hbar / 2))) < 1e-14);

  // e_{-k} * e_k = e_0
  for (int k1 = -3; k1 <= 3; ++k1) {
    for (int k2 = -3; k2 <= 3; ++k2) {
      auto ek = FourierElement::basis(1, {k1, k2});
      auto emk = FourierElement::basis(1, {-k1, -k2});
      auto u = star_product(data, emk, ek);
      CHECK(u.mode_count() == 1);
      CHECK(std::abs(u.coeff({0, 0}) - Complex(1.0)) < 1e-15);
    }
  }
}

TEST_CASE("unit and classical limit") {
  std::mt19937_64 rng(302);
  auto data = DeformationData::standard(1, 1.3);
  auto unit = FourierElement::unit(1);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = sample_element(rng, 1, 3, 5);
    CHECK(l1_norm(star_product(data, unit, a) - a) <= 1e-14);
    CHECK(l1_norm(star_product(data, a, unit) - a) <= 1e-14);
    // hbar = 0 falls back to the undeformed product bit for bit
    auto b = sample_element(rng, 1, 3, 5);
    auto classical = DeformationData::standard(1, 0.0);
    CHECK(star_product(classical, a, b) == multiply_undeformed(a, b));
  }
}

TEST_CASE("associativity across hbar values") {
  std::mt19937_64 rng(303);
  for (double hbar : {0.0, 0.1, 1.0, std::numbers::pi, 10.0}) {
    auto data = DeformationData::standard(1, hbar);
    for (int trial = 0; trial < 20; ++trial) {
      auto a = sample_element(rng, 1, 3, 4);
      auto b = sample_element(rng, 1, 3, 4);
      auto c = sample_element(rng, 1, 3, 4);
      auto left = star_product(data, star_product(data, a, b), c);
      auto right = star_product(data, a, star_product(data, b, c));
      CHECK(l1_norm(left - right) <= 1e-12);
    }
  }
}

TEST_CASE("involution is a star antihomomorphism") {
  std::mt19937_64 rng(304);
  for (double hbar : {0.1, 1.0, 10.0}) {
    auto data = DeformationData::standard(1, hbar);
    for (int trial = 0; trial < 20; ++trial) {
      auto a = sample_element(rng, 1, 3, 4);
      auto b = sample_element(rng, 1, 3, 4);
      auto lhs = involution(star_product(data, a, b));
      auto rhs = star_product(data, involution(b), involution(a));
      CHECK(l1_norm(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("commutator vanishes classically and linearizes to the Poisson sign") {
  auto ex = FourierElement::basis(1, {1, 0});
  auto ey = FourierElement::basis(1, {0, 1});
  auto classical = DeformationData::standard(1, 0.0);
  CHECK(star_commutator(classical, ex, ey).empty());

  // (1/hbar) [e_x, e_y] -> -i e_{(1,1)}
  for (double hbar : {1e-1, 1e-2, 1e-3, 1e-4}) {
    auto data = DeformationData::standard(1, hbar);
    auto c = star_commutator(data, ex, ey);
    auto val = c.coeff({1, 1}) / hbar;
    CHECK(std::abs(val - Complex(0, -1)) < hbar);
  }
}

TEST_CASE("trace does not see the twist") {
  std::mt19937_64 rng(305);
  for (double hbar : {0.0, 0.5, 2.0}) {
    auto data = DeformationData::standard(1, hbar);
    for (int trial = 0; trial < 10; ++trial) {
      auto a = sample_element(rng, 1, 3, 4);
      auto b = sample_element(rng, 1, 3, 4);
      auto report = trace_identity_check(data, a, b);
      CHECK(report.pass);
      auto tr_star = haar_trace(star_product(data, a, b));
      auto tr_flip = haar_trace(star_product(data, b, a));
      CHECK(std::abs(tr_star - tr_flip) < 1e-13);
      CHECK(std::abs(tr_star - haar_trace(multiply_undeformed(a, b))) < 1e-13);
    }
  }
}

TEST_CASE("translations act by star automorphisms") {
  std::mt19937_64 rng(306);
  auto data = DeformationData::standard(1, 0.9);
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = sample_element(rng, 1, 3, 4);
    auto b = sample_element(rng, 1, 3, 4);
    std::vector<double> t{u(rng), u(rng)};
    auto lhs = act(t, star_product(data, a, b));
    auto rhs = star_product(data, act(t, a), act(t, b));
    CHECK(l1_norm(lhs - rhs) <= 1e-12);
  }
}
