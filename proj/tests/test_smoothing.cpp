#include <doctest.h>

#include <cmath>
#include <ncdq/smoothing.hpp>
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

TEST_CASE("smoothing is the heat multiplier on coefficients") {
  auto data = DeformationData::standard(1, 0.8);
  auto a = FourierElement::basis(1, {2, -1}, Complex(1, 1));
  auto sa = smooth(data, a);
  double expected = std::exp(-0.8 * laplacian_symbol(data, {2, -1}) / 4.0);
  CHECK(std::abs(sa.coeff({2, -1}) - Complex(expected) * Complex(1, 1)) < 1e-16);

  // classical limit returns the element unchanged, bit for bit
  auto classical = DeformationData::standard(1, 0.0);
  CHECK(smooth(classical, a) == a);

  // the unit is a fixed point for every hbar
  CHECK(smooth(data, FourierElement::unit(1)) == FourierElement::unit(1));
}

TEST_CASE("smoothing semigroup, contraction, hermiticity") {
  std::mt19937_64 rng(401);
  auto d1 = DeformationData::standard(1, 0.4);
  auto d2 = DeformationData::standard(1, 1.1);
  auto d12 = DeformationData::standard(1, 1.5);
  for (int trial = 0; trial < 15; ++trial) {
    auto a = sample_element(rng, 1, 3, 5);
    CHECK(l1_norm(smooth(d1, smooth(d2, a)) - smooth(d12, a)) <= 1e-13);
    CHECK(l1_norm(smooth(d1, a)) <= l1_norm(a) + 1e-15);
    CHECK(l1_norm(smooth(d1, involution(a)) - involution(smooth(d1, a))) <= 1e-15);
  }
}

TEST_CASE("hbar-derivative of the smoothing is a quarter laplacian") {
  std::mt19937_64 rng(402);
  auto data = DeformationData::standard(1, 0.5);
  auto a = sample_element(rng, 1, 2, 4);
  auto report = smooth_derivative_check(data, a, 1e-2);
  CHECK(report.pass);

  // observed finite-difference order
  auto fd_error = [&](double dh) {
    auto plus = smooth(data.with_hbar(data.hbar() + dh), a);
    auto minus = smooth(data.with_hbar(data.hbar() - dh), a);
    auto fd = Complex(1.0 / (2 * dh)) * (plus - minus);
    auto closed = smooth(data, Complex(0.25) * apply_laplacian(data, a));
    return l1_norm(fd - closed);
  };
  double e1 = fd_error(1e-2);
  double e2 = fd_error(5e-3);
  double order = std::log(e1 / e2) / std::log(2.0);
  CHECK(order >= 1.9);
}

TEST_CASE("asymptotic expansion obeys the factorial remainder bound") {
  std::mt19937_64 rng(403);
  for (double hbar : {0.5, 2.0}) {
    auto data = DeformationData::standard(1, hbar);
    for (int trial = 0; trial < 5; ++trial) {
      auto a = sample_element(rng, 1, 2, 5);
      auto sa = smooth(data, a);
      for (int R = 1; R <= 10; ++R) {
        double bound = expansion_remainder_bound(data, a, R);
        CHECK(l1_norm(sa - asymptotic_expansion(data, a, R)) <= bound + 1e-12);
      }
    }
  }
  auto data = DeformationData::standard(1, 0.5);
  auto a = sample_element(rng, 1, 2, 3);
  CHECK(asymptotic_expansion(data, a, 0).empty());
}

TEST_CASE("wick coefficient at L = 0 reproduces the smoothing") {
  std::mt19937_64 rng(404);
  auto data = DeformationData::standard(1, 0.9);
  auto a = sample_element(rng, 1, 3, 5);
  auto wc = wick_coefficient(data, a, {0});
  // standard geometry: |det F| = 1
  CHECK(l1_norm(wc.element - smooth(data, a)) <= 1e-14);

  // first moment multiplier against the frame data
  auto e = FourierElement::basis(1, {2, 1});
  auto w1 = wick_coefficient(data, e, {1});
  auto kappa = data.frame().kappa({2, 1});
  Complex expected = Complex(0, 0.5 * std::sqrt(0.9)) * kappa[0] *
                     std::exp(-0.9 * laplacian_symbol(data, {2, 1}) / 4.0);
  CHECK(std::abs(w1.element.coeff({2, 1}) - expected) < 1e-15);
}

TEST_CASE("hermitian-square series reproduces the smoothed star square") {
  std::mt19937_64 rng(405);
  for (double hbar : {0.3, 1.0}) {
    auto data = DeformationData::standard(1, hbar);
    for (int trial = 0; trial < 10; ++trial) {
      auto a = sample_element(rng, 1, 2, 4);
      SeriesTruncation trunc;
      trunc.Lmax = 12;
      auto res = wick_series(data, a, trunc);
      CHECK(res.report.pass);
      auto direct = smooth(data, star_product(data, involution(a), a));
      CHECK(l1_norm(res.value - direct) <= res.trunc.tail_bound + 1e-10);
    }
  }

  // tail bound decreases with the truncation order
  auto data = DeformationData::standard(1, 1.0);
  auto a = sample_element(rng, 1, 2, 4);
  double prev = -1;
  for (int Lmax : {6, 8, 10, 12}) {
    SeriesTruncation trunc;
    trunc.Lmax = Lmax;
    auto res = wick_series(data, a, trunc);
    if (prev >= 0) CHECK(res.trunc.tail_bound <= prev);
    prev = res.trunc.tail_bound;
  }
}

TEST_CASE("single-mode square sums to the unit") {
  auto data = DeformationData::standard(1, 0.7);
  auto a = FourierElement::basis(1, {1, 1}, Complex(0.6, -0.8));  // |c| = 1
  SeriesTruncation trunc;
  trunc.Lmax = 16;
  auto res = wick_series(data, a, trunc);
  CHECK(l1_norm(res.value - FourierElement::unit(1)) <= res.trunc.tail_bound + 1e-12);
}

TEST_CASE("leading-order split isolates a positive remainder") {
  std::mt19937_64 rng(406);
  auto data = DeformationData::standard(1, 0.8);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = sample_element(rng, 1, 2, 4);
    auto [leading, remainder] = leading_order_split(data, a);
    auto direct = smooth(data, star_product(data, involution(a), a));
    CHECK(l1_norm(leading + remainder - direct) <= 1e-12);
    // the remainder is a sum of hermitian squares; its trace is >= 0
    CHECK(haar_trace(remainder).real() >= -1e-12);
    CHECK(std::abs(haar_trace(remainder).imag()) <= 1e-12);
    // leading term is the product of the two smoothed halves (det G = 1)
    auto prod = multiply_undeformed(smooth(data, involution(a)), smooth(data, a));
    CHECK(l1_norm(leading - prod) <= 1e-13);
  }
}

TEST_CASE("gaussian star root identity holds at sample points") {
  QuadratureConfig cfg;
  std::vector<std::vector<double>> points{{0.0, 0.0}, {0.3, -0.2}, {0.5, 0.1}, {-0.4, 0.4}, {0.2, 0.6}};
  for (double hbar : {0.5, 1.0}) {
    auto data = DeformationData::standard(1, hbar);
    auto report = star_root_check(data, points, cfg);
    CHECK(report.pass);
    CHECK(report.cases.size() >= points.size());
  }
}

TEST_CASE("normalized gaussian values") {
  auto data = DeformationData::standard(1, 0.5);
  double at0 = gauss_value(data, {0.0, 0.0});
  CHECK(at0 == doctest::Approx(1.0 / (std::numbers::pi * 0.5)));
  double off = gauss_value(data, {1.0, 0.0});
  CHECK(off == doctest::Approx(at0 * std::exp(-2.0)));
}
