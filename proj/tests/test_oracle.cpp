#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ncdq/integral_oracle.hpp>
#include <ncdq/star_product.hpp>
#include <numbers>

using namespace ncdq;

namespace {

Complex wick_closed_form(const DeformationData& data, const LatticeIndex& k,
                         const std::vector<int>& L) {
  const double hbar = data.hbar();
  auto kappa = data.frame().kappa(k);
  Complex mult = data.frame().abs_det;
  for (int j = 0; j < data.n(); ++j) {
    for (int r = 0; r < L[j]; ++r) mult *= Complex(0, 0.5 * std::sqrt(hbar)) * kappa[j];
  }
  return mult * std::exp(-hbar * laplacian_symbol(data, k) / 4.0);
}

DeformationData squeezed(double hbar) {
  Eigen::MatrixXd g2(2, 2);
  g2 << 4.0, 0.0, 0.0, 0.25;
  return DeformationData(SymplecticForm::standard(1), Metric(g2), hbar);
}

}  // namespace

TEST_CASE("quadrature config validation") {
  QuadratureConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.order = 4;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.target_tol = 1e-12;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.max_refinements = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.box_radius = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("kind names round trip") {
  using Kind = Integrand::Kind;
  for (Kind kind : {Kind::S_hbar_on_mode, Kind::star_on_modes, Kind::double_gaussian,
                    Kind::wick_moment, Kind::gauss_star_gauss, Kind::gauss_l2}) {
    CHECK(kind_from_name(kind_name(kind)) == kind);
  }
  CHECK_THROWS_AS(kind_from_name("no_such_kind"), ConfigError);
}

TEST_CASE("smoothing multiplier integral matches the closed form") {
  QuadratureConfig cfg;
  for (double hbar : {0.1, 1.0}) {
    for (const auto& data : {DeformationData::standard(1, hbar), squeezed(hbar)}) {
      for (LatticeIndex k : {LatticeIndex{0, 0}, LatticeIndex{1, 0}, LatticeIndex{2, -1}}) {
        Integrand task{Integrand::Kind::S_hbar_on_mode, data, k, {}, {}, {}};
        auto res = integrate(task, cfg);
        CHECK(res.converged);
        double expected = std::exp(-hbar * laplacian_symbol(data, k) / 4.0);
        CHECK(std::abs(res.value - Complex(expected)) < 1e-10);
      }
    }
  }
}

TEST_CASE("trapezoid fallback agrees with Gauss-Hermite") {
  auto data = DeformationData::standard(1, 0.5);
  Integrand task{Integrand::Kind::S_hbar_on_mode, data, {1, 1}, {}, {}, {}};
  QuadratureConfig gh;
  QuadratureConfig tz;
  tz.scheme = QuadratureConfig::Scheme::trapezoid;
  auto a = integrate(task, gh);
  auto b = integrate(task, tz);
  CHECK(a.converged);
  CHECK(b.converged);
  CHECK(std::abs(a.value - b.value) < 1e-8);
  // refinement history shrinks (or was already at the target)
  if (b.refinement_errors.size() >= 2) {
    CHECK(b.refinement_errors.back() <= b.refinement_errors.front() + 1e-15);
  }
  // the twisted kinds have no absolutely-convergent joint form; trapezoid refuses
  Integrand twisted{Integrand::Kind::star_on_modes, data, {1, 0}, {0, 1}, {}, {}, 0.25};
  CHECK_THROWS_AS(integrate(twisted, tz), ConfigError);
}

TEST_CASE("gaussian l2 mass matches the closed form") {
  QuadratureConfig cfg;
  for (double hbar : {0.1, 0.5, 1.0}) {
    auto data = DeformationData::standard(1, hbar);
    Integrand task{Integrand::Kind::gauss_l2, data, {}, {}, {}, {}};
    auto res = integrate(task, cfg);
    CHECK(res.converged);
    double expected = std::sqrt(data.g().det()) / std::pow(2 * std::numbers::pi * hbar, data.n());
    CHECK(std::abs(res.value - Complex(expected)) < 1e-9 * expected + 1e-12);
  }
}

TEST_CASE("wick moment integral matches the closed form") {
  QuadratureConfig cfg;
  for (double hbar : {0.5, 1.0}) {
    for (const auto& data : {DeformationData::standard(1, hbar), squeezed(hbar)}) {
      for (LatticeIndex k : {LatticeIndex{1, 0}, LatticeIndex{2, 1}}) {
        for (int l0 = 0; l0 <= 3; ++l0) {
          Integrand task{Integrand::Kind::wick_moment, data, k, {}, {l0}, {}};
          auto res = integrate(task, cfg);
          CHECK(res.converged);
          CHECK(std::abs(res.value - wick_closed_form(data, k, {l0})) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("double gaussian moment matches the twisted closed form") {
  QuadratureConfig cfg;
  auto data = DeformationData::standard(1, 0.5);
  TwistCocycle sigma(data);
  for (auto [q, r] : std::vector<std::pair<LatticeIndex, LatticeIndex>>{
           {{0, 0}, {0, 0}}, {{1, 0}, {1, 0}}, {{1, 0}, {0, 1}}, {{1, 1}, {2, 0}}}) {
    Integrand task{Integrand::Kind::double_gaussian, data, q, r, {}, {}};
    auto res = integrate(task, cfg);
    CHECK(res.converged);
    LatticeIndex diff = lattice_add(r, lattice_neg(q));
    Complex expected = sigma.phase(lattice_neg(q), r) *
                       std::exp(-data.hbar() * laplacian_symbol(data, diff) / 4.0) /
                       data.g().det();
    CHECK(std::abs(res.value - expected) < 1e-8);
  }
}

TEST_CASE("gaussian star square reproduces a scaled gaussian") {
  QuadratureConfig cfg;
  for (double hbar : {0.5, 1.0}) {
    auto data = DeformationData::standard(1, hbar);
    for (std::vector<double> w : {std::vector<double>{0.0, 0.0}, {0.3, -0.2}, {1.0, -0.5}}) {
      Integrand task{Integrand::Kind::gauss_star_gauss, data, {}, {}, {}, w};
      auto res = integrate(task, cfg);
      CHECK(res.converged);
      double wGw = 0;
      const auto& G = data.g().matrix();
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) wGw += w[i] * G(i, j) * w[j];
      double gauss = std::sqrt(data.g().det()) / (std::numbers::pi * hbar) * std::exp(-wGw / hbar);
      double expected = gauss / (2 * std::numbers::pi * hbar * std::sqrt(data.g().det()));
      CHECK(std::abs(res.value - Complex(expected)) < 1e-8 * std::max(1.0, expected));
    }
  }
}

TEST_CASE("regularized product integral extrapolates to the frozen twist") {
  QuadratureConfig cfg;
  CHECK(epsilon_schedule().size() == 6);
  for (std::size_t i = 1; i < epsilon_schedule().size(); ++i) {
    CHECK(epsilon_schedule()[i] < epsilon_schedule()[i - 1]);
  }

  for (double hbar : {0.1, 1.0}) {
    auto data = DeformationData::standard(1, hbar);
    TwistCocycle sigma(data);
    for (auto [k, l] : std::vector<std::pair<LatticeIndex, LatticeIndex>>{
             {{1, 0}, {0, 1}}, {{2, -1}, {1, 1}}, {{0, 2}, {2, 0}}}) {
      auto probe = star_modes_probe(data, k, l, cfg);
      CHECK(probe.converged);
      CHECK(probe.per_epsilon.size() == epsilon_schedule().size());
      CHECK(std::abs(probe.modulus - 1.0) < 1e-4);
      // compare phases through unit-circle distance
      Complex got = probe.value / std::abs(probe.value);
      CHECK(std::abs(got - sigma.phase(k, l)) < 5e-6);
    }
  }

  // epsilon is mandatory for the direct regularized integral
  auto data = DeformationData::standard(1, 0.5);
  Integrand bad{Integrand::Kind::star_on_modes, data, {1, 0}, {0, 1}, {}, {}, 0.0};
  CHECK_THROWS_AS(integrate(bad, cfg), ConfigError);
}

TEST_CASE("oracle rejects invalid geometry requests") {
  QuadratureConfig cfg;
  auto flat = DeformationData::standard(1, 0.0);
  Integrand task{Integrand::Kind::S_hbar_on_mode, flat, {1, 0}, {}, {}, {}};
  CHECK_THROWS_AS(integrate(task, cfg), ConfigError);

  auto data2 = DeformationData::standard(2, 0.5);
  Integrand task2{Integrand::Kind::star_on_modes, data2, {1, 0, 0, 0}, {0, 0, 0, 1}, {}, {}, 0.25};
  CHECK_THROWS_AS(integrate(task2, cfg), ConfigError);
}

TEST_CASE("golden task list covers the calibration grid") {
  auto tasks = golden_tasks();
  CHECK(tasks.size() == 2403);
  std::size_t star = 0, smooth = 0, wick = 0, l2 = 0, roots = 0, doubles = 0;
  for (const auto& t : tasks) {
    switch (t.kind) {
      case Integrand::Kind::star_on_modes: ++star; break;
      case Integrand::Kind::S_hbar_on_mode: ++smooth; break;
      case Integrand::Kind::wick_moment: ++wick; break;
      case Integrand::Kind::gauss_l2: ++l2; break;
      case Integrand::Kind::gauss_star_gauss: ++roots; break;
      case Integrand::Kind::double_gaussian: ++doubles; break;
    }
    auto params = golden_params(t);
    CHECK(params.contains("n"));
    CHECK(params.contains("hbar"));
  }
  CHECK(star == 1875);
  CHECK(smooth == 100);
  CHECK(wick == 400);
  CHECK(l2 == 4);
  CHECK(roots == 12);
  CHECK(doubles == 12);
}

TEST_CASE("golden records round trip through the file format") {
  auto data = DeformationData::standard(1, 0.5);
  Integrand t1{Integrand::Kind::S_hbar_on_mode, data, {1, 0}, {}, {}, {}};
  Integrand t2{Integrand::Kind::wick_moment, data, {2, 1}, {}, {2}, {}};
  std::vector<GoldenRecord> recs;
  recs.push_back({kind_name(t1.kind), golden_params(t1), Complex(0.25, -0.125), 1e-11});
  recs.push_back({kind_name(t2.kind), golden_params(t2), Complex(-0.5, 0.75), 2e-10});

  auto path = (std::filesystem::temp_directory_path() / "ncdq_goldens_test.json").string();
  write_goldens(path, recs);
  auto loaded = read_goldens(path);
  REQUIRE(loaded.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(loaded[i].kind == recs[i].kind);
    CHECK(loaded[i].params == recs[i].params);
    CHECK(loaded[i].value == recs[i].value);
    CHECK(loaded[i].err == recs[i].err);
  }

  const auto* hit = find_golden(loaded, recs[1].kind, recs[1].params);
  REQUIRE(hit != nullptr);
  CHECK(hit->value == recs[1].value);
  CHECK(find_golden(loaded, "gauss_l2", recs[0].params) == nullptr);

  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_goldens(path), IoError);
}
