#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <ncdq/serialization.hpp>
#include <ncdq/version.hpp>

using namespace ncdq;

TEST_CASE("fourier element json round trip") {
  FourierElement a(2);
  a.set_coeff({1, -3, 0, 2}, Complex(0.5, -0.25));
  a.set_coeff({0, 0, 0, 0}, Complex(1.0, 0.0));
  a.set_coeff({-2, 1, 4, -1}, Complex(-0.125, 0.75));
  auto j = to_json(a);
  CHECK(j.at("dim") == 4);
  CHECK(j.at("terms").size() == 3);
  auto back = element_from_json(j);
  CHECK(back == a);

  // terms are sorted by the storage order, first key first
  CHECK(j.at("terms")[0].at("k")[0] == -2);

  json bad = {{"dim", 3}, {"terms", json::array()}};
  CHECK_THROWS_AS(element_from_json(bad), std::invalid_argument);
}

TEST_CASE("deformation data json round trip") {
  Eigen::MatrixXd g2(2, 2);
  g2 << 4.0, 0.0, 0.0, 0.25;
  DeformationData data(SymplecticForm::standard(1), Metric(g2), 0.75);
  auto j = to_json(data);
  CHECK(j.at("n") == 1);
  CHECK(j.at("hbar") == 0.75);
  auto back = deformation_from_json(j);
  CHECK(back.hbar() == data.hbar());
  CHECK((back.g().matrix() - g2).norm() == 0.0);
  CHECK((back.theta().matrix() - data.theta().matrix()).norm() == 0.0);

  json bad = j;
  bad["g"] = {{1.0, 0.0}, {0.0, 2.0}};  // incompatible metric
  CHECK_THROWS_AS(deformation_from_json(bad), IncompatibilityError);
}

TEST_CASE("state json round trip") {
  auto mix = MomentState::mixture(
      {0.25, 0.75}, {MomentState::point({0.3, -1.2}), MomentState::haar(1)});
  auto j = to_json(mix);
  CHECK(j.at("kind") == "mixture");
  auto back = state_from_json(j);
  CHECK(back.kind() == MomentState::Kind::mixture);
  for (LatticeIndex k : {LatticeIndex{0, 0}, LatticeIndex{1, 0}, LatticeIndex{2, -1}}) {
    CHECK(std::abs(back.moment(k) - mix.moment(k)) < 1e-16);
  }
  json bad = {{"kind", "delta"}, {"n", 1}};
  CHECK_THROWS_AS(state_from_json(bad), ConfigError);
}

TEST_CASE("profile and section json round trip") {
  auto p = Profile::polynomial({1.0, -0.5, 0.25}).shifted(0.1);
  auto jp = to_json(p);
  auto pb = profile_from_json(jp);
  CHECK(pb.value(0.7) == p.value(0.7));

  auto e = Profile::exp_decay(2.0, 1.5);
  CHECK(profile_from_json(to_json(e)).value(0.3) == e.value(0.3));

  Section s;
  s.n = 1;
  s.terms.push_back({Profile::constant(1.0), FourierElement::basis(1, {1, 0}, Complex(0.5, 0.5))});
  s.terms.push_back({p, FourierElement::unit(1)});
  auto js = to_json(s);
  auto sb = section_from_json(js);
  CHECK(sb.n == 1);
  REQUIRE(sb.terms.size() == 2);
  CHECK(evaluate_section(sb, 0.9) == evaluate_section(s, 0.9));
}

TEST_CASE("norm bracket and report json") {
  NormBracket br{1.25, 2.5, 8};
  auto j = to_json(br);
  CHECK(j.at("lower") == 1.25);
  CHECK(j.at("upper") == 2.5);
  CHECK(j.at("N") == 8);

  VerificationReport r;
  r.check = "sample";
  r.add_case("unit case", Complex(1, 0), Complex(1, 1e-13), 1e-12);
  r.add_bound_case("bound case", 1e-10, 2e-10);
  CHECK(!r.pass);
  CHECK(r.failed_count() == 1);
  auto jr = to_json(r);
  CHECK(jr.at("version") == kVersion);
  CHECK(jr.at("twist_convention") == kTwistConvention);
  CHECK(jr.at("pass") == false);
  CHECK(jr.at("cases").size() == 2);
  CHECK(jr.at("cases")[0].at("pass") == true);
}

TEST_CASE("quadrature config json round trip") {
  QuadratureConfig cfg;
  cfg.order = 24;
  cfg.target_tol = 1e-9;
  cfg.max_refinements = 3;
  cfg.scheme = QuadratureConfig::Scheme::trapezoid;
  cfg.box_radius = 5.5;
  auto j = quadrature_to_json(cfg);
  CHECK(j.at("scheme") == "trapezoid");
  auto back = quadrature_from_json(j);
  CHECK(back.order == 24);
  CHECK(back.target_tol == 1e-9);
  CHECK(back.max_refinements == 3);
  CHECK(back.scheme == QuadratureConfig::Scheme::trapezoid);
  CHECK(back.box_radius == 5.5);

  json bad = j;
  bad["order"] = 2;
  CHECK_THROWS_AS(quadrature_from_json(bad), ConfigError);
  bad = j;
  bad["scheme"] = "monte_carlo";
  CHECK_THROWS_AS(quadrature_from_json(bad), ConfigError);
}

TEST_CASE("file io and error mapping") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path();
  auto good = (dir / "ncdq_io_test.json").string();
  write_text_file(good, "{\"x\": 1}\n");
  auto j = read_json_file(good);
  CHECK(j.at("x") == 1);

  auto badpath = (dir / "ncdq_io_bad.json").string();
  write_text_file(badpath, "{ not json");
  CHECK_THROWS_AS(read_json_file(badpath), ConfigError);

  CHECK_THROWS_AS(read_json_file((dir / "ncdq_io_missing.json").string()), IoError);
  CHECK_THROWS_AS(write_text_file("/nonexistent_dir_ncdq/file.txt", "x"), IoError);

  fs::remove(good);
  fs::remove(badpath);
}
