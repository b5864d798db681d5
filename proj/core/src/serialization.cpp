#include "ncdq/serialization.hpp"

#include <fstream>

#include "ncdq/version.hpp"

namespace ncdq {

namespace {

Eigen::MatrixXd matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(what) + ": expected a matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ConfigError(std::string(what) + ": ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

[[noreturn]] void rethrow_config(const char* what, const json::exception& e) {
  throw ConfigError(std::string(what) + ": " + e.what());
}

}  // namespace

json to_json(const FourierElement& a) {
  json terms = json::array();
  for (const auto& [k, c] : a.terms())
    terms.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
  return {{"dim", a.dim()}, {"terms", std::move(terms)}};
}

FourierElement element_from_json(const json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    if (dim < 2 || dim % 2 != 0) throw ConfigError("element: dim must be a positive even integer");
    FourierElement a(dim / 2);
    for (const auto& term : j.at("terms")) {
      const auto k = term.at("k").get<LatticeIndex>();
      if (static_cast<int>(k.size()) != dim)
        throw ConfigError("element: term index length differs from dim");
      a.add_coeff(k, Complex(term.at("re").get<double>(), term.at("im").get<double>()));
    }
    return a;
  } catch (const json::exception& e) {
    rethrow_config("element", e);
  }
}

json to_json(const DeformationData& data) {
  return {{"n", data.n()},
          {"theta", matrix_to_json(data.theta().matrix())},
          {"g", matrix_to_json(data.g().matrix())},
          {"hbar", data.hbar()}};
}

DeformationData deformation_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    if (n < 1) throw ConfigError("deformation: n must be >= 1");
    const Eigen::MatrixXd theta = matrix_from_json(j.at("theta"), "deformation.theta");
    const Eigen::MatrixXd g = matrix_from_json(j.at("g"), "deformation.g");
    if (theta.rows() != 2 * n || theta.cols() != 2 * n || g.rows() != 2 * n || g.cols() != 2 * n)
      throw ConfigError("deformation: matrices must be 2n x 2n");
    return DeformationData(SymplecticForm(theta), Metric(g), j.at("hbar").get<double>());
  } catch (const json::exception& e) {
    rethrow_config("deformation", e);
  }
}

json to_json(const MomentState& s) {
  json j;
  j["n"] = s.n();
  switch (s.kind()) {
    case MomentState::Kind::point:
      j["kind"] = "point";
      j["x"] = s.x();
      break;
    case MomentState::Kind::haar:
      j["kind"] = "haar";
      break;
    case MomentState::Kind::mixture: {
      j["kind"] = "mixture";
      j["weights"] = s.weights();
      json comps = json::array();
      for (const auto& c : s.components()) comps.push_back(to_json(c));
      j["components"] = std::move(comps);
      break;
    }
  }
  return j;
}

MomentState state_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "point") return MomentState::point(j.at("x").get<std::vector<double>>());
    if (kind == "haar") return MomentState::haar(j.at("n").get<int>());
    if (kind == "mixture") {
      std::vector<MomentState> comps;
      for (const auto& c : j.at("components")) comps.push_back(state_from_json(c));
      return MomentState::mixture(j.at("weights").get<std::vector<double>>(), std::move(comps));
    }
    throw ConfigError("state: unknown kind: " + kind);
  } catch (const json::exception& e) {
    rethrow_config("state", e);
  }
}

json to_json(const Profile& p) {
  json j;
  switch (p.kind) {
    case Profile::Kind::constant:
      j["kind"] = "constant";
      j["coeffs"] = p.coeffs;
      break;
    case Profile::Kind::polynomial:
      j["kind"] = "polynomial";
      j["coeffs"] = p.coeffs;
      break;
    case Profile::Kind::exp_decay:
      j["kind"] = "exp_decay";
      j["amp"] = p.amp;
      j["rate"] = p.rate;
      break;
  }
  if (p.shift != 0) j["shift"] = p.shift;
  return j;
}

Profile profile_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    Profile p;
    if (kind == "constant") {
      const auto coeffs = j.at("coeffs").get<std::vector<double>>();
      if (coeffs.size() != 1) throw ConfigError("profile: constant takes exactly one coefficient");
      p = Profile::constant(coeffs.front());
    } else if (kind == "polynomial") {
      p = Profile::polynomial(j.at("coeffs").get<std::vector<double>>());
    } else if (kind == "exp_decay") {
      p = Profile::exp_decay(j.at("amp").get<double>(), j.at("rate").get<double>());
    } else {
      throw ConfigError("profile: unknown kind: " + kind);
    }
    if (j.contains("shift")) p = p.shifted(j.at("shift").get<double>());
    return p;
  } catch (const json::exception& e) {
    rethrow_config("profile", e);
  }
}

json to_json(const Section& s) {
  json terms = json::array();
  for (const auto& t : s.terms)
    terms.push_back({{"profile", to_json(t.profile)}, {"element", to_json(t.element)}});
  return {{"n", s.n}, {"terms", std::move(terms)}};
}

Section section_from_json(const json& j) {
  try {
    Section s;
    s.n = j.at("n").get<int>();
    if (s.n < 1) throw ConfigError("section: n must be >= 1");
    for (const auto& t : j.at("terms")) {
      SectionTerm term{profile_from_json(t.at("profile")), element_from_json(t.at("element"))};
      if (term.element.n() != s.n)
        throw ConfigError("section: term element dimension differs from section dimension");
      s.terms.push_back(std::move(term));
    }
    return s;
  } catch (const json::exception& e) {
    rethrow_config("section", e);
  }
}

json to_json(const NormBracket& b) {
  return {{"lower", b.lower}, {"upper", b.upper}, {"N", b.N}};
}

json to_json(const VerificationReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) {
    cases.push_back({{"input", c.input},
                     {"expected", {c.expected.real(), c.expected.imag()}},
                     {"got", {c.got.real(), c.got.imag()}},
                     {"abs_err", c.abs_err},
                     {"tol", c.tol},
                     {"pass", c.pass}});
  }
  return {{"check", r.check},
          {"pass", r.pass},
          {"version", kVersion},
          {"twist_convention", kTwistConvention},
          {"cases", std::move(cases)}};
}

json quadrature_to_json(const QuadratureConfig& cfg) {
  return {{"order", cfg.order},
          {"box_radius", cfg.box_radius},
          {"target_tol", cfg.target_tol},
          {"max_refinements", cfg.max_refinements},
          {"scheme",
           cfg.scheme == QuadratureConfig::Scheme::gauss_hermite ? "gauss_hermite" : "trapezoid"}};
}

QuadratureConfig quadrature_from_json(const json& j) {
  try {
    QuadratureConfig cfg;
    if (j.contains("order")) cfg.order = j.at("order").get<int>();
    if (j.contains("box_radius")) cfg.box_radius = j.at("box_radius").get<double>();
    if (j.contains("target_tol")) cfg.target_tol = j.at("target_tol").get<double>();
    if (j.contains("max_refinements")) cfg.max_refinements = j.at("max_refinements").get<int>();
    if (j.contains("scheme")) {
      const std::string s = j.at("scheme").get<std::string>();
      if (s == "gauss_hermite")
        cfg.scheme = QuadratureConfig::Scheme::gauss_hermite;
      else if (s == "trapezoid")
        cfg.scheme = QuadratureConfig::Scheme::trapezoid;
      else
        throw ConfigError("quadrature: unknown scheme: " + s);
    }
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    rethrow_config("quadrature", e);
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing: " + path);
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing file: " + path);
}

}  // namespace ncdq
