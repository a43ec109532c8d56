#include "neron/fixtures.hpp"

#include <fstream>

#include "json.hpp"

namespace neron {

namespace {

using nlohmann::json;

Real parse_real(const json& j) {
  if (!j.is_string()) throw FixtureError("numeric fields must be decimal strings");
  try {
    return Real(j.get<std::string>());
  } catch (const std::exception&) {
    throw FixtureError("unparsable decimal string: " + j.get<std::string>());
  }
}

Cplx parse_cplx(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw FixtureError("complex values must be [re, im] string pairs");
  return Cplx{parse_real(j[0]), parse_real(j[1])};
}

}  // namespace

PeriodFixture load_period_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingFixture(path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw FixtureError(path + ": " + e.what());
  }
  if (!j.contains("schema_version") || j["schema_version"] != 1)
    throw FixtureError(path + ": unknown schema_version");
  if (!j.contains("kind") || j["kind"] != "period")
    throw FixtureError(path + ": not a period fixture");

  PeriodFixture out;
  out.curve = j.value("curve", "");
  PeriodData& p = out.period;
  p.g = j.at("g").get<unsigned>();
  p.precision = j.value("precision", 30u);

  const auto& tau = j.at("tau");
  if (tau.size() != p.g) throw FixtureError("tau has wrong dimension");
  p.tau = CMat(p.g, std::vector<Cplx>(p.g));
  for (unsigned i = 0; i < p.g; ++i) {
    if (tau[i].size() != p.g) throw FixtureError("tau has wrong dimension");
    for (unsigned k = 0; k < p.g; ++k) p.tau[i][k] = parse_cplx(tau[i][k]);
  }

  for (const auto& [label, vec] : j.at("aj").items()) {
    if (vec.size() != p.g) throw FixtureError("aj[" + label + "] has wrong dimension");
    CVec z(p.g);
    for (unsigned i = 0; i < p.g; ++i) z[i] = parse_cplx(vec[i]);
    p.aj.emplace(label, std::move(z));
  }

  const auto& can = j.at("canonical_image");
  if (can.size() != p.g) throw FixtureError("canonical_image has wrong dimension");
  p.canonical_image = CVec(p.g);
  for (unsigned i = 0; i < p.g; ++i) p.canonical_image[i] = parse_cplx(can[i]);

  for (const auto& t : j.value("theta_test", json::array())) {
    std::string label = t.get<std::string>();
    if (!p.aj.count(label))
      throw FixtureError("theta_test label without aj entry: " + label);
    p.theta_test.push_back(std::move(label));
  }

  if (j.contains("lines")) {
    for (const auto& [name, coeffs] : j["lines"].items()) {
      if (coeffs.size() != 3) throw FixtureError("line " + name + " needs 3 coefficients");
      out.lines[name] = {coeffs[0].get<long>(), coeffs[1].get<long>(),
                         coeffs[2].get<long>()};
    }
  }
  return out;
}

}  // namespace neron
