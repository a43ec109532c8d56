#pragma once

#include "neron/intersect.hpp"
#include "neron/model.hpp"
#include "neron/theta.hpp"

#include <array>
#include <map>
#include <string>

namespace neron {

struct MissingFixture : std::runtime_error {
  explicit MissingFixture(const std::string& path)
      : std::runtime_error("missing fixture: " + path) {}
};

struct FixtureError : std::runtime_error {
  explicit FixtureError(const std::string& what)
      : std::runtime_error("bad fixture: " + what) {}
};

/// Period fixture: analytic Jacobian data plus the projective lines whose
/// curve sections were labelled by the generator (used to rebuild the
/// matching divisor ideals exactly).
struct PeriodFixture {
  std::string curve;
  PeriodData period;
  std::map<std::string, std::array<long, 3>> lines;  // pX + qY + rZ
};

/// Load and validate a period fixture (schema_version 1, kind "period").
/// Throws MissingFixture when the file does not exist and FixtureError on
/// malformed content. Values are parsed at the current working precision.
PeriodFixture load_period_fixture(const std::string& path);

}  // namespace neron
