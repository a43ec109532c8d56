#pragma once

#include "neron/intersect.hpp"

#include <array>

namespace neron {

/// Projective rational point with integer coordinates (content is cleared on
/// construction; the zero tuple is rejected).
struct ProjPoint {
  std::array<Int, 3> c;  // (X : Y : Z)
  ProjPoint(Int x, Int y, Int z);
  bool on_curve(const MultiPoly& curve_xyz) const;
};

/// Degree-0 divisor supported on rational points, as a formal sum with
/// integer multiplicities. Each point contributes its vanishing ideal on
/// every standard affine chart where its unit coordinate is nonzero (charts
/// the point's closure can meet); several points on one chart combine by
/// ideal products, multiplicities by ideal powers.
DivisorSpec points_divisor(const std::string& label,
                           const std::vector<std::pair<ProjPoint, int>>& pts);

/// Projective line a X + b Y + c Z.
using Line3 = std::array<Int, 3>;

/// Divisor obtained by moving a difference of rational points off its
/// support with principal divisors of quotients of linear forms:
///   (section of plus) + S(keep) - S(drop) - (section of minus),
/// where S(l, h) is the curve section of line l with its rational point
/// removed by saturating at the helper line h; the helper must meet l on the
/// curve exactly in that point. The result is supported entirely on
/// line-section points.
struct LineMove {
  Line3 keep, keep_helper;
  Line3 drop, drop_helper;
  Line3 plus;   // extra positive full section
  Line3 minus;  // extra negative full section
};

DivisorSpec moved_line_divisor(const std::string& label,
                               const MultiPoly& curve_xyz, const LineMove& mv);

}  // namespace neron
