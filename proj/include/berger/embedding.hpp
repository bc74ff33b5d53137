#pragma once

// Embeddedness of a rotational sphere, decided on the planar orbit-space curve
// of its meridian. Crossings use exact orientation predicates on coordinates
// snapped to a 2^-59 grid; the robustness margin is a floating-point distance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "berger/errors.hpp"
#include "berger/meridian.hpp"

namespace berger {

namespace planar {

struct FixedPoint {
  std::int64_t x, y;
};

inline constexpr int kFixedShift = 59;

/// Snaps a coordinate in [-2, 2] to the fixed grid.
inline FixedPoint snap(const Point2& p) {
  if (!(std::abs(p.x) <= 2.0) || !(std::abs(p.y) <= 2.0)) {
    throw ContractError("planar::snap: coordinates must lie in [-2, 2]");
  }
  return {std::llround(std::ldexp(p.x, kFixedShift)), std::llround(std::ldexp(p.y, kFixedShift))};
}

/// Sign of the orientation determinant of (a, b, c), exact.
inline int orient(const FixedPoint& a, const FixedPoint& b, const FixedPoint& c) {
  const __int128 abx = static_cast<__int128>(b.x) - a.x;
  const __int128 aby = static_cast<__int128>(b.y) - a.y;
  const __int128 acx = static_cast<__int128>(c.x) - a.x;
  const __int128 acy = static_cast<__int128>(c.y) - a.y;
  const __int128 det = abx * acy - aby * acx;
  return (det > 0) - (det < 0);
}

/// True when the open segments ab and cd cross at a single interior point.
inline bool crosses_properly(const FixedPoint& a, const FixedPoint& b, const FixedPoint& c, const FixedPoint& d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

inline double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

/// Euclidean distance between two closed segments that do not cross.
inline double segment_distance(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d), point_segment_distance(c, a, b),
                   point_segment_distance(d, a, b)});
}

}  // namespace planar

enum class EmbeddingVerdict { Embedded, NotEmbedded, Undecided };

inline const char* to_string(EmbeddingVerdict v) {
  switch (v) {
    case EmbeddingVerdict::Embedded: return "embedded";
    case EmbeddingVerdict::NotEmbedded: return "not_embedded";
    default: return "undecided";
  }
}

struct EmbeddednessReport {
  EmbeddingVerdict verdict{EmbeddingVerdict::Undecided};
  /// Minimum distance between non-adjacent segments (0 when they cross).
  double margin{std::numeric_limits<double>::infinity()};
  /// Longest segment of the polyline.
  double resolution{0.0};
  std::size_t crossings{0};

  bool embedded() const { return verdict == EmbeddingVerdict::Embedded; }
};

/// Classifies an open planar polyline. Segment pairs closer than `window_factor`
/// resolutions along the curve are adjacent and skipped; a margin under
/// `margin_factor` resolutions without crossings is undecided.
inline EmbeddednessReport classify_polyline(const std::vector<Point2>& pts, double window_factor = 20.0,
                                            double margin_factor = 10.0) {
  if (pts.size() < 4) throw ContractError("classify_polyline: need at least 4 points");
  const std::size_t ns = pts.size() - 1;
  std::vector<planar::FixedPoint> fp(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) fp[i] = planar::snap(pts[i]);

  std::vector<double> arc(pts.size(), 0.0);
  EmbeddednessReport rep;
  for (std::size_t i = 0; i < ns; ++i) {
    const double len = std::hypot(pts[i + 1].x - pts[i].x, pts[i + 1].y - pts[i].y);
    arc[i + 1] = arc[i] + len;
    rep.resolution = std::max(rep.resolution, len);
  }
  const double window = window_factor * rep.resolution;

  struct Box {
    double x0, x1, y0, y1;
  };
  std::vector<Box> box(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    box[i] = {std::min(pts[i].x, pts[i + 1].x), std::max(pts[i].x, pts[i + 1].x), std::min(pts[i].y, pts[i + 1].y),
              std::max(pts[i].y, pts[i + 1].y)};
  }
  std::vector<std::size_t> order(ns);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return box[a].x0 < box[b].x0 || (box[a].x0 == box[b].x0 && a < b);
  });

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t oi = 0; oi < ns; ++oi) {
    const std::size_t i = order[oi];
    for (std::size_t oj = oi + 1; oj < ns; ++oj) {
      const std::size_t j = order[oj];
      if (box[j].x0 > box[i].x1 + best) break;
      if (box[j].y0 > box[i].y1 + best || box[i].y0 > box[j].y1 + best) continue;
      const std::size_t lo = std::min(i, j), hi = std::max(i, j);
      if (arc[hi] - arc[lo + 1] <= window) continue;
      if (planar::crosses_properly(fp[i], fp[i + 1], fp[j], fp[j + 1])) {
        ++rep.crossings;
        best = 0.0;
        continue;
      }
      best = std::min(best, planar::segment_distance(pts[i], pts[i + 1], pts[j], pts[j + 1]));
    }
  }
  rep.margin = best;
  if (rep.crossings > 0) {
    rep.verdict = EmbeddingVerdict::NotEmbedded;
  } else if (rep.margin < margin_factor * rep.resolution) {
    rep.verdict = EmbeddingVerdict::Undecided;
  } else {
    rep.verdict = EmbeddingVerdict::Embedded;
  }
  return rep;
}

/// Embeddedness of the sphere swept by the meridian.
inline EmbeddednessReport is_embedded(const MeridianProfile& m) { return classify_polyline(orbit_space_curve(m)); }

/// Reconstructs S_alpha(H) on [-X, X] with n samples and classifies it.
inline EmbeddednessReport sphere_embeddedness(const BergerParam& p, double H, double X = 10.0, int n = 4096) {
  return is_embedded(reconstruct_meridian(p, H, X, n));
}

}  // namespace berger
