#pragma once

#include <cmath>
#include <numbers>

namespace lagcob {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double angle_of(Vec2 a) { return std::atan2(a.y, a.x); }
inline Vec2 rot90(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 rotate(Vec2 a, double th) {
  double c = std::cos(th), s = std::sin(th);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}
inline Vec2 lerp(Vec2 a, Vec2 b, double s) { return a + s * (b - a); }

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  if (a > kPi) a -= kTwoPi;
  return a;
}

// Integral of (x dy - y dx)/2 along the segment a -> b.
inline double segment_area(Vec2 a, Vec2 b) { return 0.5 * cross(a, b); }

// Signed area swept by a segment moving linearly from (u, v) to (u2, v2).
inline double moving_segment_area(Vec2 u, Vec2 v, Vec2 u2, Vec2 v2) {
  Vec2 du = u2 - u, dv = v2 - v;
  return cross(0.5 * (du + dv), (v - u) + 0.5 * (dv - du));
}

template <class Range>
double shoelace(const Range& pts) {
  double s = 0.0;
  std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) s += segment_area(pts[i], pts[(i + 1) % n]);
  return s;
}

struct SegmentHit {
  bool hit = false;
  double s = 0.0;  // parameter along the first segment
  double u = 0.0;  // parameter along the second segment
};

// Proper crossing of open segments p0p1 and q0q1.
inline SegmentHit segment_intersection(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1) {
  Vec2 r = p1 - p0, d = q1 - q0;
  double den = cross(r, d);
  SegmentHit h;
  if (std::abs(den) < 1e-300) return h;
  Vec2 w = q0 - p0;
  double s = cross(w, d) / den;
  double u = cross(w, r) / den;
  if (s > 0.0 && s < 1.0 && u > 0.0 && u < 1.0) {
    h.hit = true;
    h.s = s;
    h.u = u;
  }
  return h;
}

}  // namespace lagcob
