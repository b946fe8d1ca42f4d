#pragma once
// Test-side reference computations that avoid the library's own geometry routines.

#include <cmath>
#include <random>
#include <vector>

#include "lagcob/curve_diagram.hpp"

namespace oracle {

using lagcob::CurveDiagram;
using lagcob::Vec2;

inline double orient(Vec2 a, Vec2 b, Vec2 c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Proper crossing of closed segments by orientation signs.
inline bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
         o4 != 0;
}

inline std::vector<std::pair<Vec2, Vec2>> segments(const CurveDiagram& c) {
  std::vector<std::pair<Vec2, Vec2>> out;
  for (int k = 0; k < c.size(); ++k) out.push_back({c.seg_start(k), c.seg_end(k)});
  return out;
}

inline int count_self_crossings(const CurveDiagram& c) {
  auto s = segments(c);
  int n = static_cast<int>(s.size()), count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (segments_cross(s[i].first, s[i].second, s[j].first, s[j].second)) ++count;
  return count;
}

inline int count_crossings(const CurveDiagram& a, const CurveDiagram& b) {
  int count = 0;
  for (auto& p : segments(a))
    for (auto& q : segments(b))
      if (segments_cross(p.first, p.second, q.first, q.second)) ++count;
  return count;
}

// Turning from unit tangents: each corner contributes atan2(cross, dot) of the
// transported incoming direction and the outgoing one, plus the frame jump.
inline double turning(const CurveDiagram& c) {
  double total = 0;
  auto s = segments(c);
  int n = static_cast<int>(s.size());
  for (int k = 0; k < n; ++k) {
    Vec2 din = s[k].second - s[k].first, dout = s[(k + 1) % n].second - s[(k + 1) % n].first;
    double rho = 0;
    if (c.node(k).is_cross()) {
      rho = c.model().side_rotation(c.node(k).side);
      din = lagcob::rotate(din, rho);
    }
    total += std::atan2(din.x * dout.y - din.y * dout.x, din.x * dout.x + din.y * dout.y) + rho;
  }
  return total / (2 * M_PI);
}

// Letter-count abelianization of the crossing word.
inline std::vector<int> abelian(const CurveDiagram& c) {
  std::vector<int> v(c.model().rank(), 0);
  for (auto l : c.letters()) v[l.gen] += l.sign;
  return v;
}

inline lagcob::GroupWord random_word(std::mt19937_64& rng, int genus, int max_len) {
  lagcob::GroupWord w;
  int len = 1 + static_cast<int>(rng() % max_len);
  while (static_cast<int>(w.size()) < len) {
    lagcob::Letter l{static_cast<int>(rng() % (2 * genus)), rng() % 2 ? 1 : -1};
    if (!w.empty() && w.back() == l.inverse()) continue;
    w.push_back(l);
  }
  return w;
}

// Brute-force lift check: chord i of period 0 against chord j of period k, compared
// tile by tile, crossing decided by orientation signs.
inline bool lift_self_crosses(const CurveDiagram& c, int bound) {
  using namespace lagcob;
  int genus = c.model().genus();
  auto letters = c.letters();
  int chords = std::max<int>(c.num_crossings(), 1);
  std::vector<GroupWord> tile(chords);
  for (int i = 1; i < chords; ++i) {
    tile[i] = tile[i - 1];
    tile[i].push_back(letters[i - 1]);
  }
  auto segs = segments(c);
  for (int i = 0; i < chords; ++i)
    for (int j = 0; j < chords; ++j)
      for (int k = -bound; k <= bound; ++k) {
        GroupWord w = inverse(tile[i]);
        for (int r = 0; r < std::abs(k); ++r) w = concat(w, k > 0 ? letters : inverse(letters));
        w = concat(w, tile[j]);
        if (!is_trivial(w, genus)) continue;
        for (int a = 0; a < c.size(); ++a)
          for (int b = 0; b < c.size(); ++b) {
            if (c.chord_of_segment(a) != i || c.chord_of_segment(b) != j) continue;
            if (a == b && k == 0) continue;
            if (segments_cross(segs[a].first, segs[a].second, segs[b].first, segs[b].second))
              return true;
          }
      }
  return false;
}

}  // namespace oracle
