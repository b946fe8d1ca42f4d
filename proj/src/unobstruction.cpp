#include "lagcob/unobstruction.hpp"

#include <algorithm>

#include "json.hpp"

namespace lagcob {

namespace {

// prefixes[i] is the tile word of chord i.
std::vector<GroupWord> chord_prefixes(const CurveDiagram& c) {
  std::vector<Letter> letters = c.letters();
  std::vector<GroupWord> out(std::max<std::size_t>(letters.size(), 1));
  for (std::size_t i = 1; i < out.size(); ++i) {
    out[i] = out[i - 1];
    out[i].push_back(letters[i - 1]);
  }
  return out;
}

// Letters passed when moving forward along c from (sa, ua) to (sb, ub).
GroupWord arc_word(const CurveDiagram& c, int sa, double ua, int sb, double ub) {
  GroupWord w;
  if (sa == sb && ub >= ua) return w;
  int k = sa;
  do {
    const Node& n = c.node(k);
    if (n.is_cross()) w.push_back(c.model().exit_letter(n.side));
    k = c.next(k);
  } while (k != sb);
  return w;
}

}  // namespace

int lift_bound(const CurveDiagram& c) {
  GroupWord g = c.letters();
  const int genus = c.model().genus();
  if (g.empty() || is_trivial(g, genus)) return 0;
  int target = 2 * std::max(0, c.num_crossings() - 1) + static_cast<int>(g.size());
  int k = 1;
  while (reduced_power_length(g, k, genus) <= target) ++k;
  return k;
}

LiftWindow develop_lift(const CurveDiagram& c, int bound) {
  LiftWindow win{c, c.letters(), {}, bound};
  auto prefixes = chord_prefixes(c);
  for (int p = -bound; p <= bound; ++p) {
    GroupWord base = power(win.period_word, p);
    for (std::size_t i = 0; i < prefixes.size(); ++i)
      win.chords.push_back({free_reduce(concat(base, prefixes[i])), static_cast<int>(i), p});
  }
  return win;
}

LiftWindow develop_lift(const CurveDiagram& c) { return develop_lift(c, lift_bound(c)); }

bool lift_is_proper(const CurveDiagram& c) {
  return !is_trivial(c.letters(), c.model().genus());
}

std::optional<LiftWitness> lift_obstruction(const CurveDiagram& c, int bound) {
  if (bound < 0) bound = lift_bound(c);
  const int genus = c.model().genus();
  auto prefixes = chord_prefixes(c);
  GroupWord g = c.letters();
  for (const auto& x : self_intersections(c)) {
    GroupWord head = inverse(prefixes[x.chord1]);
    for (int k = 0; k <= bound; ++k) {
      for (int s : {k, -k}) {
        if (k == 0 && s != 0) continue;
        if (is_trivial(concat(concat(head, power(g, s)), prefixes[x.chord2]), genus))
          return LiftWitness{x, s};
      }
    }
  }
  return std::nullopt;
}

bool lift_is_embedded(const CurveDiagram& c) { return !lift_obstruction(c).has_value(); }

UnobstructedResult is_unobstructed(const CurveDiagram& c) {
  UnobstructedResult r;
  r.proper = lift_is_proper(c);
  if (!r.proper) return r;
  r.witness = lift_obstruction(c);
  r.unobstructed = !r.witness;
  return r;
}

std::vector<BigonWitness> find_bigons(const CurveDiagram& c1, const CurveDiagram& c2) {
  auto pts = intersections(c1, c2);
  const int genus = c1.model().genus();
  std::vector<BigonWitness> out;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    for (int j = 0; j < static_cast<int>(pts.size()); ++j) {
      if (i == j) continue;
      const auto &x = pts[i], &y = pts[j];
      GroupWord w1 = arc_word(c1, x.seg1, x.u1, y.seg1, y.u1);
      GroupWord fwd = arc_word(c2, x.seg2, x.u2, y.seg2, y.u2);
      GroupWord back = inverse(arc_word(c2, y.seg2, y.u2, x.seg2, x.u2));
      for (bool forward : {true, false}) {
        const GroupWord& w2 = forward ? fwd : back;
        if (!is_trivial(concat(w1, inverse(w2)), genus)) continue;
        BigonWitness b{i, j, x, y, x.seg1, y.seg1, 0, 0, forward};
        b.c2_from = forward ? x.seg2 : y.seg2;
        b.c2_to = forward ? y.seg2 : x.seg2;
        out.push_back(b);
      }
    }
  }
  return out;
}

bool in_minimal_position(const CurveDiagram& c1, const CurveDiagram& c2) {
  return find_bigons(c1, c2).empty();
}

namespace {

nlohmann::json point_json(const IntersectionPoint& p) {
  return {{"seg1", p.seg1}, {"seg2", p.seg2}, {"chord1", p.chord1}, {"chord2", p.chord2},
          {"u1", p.u1},     {"u2", p.u2},     {"pos", {p.pos.x, p.pos.y}}};
}

}  // namespace

std::string witness_to_json(const LiftWitness& w) {
  nlohmann::json j = point_json(w.point);
  j["period"] = w.period;
  return j.dump();
}

std::string witness_to_json(const BigonWitness& w) {
  nlohmann::json j;
  j["x"] = point_json(w.px);
  j["y"] = point_json(w.py);
  j["c1_segments"] = {w.c1_from, w.c1_to};
  j["c2_segments"] = {w.c2_from, w.c2_to};
  j["c2_forward"] = w.c2_forward;
  return j.dump();
}

}  // namespace lagcob
