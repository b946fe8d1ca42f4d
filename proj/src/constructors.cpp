#include <cmath>
#include <algorithm>
#include <map>
#include <stdexcept>

#include "lagcob/curve_diagram.hpp"

namespace lagcob {

namespace {

void require_valid(const CurveDiagram& c, const char* what) {
  auto bad = validate(c);
  if (!bad.empty()) throw std::logic_error(std::string(what) + ": " + bad.front());
}

}  // namespace

CurveDiagram diagram_from_crossings(const ModelPtr& model, const std::vector<Node>& crosses) {
  const SurfaceModel& m = *model;
  std::vector<Node> nodes;
  int nc = static_cast<int>(crosses.size());
  for (int i = 0; i < nc; ++i) {
    const Node& prev = crosses[(i + nc - 1) % nc];
    const Node& cur = crosses[i];
    int entry = m.pairing(prev.side);
    if (entry == cur.side) {
      Vec2 p = m.point(entry, Rational(1 - prev.t)), q = m.point(cur.side, cur.t);
      Vec2 inward = -1.0 * m.outward_normal(cur.side);
      nodes.push_back(Node::point(0.5 * (p + q) + 0.3 * norm(q - p) * inward));
    }
    nodes.push_back(cur);
  }
  return CurveDiagram(model, std::move(nodes));
}

CurveDiagram from_word_raw(const GroupWord& w, const ModelPtr& model) {
  const SurfaceModel& m = *model;
  if (w.empty()) return small_circle(model);
  for (Letter l : w)
    if (l.gen < 0 || l.gen >= m.rank()) throw std::invalid_argument("letter out of range");
  std::map<int, int> per_edge, seen;
  std::vector<int> sides;
  for (Letter l : w) {
    int s = m.exit_side(l);
    sides.push_back(s);
    ++per_edge[m.edge_of(s)];
  }
  std::vector<Node> crosses;
  for (int s : sides) {
    int e = m.edge_of(s);
    Rational u(seen[e]++ + 1, per_edge[e] + 1);
    u.canonicalize();
    crosses.push_back(Node::cross(s, m.edge_param(s, u)));
  }
  return diagram_from_crossings(model, crosses);
}

CurveDiagram from_word(const GroupWord& w, const ModelPtr& model) {
  GroupWord r = cyclic_reduce(w, model->genus());
  return tighten(from_word_raw(r, model));
}

CurveDiagram tighten(const CurveDiagram& input) {
  CurveDiagram c = input;
  const SurfaceModel& m = c.model();
  // Backtracks through an edge.
  bool progress = true;
  while (progress) {
    progress = false;
    int nc = c.num_crossings();
    if (nc < 3) break;
    for (int j = 0; j < nc; ++j) {
      if (c.node(c.cross_node((j + 1) % nc)).side != m.pairing(c.node(c.cross_node(j)).side))
        continue;
      try {
        c = apply_move(c, EdgePush{EdgePush::Op::Remove, j, 1}).curve;
        progress = true;
        break;
      } catch (const std::invalid_argument&) {
      }
    }
  }
  // Exchange neighbouring parameters on an edge while that lowers the double-point count.
  std::size_t count = self_intersections(c).size();
  progress = true;
  while (progress && count > 0) {
    progress = false;
    int nc = c.num_crossings();
    std::vector<std::pair<std::pair<int, Rational>, int>> order;
    for (int i = 0; i < nc; ++i) {
      int k = c.cross_node(i);
      const Node& nd = c.node(k);
      if (!c.is_straight_chord(k) || !c.is_straight_chord(c.next(k))) continue;
      order.push_back({{m.edge_of(nd.side), m.edge_param(nd.side, nd.t)}, i});
    }
    std::sort(order.begin(), order.end());
    for (std::size_t q = 0; q + 1 < order.size() && !progress; ++q) {
      if (order[q].first.first != order[q + 1].first.first) continue;
      std::vector<Node> nodes = c.nodes();
      int k1 = c.cross_node(order[q].second), k2 = c.cross_node(order[q + 1].second);
      Rational u1 = order[q].first.second, u2 = order[q + 1].first.second;
      nodes[k1].t = m.edge_param(nodes[k1].side, u2);
      nodes[k2].t = m.edge_param(nodes[k2].side, u1);
      CurveDiagram cand(c.model_ptr(), nodes);
      if (!validate(cand).empty()) continue;
      std::size_t cc = self_intersections(cand).size();
      if (cc < count) {
        c = cand;
        count = cc;
        progress = true;
      }
    }
  }
  return c;
}

CurveDiagram small_circle(const ModelPtr& model) {
  double r = 0.2 * norm(model->corner(0));
  std::vector<Node> nodes;
  for (int k = 0; k < 6; ++k) {
    double th = kTwoPi * k / 6.0;
    nodes.push_back(Node::point({r * std::cos(th), r * std::sin(th)}));
  }
  return CurveDiagram(model, std::move(nodes));
}

CurveDiagram lickorish_alpha(const ModelPtr& model, int i) {
  if (i < 1 || i > model->genus()) throw std::out_of_range("alpha index out of range");
  CurveDiagram c = from_word({Letter{2 * (i - 1), 1}}, model);
  require_valid(c, "alpha");
  return c;
}

CurveDiagram lickorish_beta(const ModelPtr& model, int i) {
  if (i < 1 || i > model->genus()) throw std::out_of_range("beta index out of range");
  CurveDiagram c = from_word({Letter{2 * (i - 1) + 1, 1}}, model);
  require_valid(c, "beta");
  return c;
}

CurveDiagram lickorish_gamma(const ModelPtr& model, int i) {
  if (i < 1 || i >= model->genus()) throw std::out_of_range("gamma index out of range");
  const SurfaceModel& m = *model;
  int a = 2 * (i - 1), b = a + 1, a_next = 2 * i;
  GroupWord w{{a, -1}, {b, -1}, {a_next, 1}, {b, 1}};
  std::vector<Node> crosses;
  for (Letter l : w) crosses.push_back(Node::cross(m.exit_side(l), Rational(3, 4)));
  CurveDiagram c = diagram_from_crossings(model, crosses);
  require_valid(c, "gamma");
  return c;
}

CurveDiagram subsurface_boundary(const ModelPtr& model, int sub_genus) {
  const SurfaceModel& m = *model;
  if (sub_genus < 1 || sub_genus >= m.genus())
    throw std::out_of_range("subsurface genus out of range");
  Rational t(1);
  t -= Rational(1, 2 * m.num_sides());
  std::vector<Node> crosses;
  for (int q = 0; q < 4 * sub_genus; ++q) crosses.push_back(Node::cross(m.vertex_exits()[q], t));
  // The counterclockwise run bounds the complement; reverse it so the subsurface lies on the left.
  CurveDiagram c = diagram_from_crossings(model, crosses).reversed();
  require_valid(c, "subsurface boundary");
  return c;
}

CurveDiagram torus_boundary(const ModelPtr& model) { return subsurface_boundary(model, 1); }

CurveDiagram kinked(const GroupWord& w, const ModelPtr& model) {
  CurveDiagram base = from_word(w, model);
  const SurfaceModel& m = *model;
  auto point_segment = [](Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double s = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
    return norm(p - lerp(a, b, s));
  };
  // The curl goes at the point along a segment with the most room around it.
  int k = 0;
  double best = -1;
  Vec2 mid{};
  for (int j = 0; j < base.size(); ++j) {
    for (int q = 1; q < 8; ++q) {
      Vec2 p = lerp(base.seg_start(j), base.seg_end(j), q / 8.0);
      double room = INFINITY;
      for (int s = 0; s < m.num_sides(); ++s)
        room = std::min(room, -dot(p - m.corner(s), m.outward_normal(s)));
      for (int i = 0; i < base.size(); ++i)
        if (i != j) room = std::min(room, point_segment(p, base.seg_start(i), base.seg_end(i)));
      if (room > best) {
        best = room;
        k = j;
        mid = p;
      }
    }
  }
  Vec2 u = base.seg_start(k), v = base.seg_end(k);
  double len = norm(v - u);
  Vec2 d = (1.0 / len) * (v - u), nrm = rot90(d);
  double r = std::min(0.05 * len, 0.3 * best);
  std::vector<Node> nodes = base.nodes();
  std::vector<Node> curl{Node::point(mid + r * d), Node::point(mid + 2 * r * nrm),
                         Node::point(mid - r * d + r * nrm), Node::point(mid - r * nrm)};
  nodes.insert(nodes.begin() + k, curl.begin(), curl.end());
  CurveDiagram c(model, std::move(nodes));
  require_valid(c, "kinked");
  return c;
}

CurveDiagram figure_eight(const GroupWord& u, const GroupWord& v, const ModelPtr& model) {
  CurveDiagram c1 = from_word(u, model);
  CurveDiagram c2 = make_transverse(c1, from_word(v, model));
  auto pts = intersections(c1, c2);
  if (pts.empty()) throw std::invalid_argument("figure eight needs intersecting lobes");
  const IntersectionPoint& p = pts.front();
  int k1 = p.seg1, k2 = p.seg2;
  Vec2 a0 = c1.seg_start(k1), a1 = c1.seg_end(k1), b0 = c2.seg_start(k2), b1 = c2.seg_end(k2);
  // Nearest other point on either segment bounds how far the reconnection may reach.
  double room1 = 1.0 - p.u1, room2 = 1.0 - p.u2;
  for (const auto& q : self_intersections(c1))
    for (auto [seg, uu] : {std::pair{q.seg1, q.u1}, std::pair{q.seg2, q.u2}})
      if (seg == k1 && uu > p.u1) room1 = std::min(room1, uu - p.u1);
  for (const auto& q : pts) {
    if (q.seg1 == k1 && q.u1 > p.u1) room1 = std::min(room1, q.u1 - p.u1);
    if (q.seg2 == k2 && q.u2 > p.u2) room2 = std::min(room2, q.u2 - p.u2);
  }
  for (const auto& q : self_intersections(c2))
    for (auto [seg, uu] : {std::pair{q.seg1, q.u1}, std::pair{q.seg2, q.u2}})
      if (seg == k2 && uu > p.u2) room2 = std::min(room2, uu - p.u2);
  double reach = 0.05 * std::min(room1 * norm(a1 - a0), room2 * norm(b1 - b0));
  double d1 = reach / norm(a1 - a0), d2 = reach / norm(b1 - b0);
  Vec2 q1 = lerp(a0, a1, p.u1 + d1), q2 = lerp(a0, a1, p.u1 + 2 * d1);
  Vec2 r1 = lerp(b0, b1, p.u2 + d2), r2 = lerp(b0, b1, p.u2 + 2 * d2);
  std::vector<Node> nodes;
  for (int q = 0; q < c1.size(); ++q) nodes.push_back(c1.node((k1 + q) % c1.size()));
  nodes.push_back(Node::point(q1));
  nodes.push_back(Node::point(r2));
  for (int q = 0; q < c2.size(); ++q) nodes.push_back(c2.node((k2 + q) % c2.size()));
  nodes.push_back(Node::point(r1));
  nodes.push_back(Node::point(q2));
  CurveDiagram c(model, std::move(nodes));
  require_valid(c, "figure eight");
  return c;
}

}  // namespace lagcob
