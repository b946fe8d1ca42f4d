#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lagcob/curve_diagram.hpp"

namespace lagcob {

namespace {

long turning_of(const CurveDiagram& c) { return std::lround(developed_angle(c) / kTwoPi); }

[[noreturn]] void inapplicable(const std::string& why) {
  throw std::invalid_argument("move does not apply: " + why);
}

int wrap_index(int i, int m) { return ((i % m) + m) % m; }

// Area swept when every segment endpoint moves linearly; node structure must match.
double linear_sweep(const CurveDiagram& a, const CurveDiagram& b) {
  double s = 0.0;
  for (int k = 0; k < a.size(); ++k)
    s += moving_segment_area(a.seg_start(k), a.seg_end(k), b.seg_start(k), b.seg_end(k));
  return s;
}

void check_result(const CurveDiagram& before, const CurveDiagram& after, long turning_shift) {
  auto bad = validate(after);
  if (!bad.empty()) inapplicable(bad.front());
  if (turning_of(after) != turning_of(before) + turning_shift)
    inapplicable("the drawing does not move by a regular homotopy");
}

// Positions, in side coordinates of `side`, of every crossing that touches that side.
std::vector<Rational> positions_on_side(const SurfaceModel& m, const std::vector<Node>& nodes,
                                        int side) {
  std::vector<Rational> out;
  for (const Node& n : nodes) {
    if (!n.is_cross()) continue;
    if (n.side == side) out.push_back(n.t);
    if (m.pairing(n.side) == side) out.push_back(Rational(1 - n.t));
  }
  return out;
}

bool collinear_between(Vec2 a, Vec2 p, Vec2 b) {
  Vec2 u = p - a, v = b - p;
  double scale = norm(u) * norm(v);
  return scale > 0 && std::abs(cross(u, v)) <= 1e-12 * scale && dot(u, v) > 0;
}

MoveResult do_slide(const CurveDiagram& c, const Slide& mv) {
  if (c.num_crossings() == 0) inapplicable("curve has no crossings");
  int k = c.cross_node(wrap_index(mv.crossing, c.num_crossings()));
  if (mv.t <= 0 || mv.t >= 1) inapplicable("parameter outside (0,1)");
  std::vector<Node> nodes = c.nodes();
  nodes[k].t = mv.t;
  CurveDiagram out(c.model_ptr(), nodes);
  check_result(c, out, 0);
  return {out, linear_sweep(c, out)};
}

// Removal data for crossing j followed by a U-turn through the partner side.
struct Removal {
  std::vector<Node> nodes;
  int junction = 0;  // index in `nodes` of the first node after the merge
  double area = 0.0;
};

Removal removal_of(const CurveDiagram& c, int j) {
  const SurfaceModel& m = c.model();
  int nc = c.num_crossings();
  if (nc < 2) inapplicable("needs two crossings");
  j = wrap_index(j, nc);
  int kj = c.cross_node(j), kj1 = c.cross_node((j + 1) % nc);
  if (c.node(kj1).side != m.pairing(c.node(kj).side))
    inapplicable("next crossing does not return through the same edge");
  Vec2 a = c.seg_start(kj);
  Vec2 xj = c.in_point(kj), pxj = c.out_point(kj);
  Vec2 xj1 = c.in_point(kj1), y = c.out_point(kj1);
  Vec2 b = c.seg_end(c.next(kj1));
  std::vector<Vec2> loop2{xj1};
  for (int k = c.prev(kj1); k != kj; k = c.prev(k)) loop2.push_back(c.node(k).pos);
  loop2.push_back(pxj);
  Removal r;
  r.area = shoelace(std::vector<Vec2>{a, b, y, xj}) + shoelace(loop2);
  // Drop crossing j, the U-turn chord and crossing j+1, keeping the original order.
  std::set<int> removed{kj, kj1};
  for (int k = c.next(kj); k != kj1; k = c.next(k)) removed.insert(k);
  if (static_cast<int>(removed.size()) >= c.size()) inapplicable("nothing left after removal");
  int after = c.next(kj1);
  for (int k = 0; k < c.size(); ++k) {
    if (removed.count(k)) continue;
    if (k == after) r.junction = static_cast<int>(r.nodes.size());
    r.nodes.push_back(c.node(k));
  }
  return r;
}

// Prunes waypoints that became collinear with their neighbours where two chords were merged.
void drop_collinear_at_junction(std::vector<Node>& nodes, const ModelPtr& model, int junction) {
  auto in_pt = [&](const Node& nd) { return nd.is_cross() ? model->point(nd.side, nd.t) : nd.pos; };
  auto out_pt = [&](const Node& nd) {
    return nd.is_cross() ? model->point(model->pairing(nd.side), Rational(1 - nd.t)) : nd.pos;
  };
  bool has_cross = std::any_of(nodes.begin(), nodes.end(), [](const Node& n) { return n.is_cross(); });
  bool changed = true;
  while (changed) {
    changed = false;
    int sz = static_cast<int>(nodes.size());
    if (!has_cross && sz <= 3) return;
    junction = wrap_index(junction, sz);
    for (int idx : {junction - 1, junction}) {
      int q = wrap_index(idx, sz);
      if (nodes[q].is_cross()) continue;
      Vec2 pv = out_pt(nodes[wrap_index(q - 1, sz)]), nv = in_pt(nodes[wrap_index(q + 1, sz)]);
      if (!collinear_between(pv, nodes[q].pos, nv)) continue;
      nodes.erase(nodes.begin() + q);
      if (q < junction) --junction;
      junction = wrap_index(junction, static_cast<int>(nodes.size()));
      changed = true;
      break;
    }
  }
}

MoveResult do_edge_remove(const CurveDiagram& c, int j) {
  Removal r = removal_of(c, j);
  drop_collinear_at_junction(r.nodes, c.model_ptr(), r.junction);
  CurveDiagram out(c.model_ptr(), r.nodes);
  check_result(c, out, 0);
  return {out, r.area};
}

MoveResult do_edge_insert(const CurveDiagram& c, const EdgePush& mv) {
  const SurfaceModel& m = c.model();
  if (c.num_crossings() == 0) inapplicable("curve has no crossings");
  if (mv.direction != 1 && mv.direction != -1) inapplicable("direction must be +1 or -1");
  int k = c.cross_node(wrap_index(mv.crossing, c.num_crossings()));
  const Node& x = c.node(k);
  int s = x.side, ps = m.pairing(s);
  Rational nb = mv.direction > 0 ? Rational(1) : Rational(0);
  for (const Rational& p : positions_on_side(m, c.nodes(), s)) {
    if (mv.direction > 0 && p > x.t && p < nb) nb = p;
    if (mv.direction < 0 && p < x.t && p > nb) nb = p;
  }
  Rational gap = nb - x.t;
  Vec2 xp = c.in_point(k), pp = c.seg_start(k);
  double seg_len = norm(pp - xp);
  std::size_t base_self = self_intersections(c).size();
  long base_turn = turning_of(c);
  Rational f(1, 3);
  for (int attempt = 0; attempt < 14; ++attempt, f /= 2) {
    Rational t2 = x.t + f * gap, t1 = x.t + 2 * f * gap;
    t1.canonicalize();
    t2.canonicalize();
    double reach = std::abs(Rational(f * gap).get_d()) * m.side_length();
    double lam = std::min(0.4, reach / seg_len);
    Vec2 f1 = xp + 2 * lam * (pp - xp), f2 = xp + lam * (pp - xp);
    Vec2 q1 = m.point(ps, Rational(1 - t1)), q2 = m.point(ps, Rational(1 - t2));
    Vec2 inward = -1.0 * m.outward_normal(ps);
    Vec2 w = 0.5 * (q1 + q2) + 0.3 * norm(q1 - q2) * inward;
    std::vector<Node> nodes;
    for (int q = 0; q < c.size(); ++q) {
      if (q != k) {
        nodes.push_back(c.node(q));
        continue;
      }
      nodes.push_back(Node::point(f1));
      nodes.push_back(Node::cross(s, t1));
      nodes.push_back(Node::point(w));
      nodes.push_back(Node::cross(ps, Rational(1 - t2)));
      nodes.push_back(Node::point(f2));
      nodes.push_back(x);
    }
    CurveDiagram out(c.model_ptr(), nodes);
    if (!validate(out).empty()) continue;
    if (self_intersections(out).size() != base_self) continue;
    if (turning_of(out) != base_turn) continue;
    Vec2 x1 = m.point(s, t1), x2 = m.point(s, t2);
    double removal = shoelace(std::vector<Vec2>{f1, f2, x2, x1}) +
                     shoelace(std::vector<Vec2>{q2, w, q1});
    return {out, -removal};
  }
  inapplicable("no room for a finger through this edge");
}

// A run of consecutive crossings hugging the vertex.
struct Run {
  bool ccw = true;
  int start_sector = 0;  // index into vertex_link
};

std::optional<Run> find_run(const CurveDiagram& c, int i, int len) {
  const SurfaceModel& m = c.model();
  int n = m.num_sides(), nc = c.num_crossings();
  if (nc < len || len < 1) return std::nullopt;
  const auto& exits = m.vertex_exits();
  const auto& link = m.vertex_link();
  auto side_at = [&](int q) { return c.node(c.cross_node(wrap_index(i + q, nc))).side; };
  for (int q = 1; q < len; ++q) {
    int k = c.cross_node(wrap_index(i + q, nc));
    if (!c.node(c.prev(k)).is_cross()) return std::nullopt;
  }
  int s0 = side_at(0);
  int e = static_cast<int>(std::find(exits.begin(), exits.end(), s0) - exits.begin());
  bool ok = true;
  for (int q = 0; q < len && ok; ++q) ok = side_at(q) == exits[(e + q) % n];
  if (ok) return Run{true, e};
  int l = static_cast<int>(std::find(link.begin(), link.end(), s0) - link.begin());
  ok = true;
  for (int q = 0; q < len && ok; ++q) ok = side_at(q) == link[wrap_index(l - q, n)];
  if (ok) return Run{false, l};
  return std::nullopt;
}

MoveResult do_vertex_push(const CurveDiagram& c, const VertexPush& mv) {
  const SurfaceModel& m = c.model();
  int n = m.num_sides(), nc = c.num_crossings();
  int len = mv.length;
  if (len != 2 && len != n - 2) inapplicable("run length must be 2 or 4g-2");
  if (nc <= len) inapplicable("run must leave at least one other crossing");
  int i = wrap_index(mv.crossing, nc);
  auto run = find_run(c, i, len);
  if (!run) inapplicable("crossings do not follow the vertex link");
  const auto& exits = m.vertex_exits();
  const auto& link = m.vertex_link();
  int m0 = run->start_sector;

  std::set<int> run_nodes;
  for (int q = 0; q < len; ++q) run_nodes.insert(c.cross_node(wrap_index(i + q, nc)));
  std::vector<Node> kept;
  for (int q = 0; q < c.size(); ++q)
    if (!run_nodes.count(q)) kept.push_back(c.node(q));

  // Complementary run, placed outside every remaining crossing on its sides.
  int new_len = n - len;
  std::vector<Node> fresh;
  std::vector<Node> occupancy = kept;
  for (int q = 0; q < new_len; ++q) {
    Node z;
    if (run->ccw) {
      int side = link[wrap_index(m0 - q, n)];
      Rational lo(1);
      for (const Rational& p : positions_on_side(m, occupancy, side)) lo = std::min(lo, p);
      z = Node::cross(side, Rational(lo / 2));
    } else {
      int side = exits[(m0 + q) % n];
      Rational hi(0);
      for (const Rational& p : positions_on_side(m, occupancy, side)) hi = std::max(hi, p);
      z = Node::cross(side, Rational((1 + hi) / 2));
    }
    z.t.canonicalize();
    fresh.push_back(z);
    occupancy.push_back(z);
  }

  int first = c.cross_node(i), last = c.cross_node(wrap_index(i + len - 1, nc));
  std::vector<Node> nodes;
  for (int k = 0; k < c.size(); ++k) {
    if (k == first) nodes.insert(nodes.end(), fresh.begin(), fresh.end());
    if (!run_nodes.count(k)) nodes.push_back(c.node(k));
  }
  CurveDiagram out(c.model_ptr(), nodes);

  // Swept area, sector by sector around the vertex.
  Vec2 a = c.seg_start(first), b = c.seg_end(c.next(last));
  auto in_pt = [&](const Node& nd) { return m.point(nd.side, nd.t); };
  auto out_pt = [&](const Node& nd) { return m.point(m.pairing(nd.side), Rational(1 - nd.t)); };
  std::vector<Node> old_run;
  for (int q = 0; q < len; ++q) old_run.push_back(c.node(c.cross_node(wrap_index(i + q, nc))));
  int sign_old = run->ccw ? 1 : -1;
  auto corner_of = [&](int sector_offset, int dir) {
    return m.corner(link[wrap_index(m0 + dir * sector_offset, n)]);
  };
  double area = 0.0;
  area += shoelace(std::vector<Vec2>{a, in_pt(fresh[0]), m.corner(link[m0]), in_pt(old_run[0])});
  for (int q = 1; q < len; ++q)
    area += shoelace(std::vector<Vec2>{in_pt(old_run[q]), out_pt(old_run[q - 1]),
                                       corner_of(q, sign_old)});
  for (int q = 1; q < new_len; ++q)
    area += shoelace(std::vector<Vec2>{out_pt(fresh[q - 1]), in_pt(fresh[q]),
                                       corner_of(q, -sign_old)});
  area += shoelace(std::vector<Vec2>{out_pt(fresh.back()), b, out_pt(old_run.back()),
                                     corner_of(len, sign_old)});

  auto bad = validate(out);
  if (!bad.empty()) inapplicable(bad.front());
  long dt = turning_of(out) - turning_of(c);
  if (std::labs(dt) != std::labs(static_cast<long>(m.euler_characteristic())))
    inapplicable("vertex push did not produce a clean jump");
  return {out, area};
}

MoveResult do_detour(const CurveDiagram& c, const DetourEdit& mv) {
  if (mv.node < 0 || mv.node >= c.size()) inapplicable("node index out of range");
  std::vector<Node> nodes = c.nodes();
  switch (mv.op) {
    case DetourEdit::Op::Move: {
      if (nodes[mv.node].is_cross()) inapplicable("node is a crossing");
      nodes[mv.node].pos = mv.pos;
      CurveDiagram out(c.model_ptr(), nodes);
      check_result(c, out, 0);
      return {out, linear_sweep(c, out)};
    }
    case DetourEdit::Op::Insert: {
      if (!(mv.at > 0 && mv.at < 1)) inapplicable("insert position outside the segment");
      Vec2 p = lerp(c.seg_start(mv.node), c.seg_end(mv.node), mv.at);
      nodes.insert(nodes.begin() + mv.node, Node::point(p));
      CurveDiagram out(c.model_ptr(), nodes);
      check_result(c, out, 0);
      return {out, 0.0};
    }
    case DetourEdit::Op::Erase: {
      if (nodes[mv.node].is_cross()) inapplicable("node is a crossing");
      if (c.num_crossings() == 0 && c.size() <= 3) inapplicable("polyline too short");
      Vec2 prev = c.seg_start(mv.node), w = nodes[mv.node].pos,
           next = c.seg_end(c.next(mv.node));
      nodes.erase(nodes.begin() + mv.node);
      CurveDiagram out(c.model_ptr(), nodes);
      check_result(c, out, 0);
      return {out, shoelace(std::vector<Vec2>{prev, next, w})};
    }
  }
  inapplicable("unknown detour edit");
}

}  // namespace

MoveResult apply_move(const CurveDiagram& c, const Move& mv) {
  if (auto* s = std::get_if<Slide>(&mv)) return do_slide(c, *s);
  if (auto* e = std::get_if<EdgePush>(&mv)) {
    if (e->op == EdgePush::Op::Remove) return do_edge_remove(c, e->crossing);
    return do_edge_insert(c, *e);
  }
  if (auto* v = std::get_if<VertexPush>(&mv)) return do_vertex_push(c, *v);
  return do_detour(c, std::get<DetourEdit>(mv));
}

std::string describe_move(const Move& mv) {
  std::ostringstream os;
  if (auto* s = std::get_if<Slide>(&mv)) {
    os << "slide(" << s->crossing << ", " << s->t.get_str() << ")";
  } else if (auto* e = std::get_if<EdgePush>(&mv)) {
    os << (e->op == EdgePush::Op::Remove ? "edge-remove(" : "edge-insert(") << e->crossing;
    if (e->op == EdgePush::Op::Insert) os << ", " << e->direction;
    os << ")";
  } else if (auto* v = std::get_if<VertexPush>(&mv)) {
    os << "vertex-push(" << v->crossing << ", " << v->length << ")";
  } else {
    const auto& d = std::get<DetourEdit>(mv);
    const char* names[] = {"detour-move", "detour-insert", "detour-erase"};
    os << names[static_cast<int>(d.op)] << "(" << d.node << ")";
  }
  return os.str();
}

std::optional<Move> random_move(const CurveDiagram& c, std::mt19937_64& rng, bool allow_vertex) {
  const SurfaceModel& m = c.model();
  int nc = c.num_crossings();
  std::vector<int> waypoints;
  for (int k = 0; k < c.size(); ++k)
    if (!c.node(k).is_cross()) waypoints.push_back(k);
  std::vector<Move> vertex_moves;
  if (allow_vertex) {
    for (int i = 0; i < nc; ++i)
      for (int len : {2, m.num_sides() - 2})
        if (find_run(c, i, len)) vertex_moves.push_back(VertexPush{i, len});
  }
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 60; ++attempt) {
    int kind = pick(vertex_moves.empty() ? 4 : 5);
    Move mv;
    if (kind == 0 && nc > 0) {
      int i = pick(nc);
      const Node& nd = c.node(c.cross_node(i));
      Rational delta(pick(41) - 20, 1000);
      Rational t = nd.t + delta;
      if (t <= 0 || t >= 1) continue;
      t.canonicalize();
      mv = Slide{i, t};
    } else if (kind == 1 && nc > 0) {
      std::vector<int> removable;
      for (int j = 0; j < nc; ++j)
        if (c.node(c.cross_node((j + 1) % nc)).side == m.pairing(c.node(c.cross_node(j)).side))
          removable.push_back(j);
      if (!removable.empty() && unit(rng) < 0.5)
        mv = EdgePush{EdgePush::Op::Remove, removable[pick(static_cast<int>(removable.size()))], 1};
      else
        mv = EdgePush{EdgePush::Op::Insert, pick(nc), pick(2) ? 1 : -1};
    } else if (kind == 2) {
      int k = pick(c.size());
      mv = DetourEdit{DetourEdit::Op::Insert, k, {}, 0.2 + 0.6 * unit(rng)};
    } else if (kind == 3 && !waypoints.empty()) {
      int k = waypoints[pick(static_cast<int>(waypoints.size()))];
      if (unit(rng) < 0.3) {
        mv = DetourEdit{DetourEdit::Op::Erase, k, {}, 0.5};
      } else {
        double r = 0.05 * m.side_length();
        Vec2 d{r * (2 * unit(rng) - 1), r * (2 * unit(rng) - 1)};
        mv = DetourEdit{DetourEdit::Op::Move, k, c.node(k).pos + d, 0.5};
      }
    } else if (kind == 4) {
      mv = vertex_moves[pick(static_cast<int>(vertex_moves.size()))];
    } else {
      continue;
    }
    try {
      apply_move(c, mv);
      return mv;
    } catch (const std::invalid_argument&) {
    }
  }
  return std::nullopt;
}

}  // namespace lagcob
