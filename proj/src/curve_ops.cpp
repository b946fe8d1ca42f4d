#include "lagcob/curve_ops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

#include "lagcob/invariants.hpp"

namespace lagcob {

namespace {

Vec2 unit(Vec2 v) { return (1.0 / norm(v)) * v; }

Vec2 seg_dir(const CurveDiagram& c, int k) { return unit(c.seg_end(k) - c.seg_start(k)); }

// Corners sit on the two branches this far from x, well inside both segments.
double corner_offset(const CurveDiagram& a, int sa, const CurveDiagram& b, int sb, Vec2 x) {
  double room = std::min({norm(x - a.seg_start(sa)), norm(x - a.seg_end(sa)),
                          norm(x - b.seg_start(sb)), norm(x - b.seg_end(sb))});
  return std::min(1e-7 * a.model().side_length(), 0.25 * room);
}

bool same_point(const IntersectionPoint& a, const IntersectionPoint& b) {
  return a.seg1 == b.seg1 && a.seg2 == b.seg2 && norm(a.pos - b.pos) < 1e-9;
}

// Nodes of c starting at index `from`, once around.
void append_from(std::vector<Node>& out, const CurveDiagram& c, int from) {
  for (int q = 0; q < c.size(); ++q) out.push_back(c.node((from + q) % c.size()));
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 d = b - a;
  double s = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
  return norm(p - lerp(a, b, s));
}

// Offsets of the nodes of an embedded curve toward its left, with offset fraction o in [-1, 1].
class Collar {
 public:
  Collar(const CurveDiagram& c, const std::vector<const CurveDiagram*>& others) : c_(c) {
    const SurfaceModel& m = c.model();
    std::map<int, std::vector<Rational>> on_edge;
    auto collect = [&](const CurveDiagram& d) {
      for (int k : d.cross_nodes()) {
        const Node& n = d.node(k);
        on_edge[m.edge_of(n.side)].push_back(m.edge_param(n.side, n.t));
      }
    };
    collect(c);
    for (auto* d : others) collect(*d);

    const int n = c.size();
    h_.resize(n);
    sigma_.assign(n, 1);
    normal_.resize(n);
    for (int k = 0; k < n; ++k) {
      const Node& nd = c.node(k);
      Vec2 left_in = rot90(seg_dir(c, k));
      if (nd.is_cross()) {
        Rational u = m.edge_param(nd.side, nd.t);
        Rational gap = std::min(u, Rational(1 - u));
        for (const Rational& v : on_edge[m.edge_of(nd.side)])
          if (v != u) gap = std::min(gap, Rational(abs(v - u)));
        h_[k] = gap / 3;
        Vec2 along = m.corner(nd.side + 1) - m.corner(nd.side);
        sigma_[k] = dot(left_in, along) > 0 ? 1 : -1;
      } else {
        Vec2 nrm = left_in + rot90(seg_dir(c, c.next(k)));
        normal_[k] = unit(nrm);
        // Stay well clear of every segment that does not touch this waypoint.
        double room = 0.01 * m.side_length();
        for (int s = 0; s < m.num_sides(); ++s)
          room = std::min(room, -dot(nd.pos - m.corner(s), m.outward_normal(s)));
        for (int q = 0; q < n; ++q)
          if (q != k && q != c.next(k))
            room = std::min(room, point_segment_distance(nd.pos, c.seg_start(q), c.seg_end(q)));
        for (auto* d : others)
          for (int q = 0; q < d->size(); ++q)
            room = std::min(room, point_segment_distance(nd.pos, d->seg_start(q), d->seg_end(q)));
        h_[k] = 0.25 * room;
      }
    }
  }

  // Node k shifted by offset o; `backward` gives the node for the reversed traversal.
  Node shifted(int k, const Rational& o, bool backward) const {
    const Node& nd = c_.node(k);
    if (!nd.is_cross()) return Node::point(nd.pos + (h_[k].get_d() * o.get_d()) * normal_[k]);
    Rational t = nd.t + sigma_[k] * h_[k] * o;
    if (!backward) return Node::cross(nd.side, t);
    return Node::cross(c_.model().pairing(nd.side), Rational(1 - t));
  }

 private:
  const CurveDiagram& c_;
  std::vector<Rational> h_;
  std::vector<int> sigma_;
  std::vector<Vec2> normal_;
};

// Adds a shallow waypoint to every straight chord that leaves through the side it entered by.
std::vector<Node> add_detours(const SurfaceModel& m, const std::vector<Node>& in) {
  std::vector<Node> out;
  const int n = static_cast<int>(in.size());
  for (int k = 0; k < n; ++k) {
    const Node& prev = in[(k + n - 1) % n];
    const Node& cur = in[k];
    if (cur.is_cross() && prev.is_cross() && m.pairing(prev.side) == cur.side) {
      Vec2 p = m.point(cur.side, Rational(1 - prev.t)), q = m.point(cur.side, cur.t);
      out.push_back(Node::point(0.5 * (p + q) - 0.05 * norm(q - p) * m.outward_normal(cur.side)));
    }
    out.push_back(cur);
  }
  return out;
}

void require_valid(const CurveDiagram& c, const char* what) {
  auto bad = validate(c);
  if (!bad.empty()) throw std::logic_error(std::string(what) + ": " + bad.front());
}

}  // namespace

std::pair<CurveDiagram, CurveDiagram> resolve_double_point(const CurveDiagram& c,
                                                           const IntersectionPoint& x) {
  auto pts = self_intersections(c);
  auto it = std::find_if(pts.begin(), pts.end(), [&](const auto& p) { return same_point(p, x); });
  if (it == pts.end()) throw std::invalid_argument("not a double point of the curve");
  const int s1 = it->seg1, s2 = it->seg2;
  Vec2 d1 = seg_dir(c, s1), d2 = seg_dir(c, s2);
  double eps = corner_offset(c, s1, c, s2, it->pos);
  // Piece A arrives along branch 2 and leaves along branch 1; piece B the other way round.
  std::vector<Node> a, b;
  for (int k = s1; k != s2; k = c.next(k)) a.push_back(c.node(k));
  a.push_back(Node::point(it->pos - eps * d2));
  a.push_back(Node::point(it->pos + eps * d1));
  for (int k = s2; k != s1; k = c.next(k)) b.push_back(c.node(k));
  b.push_back(Node::point(it->pos - eps * d1));
  b.push_back(Node::point(it->pos + eps * d2));
  CurveDiagram ca(c.model_ptr(), std::move(a)), cb(c.model_ptr(), std::move(b));
  require_valid(ca, "resolution");
  require_valid(cb, "resolution");
  return {ca, cb};
}

std::vector<CurveDiagram> resolve_all(const CurveDiagram& c) {
  std::vector<CurveDiagram> done, todo{c};
  while (!todo.empty()) {
    CurveDiagram cur = todo.back();
    todo.pop_back();
    auto pts = self_intersections(cur);
    if (pts.empty()) {
      done.push_back(cur);
      continue;
    }
    auto [a, b] = resolve_double_point(cur, pts.front());
    todo.push_back(a);
    todo.push_back(b);
  }
  return done;
}

CurveDiagram surgery(const CurveDiagram& c1, const CurveDiagram& c2, const IntersectionPoint& x) {
  if (&c1 == &c2 || (c1.model_ptr() == c2.model_ptr() && c1.size() == c2.size() &&
                     curve_to_json(c1) == curve_to_json(c2)))
    throw std::invalid_argument("surgery needs two distinct curves; resolve double points instead");
  auto pts = intersections(c1, c2);
  auto it = std::find_if(pts.begin(), pts.end(), [&](const auto& p) { return same_point(p, x); });
  if (it == pts.end()) throw std::invalid_argument("not an intersection point of the curves");
  if (it->degree != 1) throw std::invalid_argument("surgery needs a degree 1 intersection point");
  Vec2 d1 = seg_dir(c1, it->seg1), d2 = seg_dir(c2, it->seg2);
  double eps = corner_offset(c1, it->seg1, c2, it->seg2, it->pos);
  std::vector<Node> nodes;
  append_from(nodes, c1, it->seg1);
  nodes.push_back(Node::point(it->pos - eps * d1));
  nodes.push_back(Node::point(it->pos + eps * d2));
  append_from(nodes, c2, it->seg2);
  nodes.push_back(Node::point(it->pos - eps * d2));
  nodes.push_back(Node::point(it->pos + eps * d1));
  CurveDiagram out(c1.model_ptr(), std::move(nodes));
  require_valid(out, "surgery");
  return out;
}

CurveDiagram dehn_twist(const CurveDiagram& alpha, const CurveDiagram& beta_in) {
  if (!self_intersections(alpha).empty())
    throw std::invalid_argument("twist curve must be embedded");
  if (alpha.num_crossings() == 0 || is_trivial(alpha.letters(), alpha.model().genus()))
    throw std::invalid_argument("twist curve must be essential");
  CurveDiagram beta = make_transverse(alpha, beta_in);
  auto pts = intersections(beta, alpha);
  if (pts.empty()) return beta_in;

  // Arc-length position of every node of alpha, as a fraction of its length.
  const int na = alpha.size();
  std::vector<double> theta(na);
  std::vector<double> start(na);
  double total = 0;
  for (int k = 0; k < na; ++k) {
    start[k] = total;
    total += norm(alpha.seg_end(k) - alpha.seg_start(k));
    theta[k] = total;
  }
  for (int k = 0; k < na; ++k) {
    theta[k] /= total;
    start[k] /= total;
  }
  const int m = static_cast<int>(pts.size());
  std::vector<double> theta_x(m);
  for (int j = 0; j < m; ++j) theta_x[j] = start[pts[j].seg2] + pts[j].u2 * (theta[pts[j].seg2] - start[pts[j].seg2]);

  // Strand j passes node k at offset rank of frac(theta_x - theta_k), mapped into (-1, 1).
  std::vector<std::vector<Rational>> offset(m, std::vector<Rational>(na));
  for (int k = 0; k < na; ++k) {
    std::vector<std::pair<double, int>> order;
    for (int j = 0; j < m; ++j) {
      double f = theta_x[j] - theta[k];
      order.push_back({f - std::floor(f), j});
    }
    std::sort(order.begin(), order.end());
    for (int r = 0; r < m; ++r) {
      Rational o(2 * (r + 1), m + 1);
      o -= 1;
      offset[order[r].second][k] = o;
    }
  }

  Collar collar(alpha, {&beta});
  std::vector<std::vector<int>> on_segment(beta.size());
  for (int j = 0; j < m; ++j) on_segment[pts[j].seg1].push_back(j);
  std::vector<Node> nodes;
  for (int k = 0; k < beta.size(); ++k) {
    auto& here = on_segment[k];
    std::sort(here.begin(), here.end(), [&](int a, int b) { return pts[a].u1 < pts[b].u1; });
    for (int j : here) {
      bool forward = pts[j].degree == 1;
      // Forward from the end node of alpha's segment, or backward from its start node.
      int q = forward ? pts[j].seg2 : alpha.prev(pts[j].seg2);
      for (int step = 0; step < na; ++step) {
        nodes.push_back(collar.shifted(q, offset[j][q], !forward));
        q = forward ? alpha.next(q) : alpha.prev(q);
      }
    }
    nodes.push_back(beta.node(k));
  }
  CurveDiagram out(beta.model_ptr(), add_detours(beta.model(), nodes));
  require_valid(out, "dehn twist");
  return out;
}

CurveDiagram push_off(const CurveDiagram& c, double x) {
  // The strip between c and its copy is embedded, so its area is below the total.
  if (std::abs(x) >= c.model().total_area())
    throw std::runtime_error("push off: no room left for the requested area");
  Collar collar(c, {});
  const double base = holonomy(c);
  auto copy_at = [&](const Rational& o) {
    std::vector<Node> nodes;
    for (int k = 0; k < c.size(); ++k) nodes.push_back(collar.shifted(k, o, false));
    return CurveDiagram(c.model_ptr(), std::move(nodes));
  };
  // The strip between c and its copy has signed area of one sign per side, and bumps can
  // only grow outward, so pick the side whose strip has the sign of x and keep it thin.
  double strip = holonomy(copy_at(Rational(1))) - base;
  int side = (strip >= 0) == (x >= 0) ? 1 : -1;
  double cap = x == 0 ? 1e-9 : 0.5 * std::abs(x);
  Rational o(side);
  if (std::abs(strip) > cap) o = Rational(side, static_cast<long>(std::ceil(std::abs(strip) / cap)));
  CurveDiagram cur = copy_at(o);
  require_valid(cur, "push off");

  const std::size_t self0 = self_intersections(cur).size();
  const std::size_t meet0 = intersections(c, cur).size();
  auto acceptable = [&](const CurveDiagram& cand) {
    return validate(cand).empty() && self_intersections(cand).size() == self0 &&
           intersections(c, cand).size() == meet0;
  };
  // A trapezoid of height s left of segment k changes Hol by -s * len * (1 - kInset).
  constexpr double kInset = 0.1;
  auto bump = [&](const CurveDiagram& cur, int k, double s) {
    Vec2 a = cur.seg_start(k), b = cur.seg_end(k);
    Vec2 up = s * rot90(unit(b - a));
    std::vector<Node> nd = cur.nodes();
    std::vector<Node> cap{Node::point(lerp(a, b, kInset) + up), Node::point(lerp(a, b, 1 - kInset) + up)};
    nd.insert(nd.begin() + k, cap.begin(), cap.end());
    return CurveDiagram(cur.model_ptr(), std::move(nd));
  };

  // Largest acceptable bump of segment k toward the sign of need, as (gain, curve).
  // Local test for a bump: the three new segments stay in the face and meet nothing else.
  const double touch = 1e-9 * c.model().side_length();
  auto meets = [&](Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
    double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
    double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
      return true;
    return std::min({point_segment_distance(p1, q1, q2), point_segment_distance(p2, q1, q2),
                     point_segment_distance(q1, p1, p2), point_segment_distance(q2, p1, p2)}) < touch;
  };
  auto bump_ok = [&](const CurveDiagram& cur, int k, double s) {
    Vec2 a = cur.seg_start(k), b = cur.seg_end(k);
    Vec2 up = s * rot90(unit(b - a));
    Vec2 p1 = lerp(a, b, kInset) + up, p2 = lerp(a, b, 1 - kInset) + up;
    const SurfaceModel& m = c.model();
    for (Vec2 p : {p1, p2})
      for (int q = 0; q < m.num_sides(); ++q)
        if (-dot(p - m.corner(q), m.outward_normal(q)) < touch) return false;
    const std::pair<Vec2, Vec2> fresh[3] = {{a, p1}, {p1, p2}, {p2, b}};
    for (int i = 0; i < cur.size(); ++i) {
      if (i == k) continue;
      Vec2 u = cur.seg_start(i), v = cur.seg_end(i);
      for (int f = 0; f < 3; ++f) {
        if (f == 0 && i == cur.prev(k)) continue;
        if (f == 2 && i == cur.next(k)) continue;
        if (meets(fresh[f].first, fresh[f].second, u, v)) return false;
      }
    }
    for (int i = 0; i < c.size(); ++i)
      for (const auto& [p, q] : fresh)
        if (meets(p, q, c.seg_start(i), c.seg_end(i))) return false;
    return true;
  };
  // Largest acceptable bump of segment k toward the sign of need, as (gain, curve).
  auto best_bump = [&](const CurveDiagram& cur, int k, double need) {
    double len = norm(cur.seg_end(k) - cur.seg_start(k));
    double full = -need / (len * (1 - kInset));
    double s = full;
    if (!bump_ok(cur, k, s)) {
      double lo = 0, hi = full;
      for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        (bump_ok(cur, k, mid) ? lo : hi) = mid;
      }
      s = 0.8 * lo;
    }
    double gain = std::abs(s) * len * (1 - kInset);
    return std::pair{bump_ok(cur, k, s) ? gain : 0.0, bump(cur, k, s)};
  };
  // A thin finger from segment k out through side q and back, opening the region beyond q.
  const SurfaceModel& m = c.model();
  const long turn0 = turning_number(cur);
  auto finger = [&](const CurveDiagram& cur) -> std::optional<CurveDiagram> {
    std::vector<std::pair<double, int>> by_length;
    for (int k = 0; k < cur.size(); ++k) by_length.push_back({norm(cur.seg_end(k) - cur.seg_start(k)), k});
    std::sort(by_length.rbegin(), by_length.rend());
    if (by_length.size() > 6) by_length.resize(6);
    // Candidates ranked by the clearance around the tip; the first acceptable one wins.
    std::vector<std::pair<double, std::vector<Node>>> ranked;
    for (auto [len, k] : by_length) {
      Vec2 a = cur.seg_start(k), b = cur.seg_end(k);
      for (int q = 0; q < m.num_sides(); ++q)
        for (Rational t : {Rational(1, 2), Rational(1, 4), Rational(3, 4)})
          for (int flip : {1, -1}) {
            Rational ta = t - Rational(flip, 40), tb = t + Rational(flip, 40);
            ta.canonicalize();
            tb.canonicalize();
            int pq = m.pairing(q);
            Vec2 ea = m.point(pq, Rational(1 - ta)), eb = m.point(pq, Rational(1 - tb));
            Vec2 w = 0.5 * (ea + eb) - 0.3 * norm(ea - eb) * m.outward_normal(pq);
            double room = INFINITY;
            for (int s = 0; s < m.num_sides(); ++s)
              if (s != pq) room = std::min(room, -dot(w - m.corner(s), m.outward_normal(s)));
            for (const CurveDiagram* d : {&c, &cur})
              for (int i = 0; i < d->size(); ++i)
                room = std::min(room, point_segment_distance(w, d->seg_start(i), d->seg_end(i)));
            std::vector<Node> nd = cur.nodes();
            std::vector<Node> ins{Node::point(lerp(a, b, 0.45)), Node::cross(q, ta), Node::point(w),
                                  Node::cross(pq, Rational(1 - tb)), Node::point(lerp(a, b, 0.55))};
            nd.insert(nd.begin() + k, ins.begin(), ins.end());
            ranked.push_back({room, std::move(nd)});
          }
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    for (auto& [room, nd] : ranked) {
      CurveDiagram cand(cur.model_ptr(), std::move(nd));
      if (acceptable(cand) && turning_number(cand) == turn0) return cand;
    }
    return std::nullopt;
  };

  std::vector<double> history;
  int fingers = 0;
  for (int iter = 0; iter < 2000; ++iter) {
    double need = x - (holonomy(cur) - base);
    if (std::abs(need) <= 1e-8) break;
    // Bumps saturating the region show up as a need that stops halving.
    history.push_back(std::abs(need));
    bool stalled = history.size() > 6 && history.back() > 0.7 * history[history.size() - 7];
    // Longest segments first; take the first bump that covers a useful share of the need.
    double best_gain = 0;
    std::optional<CurveDiagram> best;
    if (!stalled) {
      std::vector<std::pair<double, int>> by_length;
      for (int q = 0; q < cur.size(); ++q)
        by_length.push_back({norm(cur.seg_end(q) - cur.seg_start(q)), q});
      std::sort(by_length.rbegin(), by_length.rend());
      for (auto [len, k] : by_length) {
        auto [gain, out] = best_bump(cur, k, need);
        if (gain > best_gain) {
          best_gain = gain;
          best = out;
        }
        if (best_gain > 0.05 * std::abs(need)) break;
      }
    }
    if (!best || best_gain < 1e-12 || stalled) {
      if (fingers++ >= 8) throw std::runtime_error("push off: no room left for the requested area");
      best = finger(cur);
      if (!best) throw std::runtime_error("push off: no room left for the requested area");
      history.clear();
    }
    cur = *best;
  }
  if (!acceptable(cur) || std::abs(holonomy(cur) - base - x) > 1e-6)
    throw std::runtime_error("push off: area target not reached");
  return cur;
}

MoveResult finger_move(const CurveDiagram& c, const CurveDiagram& across, const FingerSite& site) {
  if (site.segment < 0 || site.segment >= c.size() || site.target_segment < 0 ||
      site.target_segment >= across.size() || !(site.at > 0 && site.at < 1) ||
      !(site.target_at > 0 && site.target_at < 1))
    throw std::invalid_argument("finger site out of range");
  const int k = site.segment;
  Vec2 a0 = c.seg_start(k), b0 = c.seg_end(k);
  Vec2 from = lerp(a0, b0, site.at);
  Vec2 target = lerp(across.seg_start(site.target_segment), across.seg_end(site.target_segment),
                     site.target_at);
  Vec2 reach = target - from;
  double len = norm(reach);
  if (len < 1e-9 * c.model().side_length()) throw std::invalid_argument("finger has no length");
  double delta = 0.05 * std::min(site.at, 1 - site.at);
  Vec2 tip = target + std::min(0.1 * len, 0.02 * c.model().side_length()) * unit(reach);
  std::vector<Node> nodes = c.nodes();
  std::vector<Node> tongue{Node::point(lerp(a0, b0, site.at - delta)), Node::point(tip),
                           Node::point(lerp(a0, b0, site.at + delta))};
  nodes.insert(nodes.begin() + k, tongue.begin(), tongue.end());
  CurveDiagram out(c.model_ptr(), std::move(nodes));
  if (!validate(out).empty()) throw std::invalid_argument("finger leaves the face");
  if (self_intersections(out).size() != self_intersections(c).size() ||
      intersections(out, across).size() != intersections(c, across).size() + 2)
    throw std::invalid_argument("finger crosses more than the target segment");
  return {out, holonomy(out) - holonomy(c)};
}

std::optional<FingerSite> find_finger_site(const CurveDiagram& c, const CurveDiagram& across) {
  for (int k = 0; k < c.size(); ++k)
    for (int j = 0; j < across.size(); ++j)
      for (double at : {0.5, 0.3, 0.7})
        for (double tat : {0.5, 0.3, 0.7}) {
          FingerSite s{k, j, at, tat};
          try {
            finger_move(c, across, s);
            return s;
          } catch (const std::invalid_argument&) {
          }
        }
  return std::nullopt;
}

}  // namespace lagcob
