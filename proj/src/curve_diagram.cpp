#include "lagcob/curve_diagram.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace lagcob {

CurveDiagram::CurveDiagram(ModelPtr model, std::vector<Node> nodes)
    : model_(std::move(model)), nodes_(std::move(nodes)) {
  if (!model_) throw std::invalid_argument("curve needs a surface model");
  if (nodes_.empty()) throw std::invalid_argument("curve needs at least one node");
  int last_cross = -1;
  for (int k = 0; k < size(); ++k)
    if (nodes_[k].is_cross()) last_cross = k;
  if (last_cross >= 0 && last_cross != size() - 1)
    std::rotate(nodes_.begin(), nodes_.begin() + last_cross + 1, nodes_.end());
  chord_of_seg_.resize(nodes_.size());
  for (int k = 0; k < size(); ++k) {
    chord_of_seg_[k] = static_cast<int>(cross_nodes_.size());
    const Node& n = nodes_[k];
    if (n.is_cross()) {
      if (n.side < 0 || n.side >= model_->num_sides())
        throw std::invalid_argument("crossing side out of range");
      cross_nodes_.push_back(k);
    }
  }
}

Vec2 CurveDiagram::in_point(int k) const {
  const Node& n = nodes_[k];
  return n.is_cross() ? model_->point(n.side, n.t) : n.pos;
}

Vec2 CurveDiagram::out_point(int k) const {
  const Node& n = nodes_[k];
  return n.is_cross() ? model_->point(model_->pairing(n.side), Rational(1 - n.t)) : n.pos;
}

bool CurveDiagram::is_straight_chord(int k) const {
  return nodes_[k].is_cross() && nodes_[prev(k)].is_cross();
}

std::vector<Vec2> CurveDiagram::chord_points(int i) const {
  std::vector<Vec2> pts;
  if (cross_nodes_.empty()) {
    for (const Node& n : nodes_) pts.push_back(n.pos);
    return pts;
  }
  int end = cross_nodes_[i];
  int k = prev(end);
  std::vector<Vec2> rev;
  while (!nodes_[k].is_cross()) {
    rev.push_back(nodes_[k].pos);
    k = prev(k);
  }
  return {rev.rbegin(), rev.rend()};
}

Rational CurveDiagram::start_boundary_position(int k) const {
  const Node& n = nodes_[prev(k)];
  if (!n.is_cross()) throw std::logic_error("segment does not start on the boundary");
  return Rational(model_->pairing(n.side)) + (1 - n.t);
}

Rational CurveDiagram::end_boundary_position(int k) const {
  const Node& n = nodes_[k];
  if (!n.is_cross()) throw std::logic_error("segment does not end on the boundary");
  return Rational(n.side) + n.t;
}

std::vector<Letter> CurveDiagram::letters() const {
  std::vector<Letter> w;
  for (int k : cross_nodes_) w.push_back(model_->exit_letter(nodes_[k].side));
  return w;
}

CurveDiagram CurveDiagram::reversed() const {
  std::vector<Node> out;
  for (int k = size() - 1; k >= 0; --k) {
    const Node& n = nodes_[k];
    if (n.is_cross())
      out.push_back(Node::cross(model_->pairing(n.side), Rational(1 - n.t)));
    else
      out.push_back(n);
  }
  return CurveDiagram(model_, std::move(out));
}

namespace {

// (edge, edge parameter) keys of all crossings of c.
std::vector<std::pair<int, Rational>> edge_points(const CurveDiagram& c) {
  std::vector<std::pair<int, Rational>> out;
  const SurfaceModel& m = c.model();
  for (int k : c.cross_nodes()) {
    const Node& n = c.node(k);
    out.emplace_back(m.edge_of(n.side), m.edge_param(n.side, n.t));
  }
  return out;
}

// x lies strictly inside the counterclockwise boundary arc from a to b.
bool in_arc(const Rational& x, const Rational& a, const Rational& b, int n) {
  auto md = [n](Rational v) {
    while (v < 0) v += n;
    while (v >= n) v -= n;
    return v;
  };
  Rational dx = md(x - a), db = md(b - a);
  return dx > 0 && dx < db;
}

Vec2 line_intersection(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1, double& s, double& u) {
  Vec2 r = p1 - p0, d = q1 - q0, w = q0 - p0;
  double den = cross(r, d);
  s = cross(w, d) / den;
  u = cross(w, r) / den;
  return p0 + s * r;
}

constexpr double kEndTol = 1e-12;

// Crossing of segment k of a with segment l of b; exact when both are straight chords.
std::optional<IntersectionPoint> segment_pair(const CurveDiagram& a, int k, const CurveDiagram& b,
                                              int l) {
  Vec2 p0 = a.seg_start(k), p1 = a.seg_end(k), q0 = b.seg_start(l), q1 = b.seg_end(l);
  IntersectionPoint ip;
  ip.seg1 = k;
  ip.seg2 = l;
  ip.chord1 = a.chord_of_segment(k);
  ip.chord2 = b.chord_of_segment(l);
  if (a.is_straight_chord(k) && b.is_straight_chord(l)) {
    int n = a.model().num_sides();
    Rational a0 = a.start_boundary_position(k), a1 = a.end_boundary_position(k);
    Rational b0 = b.start_boundary_position(l), b1 = b.end_boundary_position(l);
    if (b0 == a0 || b0 == a1 || b1 == a0 || b1 == a1)
      throw std::invalid_argument("chords share a boundary point");
    if (in_arc(b0, a0, a1, n) == in_arc(b1, a0, a1, n)) return std::nullopt;
    ip.pos = line_intersection(p0, p1, q0, q1, ip.u1, ip.u2);
    ip.exact = true;
  } else {
    SegmentHit h = segment_intersection(p0, p1, q0, q1);
    if (!h.hit || h.s < kEndTol || h.s > 1 - kEndTol || h.u < kEndTol || h.u > 1 - kEndTol)
      return std::nullopt;
    ip.u1 = h.s;
    ip.u2 = h.u;
    ip.pos = lerp(p0, p1, h.s);
  }
  ip.degree = cross(p1 - p0, q1 - q0) > 0 ? 1 : 0;
  return ip;
}

}  // namespace

std::vector<std::string> validate(const CurveDiagram& c) {
  std::vector<std::string> bad;
  const SurfaceModel& m = c.model();
  if (c.num_crossings() == 0 && c.size() < 3) bad.push_back("closed polyline needs three points");
  for (int k = 0; k < c.size(); ++k) {
    const Node& n = c.node(k);
    if (n.is_cross() && (n.t <= 0 || n.t >= 1))
      bad.push_back("crossing " + std::to_string(k) + " has parameter outside (0,1)");
    if (!n.is_cross() && !m.strictly_inside(n.pos, 1e-9))
      bad.push_back("waypoint " + std::to_string(k) + " is not inside the face");
  }
  auto pts = edge_points(c);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j])
        bad.push_back("crossings " + std::to_string(i) + " and " + std::to_string(j) +
                      " share a side parameter");
  for (int k = 0; k < c.size(); ++k) {
    if (norm(c.seg_end(k) - c.seg_start(k)) < 1e-12) {
      bad.push_back("segment " + std::to_string(k) + " has coincident endpoints");
      continue;
    }
    if (c.is_straight_chord(k)) {
      int entry = m.pairing(c.node(c.prev(k)).side);
      if (entry == c.node(k).side)
        bad.push_back("chord " + std::to_string(c.chord_of_segment(k)) +
                      " enters and leaves through one side without a detour");
    }
  }
  if (!bad.empty()) return bad;
  // Interleaving straight chords must cross in the drawing.
  for (int k = 0; k < c.size(); ++k) {
    for (int l = k + 1; l < c.size(); ++l) {
      if (!c.is_straight_chord(k) || !c.is_straight_chord(l)) continue;
      auto ip = segment_pair(c, k, c, l);
      if (!ip) continue;
      if (ip->u1 <= kEndTol || ip->u1 >= 1 - kEndTol || ip->u2 <= kEndTol || ip->u2 >= 1 - kEndTol)
        bad.push_back("chords " + std::to_string(k) + " and " + std::to_string(l) +
                      " interleave but do not cross in the drawing");
    }
  }
  return bad;
}

bool params_jointly_distinct(const CurveDiagram& a, const CurveDiagram& b) {
  auto pa = edge_points(a), pb = edge_points(b);
  std::sort(pa.begin(), pa.end());
  for (const auto& p : pb)
    if (std::binary_search(pa.begin(), pa.end(), p)) return false;
  return true;
}

CurveDiagram perturb_params(const CurveDiagram& c, const Rational& eta) {
  const SurfaceModel& m = c.model();
  std::vector<Node> nodes = c.nodes();
  for (Node& n : nodes) {
    if (!n.is_cross()) continue;
    Rational u = m.edge_param(n.side, n.t);
    Rational v = u + eta * u * (1 - u);
    v.canonicalize();
    n.t = m.edge_param(n.side, v);
  }
  return CurveDiagram(c.model_ptr(), std::move(nodes));
}

CurveDiagram make_transverse(const CurveDiagram& a, const CurveDiagram& b) {
  if (params_jointly_distinct(a, b)) return b;
  for (int q = 7; q < 200; q += 2) {
    for (int sign : {1, -1}) {
      CurveDiagram p = perturb_params(b, Rational(sign, q));
      if (params_jointly_distinct(a, p) && validate(p).empty()) return p;
    }
  }
  throw std::runtime_error("could not separate edge parameters");
}

std::vector<IntersectionPoint> self_intersections(const CurveDiagram& c) {
  std::vector<IntersectionPoint> out;
  for (int k = 0; k < c.size(); ++k) {
    for (int l = k + 1; l < c.size(); ++l) {
      // Segments meeting at a waypoint share an endpoint; across a crossing they do not.
      if (l == c.next(k) && !c.node(k).is_cross()) continue;
      if (k == c.next(l) && !c.node(l).is_cross()) continue;
      if (auto ip = segment_pair(c, k, c, l)) out.push_back(*ip);
    }
  }
  return out;
}

std::vector<IntersectionPoint> intersections(const CurveDiagram& a, const CurveDiagram& b) {
  if (a.model().genus() != b.model().genus())
    throw std::invalid_argument("curves live on different surfaces");
  if (!params_jointly_distinct(a, b))
    throw std::invalid_argument("curves share side parameters; perturb first");
  std::vector<IntersectionPoint> out;
  for (int k = 0; k < a.size(); ++k)
    for (int l = 0; l < b.size(); ++l)
      if (auto ip = segment_pair(a, k, b, l)) out.push_back(*ip);
  return out;
}

int algebraic_intersection(const CurveDiagram& a, const CurveDiagram& b) {
  int s = 0;
  for (const auto& ip : intersections(a, b)) s += ip.degree ? 1 : -1;
  return s;
}

double developed_angle(const CurveDiagram& c) {
  double total = 0.0;
  for (int k = 0; k < c.size(); ++k) {
    int k2 = c.next(k);
    double a_in = angle_of(c.seg_end(k) - c.seg_start(k));
    double a_out = angle_of(c.seg_end(k2) - c.seg_start(k2));
    const Node& n = c.node(k);
    if (n.is_cross()) {
      double rho = c.model().side_rotation(n.side);
      total += wrap_angle(a_out - a_in - rho) + rho;
    } else {
      total += wrap_angle(a_out - a_in);
    }
  }
  return total;
}

GroupWord free_homotopy_word(const CurveDiagram& c) {
  return cyclic_reduce(c.letters(), c.model().genus());
}

std::string curve_to_json(const CurveDiagram& c) {
  nlohmann::json j;
  j["genus"] = c.model().genus();
  j["total_area"] = c.model().total_area();
  j["crossings"] = nlohmann::json::array();
  j["detours"] = nlohmann::json::array();
  int chords = std::max(c.num_crossings(), 1);
  for (int i = 0; i < c.num_crossings(); ++i) {
    const Node& n = c.node(c.cross_node(i));
    j["crossings"].push_back({{"side", n.side}, {"t", n.t.get_str()}});
  }
  for (int i = 0; i < chords; ++i) {
    nlohmann::json pts = nlohmann::json::array();
    for (Vec2 p : c.chord_points(i)) pts.push_back({p.x, p.y});
    j["detours"].push_back(pts);
  }
  return j.dump();
}

CurveDiagram curve_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad curve json: ") + e.what());
  }
  if (!j.contains("genus")) throw std::invalid_argument("curve json needs genus");
  ModelPtr model = build_surface(j["genus"].get<int>(), j.value("total_area", 1.0));
  const auto& cr = j.value("crossings", nlohmann::json::array());
  const auto& det = j.value("detours", nlohmann::json::array());
  std::size_t chords = std::max<std::size_t>(cr.size(), 1);
  if (!det.empty() && det.size() != chords)
    throw std::invalid_argument("detours must list one entry per chord");
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < chords; ++i) {
    if (!det.empty())
      for (const auto& p : det[i]) nodes.push_back(Node::point({p.at(0).get<double>(), p.at(1).get<double>()}));
    if (i < cr.size()) {
      Rational t;
      const auto& tv = cr[i].at("t");
      if (tv.is_string()) {
        if (t.set_str(tv.get<std::string>(), 10) != 0) throw std::invalid_argument("bad fraction");
        t.canonicalize();
      } else {
        throw std::invalid_argument("crossing parameter must be a fraction string");
      }
      nodes.push_back(Node::cross(cr[i].at("side").get<int>(), t));
    }
  }
  return CurveDiagram(model, std::move(nodes));
}

}  // namespace lagcob
