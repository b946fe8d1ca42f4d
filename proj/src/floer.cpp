#include "lagcob/floer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "json.hpp"
#include "lagcob/unobstruction.hpp"

namespace lagcob {

void Novikov::add_term(double exponent) {
  auto it = std::lower_bound(exps_.begin(), exps_.end(), exponent - kTolerance);
  if (it != exps_.end() && std::abs(*it - exponent) <= kTolerance)
    exps_.erase(it);
  else
    exps_.insert(it, exponent);
}

Novikov& Novikov::operator+=(const Novikov& o) {
  for (double e : o.exps_) add_term(e);
  return *this;
}

Novikov Novikov::operator*(const Novikov& o) const {
  Novikov out;
  for (double a : exps_)
    for (double b : o.exps_) out.add_term(a + b);
  return out;
}

namespace {

Node reverse_node(const SurfaceModel& m, const Node& n) {
  return n.is_cross() ? Node::cross(m.pairing(n.side), Rational(1 - n.t)) : n;
}

// A point on a curve: segment, fraction along it, and position.
struct Place {
  int seg = 0;
  double u = 0.0;
  Vec2 pos{};
};

// Nodes passed when travelling along c from a to b, forwards or backwards, in travel order,
// after `wraps` extra full turns.
std::vector<Node> arc_nodes(const CurveDiagram& c, const Place& a, const Place& b, bool forward,
                            int wraps) {
  std::vector<Node> out;
  const int n = c.size();
  if (forward) {
    for (int w = 0; w < wraps; ++w)
      for (int i = 0; i < n; ++i) out.push_back(c.node((a.seg + i) % n));
    if (a.seg == b.seg && b.u > a.u) return out;
    int k = a.seg;
    do {
      out.push_back(c.node(k));
      k = c.next(k);
    } while (k != b.seg);
  } else {
    for (int w = 0; w < wraps; ++w)
      for (int i = 1; i <= n; ++i)
        out.push_back(reverse_node(c.model(), c.node(((a.seg - i) % n + n) % n)));
    if (a.seg == b.seg && b.u < a.u) return out;
    int k = c.prev(a.seg);
    while (true) {
      out.push_back(reverse_node(c.model(), c.node(k)));
      if (k == b.seg) break;
      k = c.prev(k);
    }
  }
  return out;
}

int count_letters(const std::vector<Node>& nodes) {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(),
                                        [](const Node& n) { return n.is_cross(); }));
}

std::vector<GroupWord> loop_prefixes(const CurveDiagram& c) {
  std::vector<Letter> letters = c.letters();
  std::vector<GroupWord> out(letters.size() + 1);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    out[i + 1] = out[i];
    out[i + 1].push_back(letters[i]);
  }
  return out;
}

bool crosses_properly(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1) {
  constexpr double eps = 1e-12;
  double d1 = cross(p1 - p0, q0 - p0), d2 = cross(p1 - p0, q1 - p0);
  double d3 = cross(q1 - q0, p0 - q0), d4 = cross(q1 - q0, p1 - q0);
  return ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
         ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps));
}

// True when two segments of the loop cross in the universal cover. Segments that touch or
// overlap downstairs are different lifts of one chord or meet at a corner.
bool self_crosses_in_cover(const CurveDiagram& loop) {
  const SurfaceModel& m = loop.model();
  auto pre = loop_prefixes(loop);
  for (int k = 0; k < loop.size(); ++k)
    for (int l = k + 1; l < loop.size(); ++l) {
      Vec2 p0 = loop.seg_start(k), p1 = loop.seg_end(k);
      Vec2 q0 = loop.seg_start(l), q1 = loop.seg_end(l);
      if (!crosses_properly(p0, p1, q0, q1)) continue;
      GroupWord w = concat(inverse(pre[loop.chord_of_segment(k)]), pre[loop.chord_of_segment(l)]);
      if (is_trivial(w, m)) return true;
    }
  return false;
}

// Boundary of a candidate polygon: corner i sits at from[i] and arcs[i] runs along curve i
// to the next corner.
std::optional<Polygon> try_polygon(const ModelPtr& model, const std::vector<Place>& from,
                                   const std::vector<const std::vector<Node>*>& arcs, int radius) {
  const SurfaceModel& m = *model;
  std::vector<Node> nodes;
  std::vector<int> corner_at;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    corner_at.push_back(static_cast<int>(nodes.size()));
    nodes.push_back(Node::point(from[i].pos));
    nodes.insert(nodes.end(), arcs[i]->begin(), arcs[i]->end());
  }
  GroupWord word;
  for (const Node& n : nodes)
    if (n.is_cross()) word.push_back(m.exit_letter(n.side));
  if (!is_trivial(word, m)) return std::nullopt;

  // Undo the rotation the constructor applies so that corner indices stay valid.
  int rot = 0;
  for (int k = 0; k < static_cast<int>(nodes.size()); ++k)
    if (nodes[k].is_cross()) rot = k + 1;
  const int n = static_cast<int>(nodes.size());
  CurveDiagram loop(model, nodes);
  for (int& k : corner_at) k = ((k - rot) % n + n) % n;

  if (turning_number(loop) <= 0) return std::nullopt;
  for (int k : corner_at) {
    Vec2 in = loop.seg_end(k) - loop.seg_start(k);
    int nk = loop.next(k);
    Vec2 out = loop.seg_end(nk) - loop.seg_start(nk);
    if (cross(in, out) <= 0) return std::nullopt;
  }
  if (self_crosses_in_cover(loop)) return std::nullopt;
  double area = holonomy(loop) - m.kappa();
  if (area <= 0) return std::nullopt;
  int max_len = 0;
  for (const auto& p : loop_prefixes(loop))
    max_len = std::max(max_len, static_cast<int>(dehn_reduce(p, m).size()));
  for (const auto* arc : arcs) max_len = std::max(max_len, count_letters(*arc));
  if (max_len > radius) throw WindowExhausted("polygon leaves the developed window");
  Polygon poly;
  poly.boundary = loop;
  poly.area = area;
  poly.max_tile_length = max_len;
  return poly;
}

// Arcs along each curve in both directions with extra turns, up to one period beyond
// `radius` letters so that polygons at the edge of the window are noticed.
std::vector<Polygon> search(const std::vector<const CurveDiagram*>& curves,
                            const std::vector<Place>& from, const std::vector<Place>& to,
                            int radius) {
  std::vector<std::vector<std::vector<Node>>> options(curves.size());
  for (std::size_t i = 0; i < curves.size(); ++i)
    for (bool fwd : {true, false})
      for (int w = 0;; ++w) {
        auto arc = arc_nodes(*curves[i], from[i], to[i], fwd, w);
        if (count_letters(arc) > radius + curves[i]->num_crossings()) break;
        options[i].push_back(std::move(arc));
        if (curves[i]->num_crossings() == 0) break;
      }
  std::vector<Polygon> out;
  std::vector<std::size_t> idx(curves.size(), 0);
  std::vector<const std::vector<Node>*> pick(curves.size());
  for (const auto& o : options)
    if (o.empty()) return out;
  while (true) {
    for (std::size_t i = 0; i < curves.size(); ++i) pick[i] = &options[i][idx[i]];
    if (auto p = try_polygon(curves[0]->model_ptr(), from, pick, radius)) out.push_back(std::move(*p));
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return out;
}

Place first_place(const IntersectionPoint& x) { return {x.seg1, x.u1, x.pos}; }
Place second_place(const IntersectionPoint& x) { return {x.seg2, x.u2, x.pos}; }

// Perturbs until every pair of curves has distinct side parameters.
void separate(std::vector<CurveDiagram>& cs) {
  for (int round = 0; round < 16; ++round) {
    bool clean = true;
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = i + 1; j < cs.size(); ++j)
        if (!params_jointly_distinct(cs[i], cs[j])) {
          cs[j] = make_transverse(cs[i], cs[j]);
          clean = false;
        }
    if (clean) return;
  }
  throw std::runtime_error("could not separate side parameters");
}

void require_unobstructed(const CurveDiagram& c) {
  if (!is_unobstructed(c).unobstructed)
    throw std::invalid_argument("curve is obstructed: " + format_word(c.letters()));
}

template <class F>
auto with_window(int radius, int start, F&& f) {
  if (radius >= 0) return f(radius);
  constexpr int kCap = 1024;
  for (int r = start;; r *= 2) {
    try {
      return f(r);
    } catch (const WindowExhausted&) {
      if (r >= kCap) throw std::runtime_error("developed window exceeded its cap");
    }
  }
}

}  // namespace

DevelopedArrangement develop_window(const std::vector<CurveDiagram>& curves, int radius) {
  DevelopedArrangement out;
  out.radius = radius;
  if (curves.empty()) return out;
  const SurfaceModel& m = curves[0].model();
  // Ball of tiles by breadth-first growth; tile words are compared in the group.
  out.tiles.push_back({{}, {}});
  std::size_t layer_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    std::size_t layer_end = out.tiles.size();
    for (std::size_t t = layer_begin; t < layer_end; ++t)
      for (int s = 0; s < m.num_sides(); ++s) {
        GroupWord w = dehn_reduce(concat(out.tiles[t].word, {m.exit_letter(s)}), m);
        if (static_cast<int>(w.size()) != r) continue;
        bool seen = false;
        for (std::size_t u = layer_end; u < out.tiles.size() && !seen; ++u)
          seen = is_trivial(concat(inverse(out.tiles[u].word), w), m);
        if (!seen) out.tiles.push_back({w, {}});
      }
    layer_begin = layer_end;
  }
  // Each chord of each curve lifts exactly once into every tile.
  const int nc = static_cast<int>(curves.size());
  for (auto& tile : out.tiles)
    for (int c = 0; c < nc; ++c)
      for (int j = 0; j < std::max(1, curves[c].num_crossings()); ++j) tile.chords.emplace_back(c, j);
  std::vector<DevelopedCrossing> local;
  for (int a = 0; a < nc; ++a)
    for (int b = a; b < nc; ++b)
      for (const auto& ip : a == b ? self_intersections(curves[a]) : intersections(curves[a], curves[b]))
        local.push_back({0, a, ip.chord1, b, ip.chord2, ip.pos});
  for (int t = 0; t < static_cast<int>(out.tiles.size()); ++t)
    for (auto x : local) {
      x.tile = t;
      out.crossings.push_back(x);
    }
  return out;
}

std::map<std::size_t, int> base_lift_crossings(const CurveDiagram& c1, const CurveDiagram& c2,
                                               int radius) {
  const SurfaceModel& m = c1.model();
  std::vector<GroupWord> tiles;
  auto tile_index = [&](const GroupWord& w) {
    for (std::size_t t = 0; t < tiles.size(); ++t)
      if (is_trivial(concat(inverse(tiles[t]), w), m)) return t;
    tiles.push_back(w);
    return tiles.size() - 1;
  };
  // (tile, chord) pairs of the lift of c through the base tile.
  auto lift = [&](const CurveDiagram& c) {
    auto pre = loop_prefixes(c);
    pre.pop_back();
    if (pre.empty()) pre.emplace_back();
    GroupWord g = c.letters();
    const bool closed = g.empty() || is_trivial(g, m);
    std::vector<std::pair<std::size_t, int>> out;
    for (int dir : {1, -1})
      for (int p = dir > 0 ? 0 : -1;; p += dir) {
        if (closed && p != 0) break;
        bool any = false;
        for (int j = 0; j < static_cast<int>(pre.size()); ++j) {
          GroupWord w = dehn_reduce(concat(power(g, p), pre[j]), m);
          if (static_cast<int>(w.size()) > radius) continue;
          any = true;
          out.emplace_back(tile_index(w), j);
        }
        if (!any || std::abs(p) > 4 * radius + 4) break;
      }
    return out;
  };
  auto l1 = lift(c1), l2 = lift(c2);
  std::map<std::size_t, int> count;
  auto pts = intersections(c1, c2);
  for (auto [t1, j1] : l1)
    for (auto [t2, j2] : l2) {
      if (t1 != t2) continue;
      for (const auto& ip : pts)
        if (ip.chord1 == j1 && ip.chord2 == j2) ++count[t1];
    }
  return count;
}

std::vector<Polygon> find_lunes(const CurveDiagram& c1, const CurveDiagram& c2, int from, int to,
                                int radius) {
  auto pts = intersections(c1, c2);
  const auto& x = pts.at(from);
  const auto& y = pts.at(to);
  auto found = search({&c1, &c2}, {first_place(y), second_place(x)},
                      {first_place(x), second_place(y)}, radius);
  for (auto& p : found) p.corners = {to, from};
  return found;
}

int default_radius(const CurveDiagram& c1, const CurveDiagram& c2) {
  return static_cast<int>(c1.letters().size() + c2.letters().size()) + 4;
}

FloerComplex build_complex(const CurveDiagram& c1_in, const CurveDiagram& c2_in, int radius) {
  require_unobstructed(c1_in);
  require_unobstructed(c2_in);
  std::vector<CurveDiagram> cs{c1_in, c2_in};
  separate(cs);
  return with_window(radius, default_radius(cs[0], cs[1]), [&](int r) {
    FloerComplex fc;
    fc.c1 = cs[0];
    fc.c2 = cs[1];
    fc.radius = r;
    fc.generators = intersections(fc.c1, fc.c2);
    const int n = static_cast<int>(fc.generators.size());
    for (const auto& g : fc.generators) fc.degree.push_back(g.degree);
    fc.d.assign(n, std::vector<Novikov>(n));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (x == y || fc.degree[x] == fc.degree[y]) continue;
        for (const auto& lune : find_lunes(fc.c1, fc.c2, x, y, r)) fc.d[x][y].add_term(lune.area);
      }
    return fc;
  });
}

bool d_squared_zero(const FloerComplex& fc) {
  const std::size_t n = fc.generators.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < n; ++z) {
      Novikov s;
      for (std::size_t y = 0; y < n; ++y) s += fc.d[x][y] * fc.d[y][z];
      if (!s.is_zero()) return false;
    }
  return true;
}

namespace {

int gf2_rank(std::vector<std::vector<int>> a) {
  int rank = 0;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][col]) piv = r;
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    for (int r = 0; r < rows; ++r)
      if (r != rank && a[r][col])
        for (int c = 0; c < cols; ++c) a[r][c] ^= a[rank][c];
    ++rank;
  }
  return rank;
}

}  // namespace

int homology_rank(const FloerComplex& fc) {
  if (!d_squared_zero(fc)) throw std::logic_error("differential does not square to zero");
  const std::size_t n = fc.generators.size();
  std::vector<std::vector<int>> a(n, std::vector<int>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) a[x][y] = fc.d[x][y].at_one();
  return static_cast<int>(n) - 2 * gf2_rank(a);
}

int floer_rank(const CurveDiagram& c1, const CurveDiagram& c2) {
  return homology_rank(build_complex(c1, c2));
}

std::vector<Polygon> find_triangles(const CurveDiagram& c0, const CurveDiagram& c1,
                                    const CurveDiagram& c2, int radius) {
  auto g01 = intersections(c0, c1);
  auto g12 = intersections(c1, c2);
  auto g02 = intersections(c0, c2);
  std::vector<Polygon> out;
  for (int y = 0; y < static_cast<int>(g02.size()); ++y)
    for (int a = 0; a < static_cast<int>(g01.size()); ++a)
      for (int b = 0; b < static_cast<int>(g12.size()); ++b) {
        auto found = search({&c0, &c1, &c2},
                            {first_place(g02[y]), second_place(g01[a]), second_place(g12[b])},
                            {first_place(g01[a]), first_place(g12[b]), second_place(g02[y])},
                            radius);
        for (auto& p : found) {
          p.corners = {y, a, b};
          out.push_back(std::move(p));
        }
      }
  return out;
}

Mu2 mu2(const CurveDiagram& c0, const CurveDiagram& c1, const CurveDiagram& c2, int radius) {
  for (const auto* c : {&c0, &c1, &c2}) require_unobstructed(*c);
  std::vector<CurveDiagram> cs{c0, c1, c2};
  separate(cs);
  int start = static_cast<int>(cs[0].letters().size() + cs[1].letters().size() +
                               cs[2].letters().size()) + 4;
  return with_window(radius, start, [&](int r) {
    Mu2 out;
    out.c0 = cs[0];
    out.c1 = cs[1];
    out.c2 = cs[2];
    out.g01 = intersections(out.c0, out.c1);
    out.g12 = intersections(out.c1, out.c2);
    out.g02 = intersections(out.c0, out.c2);
    for (const auto& t : find_triangles(out.c0, out.c1, out.c2, r))
      out.terms[{t.corners[1], t.corners[2]}][t.corners[0]].add_term(t.area);
    return out;
  });
}

bool leibniz_holds(const CurveDiagram& c0, const CurveDiagram& c1, const CurveDiagram& c2) {
  Mu2 m = mu2(c0, c1, c2);
  FloerComplex d01 = build_complex(m.c0, m.c1);
  FloerComplex d12 = build_complex(m.c1, m.c2);
  FloerComplex d02 = build_complex(m.c0, m.c2);
  auto term = [&](int a, int b, int y) {
    auto it = m.terms.find({a, b});
    if (it == m.terms.end()) return Novikov{};
    auto jt = it->second.find(y);
    return jt == it->second.end() ? Novikov{} : jt->second;
  };
  const int n01 = static_cast<int>(m.g01.size());
  const int n12 = static_cast<int>(m.g12.size());
  const int n02 = static_cast<int>(m.g02.size());
  for (int a = 0; a < n01; ++a)
    for (int b = 0; b < n12; ++b)
      for (int z = 0; z < n02; ++z) {
        Novikov s;
        for (int y = 0; y < n02; ++y) s += term(a, b, y) * d02.d[y][z];
        for (int a2 = 0; a2 < n01; ++a2) s += d01.d[a][a2] * term(a2, b, z);
        for (int b2 = 0; b2 < n12; ++b2) s += d12.d[b][b2] * term(a, b2, z);
        if (!s.is_zero()) return false;
      }
  return true;
}

CobordismClass k0_class(const CurveDiagram& c) {
  require_unobstructed(c);
  return class_of(c);
}

std::string complex_to_json(const FloerComplex& fc) {
  nlohmann::json j;
  j["radius"] = fc.radius;
  j["generators"] = nlohmann::json::array();
  for (std::size_t i = 0; i < fc.generators.size(); ++i) {
    const auto& g = fc.generators[i];
    j["generators"].push_back({{"index", i}, {"pos", {g.pos.x, g.pos.y}}, {"degree", fc.degree[i]}});
  }
  j["differential"] = nlohmann::json::array();
  for (std::size_t x = 0; x < fc.d.size(); ++x)
    for (std::size_t y = 0; y < fc.d[x].size(); ++y) {
      if (fc.d[x][y].is_zero()) continue;
      nlohmann::json terms = nlohmann::json::array();
      for (double e : fc.d[x][y].exponents()) terms.push_back({{"exp", e}, {"coeff", 1}});
      j["differential"].push_back({{"from", x}, {"to", y}, {"terms", terms}});
    }
  return j.dump();
}

}  // namespace lagcob
