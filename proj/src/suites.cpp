#include "lagcob/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "lagcob/curve_ops.hpp"
#include "lagcob/floer.hpp"
#include "lagcob/invariants.hpp"
#include "lagcob/unobstruction.hpp"

namespace lagcob {

bool SuiteReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"moves", "thm-1.5", "thm-5.1", "mcg", "floer"};
  return names;
}

GroupWord random_reduced_word(std::mt19937_64& rng, int genus, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len), gen(0, 2 * genus - 1), sign(0, 1);
  GroupWord w;
  int n = len(rng);
  while (static_cast<int>(w.size()) < n) {
    Letter l{gen(rng), sign(rng) ? 1 : -1};
    if (!w.empty() && w.back().gen == l.gen && w.back().sign == -l.sign) continue;
    w.push_back(l);
  }
  return w;
}

std::vector<CurveDiagram> lickorish_family(const ModelPtr& model) {
  std::vector<CurveDiagram> out;
  for (int i = 1; i <= model->genus(); ++i) {
    out.push_back(lickorish_alpha(model, i));
    out.push_back(lickorish_beta(model, i));
    if (i < model->genus()) out.push_back(lickorish_gamma(model, i));
  }
  return out;
}

std::vector<CurveDiagram> twisted_family(const ModelPtr& model, std::mt19937_64& rng, int count) {
  auto base = lickorish_family(model);
  std::vector<CurveDiagram> out;
  while (static_cast<int>(out.size()) < count) {
    CurveDiagram c = base[rng() % base.size()];
    int twists = 1 + static_cast<int>(rng() % 2);
    for (int t = 0; t < twists; ++t) c = dehn_twist(base[rng() % base.size()], c);
    out.push_back(c);
  }
  return out;
}

namespace {

// Set by run_suite for the duration of one run; negative keeps each check's own tolerance.
thread_local double tolerance_override = -1.0;

// Tallies one check: pass/fail cases and the worst numeric error.
class Tally {
 public:
  Tally(std::string id, std::string property, double tolerance = 0.0, int min_cases = 1)
      : id_(std::move(id)),
        property_(std::move(property)),
        tol_(tolerance > 0 && tolerance_override >= 0 ? tolerance_override : tolerance),
        min_(min_cases) {}

  void expect(bool ok) {
    ++cases_;
    if (!ok) ++failures_;
  }
  void error(double e) {
    ++cases_;
    if (!std::isfinite(e)) e = INFINITY;
    max_err_ = std::max(max_err_, e);
    if (!(e <= tol_)) ++failures_;
  }
  void set(const std::string& key, double v) { extra_[key] = v; }
  int cases() const { return cases_; }

  SuiteCheck done() const {
    SuiteCheck c;
    c.id = id_;
    c.property = property_;
    c.tolerance = tol_;
    c.measured = extra_;
    c.measured["cases"] = cases_;
    c.measured["failures"] = failures_;
    if (max_err_ > 0 || tol_ > 0) c.measured["max_error"] = max_err_;
    c.pass = failures_ == 0 && cases_ >= min_;
    return c;
  }

 private:
  std::string id_, property_;
  double tol_;
  int min_;
  int cases_ = 0, failures_ = 0;
  double max_err_ = 0.0;
  std::map<std::string, double> extra_;
};

std::vector<int> add(std::vector<int> a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

bool generic(const CurveDiagram& c) {
  auto pts = self_intersections(c);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (norm(pts[i].pos - pts[j].pos) < 1e-6) return false;
  return true;
}

void run_moves(SuiteReport& r, std::mt19937_64& rng) {
  auto M = build_surface(r.genus, 100.0);
  const int chi = M->euler_characteristic();
  Tally h("moves.homology", "every move keeps the homology class");
  Tally turn("moves.turning", "slides, edge pushes and detour edits keep the turning number");
  Tally vturn("moves.vertex_turning", "a vertex push shifts the turning number by +-chi");
  Tally hol("moves.holonomy", "holonomy changes by the swept area", 1e-6);
  Tally wind("moves.winding", "developed angle is a whole number of turns", 0.01, 1000);
  for (int d = 0; d < 200; ++d) {
    CurveDiagram c = from_word(random_reduced_word(rng, r.genus, 10), M);
    for (int step = 0; step < 50; ++step) {
      auto mv = random_move(c, rng, true);
      if (!mv) break;
      MoveResult res;
      try {
        res = apply_move(c, *mv);
      } catch (const std::invalid_argument&) {
        continue;
      }
      h.expect(homology_class(res.curve) == homology_class(c));
      int dt = turning_number(res.curve) - turning_number(c);
      if (std::holds_alternative<VertexPush>(*mv))
        vturn.expect(std::abs(dt) == std::abs(chi));
      else
        turn.expect(dt == 0);
      hol.error(std::abs(holonomy(res.curve) - holonomy(c) - res.swept_area));
      double turns = developed_angle(res.curve) / kTwoPi;
      wind.error(std::abs(turns - std::round(turns)));
      c = res.curve;
    }
  }
  for (auto* t : {&h, &turn, &vturn, &hol, &wind}) r.checks.push_back(t->done());
}

void run_thm15(SuiteReport& r, std::mt19937_64& rng) {
  const int g = r.genus, mm = 2 * g - 2;
  auto M = build_surface(g, 100.0);

  Tally spots("thm15.maslov_spot_values",
              "torus boundary has m = -1, a genus k subsurface boundary m = 1 - 2k, a small circle m = 1");
  spots.expect(mod(maslov(torus_boundary(M)), mm) == mod(-1, mm));
  for (int k = 1; k < g; ++k) {
    auto s = class_of(subsurface_boundary(M, k));
    spots.expect(mod(s.m, mm) == mod(1 - 2 * k, mm) &&
                 std::all_of(s.h.begin(), s.h.end(), [](int v) { return v == 0; }));
  }
  spots.expect(mod(maslov(small_circle(M)), mm) == mod(1, mm));
  r.checks.push_back(spots.done());

  Tally res("thm15.resolution", "resolution conserves total homology and turning, and holonomy", 1e-6, 50);
  Tally term("thm15.resolution_terminates", "iterated resolution ends in embedded curves", 0, 50);
  for (int trial = 0; trial < 400 && term.cases() < 50; ++trial) {
    GroupWord w = random_reduced_word(rng, g, 7);
    CurveDiagram c = trial % 4 == 0 ? kinked(w, M) : from_word_raw(w, M);
    if (!generic(c)) continue;
    auto parts = resolve_all(c);
    std::vector<int> hs(M->rank(), 0);
    int turning = 0;
    double hl = 0;
    bool embedded = true;
    for (const auto& p : parts) {
      embedded = embedded && self_intersections(p).empty();
      hs = add(hs, homology_class(p));
      turning += turning_number(p);
      hl += holonomy(p);
    }
    term.expect(embedded);
    res.expect(hs == homology_class(c) && turning == turning_number(c));
    res.error(std::abs(hl - holonomy(c)));
  }
  r.checks.push_back(res.done());
  r.checks.push_back(term.done());

  Tally surg("thm15.surgery", "surgery at a degree-1 point adds homology, turning and holonomy", 1e-6, 50);
  for (int trial = 0; trial < 1000 && surg.cases() < 100; ++trial) {
    auto c1 = from_word(random_reduced_word(rng, g, 5), M);
    auto c2 = make_transverse(c1, from_word(random_reduced_word(rng, g, 5), M));
    for (const auto& x : intersections(c1, c2)) {
      if (x.degree != 1) continue;
      auto s = surgery(c1, c2, x);
      surg.expect(homology_class(s) == add(homology_class(c1), homology_class(c2)) &&
                  turning_number(s) == turning_number(c1) + turning_number(c2));
      surg.error(std::abs(holonomy(s) - holonomy(c1) - holonomy(c2)));
      break;
    }
  }
  r.checks.push_back(surg.done());

  Tally unob("thm15.unobstructed_examples",
             "embedded essential curves and the figure eight are unobstructed; a small circle is not proper; a kink has a teardrop");
  for (const auto& c : lickorish_family(M)) unob.expect(is_unobstructed(c).unobstructed);
  for (int k = 1; k < g; ++k) unob.expect(is_unobstructed(subsurface_boundary(M, k)).unobstructed);
  unob.expect(is_unobstructed(figure_eight(parse_word("a1"), parse_word("b1"), M)).unobstructed);
  auto sc = is_unobstructed(small_circle(M));
  unob.expect(!sc.proper && !sc.unobstructed);
  for (int i = 0; i < 10; ++i) {
    auto k = is_unobstructed(kinked(random_reduced_word(rng, g, 4), M));
    unob.expect(!k.unobstructed && k.witness && k.witness->period == 0);
  }
  r.checks.push_back(unob.done());

  Tally su("thm15.surgery_unobstructed",
           "surgery of unobstructed minimal-position curves at a degree-1 point is unobstructed", 0, 20);
  auto curves = lickorish_family(M);
  for (int s = 1; s < g; ++s) curves.push_back(subsurface_boundary(M, s));
  for (auto& c : twisted_family(M, rng, 8)) curves.push_back(c);
  for (std::size_t i = 0; i < curves.size(); ++i)
    for (std::size_t j = 0; j < curves.size(); ++j) {
      if (i == j) continue;
      auto c2 = make_transverse(curves[i], curves[j]);
      auto pts = intersections(curves[i], c2);
      if (pts.empty() || !in_minimal_position(curves[i], c2)) continue;
      for (const auto& x : pts) {
        if (x.degree != 1) continue;
        auto s = surgery(curves[i], c2, x);
        if (lift_is_proper(s)) su.expect(is_unobstructed(s).unobstructed);
        break;
      }
    }
  r.checks.push_back(su.done());
}

void run_thm51(SuiteReport& r, std::mt19937_64& rng) {
  const int g = r.genus;
  Tally sec("thm51.hol_section", "a push-off by x changes holonomy by x", 1e-6, 6);
  for (double area : {100.0, 1000.0}) {
    auto M = build_surface(g, area);
    std::vector<double> xs = area < 500 ? std::vector<double>{1.0 / 3, -1.0 / 3, 2, -2}
                                        : std::vector<double>{10, -10};
    for (const auto& c : {lickorish_alpha(M, 1), lickorish_beta(M, 1)})
      for (double x : xs) {
        try {
          sec.error(std::abs(holonomy(push_off(c, x)) - holonomy(c) - x));
        } catch (const std::runtime_error&) {
          sec.error(INFINITY);
        }
      }
  }
  r.checks.push_back(sec.done());

  auto M = build_surface(g, 100.0);
  Tally rev("thm51.hol_reversal", "holonomy is odd under reversal", 1e-6, 50);
  for (int i = 0; i < 50; ++i) {
    auto c = from_word(random_reduced_word(rng, g, 10), M);
    rev.error(std::abs(holonomy(c.reversed()) + holonomy(c)));
  }
  r.checks.push_back(rev.done());

  Tally sect("thm51.section_morphism", "i(x) + i(y) = i(x + y) and the holonomy of i(x) is x", 1e-12);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 20; ++i) {
    double x = u(rng), y = u(rng);
    sect.expect((i_of_real(x, g) + i_of_real(y, g)).approx_equal(i_of_real(x + y, g), 1e-12));
    sect.error(std::abs(i_of_real(x, g).hol - x));
  }
  r.checks.push_back(sect.done());

  Tally order("thm51.T_order", "T has order 2g - 2");
  CobordismClass T = class_T(g);
  order.expect(T.scaled(2 * g - 2).is_zero());
  for (int k = 1; k < 2 * g - 2; ++k) order.expect(!T.scaled(k).is_zero());
  auto tb = class_of(torus_boundary(M));
  order.expect((tb - i_of_real(tb.hol, g)).approx_equal(T));
  r.checks.push_back(order.done());

  Tally tw("thm51.twist_x", "twist class minus the transvection has zero h and m; x is finite");
  double max_x = 0;
  auto fam = lickorish_family(M);
  for (const auto& a : fam)
    for (const auto& b : fam) {
      if (&a == &b) continue;
      int p = symplectic_pairing(homology_class(b), homology_class(a));
      auto diff = class_of(dehn_twist(a, b)) - class_of(b) - class_of(a).scaled(p);
      bool zero_top = diff.m == 0 && std::all_of(diff.h.begin(), diff.h.end(), [](int v) { return v == 0; });
      tw.expect(zero_top && std::isfinite(diff.hol));
      max_x = std::max(max_x, std::abs(diff.hol));
    }
  tw.set("max_abs_x", max_x);
  r.checks.push_back(tw.done());
}

void run_mcg(SuiteReport& r, std::mt19937_64& rng) {
  Tally gamma("mcg.gamma_relation", "[gamma_i] = [alpha_(i+1)] - [alpha_i] - T in (h, m), genus 2 to 4", 0, 3);
  Tally lick("mcg.lickorish_transvection", "twists of Lickorish pairs are embedded transvections in (h, m)", 0, 10);
  Tally rnd("mcg.random_transvection", "twists of random embedded pairs are transvections in (h, m)", 0, 50);
  for (int g = 2; g <= 4; ++g) {
    auto M = build_surface(g, 100.0);
    for (int i = 1; i < g; ++i) {
      auto lhs = class_of(lickorish_gamma(M, i));
      auto rhs = class_of(lickorish_alpha(M, i + 1)) - class_of(lickorish_alpha(M, i)) - class_T(g);
      gamma.expect(lhs.same_topology(rhs));
    }
    auto fam = lickorish_family(M);
    for (const auto& a : fam)
      for (const auto& b : fam) {
        if (&a == &b) continue;
        auto t = dehn_twist(a, b);
        int p = symplectic_pairing(homology_class(b), homology_class(a));
        auto diff = class_of(t) - class_of(b) - class_of(a).scaled(p);
        lick.expect(self_intersections(t).empty() && diff.m == 0 &&
                    std::all_of(diff.h.begin(), diff.h.end(), [](int v) { return v == 0; }));
      }
  }
  auto M = build_surface(r.genus, 100.0);
  auto corpus = twisted_family(M, rng, 104);
  for (std::size_t i = 0; i + 1 < corpus.size(); i += 2) {
    const auto& a = corpus[i];
    const auto& b = corpus[i + 1];
    auto t = dehn_twist(a, b);
    int p = algebraic_intersection(make_transverse(a, b), a);
    auto diff = class_of(t) - class_of(b) - class_of(a).scaled(p);
    rnd.expect(p == symplectic_pairing(homology_class(b), homology_class(a)) && diff.m == 0 &&
               std::all_of(diff.h.begin(), diff.h.end(), [](int v) { return v == 0; }));
  }
  r.checks.push_back(gamma.done());
  r.checks.push_back(lick.done());
  r.checks.push_back(rnd.done());
}

void run_floer(SuiteReport& r, std::mt19937_64& rng) {
  auto M = build_surface(r.genus, 100.0);
  auto curves = lickorish_family(M);
  for (auto& c : twisted_family(M, rng, 4)) curves.push_back(c);
  auto immersed = tighten(from_word(parse_word("a1b1"), M));
  curves.push_back(immersed);

  Tally d2("floer.d_squared", "d o d = 0 with matched exponents", 0, 30);
  Tally deg("floer.degree", "the differential changes the degree", 0, 10);
  Tally pos("floer.positive_exponents", "every exponent is positive", 0, 10);
  Tally sat("floer.saturation", "the complex at R and R + 2 agree");
  Tally minimal("floer.minimal_rank", "rank equals the number of points in minimal position", 0, 5);
  Tally inv("floer.rank_invariance", "rank is unchanged by finger moves and push-offs", 0, 10);
  Tally imm("floer.immersed_member", "complexes with an immersed unobstructed curve square to zero", 0, 1);
  auto check_entries = [&](const FloerComplex& fc) {
    const std::size_t n = fc.generators.size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (fc.d[x][y].is_zero()) continue;
        deg.expect(fc.degree[x] != fc.degree[y]);
        for (double e : fc.d[x][y].exponents()) pos.expect(e > 0);
      }
  };
  for (std::size_t i = 0; i < curves.size(); ++i)
    for (std::size_t j = 0; j < curves.size(); ++j) {
      if (i == j) continue;
      const auto& c1 = curves[i];
      auto c2 = make_transverse(c1, curves[j]);
      auto fc = build_complex(c1, c2);
      bool ok = d_squared_zero(fc);
      d2.expect(ok);
      if (&curves[i] == &curves.back() || &curves[j] == &curves.back()) imm.expect(ok);
      const std::size_t n = fc.generators.size();
      check_entries(fc);
      if (!ok || n == 0) continue;
      int r0 = homology_rank(fc);
      auto bigger = build_complex(fc.c1, fc.c2, fc.radius + 2);
      bool same = true;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          same = same && bigger.d[x][y].exponents().size() == fc.d[x][y].exponents().size();
      sat.expect(same);
      if (in_minimal_position(fc.c1, fc.c2)) minimal.expect(r0 == static_cast<int>(n));
      if (auto s = find_finger_site(fc.c2, fc.c1)) {
        auto fm = finger_move(fc.c2, fc.c1, *s).curve;
        auto ff = build_complex(fc.c1, fm);
        d2.expect(d_squared_zero(ff));
        check_entries(ff);
        inv.expect(homology_rank(ff) == r0);
      }
      inv.expect(floer_rank(fc.c1, push_off(fc.c2, 0.3)) == r0);
    }
  Tally base("floer.alpha_beta", "alpha_1 and beta_1 have rank 1; alpha_1 and alpha_2 rank 0");
  base.expect(floer_rank(lickorish_alpha(M, 1), lickorish_beta(M, 1)) == 1);
  base.expect(floer_rank(lickorish_alpha(M, 1), lickorish_alpha(M, 2)) == 0);
  for (auto* t : {&d2, &deg, &pos, &sat, &minimal, &inv, &imm, &base}) r.checks.push_back(t->done());

  Tally leib("floer.leibniz", "d(mu2(a, b)) = mu2(da, b) + mu2(a, db) over Z/2", 0, 20);
  int with_triangles = 0;
  auto a1 = lickorish_alpha(M, 1);
  {
    auto p = push_off(a1, 0.5);
    auto copy = finger_move(p, a1, *find_finger_site(p, a1)).curve;
    auto b1 = make_transverse(a1, lickorish_beta(M, 1));
    leib.expect(leibniz_holds(a1, b1, copy));
    if (!mu2(a1, b1, copy).terms.empty()) ++with_triangles;
  }
  for (int it = 0; it < 40; ++it) {
    auto c0 = curves[rng() % curves.size()];
    auto c1 = make_transverse(c0, curves[rng() % curves.size()]);
    if (rng() % 2)
      if (auto s = find_finger_site(c1, c0)) c1 = finger_move(c1, c0, *s).curve;
    auto c2 = curves[rng() % curves.size()];
    if (!mu2(c0, c1, c2).terms.empty()) ++with_triangles;
    leib.expect(leibniz_holds(c0, c1, c2));
  }
  leib.set("triples_with_triangles", with_triangles);
  r.checks.push_back(leib.done());

  Tally k0("floer.k0", "k0 class is odd under reversal and equals the cobordism class", 1e-6, 50);
  std::vector<CurveDiagram> pool = curves;
  int missing = std::max(0, 50 - static_cast<int>(pool.size()));
  for (auto& c : twisted_family(M, rng, missing)) pool.push_back(c);
  for (const auto& c : pool) {
    auto k = k0_class(c);
    k0.expect(k0_class(c.reversed()).approx_equal(-k) && k.approx_equal(class_of(c)));
  }
  bool rejected = false;
  try {
    k0_class(kinked(parse_word("a1"), M));
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  k0.expect(rejected);
  r.checks.push_back(k0.done());
}

}  // namespace

SuiteReport run_suite(const std::string& name, int genus, std::uint64_t seed, double tolerance) {
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw std::invalid_argument("unknown suite: " + name);
  if (genus < 2) throw std::invalid_argument("genus must be at least 2");
  auto start = std::chrono::steady_clock::now();
  SuiteReport r;
  r.name = name;
  r.genus = genus;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  struct Restore {
    ~Restore() { tolerance_override = -1.0; }
  } restore;
  tolerance_override = tolerance;
  if (name == "moves") run_moves(r, rng);
  if (name == "thm-1.5") run_thm15(r, rng);
  if (name == "thm-5.1") run_thm51(r, rng);
  if (name == "mcg") run_mcg(r, rng);
  if (name == "floer") run_floer(r, rng);
  std::sort(r.checks.begin(), r.checks.end(),
            [](const SuiteCheck& a, const SuiteCheck& b) { return a.id < b.id; });
  r.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string report_to_json(const SuiteReport& r, bool with_runtime) {
  nlohmann::json j;
  j["suite"] = r.name;
  j["genus"] = r.genus;
  j["seed"] = r.seed;
  j["pass"] = r.all_pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json m(c.measured);
    j["checks"].push_back({{"id", c.id},
                           {"property", c.property},
                           {"status", c.pass ? "pass" : "fail"},
                           {"measured", m},
                           {"tolerance", c.tolerance}});
  }
  if (with_runtime) j["runtime_seconds"] = r.runtime_seconds;
  return j.dump(2);
}

std::string report_to_text(const SuiteReport& r) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "suite " << r.name << " genus " << r.genus << " seed " << r.seed << "\n";
  for (const auto& c : r.checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.property;
    for (const auto& [k, v] : c.measured) os << " " << k << "=" << v;
    if (c.tolerance > 0) os << " tol=" << c.tolerance;
    os << "\n";
  }
  os << (r.all_pass() ? "all checks pass" : "some checks fail") << " in " << r.runtime_seconds
     << " s\n";
  return os.str();
}

}  // namespace lagcob
