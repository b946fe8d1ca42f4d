#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lagcob/curve_ops.hpp"
#include "lagcob/floer.hpp"
#include "lagcob/invariants.hpp"
#include "lagcob/render.hpp"
#include "lagcob/suites.hpp"
#include "lagcob/unobstruction.hpp"

using namespace lagcob;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

// Bad input: unreadable files, mismatched surfaces, out-of-range points.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

// Curves keep full precision so that printed JSON loads back unchanged.
void round_numbers(json& j) {
  if (j.is_number_float()) {
    j = round12(j.get<double>());
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "curve") round_numbers(it.value());
  } else if (j.is_array()) {
    for (auto& v : j) round_numbers(v);
  }
}

std::string dump(json j) {
  round_numbers(j);
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

// Loads curves and moves them onto one shared surface model.
std::vector<CurveDiagram> load_curves(const std::vector<std::string>& paths) {
  std::vector<CurveDiagram> raw;
  for (const auto& p : paths) {
    try {
      raw.push_back(curve_from_json(read_file(p)));
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(p + ": " + e.what());
    }
  }
  std::vector<CurveDiagram> out;
  if (raw.empty()) return out;
  ModelPtr model = raw.front().model_ptr();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const SurfaceModel& m = raw[i].model();
    if (m.genus() != model->genus() || m.total_area() != model->total_area())
      throw UsageError(paths[i] + ": curve lives on a different surface");
    out.emplace_back(model, raw[i].nodes());
  }
  return out;
}

json point_json(const IntersectionPoint& p, int index) {
  return {{"index", index}, {"x", p.pos.x}, {"y", p.pos.y}, {"degree", p.degree}};
}

json class_json(const CurveDiagram& c) {
  json j = json::parse(class_to_json(class_of(c)));
  j["turning"] = turning_number(c);
  j["self_intersections"] = self_intersections(c).size();
  return j;
}

void print_class(std::ostream& os, const CobordismClass& k) {
  os << "hol " << k.hol << "\nh";
  for (int v : k.h) os << " " << v;
  os << "\nm " << k.m << " (mod " << k.modulus << ")\n";
}

void print_points(std::ostream& os, const std::vector<IntersectionPoint>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    os << "  " << i << ": (" << pts[i].pos.x << ", " << pts[i].pos.y << ") degree "
       << pts[i].degree << "\n";
}

struct Options {
  bool as_json = false;
  double tolerance = -1.0;
};

int cmd_invariants(const Options& o, const std::string& path) {
  auto c = load_curves({path}).front();
  if (o.as_json) {
    std::cout << dump(class_json(c)) << "\n";
  } else {
    print_class(std::cout, class_of(c));
    std::cout << "turning " << turning_number(c) << "\nself_intersections "
              << self_intersections(c).size() << "\nword " << format_word(c.letters()) << "\n";
  }
  return kExitOk;
}

int cmd_unobstructed(const Options& o, const std::string& path) {
  auto c = load_curves({path}).front();
  auto r = is_unobstructed(c);
  if (o.as_json) {
    json j{{"unobstructed", r.unobstructed}, {"proper", r.proper}, {"witness", nullptr}};
    if (r.witness) j["witness"] = json::parse(witness_to_json(*r.witness));
    std::cout << dump(j) << "\n";
  } else {
    std::cout << "unobstructed " << (r.unobstructed ? "true" : "false") << "\nproper "
              << (r.proper ? "true" : "false") << "\n";
    if (r.witness)
      std::cout << "witness double point (" << r.witness->point.pos.x << ", "
                << r.witness->point.pos.y << ") period " << r.witness->period << "\n";
  }
  return kExitOk;
}

int cmd_minpos(const Options& o, const std::string& p1, const std::string& p2) {
  auto cs = load_curves({p1, p2});
  auto c2 = make_transverse(cs[0], cs[1]);
  auto pts = intersections(cs[0], c2);
  auto bigons = find_bigons(cs[0], c2);
  if (o.as_json) {
    json j{{"minimal_position", bigons.empty()}, {"intersections", json::array()},
           {"bigons", json::array()}};
    for (std::size_t i = 0; i < pts.size(); ++i) j["intersections"].push_back(point_json(pts[i], i));
    for (const auto& b : bigons) j["bigons"].push_back(json::parse(witness_to_json(b)));
    std::cout << dump(j) << "\n";
  } else {
    std::cout << "minimal_position " << (bigons.empty() ? "true" : "false") << "\nintersections "
              << pts.size() << "\n";
    print_points(std::cout, pts);
    for (const auto& b : bigons) std::cout << "bigon between points " << b.x << " and " << b.y << "\n";
  }
  return kExitOk;
}

int emit_curve(const Options& o, const CurveDiagram& c, const std::string& out, json extra) {
  if (!out.empty()) write_file(out, curve_to_json(c) + "\n");
  if (o.as_json) {
    extra["curve"] = json::parse(curve_to_json(c));
    extra["class"] = class_json(c);
    std::cout << dump(extra) << "\n";
  } else {
    print_class(std::cout, class_of(c));
    std::cout << "turning " << turning_number(c) << "\nword " << format_word(c.letters()) << "\n";
    for (auto it = extra.begin(); it != extra.end(); ++it)
      std::cout << it.key() << " " << dump(it.value()) << "\n";
    if (!out.empty()) std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int cmd_surgery(const Options& o, const std::string& p1, const std::string& p2, int k,
                const std::string& out) {
  auto cs = load_curves({p1, p2});
  auto c2 = make_transverse(cs[0], cs[1]);
  auto pts = intersections(cs[0], c2);
  if (k < 0 || k >= static_cast<int>(pts.size()))
    throw UsageError("point index out of range; the curves meet in " + std::to_string(pts.size()) +
                     " points");
  if (pts[k].degree != 1) throw UsageError("surgery needs a degree 1 intersection point");
  return emit_curve(o, surgery(cs[0], c2, pts[k]), out, json::object());
}

int cmd_resolve(const Options& o, const std::string& path, int k, const std::string& out) {
  auto c = load_curves({path}).front();
  auto pts = self_intersections(c);
  if (k < 0 || k >= static_cast<int>(pts.size()))
    throw UsageError("point index out of range; the curve has " + std::to_string(pts.size()) +
                     " double points");
  auto [a, b] = resolve_double_point(c, pts[k]);
  if (!out.empty()) {
    write_file(out + ".1.json", curve_to_json(a) + "\n");
    write_file(out + ".2.json", curve_to_json(b) + "\n");
  }
  if (o.as_json) {
    json j{{"pieces", json::array()}};
    for (const auto* p : {&a, &b})
      j["pieces"].push_back({{"curve", json::parse(curve_to_json(*p))}, {"class", class_json(*p)}});
    std::cout << dump(j) << "\n";
  } else {
    for (const auto* p : {&a, &b}) {
      std::cout << "piece " << (p == &a ? 1 : 2) << "\n";
      print_class(std::cout, class_of(*p));
      std::cout << "turning " << turning_number(*p) << "\n";
    }
  }
  return kExitOk;
}

int cmd_twist(const Options& o, const std::string& pa, const std::string& pb, const std::string& out) {
  auto cs = load_curves({pa, pb});
  auto t = dehn_twist(cs[0], cs[1]);
  int p = symplectic_pairing(homology_class(cs[1]), homology_class(cs[0]));
  auto diff = class_of(t) - class_of(cs[1]) - class_of(cs[0]).scaled(p);
  return emit_curve(o, t, out, json{{"pairing", p}, {"x", diff.hol}});
}

int cmd_floer(const Options& o, const std::string& p1, const std::string& p2, const std::string& p3) {
  std::vector<std::string> paths{p1, p2};
  if (!p3.empty()) paths.push_back(p3);
  auto cs = load_curves(paths);
  auto c2 = make_transverse(cs[0], cs[1]);
  auto fc = build_complex(cs[0], c2);
  json j = json::parse(complex_to_json(fc));
  j["d_squared_zero"] = d_squared_zero(fc);
  j["rank"] = homology_rank(fc);
  if (!p3.empty()) {
    auto m = mu2(cs[0], c2, cs[2]);
    json terms = json::array();
    for (const auto& [ab, outs] : m.terms)
      for (const auto& [y, coeff] : outs)
        terms.push_back({{"a", ab.first}, {"b", ab.second}, {"y", y}, {"exponents", coeff.exponents()}});
    j["mu2"] = {{"terms", terms}, {"leibniz", leibniz_holds(cs[0], c2, cs[2])}};
  }
  if (o.as_json) {
    std::cout << dump(j) << "\n";
  } else {
    std::cout << "generators " << fc.generators.size() << "\n";
    for (std::size_t i = 0; i < fc.generators.size(); ++i)
      std::cout << "  " << i << ": (" << fc.generators[i].pos.x << ", " << fc.generators[i].pos.y
                << ") degree " << fc.degree[i] << "\n";
    for (std::size_t x = 0; x < fc.generators.size(); ++x)
      for (std::size_t y = 0; y < fc.generators.size(); ++y)
        if (!fc.d[x][y].is_zero()) {
          std::cout << "d " << x << " -> " << y << ":";
          for (double e : fc.d[x][y].exponents()) std::cout << " T^" << e;
          std::cout << "\n";
        }
    std::cout << "d_squared_zero " << (j["d_squared_zero"].get<bool>() ? "true" : "false")
              << "\nrank " << j["rank"] << "\nwindow " << fc.radius << "\n";
    if (!p3.empty()) {
      for (const auto& t : j["mu2"]["terms"]) {
        std::cout << "mu2 (" << t["a"] << ", " << t["b"] << ") -> " << t["y"] << ":";
        for (double e : t["exponents"]) std::cout << " T^" << e;
        std::cout << "\n";
      }
      std::cout << "leibniz " << (j["mu2"]["leibniz"].get<bool>() ? "true" : "false") << "\n";
    }
  }
  return kExitOk;
}

int cmd_suite(const Options& o, const std::string& name, int genus, std::uint64_t seed) {
  auto r = run_suite(name, genus, seed, o.tolerance);
  if (o.as_json) {
    json j = json::parse(report_to_json(r));
    std::cout << dump(j) << "\n";
  } else {
    std::cout << report_to_text(r);
  }
  return r.all_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_render(const Options& o, const std::vector<std::string>& paths, const std::string& out,
               int size) {
  auto cs = load_curves(paths);
  RenderOptions ro;
  ro.size = size;
  std::string svg = render_svg(cs.front().model_ptr(), cs, ro);
  if (out.empty() || out == "-") {
    std::cout << svg;
  } else {
    write_file(out, svg);
    if (o.as_json)
      std::cout << dump(json{{"output", out}, {"curves", cs.size()}}) << "\n";
    else
      std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int cmd_curve(const Options& o, int genus, double area, const std::string& word,
              const std::string& kind, int index, const std::string& out) {
  auto model = build_surface(genus, area);
  CurveDiagram c = small_circle(model);
  if (kind == "word") c = from_word(parse_word(word), model);
  else if (kind == "raw") c = from_word_raw(parse_word(word), model);
  else if (kind == "kinked") c = kinked(parse_word(word), model);
  else if (kind == "alpha") c = lickorish_alpha(model, index);
  else if (kind == "beta") c = lickorish_beta(model, index);
  else if (kind == "gamma") c = lickorish_gamma(model, index);
  else if (kind == "torus") c = torus_boundary(model);
  else if (kind == "subsurface") c = subsurface_boundary(model, index);
  else if (kind != "circle") throw UsageError("unknown curve kind " + kind);
  std::string text = curve_to_json(c);
  if (out.empty() || out == "-") {
    std::cout << (o.as_json ? dump(json::parse(text)) : text) << "\n";
  } else {
    write_file(out, text + "\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants, operations and Floer complexes of curves on a closed surface"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.as_json, "Print machine-readable JSON");
  app.add_option("--tolerance", o.tolerance, "Override numeric tolerances of suite checks")
      ->check(CLI::NonNegativeNumber);
  std::cout << std::setprecision(12);

  std::function<int()> run;
  std::string f1, f2, f3, out, name, word = "a1", kind = "word";
  std::vector<std::string> files;
  int point = 0, genus = 2, size = 640, index = 1;
  std::uint64_t seed = 7;
  double area = 1.0;

  auto* inv = app.add_subcommand("invariants", "Cobordism class, turning and word of a curve");
  inv->add_option("curve", f1)->required()->check(CLI::ExistingFile);
  inv->callback([&] { run = [&] { return cmd_invariants(o, f1); }; });

  auto* unob = app.add_subcommand("unobstructed", "Decide whether the lift is properly embedded");
  unob->add_option("curve", f1)->required()->check(CLI::ExistingFile);
  unob->callback([&] { run = [&] { return cmd_unobstructed(o, f1); }; });

  auto* mp = app.add_subcommand("minpos", "Minimal position test and bigons");
  mp->add_option("c1", f1)->required()->check(CLI::ExistingFile);
  mp->add_option("c2", f2)->required()->check(CLI::ExistingFile);
  mp->callback([&] { run = [&] { return cmd_minpos(o, f1, f2); }; });

  auto* sg = app.add_subcommand("surgery", "Surgery at a degree 1 intersection point");
  sg->add_option("c1", f1)->required()->check(CLI::ExistingFile);
  sg->add_option("c2", f2)->required()->check(CLI::ExistingFile);
  sg->add_option("--point", point, "Index into the intersection points")->required();
  sg->add_option("-o,--output", out, "Write the resulting curve here");
  sg->callback([&] { run = [&] { return cmd_surgery(o, f1, f2, point, out); }; });

  auto* rs = app.add_subcommand("resolve", "Smooth a self double point");
  rs->add_option("curve", f1)->required()->check(CLI::ExistingFile);
  rs->add_option("--point", point, "Index into the double points")->required();
  rs->add_option("-o,--output", out, "Write the pieces to <output>.1.json and <output>.2.json");
  rs->callback([&] { run = [&] { return cmd_resolve(o, f1, point, out); }; });

  auto* tw = app.add_subcommand("twist", "Dehn twist of beta along alpha");
  tw->add_option("alpha", f1)->required()->check(CLI::ExistingFile);
  tw->add_option("beta", f2)->required()->check(CLI::ExistingFile);
  tw->add_option("-o,--output", out, "Write the twisted curve here");
  tw->callback([&] { run = [&] { return cmd_twist(o, f1, f2, out); }; });

  auto* fl = app.add_subcommand("floer", "Floer complex, homology rank and optional product");
  fl->add_option("c1", f1)->required()->check(CLI::ExistingFile);
  fl->add_option("c2", f2)->required()->check(CLI::ExistingFile);
  fl->add_option("--mu2", f3, "Third curve for the product")->check(CLI::ExistingFile);
  fl->callback([&] { run = [&] { return cmd_floer(o, f1, f2, f3); }; });

  auto* st = app.add_subcommand("suite", "Run a verification suite");
  st->add_option("name", name)->required()->check(CLI::IsMember(suite_names()));
  st->add_option("--seed", seed);
  st->add_option("--genus", genus)->check(CLI::Range(2, 12));
  st->callback([&] { run = [&] { return cmd_suite(o, name, genus, seed); }; });

  auto* rd = app.add_subcommand("render", "SVG picture of curves on the polygon");
  rd->add_option("curves", files)->required()->check(CLI::ExistingFile);
  rd->add_option("-o,--output", out, "SVG file, or - for stdout")->required();
  rd->add_option("--size", size, "Width and height in pixels")->check(CLI::Range(64, 8192));
  rd->callback([&] { run = [&] { return cmd_render(o, files, out, size); }; });

  auto* cv = app.add_subcommand("curve", "Build a curve and print or save its JSON");
  cv->add_option("--genus", genus)->check(CLI::Range(2, 12));
  cv->add_option("--area", area, "Total area of the surface")->check(CLI::PositiveNumber);
  cv->add_option("--kind", kind, "word, raw, kinked, alpha, beta, gamma, torus, subsurface, circle");
  cv->add_option("--word", word, "Word such as a1B2 (capital letters are inverses)");
  cv->add_option("--index", index, "Index for alpha, beta, gamma and subsurface");
  cv->add_option("-o,--output", out, "JSON file, or - for stdout");
  cv->callback([&] { run = [&] { return cmd_curve(o, genus, area, word, kind, index, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  try {
    return run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}
