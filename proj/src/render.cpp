#include "lagcob/render.hpp"

#include <cstdio>
#include <sstream>

namespace lagcob {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Frame {
  double scale, cx, cy;
  Vec2 map(Vec2 p) const { return {cx + scale * p.x, cy - scale * p.y}; }
};

}  // namespace

std::string render_svg(const ModelPtr& model, const std::vector<CurveDiagram>& curves,
                       const RenderOptions& opt) {
  const SurfaceModel& m = *model;
  const int n = m.num_sides();
  double radius = 0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, norm(m.corner(k)));
  Frame f{0.42 * opt.size / radius, opt.size / 2.0, opt.size / 2.0};

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.size
     << "\" height=\"" << opt.size << "\" viewBox=\"0 0 " << opt.size << " " << opt.size << "\">\n"
     << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" markerWidth=\"6\" "
        "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" "
        "fill=\"#444\"/></marker></defs>\n";

  os << "<polygon points=\"";
  for (int k = 0; k < n; ++k) {
    Vec2 p = f.map(m.corner(k));
    os << (k ? " " : "") << num(p.x) << "," << num(p.y);
  }
  os << "\" fill=\"#f7f7f7\" stroke=\"#333\" stroke-width=\"1.5\"/>\n";

  if (opt.side_labels) {
    for (int s = 0; s < n; ++s) {
      Vec2 mid = m.point(s, 0.5);
      Vec2 p = f.map(mid + (0.06 * radius) * m.outward_normal(s));
      os << "<text x=\"" << num(p.x) << "\" y=\"" << num(p.y)
         << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
            "dominant-baseline=\"middle\">"
         << letter_name(m.exit_letter(s)) << "</text>\n";
    }
  }

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    const char* color = kPalette[i % (sizeof kPalette / sizeof *kPalette)];
    os << "<g stroke=\"" << color << "\" stroke-width=\"2\" fill=\"none\">\n";
    for (int k = 0; k < c.size(); ++k) {
      Vec2 a = f.map(c.seg_start(k)), b = f.map(c.seg_end(k));
      Vec2 mid = lerp(a, b, 0.5);
      // Two halves so the arrow sits in the middle of the segment.
      os << "<polyline points=\"" << num(a.x) << "," << num(a.y) << " " << num(mid.x) << ","
         << num(mid.y) << " " << num(b.x) << "," << num(b.y)
         << "\" marker-mid=\"url(#arrow)\"/>\n";
    }
    os << "</g>\n";
  }

  if (opt.intersections) {
    auto dot = [&](const IntersectionPoint& x, const char* color) {
      Vec2 p = f.map(x.pos);
      os << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\"4\" stroke=\""
         << color << "\" stroke-width=\"1.5\" fill=\"" << (x.degree == 1 ? color : "white")
         << "\"/>\n";
    };
    for (std::size_t i = 0; i < curves.size(); ++i) {
      for (const auto& x : self_intersections(curves[i])) dot(x, "#000");
      for (std::size_t j = i + 1; j < curves.size(); ++j) {
        if (!params_jointly_distinct(curves[i], curves[j])) continue;
        for (const auto& x : intersections(curves[i], curves[j])) dot(x, "#000");
      }
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace lagcob
