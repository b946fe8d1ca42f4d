#pragma once

#include <string>
#include <vector>

#include "lagcob/curve_diagram.hpp"

namespace lagcob {

struct RenderOptions {
  int size = 640;  // width and height in pixels
  bool side_labels = true;
  bool intersections = true;
};

// SVG 1.1 picture of the polygon with labelled sides, oriented curves and their intersection
// points (filled for degree 1, hollow for degree 0). Output depends only on the input.
std::string render_svg(const ModelPtr& model, const std::vector<CurveDiagram>& curves,
                       const RenderOptions& options = {});

}  // namespace lagcob
