#include "inrs/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace inrs {

namespace {

struct View {
  Rect r;
  double scale;
  double pad = 20.0;
  double sx(double x) const { return pad + (x - r.xmin) * scale; }
  double sy(double y) const { return pad + (r.ymax - y) * scale; }
};

void add(std::string& out, const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  out += buf;
}

}  // namespace

std::string render_svg(const BoundaryCurve& curve, const Geometry& g, std::span<const Point2> pts,
                       std::span<const Label> labels, std::size_t max_points) {
  Rect r = g.global_box();
  const double margin = 0.05 * std::max(r.width(), r.height());
  r = r.inflated(margin);
  const double size = 800.0;
  const View v{r, size / std::max(r.width(), r.height())};
  const double w = 2 * v.pad + r.width() * v.scale, h = 2 * v.pad + r.height() * v.scale;

  std::string out;
  add(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n", w, h);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const auto& b : g.boxes())
    add(out, "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"none\" stroke=\"#9ab\" stroke-width=\"0.7\"/>\n",
        v.sx(b.rect.xmin), v.sy(b.rect.ymax), std::max(b.rect.width() * v.scale, 0.5),
        std::max(b.rect.height() * v.scale, 0.5));
  for (double x : g.critical().x_critical)
    add(out, "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"#e9a\" stroke-dasharray=\"3,3\"/>\n",
        v.sx(x), v.sy(r.ymin), v.sx(x), v.sy(r.ymax));

  const std::size_t stride = std::max<std::size_t>(1, (pts.size() + max_points - 1) / std::max<std::size_t>(1, max_points));
  static const char* colors[] = {"#bbb", "#1a6", "#d30"};
  for (std::size_t i = 0; i < pts.size(); i += stride)
    add(out, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.2\" fill=\"%s\"/>\n", v.sx(pts[i].x), v.sy(pts[i].y),
        colors[i < labels.size() ? static_cast<int>(labels[i]) : 0]);

  out += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  auto line = curve.sample(2000);
  line.push_back(line.front());
  for (const auto& p : line) add(out, "%.2f,%.2f ", v.sx(p.x), v.sy(p.y));
  out += "\"/>\n</svg>\n";
  return out;
}

}  // namespace inrs
