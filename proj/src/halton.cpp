#include "inrs/io.hpp"

namespace inrs {

double radical_inverse(std::uint64_t index, std::uint32_t base) {
  const double inv = 1.0 / base;
  double f = inv, r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

std::vector<Point2> halton(std::size_t m, const Rect& rect) {
  std::vector<Point2> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double hx = radical_inverse(i + 1, 2);
    const double hy = radical_inverse(i + 1, 3);
    out[i] = {rect.xmin + hx * rect.width(), rect.ymin + hy * rect.height()};
  }
  return out;
}

std::vector<Point2> grid(std::size_t n, const Rect& rect) {
  std::vector<Point2> out;
  out.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      out.push_back({rect.xmin + (i + 0.5) / n * rect.width(), rect.ymin + (j + 0.5) / n * rect.height()});
  return out;
}

}  // namespace inrs
