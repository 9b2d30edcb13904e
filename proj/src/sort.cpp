#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "inrs/classifier.hpp"

namespace inrs {

namespace {

constexpr std::size_t kSmall = 64;
constexpr std::size_t kMaxBuckets = std::size_t{1} << 22;
constexpr unsigned kDigitBits = 11;

struct Rec {
  double x;
  double y;
  std::uint32_t bucket;
  std::uint32_t idx;
};

bool rec_less(const Rec& a, const Rec& b) { return a.x < b.x || (a.x == b.x && a.idx < b.idx); }

// Records arrive in ascending idx with bucket = a monotone map of x. An LSD
// radix sort on the bucket (one or two passes, so writes stream into at most
// 2^11 runs) is followed by a comparison sort inside each bucket.
void sort_records(std::vector<Rec>& recs, std::vector<Rec>& tmp, std::size_t nb) {
  const std::size_t n = recs.size();
  const unsigned bits = std::max(1u, static_cast<unsigned>(std::bit_width(nb - 1)));
  const unsigned passes = (bits + kDigitBits - 1) / kDigitBits;
  const unsigned width = (bits + passes - 1) / passes;
  const std::size_t radix = std::size_t{1} << width;

  std::vector<std::uint32_t> hist(passes * radix, 0);
  for (const Rec& r : recs)
    for (unsigned p = 0; p < passes; ++p) ++hist[p * radix + ((r.bucket >> (p * width)) & (radix - 1))];
  tmp.resize(n);
  for (unsigned p = 0; p < passes; ++p) {
    std::uint32_t* h = hist.data() + p * radix;
    std::uint32_t sum = 0;
    for (std::size_t d = 0; d < radix; ++d) {
      const std::uint32_t c = h[d];
      h[d] = sum;
      sum += c;
    }
    for (const Rec& r : recs) tmp[h[(r.bucket >> (p * width)) & (radix - 1)]++] = r;
    recs.swap(tmp);
  }

  std::size_t s = 0;
  while (s < n) {
    std::size_t e = s + 1;
    while (e < n && recs[e].bucket == recs[s].bucket) ++e;
    if (e - s > 16) {
      std::sort(recs.begin() + static_cast<std::ptrdiff_t>(s), recs.begin() + static_cast<std::ptrdiff_t>(e), rec_less);
    } else {
      for (std::size_t i = s + 1; i < e; ++i) {
        const Rec v = recs[i];
        std::size_t j = i;
        while (j > s && rec_less(v, recs[j - 1])) {
          recs[j] = recs[j - 1];
          --j;
        }
        recs[j] = v;
      }
    }
    s = e;
  }
}

std::size_t bucket_count(std::size_t n) { return std::clamp<std::size_t>(n, 1, kMaxBuckets); }

std::uint32_t bucket_of(double x, double lo, double scale, std::size_t nb) {
  const double f = (x - lo) * scale;
  return static_cast<std::uint32_t>(f > 0.0 ? std::min(static_cast<std::size_t>(f), nb - 1) : 0);
}

}  // namespace

std::vector<std::uint32_t> sort_permutation(std::span<const double> keys) {
  const std::size_t n = keys.size();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  bool finite = true;
  for (double k : keys) {
    finite = finite && std::isfinite(k);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  const std::size_t nb = bucket_count(n);
  const double scale = static_cast<double>(nb) / (hi - lo);
  std::vector<std::uint32_t> out(n);
  if (n < kSmall || !finite || !(hi > lo) || !std::isfinite(scale)) {
    std::iota(out.begin(), out.end(), 0u);
    std::stable_sort(out.begin(), out.end(), [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
    return out;
  }
  std::vector<Rec> recs(n);
  for (std::size_t i = 0; i < n; ++i)
    recs[i] = {keys[i], 0.0, bucket_of(keys[i], lo, scale, nb), static_cast<std::uint32_t>(i)};
  std::vector<Rec> tmp;
  sort_records(recs, tmp, nb);
  for (std::size_t i = 0; i < n; ++i) out[i] = recs[i].idx;
  return out;
}

void sort_cloud(std::span<const Point2> cloud, const Rect& box, SortedCloud& sc) {
  // Scratch kept per thread: repeated batches reuse the pages instead of faulting in fresh ones.
  thread_local std::vector<Rec> recs, tmp;
  const std::size_t nb = bucket_count(cloud.size());
  const double scale = static_cast<double>(nb) / box.width();
  const bool bucketed = cloud.size() >= kSmall && box.width() > 0.0 && std::isfinite(scale);
  recs.clear();
  recs.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point2 p = cloud[i];
    if (!box.contains(p)) continue;
    recs.push_back({p.x, p.y, bucketed ? bucket_of(p.x, box.xmin, scale, nb) : 0u, static_cast<std::uint32_t>(i)});
  }
  if (bucketed)
    sort_records(recs, tmp, nb);
  else
    std::sort(recs.begin(), recs.end(), rec_less);

  const std::size_t m = recs.size();
  sc.xs.resize(m);
  sc.ys.resize(m);
  sc.origin.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    sc.xs[j] = recs[j].x;
    sc.ys[j] = recs[j].y;
    sc.origin[j] = recs[j].idx;
  }
}

SortedCloud sort_cloud(std::span<const Point2> cloud, const Rect& box) {
  SortedCloud sc;
  sort_cloud(cloud, box, sc);
  return sc;
}

}  // namespace inrs
