#include "inrs/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "inrs/io.hpp"
#include "inrs/oracle.hpp"

namespace inrs {

namespace {

using Clock = std::chrono::steady_clock;

template <class Fn>
double seconds(Fn&& fn) {
  const auto t0 = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ClassifyOptions classify_opts(const BenchOptions& o) {
  ClassifyOptions c;
  c.threads = o.threads;
  c.kernels = o.kernels;
  return c;
}

}  // namespace

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  if (v.size() % 2) return v[mid];
  const double hi = v[mid];
  return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
}

std::vector<SpeedupRow> run_speedup_bench(const BoundaryCurve& curve, std::span<const std::size_t> ms,
                                          std::span<const int> taus, const BenchOptions& opts) {
  std::vector<SpeedupRow> rows;
  const ClassifyOptions co = classify_opts(opts);
  const int reps = std::max(1, opts.repetitions);
  for (int tau : taus) {
    std::vector<double> tb;
    Geometry g;
    for (int r = 0; r < reps; ++r) tb.push_back(seconds([&] { g = build_boxes(curve, tau); }));
    const double build = median(tb);
    for (std::size_t m : ms) {
      const auto cloud = halton(m, g.global_box());
      std::vector<Label> a, b, c;
      ClassifyStats st;
      std::vector<double> tn, ts, tg;
      ClassifyOptions general = co;
      general.batched_solve = false;
      // Interleaved so all variants see the same machine state.
      for (int r = 0; r < reps; ++r) {
        tn.push_back(seconds([&] { a = classify_per_point(cloud, g, co); }));
        ts.push_back(seconds([&] { b = classify_batch(cloud, g, co, &st); }));
        tg.push_back(seconds([&] { c = classify_batch(cloud, g, general); }));
      }
      SpeedupRow row;
      row.config = curve.name();
      row.m = m;
      row.tau = tau;
      row.boxes = g.boxes().size();
      row.build_s = build;
      row.naive_query_s = median(tn);
      row.batch_query_s = median(ts);
      row.batch_general_query_s = median(tg);
      row.nu = st.nu();
      row.labels_equal = a == b && a == c;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<PolygonRow> run_polygon_comparison(const BoundaryCurve& curve, std::span<const std::size_t> ms,
                                               double eps, double band, const BenchOptions& opts) {
  std::vector<PolygonRow> rows;
  PolygonApprox poly;
  const double tp = seconds([&] { poly = polygonize(curve, eps); });
  const PolygonOracle oracle(poly.vertices, opts.kernels);
  const ClassifyOptions co = classify_opts(opts);
  const int reps = std::max(1, opts.repetitions);
  const Geometry g0 = build_boxes(curve);
  for (std::size_t m : ms) {
    const auto cloud = halton(m, g0.global_box());
    std::vector<Label> labels;
    std::vector<std::uint8_t> ol;
    std::vector<double> tc, to;
    for (int r = 0; r < reps; ++r) {
      tc.push_back(seconds([&] {
        const Geometry g = build_boxes(curve);
        labels = classify_batch(cloud, g, co);
      }));
      to.push_back(seconds([&] { ol = oracle.classify(cloud); }));
    }
    const AgreementReport rep = compare_with_oracle(cloud, labels, oracle, band);
    PolygonRow row;
    row.config = curve.name();
    row.m = m;
    row.eps = eps;
    row.vertices = poly.vertices.size();
    row.polygonize_s = tp;
    row.classifier_s = median(tc);
    row.oracle_s = median(to);
    row.disagree_in_band = rep.disagree_in_band;
    row.disagree_outside_band = rep.disagree_outside_band;
    rows.push_back(row);
  }
  return rows;
}

std::vector<TauRow> run_tau_sweep(const BoundaryCurve& curve, std::size_t m, std::span<const int> taus,
                                  const BenchOptions& opts) {
  std::vector<TauRow> rows;
  const ClassifyOptions co = classify_opts(opts);
  const int reps = std::max(1, opts.repetitions);
  for (int tau : taus) {
    Geometry g;
    std::vector<double> tb, tq;
    for (int r = 0; r < reps; ++r) tb.push_back(seconds([&] { g = build_boxes(curve, tau); }));
    const auto cloud = halton(m, g.global_box());
    ClassifyStats st;
    for (int r = 0; r < reps; ++r) tq.push_back(seconds([&] { classify_batch(cloud, g, co, &st); }));
    rows.push_back({curve.name(), m, tau, g.boxes().size(), median(tb), median(tq), st.nu()});
  }
  return rows;
}

std::vector<ThreadRow> run_thread_sweep(const BoundaryCurve& curve, std::size_t m, std::span<const int> threads,
                                        const BenchOptions& opts) {
  std::vector<ThreadRow> rows;
  const Geometry g = build_boxes(curve);
  const auto cloud = halton(m, g.global_box());
  const int reps = std::max(1, opts.repetitions);
  for (int t : threads) {
    BenchOptions o = opts;
    o.threads = t;
    const ClassifyOptions co = classify_opts(o);
    std::vector<double> tq;
    for (int r = 0; r < reps; ++r) tq.push_back(seconds([&] { classify_batch(cloud, g, co); }));
    rows.push_back({curve.name(), m, t, median(tq)});
  }
  return rows;
}

std::string format_speedup_table(std::span<const SpeedupRow> rows) {
  std::string out =
      "config       M        tau  boxes  build_s     naive_s     sorted_s    sorted_gen  nu      query_x  "
      "search_x total_x  same\n";
  for (const auto& r : rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-12s %-8zu %-4d %-6zu %-11.3e %-11.3e %-11.3e %-11.3e %-7.4f %-8.2f %-8.2f %-8.2f %s\n",
                  r.config.c_str(), r.m, r.tau, r.boxes, r.build_s, r.naive_query_s, r.batch_query_s,
                  r.batch_general_query_s, r.nu, r.query_speedup(), r.search_only_speedup(), r.total_speedup(),
                  r.labels_equal ? "yes" : "NO");
    out += buf;
  }
  return out;
}

std::string format_polygon_table(std::span<const PolygonRow> rows) {
  std::string out = "config       M        eps      vertices  polygonize_s  classifier_s  oracle_s    ratio   bad\n";
  for (const auto& r : rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-12s %-8zu %-8.0e %-9zu %-13.3e %-13.3e %-11.3e %-7.2f %zu\n", r.config.c_str(),
                  r.m, r.eps, r.vertices, r.polygonize_s, r.classifier_s, r.oracle_s, r.oracle_s / r.classifier_s,
                  r.disagree_outside_band);
    out += buf;
  }
  return out;
}

std::string format_tau_table(std::span<const TauRow> rows) {
  std::string out = "config       M        tau  boxes  build_s     query_s     nu\n";
  for (const auto& r : rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-12s %-8zu %-4d %-6zu %-11.3e %-11.3e %.4f\n", r.config.c_str(), r.m, r.tau,
                  r.boxes, r.build_s, r.query_s, r.nu);
    out += buf;
  }
  return out;
}

std::string format_thread_table(std::span<const ThreadRow> rows) {
  std::string out = "config       M        threads  query_s\n";
  for (const auto& r : rows) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-12s %-8zu %-8d %.3e\n", r.config.c_str(), r.m, r.threads, r.query_s);
    out += buf;
  }
  return out;
}

std::string bench_csv(std::span<const SpeedupRow> speedup, std::span<const TauRow> tau) {
  std::string out = "config,M,tau,build_s,query_s,nu,speedup\n";
  auto line = [&](const std::string& cfg, std::size_t m, int t, double b, double q, double nu, const std::string& sp) {
    out += cfg + "," + std::to_string(m) + "," + std::to_string(t) + "," + fmt("%.6e", b) + "," + fmt("%.6e", q) +
           "," + fmt("%.6f", nu) + "," + sp + "\n";
  };
  for (const auto& r : speedup) {
    line(r.config + "/naive", r.m, r.tau, r.build_s, r.naive_query_s, r.nu, "");
    line(r.config + "/sorted", r.m, r.tau, r.build_s, r.batch_query_s, r.nu, fmt("%.4f", r.query_speedup()));
  }
  for (const auto& r : tau) line(r.config + "/tau", r.m, r.tau, r.build_s, r.query_s, r.nu, "");
  return out;
}

}  // namespace inrs
