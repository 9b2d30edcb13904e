#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "inrs/classifier.hpp"
#include "inrs/curve_model.hpp"

namespace inrs {

double median(std::vector<double> v);

struct BenchOptions {
  int repetitions = 21;
  int threads = 1;
  const kernels::KernelTable* kernels = nullptr;
};

/// Naive per-point loop versus the sorted batch classifier on one Halton cloud.
struct SpeedupRow {
  std::string config;
  std::size_t m = 0;
  int tau = 0;
  std::size_t boxes = 0;
  double build_s = 0.0;        ///< median geometry build time
  double naive_query_s = 0.0;  ///< median query time of the per-point loop
  double batch_query_s = 0.0;  ///< median query time of the sorted classifier
  /// Same, with the batched box solve disabled (general root solver per point).
  double batch_general_query_s = 0.0;
  double nu = 0.0;
  bool labels_equal = false;

  double query_speedup() const { return naive_query_s / batch_query_s; }
  double search_only_speedup() const { return naive_query_s / batch_general_query_s; }
  /// Build plus query, as a user would run either classifier once.
  double total_speedup() const { return (build_s + naive_query_s) / (build_s + batch_query_s); }
};

std::vector<SpeedupRow> run_speedup_bench(const BoundaryCurve& curve, std::span<const std::size_t> ms,
                                          std::span<const int> taus, const BenchOptions& opts = {});

/// Classifier versus point-in-polygon on an eps-polygonization.
struct PolygonRow {
  std::string config;
  std::size_t m = 0;
  double eps = 0.0;
  std::size_t vertices = 0;
  double polygonize_s = 0.0;
  double classifier_s = 0.0;  ///< build + query, median
  double oracle_s = 0.0;      ///< query on the prebuilt polygon, median
  std::size_t disagree_outside_band = 0;
  std::size_t disagree_in_band = 0;
};

std::vector<PolygonRow> run_polygon_comparison(const BoundaryCurve& curve, std::span<const std::size_t> ms,
                                               double eps = 1e-10, double band = 1e-6, const BenchOptions& opts = {});

/// Equations per point and timings across refinement levels.
struct TauRow {
  std::string config;
  std::size_t m = 0;
  int tau = 0;
  std::size_t boxes = 0;
  double build_s = 0.0;
  double query_s = 0.0;
  double nu = 0.0;
};

std::vector<TauRow> run_tau_sweep(const BoundaryCurve& curve, std::size_t m, std::span<const int> taus,
                                  const BenchOptions& opts = {});

/// Query time of the sorted classifier for several worker counts.
struct ThreadRow {
  std::string config;
  std::size_t m = 0;
  int threads = 0;
  double query_s = 0.0;
};
std::vector<ThreadRow> run_thread_sweep(const BoundaryCurve& curve, std::size_t m, std::span<const int> threads,
                                        const BenchOptions& opts = {});

std::string format_speedup_table(std::span<const SpeedupRow> rows);
std::string format_polygon_table(std::span<const PolygonRow> rows);
std::string format_tau_table(std::span<const TauRow> rows);
std::string format_thread_table(std::span<const ThreadRow> rows);

/// CSV with columns config,M,tau,build_s,query_s,nu,speedup.
std::string bench_csv(std::span<const SpeedupRow> speedup, std::span<const TauRow> tau);

}  // namespace inrs
