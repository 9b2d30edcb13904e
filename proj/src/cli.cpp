#include "inrs/cli.hpp"

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "inrs/bench.hpp"
#include "inrs/io.hpp"
#include "inrs/oracle.hpp"
#include "inrs/svg.hpp"

namespace inrs {

namespace {

struct Args {
  std::string domain;
  std::string points;
  std::optional<std::size_t> halton_m;
  std::optional<std::size_t> grid_n;
  int refine = kDefaultRefine;
  double tol = -1.0;
  bool boundary = false;
  std::string out;
  bool out_binary = false;
  bool bench = false;
  std::string bench_csv;
  int reps = 21;
  int threads = 1;
  std::string svg;
  std::string kernels;
  bool stats = false;
};

const kernels::KernelTable* pick_kernels(const std::string& name) {
  if (name.empty()) return nullptr;
  if (name == "scalar") return &kernels::table(kernels::Isa::scalar);
  if (name == "avx2") return &kernels::table(kernels::Isa::avx2);
  throw InputError("unknown kernel set '" + name + "' (expected scalar or avx2)");
}

int bench(const Args& a, const kernels::KernelTable* kt, std::ostream& out) {
  std::vector<std::string> names = a.domain.empty() ? builtin_domain_names() : std::vector<std::string>{a.domain};
  BenchOptions bo;
  bo.repetitions = a.reps;
  bo.threads = a.threads;
  bo.kernels = kt;
  const std::vector<std::size_t> ms{1000, 10000, 100000};
  const std::vector<int> tau_main{a.refine};
  const std::vector<int> taus{1, 2, 4, 8, 16};
  std::vector<SpeedupRow> sp;
  std::vector<TauRow> tr;
  std::vector<PolygonRow> pr;
  std::vector<ThreadRow> th;
  for (const auto& n : names) {
    const BoundaryCurve c = resolve_domain(n);
    for (auto& r : run_speedup_bench(c, ms, tau_main, bo)) sp.push_back(r);
    for (auto& r : run_tau_sweep(c, 100000, taus, bo)) tr.push_back(r);
    BenchOptions pbo = bo;
    pbo.repetitions = std::max(1, a.reps / 4);
    const std::vector<std::size_t> pm{1000, 10000};
    for (auto& r : run_polygon_comparison(c, pm, 1e-10, 1e-6, pbo)) pr.push_back(r);
    const std::vector<int> ts{1, 2, 4};
    for (auto& r : run_thread_sweep(c, 100000, ts, pbo)) th.push_back(r);
  }
  out << "# naive per-point loop vs sorted classifier (medians of " << bo.repetitions << " runs)\n"
      << format_speedup_table(sp) << "\n# refinement sweep\n"
      << format_tau_table(tr) << "\n# classifier vs point-in-polygon on a 1e-10 polygon\n"
      << format_polygon_table(pr) << "\n# worker sweep\n"
      << format_thread_table(th);
  if (!a.bench_csv.empty()) write_file(a.bench_csv, bench_csv(sp, tr));
  return 0;
}

int classify(const Args& a, const kernels::KernelTable* kt, std::ostream& out, std::ostream& err) {
  if (a.domain.empty()) throw InputError("--domain is required");
  const int sources = !a.points.empty() + a.halton_m.has_value() + a.grid_n.has_value();
  if (sources != 1) throw InputError("give exactly one of --points, --halton, --grid");

  const BoundaryCurve curve = resolve_domain(a.domain);
  const Geometry g = build_boxes(curve, a.refine);

  std::vector<Point2> pts;
  if (!a.points.empty())
    pts = load_points(a.points);
  else if (a.halton_m)
    pts = halton(*a.halton_m, g.global_box());
  else
    pts = grid(*a.grid_n, g.global_box());

  ClassifyOptions co;
  co.boundary_tol = a.tol;
  co.report_boundary = a.boundary;
  co.threads = a.threads;
  co.kernels = kt;
  ClassifyStats st;
  const std::vector<Label> labels = classify_batch(pts, g, co, &st);

  const std::string data = a.out_binary ? format_labels_binary(labels) : format_labels_text(labels);
  if (a.out.empty())
    out << data;
  else
    write_file(a.out, data);
  if (!a.svg.empty()) write_file(a.svg, render_svg(curve, g, pts, labels));

  if (a.stats)
    err << "points " << st.points << ", in box " << st.in_box << ", boxes " << g.boxes().size() << ", nu " << st.nu()
        << ", horizontal " << st.dubious_vertical << ", winding " << st.dubious_horizontal << ", diagnostics "
        << st.diagnostics() << "\n";
  if (st.in_box > 0 && static_cast<double>(st.diagnostics()) > kDiagnosticThreshold * static_cast<double>(st.in_box)) {
    err << "error: " << st.diagnostics() << " consistency diagnostics among " << st.in_box << " points\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point classification against NURBS-bounded planar domains", "inrs"};
  Args a;
  app.add_option("--domain", a.domain, "builtin name (circle, square, mixed, multispan) or JSON file");
  app.add_option("--points", a.points, "point file, text \"x,y\" lines or INRS binary");
  app.add_option("--halton", a.halton_m, "classify the first M Halton points of the bounding box");
  app.add_option("--grid", a.grid_n, "classify an n x n grid over the bounding box");
  app.add_option("--refine", a.refine, "equal subdivisions per monotone interval")->check(CLI::PositiveNumber);
  app.add_option("--tol", a.tol, "absolute boundary tolerance (default 1e-9 x box diagonal)");
  app.add_flag("--boundary", a.boundary, "label boundary points 2");
  app.add_option("--out", a.out, "label output file (default stdout)");
  app.add_flag("--out-binary", a.out_binary, "one byte per label");
  app.add_flag("--bench", a.bench, "run the benchmark suites");
  app.add_option("--bench-csv", a.bench_csv, "write benchmark rows as CSV");
  app.add_option("--reps", a.reps, "benchmark repetitions")->check(CLI::PositiveNumber);
  app.add_option("--threads", a.threads, "worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
  app.add_option("--svg", a.svg, "write an SVG picture of boxes and labelled points");
  app.add_option("--kernels", a.kernels, "scalar or avx2 (default: best available)");
  app.add_flag("--stats", a.stats, "print classifier counters to stderr");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    const kernels::KernelTable* kt = pick_kernels(a.kernels);
    if (a.bench) return bench(a, kt, out);
    return classify(a, kt, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    if (a.domain.empty()) err << app.help();
    return 1;
  } catch (const GeometryError& e) {
    err << "error: invalid domain: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace inrs
