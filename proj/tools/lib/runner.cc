#include "runner.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include "gsmf/diagnostics.h"
#include "identity_suite.h"
#include "gsmf/errors.h"
#include "logging.h"
#include "matrix_io.h"

namespace gsmf::cli {
namespace {

using nlohmann::json;

// Shortest text that parses back to the same double.
std::string Num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json JsonNum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::ofstream OpenOut(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void WriteJson(const std::filesystem::path& path, const json& doc) {
  auto out = OpenOut(path);
  out << doc.dump(2) << "\n";
}

struct SweepPoint {
  std::string label;
  json coords;
  RunConfig config;
};

std::vector<SweepPoint> ExpandSweep(const RunConfig& base) {
  const SweepSpec& sweep = *base.sweep;
  std::vector<SweepPoint> points;
  auto fmt = [](double v) { return Num(v); };
  switch (sweep.axis) {
    case SweepSpec::Axis::kAlpha:
      for (double a : sweep.values) {
        RunConfig c = base;
        c.alpha = a;
        c.beta.reset();
        c.gamma.reset();
        points.push_back({"alpha=" + fmt(a), {{"alpha", a}}, c});
      }
      break;
    case SweepSpec::Axis::kLambda:
      for (double l : sweep.values) {
        RunConfig c = base;
        c.lambda = l;
        points.push_back({"lambda=" + fmt(l), {{"lambda", l}}, c});
      }
      break;
    case SweepSpec::Axis::kNoiseRank:
      for (double t : sweep.noise_t) {
        for (int r : sweep.rank) {
          RunConfig c = base;
          c.dataset.noise_t = t;
          c.rank = r;
          points.push_back({"noise_t=" + fmt(t) + "_rank=" + std::to_string(r),
                            {{"noise_t", t}, {"rank", r}}, c});
        }
      }
      break;
  }
  return points;
}

struct SweepRun {
  std::size_t point = 0;
  int rep = 0;
  bool failed = false;
  std::string error;
  std::string status;
  int iters = 0;
  double relobj = NAN;
  double time = NAN;
  double sym_gap = NAN;
};

struct CheckItem {
  std::string name;
  bool passed;
  std::string detail;
};

}  // namespace

void ApplyOverrides(RunConfig& c, const Overrides& o) {
  if (o.out_dir) c.out_dir = *o.out_dir;
  if (o.seed) {
    c.dataset.seed = *o.seed;
    c.solver.seed = *o.seed;
  }
  if (o.audit) c.solver.audit = true;
  if (o.symmetrize_noise) c.dataset.symmetrize_noise = true;
  if (o.no_timestamps) c.timestamps = false;
}

int ExitCode(SolveStatus status) {
  return status == SolveStatus::kConverged ? 0 : 2;
}

RunOutcome ExecuteRun(const RunConfig& config, const Matrix& target) {
  const ProblemSpec spec = MakeProblem(config, target);
  const RelaxationParams params = MakeParams(config);
  const Solver solver(spec, params, config.solver);
  auto [x0, y0] = solver.RandomStart();
  RunOutcome outcome;
  outcome.result = solver.Solve(x0, y0);
  const SolveResult& r = outcome.result;

  double f, relobj, gap, residual;
  if (!r.trace.empty()) {
    const IterationRecord& last = r.trace.back();
    f = last.f_value;
    relobj = last.relobj;
    gap = last.sym_gap;
    residual = last.stationarity_residual;
  } else {
    const ExtendedReal fx = FLambda(spec, r.x, r.y);
    f = fx.value();
    relobj = RelObjFromValue(spec, fx);
    gap = SymmetryGap(r.x, r.y);
    residual = config.solver.trace_residual ? StationarityResidual(spec, r.x, r.y)
                                            : std::numeric_limits<double>::quiet_NaN();
  }
  outcome.summary = {
      {"config", ToJson(config)},
      {"f_value", JsonNum(f)},
      {"relobj", JsonNum(relobj)},
      {"sym_gap", JsonNum(gap)},
      {"stationarity_residual", JsonNum(residual)},
      {"iters", static_cast<int>(r.trace.size())},
      {"elapsed_sec", config.timestamps ? r.elapsed_sec : 0.0},
      {"status", ToString(r.status)}};
  return outcome;
}

void WriteTrace(std::ostream& out, const std::vector<IterationRecord>& trace,
                bool timestamps) {
  out << kTraceHeader << "\n";
  for (const IterationRecord& rec : trace) {
    out << rec.k << ',' << Num(timestamps ? rec.elapsed_sec : 0.0) << ','
        << Num(rec.f_value) << ',' << Num(rec.ref_value) << ','
        << Num(rec.relobj) << ',' << Num(rec.sym_gap) << ','
        << Num(rec.stationarity_residual) << ',' << Num(rec.mu_bar) << ','
        << Num(rec.sigma_bar) << ',' << rec.inner_iterations << "\n";
  }
}

int GenDataCommand(const RunConfig& config) {
  const Matrix m = GenerateData(config.dataset);
  const auto path = config.out_dir / "M.mtx";
  std::filesystem::create_directories(config.out_dir);
  WriteMatrixMarket(path, m);
  Log().info("wrote {} ({}x{})", path.string(), m.rows(), m.cols());
  return 0;
}

int SolveCommand(const RunConfig& config) {
  const Matrix target = GenerateData(config.dataset);
  RunOutcome run = ExecuteRun(config, target);
  {
    auto out = OpenOut(config.out_dir / "trace.csv");
    WriteTrace(out, run.result.trace, config.timestamps);
  }
  WriteJson(config.out_dir / "summary.json", run.summary);
  Log().info("status {} after {} iterations, relobj {}",
             ToString(run.result.status), run.result.trace.size(),
             run.summary["relobj"].dump());
  return ExitCode(run.result.status);
}

int SweepCommand(const RunConfig& config, int jobs) {
  if (!config.sweep) throw ConfigurationError("missing required field 'sweep'");
  const std::vector<SweepPoint> points = ExpandSweep(config);
  const int reps = config.sweep->reps;
  std::vector<SweepRun> runs;
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (int j = 0; j < reps; ++j) runs.push_back({.point = p, .rep = j});
  }
  const auto curve_dir = config.out_dir / "runs";
  std::filesystem::create_directories(curve_dir);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      SweepRun& run = runs[i];
      RunConfig c = points[run.point].config;
      c.dataset.seed += run.rep;
      c.solver.seed += run.rep;
      try {
        const Matrix target = GenerateData(c.dataset);
        RunOutcome outcome = ExecuteRun(c, target);
        const json& s = outcome.summary;
        run.status = s["status"];
        run.iters = s["iters"];
        run.relobj = s["relobj"].is_null() ? NAN : s["relobj"].get<double>();
        run.sym_gap = s["sym_gap"].is_null() ? NAN : s["sym_gap"].get<double>();
        run.time = s["elapsed_sec"];
        auto out = OpenOut(curve_dir / (points[run.point].label + "_rep" +
                                        std::to_string(run.rep) + ".csv"));
        out << "iter,elapsed_sec,relobj\n";
        for (const IterationRecord& rec : outcome.result.trace) {
          out << rec.k << ',' << Num(c.timestamps ? rec.elapsed_sec : 0.0)
              << ',' << Num(rec.relobj) << "\n";
        }
      } catch (const std::exception& e) {
        run.failed = true;
        run.status = "Failed";
        run.error = e.what();
        Log().error("{} rep {}: {}", points[run.point].label, run.rep, e.what());
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, runs.size()));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  auto per_run = OpenOut(config.out_dir / "sweep_runs.csv");
  per_run << "point,rep,status,iters,relobj,time_sec,sym_gap,error\n";
  for (const SweepRun& r : runs) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    per_run << points[r.point].label << ',' << r.rep << ',' << r.status << ','
            << r.iters << ',' << Num(r.relobj) << ',' << Num(r.time) << ','
            << Num(r.sym_gap) << ',' << err << "\n";
  }

  auto table = OpenOut(config.out_dir / "sweep.csv");
  table << "point,reps,converged,failed,status,mean_iter,mean_relobj,"
           "mean_time_sec,mean_sym_gap\n";
  bool any_failed = false, any_limit = false;
  for (std::size_t p = 0; p < points.size(); ++p) {
    int ok = 0, converged = 0, failed = 0;
    double iters = 0, relobj = 0, time = 0, gap = 0;
    for (const SweepRun& r : runs) {
      if (r.point != p) continue;
      if (r.failed) {
        ++failed;
        continue;
      }
      ++ok;
      converged += r.status == ToString(SolveStatus::kConverged);
      iters += r.iters;
      relobj += r.relobj;
      time += r.time;
      gap += r.sym_gap;
    }
    any_failed |= failed > 0;
    any_limit |= converged < ok;
    const double d = ok > 0 ? ok : NAN;
    table << points[p].label << ',' << reps << ',' << converged << ','
          << failed << ',' << (failed > 0 ? "failed" : "ok") << ','
          << Num(iters / d) << ',' << Num(relobj / d) << ',' << Num(time / d)
          << ',' << Num(gap / d) << "\n";
  }
  if (any_failed) return 1;
  return any_limit ? 2 : 0;
}

int CheckCommand(const RunConfig& config) {
  std::vector<CheckItem> items;
  auto record = [&](const std::string& name, bool passed, std::string detail) {
    items.push_back({name, passed, std::move(detail)});
  };
  auto attempt = [&](const std::string& name, auto&& fn) -> bool {
    try {
      fn();
      return true;
    } catch (const std::exception& e) {
      record(name, false, e.what());
      return false;
    }
  };

  std::optional<RelaxationParams> params;
  if (attempt("relaxation_params", [&] { params.emplace(MakeParams(config)); })) {
    record("relaxation_params", true,
           "alpha=" + Num(params->alpha()) + " beta=" + Num(params->beta()) +
               " gamma=" + Num(params->gamma()) + " rho=" + Num(params->rho()));
  }
  std::optional<Matrix> target;
  if (attempt("dataset", [&] { target.emplace(GenerateData(config.dataset)); })) {
    record("dataset", true, ShapeString(target->rows(), target->cols()));
  }
  std::optional<ProblemSpec> spec;
  if (target && attempt("operator", [&] { spec.emplace(MakeProblem(config, *target)); })) {
    record("operator", true,
           std::string(spec->map().is_full_vectorization() ? "full" : "sampling") +
               " q=" + std::to_string(spec->q()));
  }

  json report = nullptr;
  if (spec) {
    for (const CheckResult& r : RunIdentitySuite(*spec, params ? &*params : nullptr,
                                           config.solver.seed)) {
      record(r.name, r.passed, r.detail);
    }
  }
  if (spec && params) {
    attempt("descent_audit", [&] {
      SolverConfig sc = config.solver;
      sc.audit = true;
      sc.max_iters = std::min(sc.max_iters, 50);
      const Solver solver(*spec, *params, sc);
      auto [x0, y0] = solver.RandomStart();
      const SolveResult res = solver.Solve(x0, y0);
      const DiagnosticsReport d =
          Diagnose(*spec, *params, sc, res.x, res.y, res.trace);
      int monotone = 0;
      if (sc.line_search.mode == ReferenceMode::kAverage) {
        double r_prev = FLambda(*spec, x0, y0).value();
        for (const IterationRecord& rec : res.trace) {
          const double slack = 1e-12 * (1.0 + std::abs(rec.ref_value));
          if (rec.ref_value > r_prev + slack || rec.f_value > rec.ref_value + slack) {
            ++monotone;
          }
          r_prev = rec.ref_value;
        }
      }
      record("descent_audit", d.descent_violations == 0,
             std::to_string(res.trace.size()) + " audited steps, " +
                 std::to_string(d.descent_violations) + " violations");
      record("monotonicity", monotone == 0,
             std::to_string(monotone) + " violations of R non-increasing / F <= R");
      const double rel_gap = d.relaxation_gap / (1.0 + std::abs(res.trace.empty()
                                                     ? 0.0 : res.trace.back().f_value));
      record("relaxation_identity_final", rel_gap <= 1e-10,
             "relative gap " + Num(rel_gap));
      report = {{"stationarity_residual", d.stationarity_residual},
                {"sym_gap", d.sym_gap},
                {"penalty_applicable", d.penalty_applicable},
                {"penalty_threshold", d.penalty_applicable
                                          ? JsonNum(d.penalty_threshold) : json(nullptr)},
                {"penalty_satisfied", d.penalty_satisfied},
                {"relaxation_gap", d.relaxation_gap},
                {"descent_violations", d.descent_violations}};
    });
  }

  bool all = !items.empty();
  json checks = json::array();
  for (const CheckItem& item : items) {
    all = all && item.passed;
    checks.push_back({{"name", item.name}, {"passed", item.passed}, {"detail", item.detail}});
  }
  const json doc = {{"passed", all}, {"checks", checks}, {"report", report}};
  WriteJson(config.out_dir / "check.json", doc);
  std::cout << doc.dump(2) << "\n";
  return all ? 0 : 1;
}

}  // namespace gsmf::cli
