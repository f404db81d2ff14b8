#include "config.h"

#include <fstream>
#include <set>

#include "gsmf/errors.h"

namespace gsmf::cli {
namespace {

using nlohmann::json;

// Walks one JSON object, remembering its path for error messages and
// rejecting keys nobody asked for.
class Section {
 public:
  Section(const json* node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (node_ && !node_->is_object()) {
      throw ConfigurationError(Label() + " must be an object");
    }
  }

  bool present() const { return node_ != nullptr; }

  Section Child(const std::string& key) {
    seen_.insert(key);
    return Section(Find(key), Join(key));
  }

  bool Has(const std::string& key) const { return Find(key) != nullptr; }

  template <typename T>
  T Get(const std::string& key, T fallback) {
    seen_.insert(key);
    const json* v = Find(key);
    return v ? Convert<T>(*v, key) : fallback;
  }

  template <typename T>
  T Require(const std::string& key) {
    seen_.insert(key);
    const json* v = Find(key);
    if (!v) throw ConfigurationError("missing required field '" + Join(key) + "'");
    return Convert<T>(*v, key);
  }

  template <typename T>
  std::optional<T> Optional(const std::string& key) {
    seen_.insert(key);
    const json* v = Find(key);
    if (!v) return std::nullopt;
    return Convert<T>(*v, key);
  }

  template <typename T>
  std::vector<T> List(const std::string& key) {
    seen_.insert(key);
    const json* v = Find(key);
    if (!v) return {};
    if (!v->is_array()) throw ConfigurationError(Join(key) + " must be a list");
    std::vector<T> out;
    for (const auto& item : *v) out.push_back(Convert<T>(item, key));
    return out;
  }

  void RejectUnknown() const {
    if (!node_) return;
    for (const auto& [key, value] : node_->items()) {
      if (!seen_.count(key)) {
        throw ConfigurationError("unknown field '" + Join(key) + "'");
      }
    }
  }

  std::string Join(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json* Find(const std::string& key) const {
    if (!node_) return nullptr;
    auto it = node_->find(key);
    return it == node_->end() ? nullptr : &*it;
  }

  std::string Label() const { return path_.empty() ? "config" : path_; }

  template <typename T>
  T Convert(const json& v, const std::string& key) const {
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw ConfigurationError("");
      } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        if (!v.is_number_integer() && !v.is_number_unsigned()) {
          throw ConfigurationError("");
        }
      }
      return v.get<T>();
    } catch (const std::exception&) {
      throw ConfigurationError(Join(key) + " has the wrong type: " + v.dump());
    }
  }

  const json* node_;
  std::string path_;
  std::set<std::string> seen_;
};

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

RegularizerSpec ParseRegularizer(Section s) {
  RegularizerSpec spec;
  if (!s.present()) return spec;
  spec.kind = s.Get<std::string>("kind", spec.kind);
  spec.weight = s.Get<double>("weight", 0.0);
  s.RejectUnknown();
  return spec;
}

ReferenceMode ParseMode(const std::string& name, const std::string& field) {
  if (name == "average") return ReferenceMode::kAverage;
  if (name == "max" || name == "max_type") return ReferenceMode::kMaxType;
  throw ConfigurationError(field + ": unknown mode '" + name +
                           "' (expected average or max)");
}

ObjectiveEval ParseEval(const std::string& name, const std::string& field) {
  if (name == "direct") return ObjectiveEval::kDirect;
  if (name == "gram") return ObjectiveEval::kGramCached;
  throw ConfigurationError(field + ": unknown objective '" + name +
                           "' (expected direct or gram)");
}

void ParseSolver(Section s, SolverConfig& c) {
  if (!s.present()) return;
  if (s.Has("scheme")) {
    const std::string name = s.Get<std::string>("scheme", "");
    try {
      c.scheme = ParseUpdateScheme(name);
    } catch (const Error& e) {
      throw ConfigurationError(s.Join("scheme") + ": " + e.what());
    }
  }
  Section ls = s.Child("line_search");
  if (ls.present()) {
    c.line_search.mode =
        ParseMode(ls.Get<std::string>("mode", "average"), ls.Join("mode"));
    c.line_search.p_const = ls.Get<double>("p", c.line_search.p_const);
    c.line_search.p_min = ls.Get<double>("p_min", c.line_search.p_min);
    c.line_search.window = ls.Get<int>("window", c.line_search.window);
    ls.RejectUnknown();
  }
  if (s.Has("objective")) {
    c.objective_eval =
        ParseEval(s.Get<std::string>("objective", ""), s.Join("objective"));
  }
  c.mu_min = s.Get<double>("mu_min", c.mu_min);
  c.sigma_min = s.Get<double>("sigma_min", c.sigma_min);
  c.sigma_max0 = s.Get<double>("sigma_max", c.sigma_max0);
  c.tau = s.Get<double>("tau", c.tau);
  c.c = s.Get<double>("c", c.c);
  c.warm_start = s.Get<double>("warm_start", c.warm_start);
  c.tol = s.Get<double>("tol", c.tol);
  c.consec_required = s.Get<int>("consec_required", c.consec_required);
  c.max_iters = s.Get<int>("max_iters", c.max_iters);
  c.max_time_sec = s.Get<double>("max_time_sec", c.max_time_sec);
  c.seed = s.Get<std::uint64_t>("seed", c.seed);
  c.trace_residual = s.Get<bool>("trace_residual", c.trace_residual);
  c.audit = s.Get<bool>("audit", c.audit);
  s.RejectUnknown();
  try {
    c.Validate();
  } catch (const ParameterError& e) {
    throw ConfigurationError(std::string("solver: ") + e.what());
  }
}

std::optional<SweepSpec> ParseSweep(Section s) {
  if (!s.present()) return std::nullopt;
  SweepSpec sweep;
  sweep.reps = s.Get<int>("reps", 1);
  if (sweep.reps < 1) throw ConfigurationError(s.Join("reps") + " must be >= 1");
  const bool has_alpha = s.Has("alpha");
  const bool has_lambda = s.Has("lambda");
  const bool has_grid = s.Has("noise_t") || s.Has("rank");
  if (has_alpha + has_lambda + has_grid != 1) {
    throw ConfigurationError(
        "sweep: give exactly one axis: alpha, lambda, or noise_t with rank");
  }
  auto require_nonempty = [&](bool empty, const std::string& key) {
    if (empty) {
      throw ConfigurationError("sweep axis '" + s.Join(key) +
                               "' has an empty value list");
    }
  };
  if (has_alpha) {
    sweep.axis = SweepSpec::Axis::kAlpha;
    sweep.values = s.List<double>("alpha");
    require_nonempty(sweep.values.empty(), "alpha");
  } else if (has_lambda) {
    sweep.axis = SweepSpec::Axis::kLambda;
    sweep.values = s.List<double>("lambda");
    require_nonempty(sweep.values.empty(), "lambda");
  } else {
    sweep.axis = SweepSpec::Axis::kNoiseRank;
    sweep.noise_t = s.List<double>("noise_t");
    sweep.rank = s.List<int>("rank");
    require_nonempty(sweep.noise_t.empty(), "noise_t");
    require_nonempty(sweep.rank.empty(), "rank");
  }
  s.RejectUnknown();
  return sweep;
}

}  // namespace

RunConfig ParseConfig(const json& doc, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  Section root(&doc, "");

  Section ds = root.Child("dataset");
  if (!ds.present()) throw ConfigurationError("missing required field 'dataset'");
  try {
    cfg.dataset.source = ParseSource(ds.Require<std::string>("source"));
  } catch (const ParameterError& e) {
    throw ConfigurationError(e.what());
  }
  const auto source = cfg.dataset.source;
  using Source = DatasetRecipe::Source;
  if (source == Source::kSynthetic || source == Source::kPlanted) {
    cfg.dataset.n = ds.Require<int>("n");
  }
  if (source == Source::kSynthetic) cfg.dataset.m = ds.Get<int>("m", cfg.dataset.n);
  if (source == Source::kPlanted) cfg.dataset.rank = ds.Require<int>("rank");
  if (source == Source::kFile || source == Source::kTarget) {
    cfg.dataset.path = Resolve(base_dir, ds.Require<std::string>("path"));
  }
  cfg.dataset.seed = ds.Get<std::uint64_t>("seed", 0);
  cfg.dataset.noise_t = ds.Get<double>("noise_t", 0.0);
  if (!(cfg.dataset.noise_t >= 0.0)) {
    throw ConfigurationError("dataset.noise_t must be >= 0");
  }
  const bool default_normalize = source == Source::kSynthetic || source == Source::kFile;
  cfg.dataset.normalize = ds.Get<bool>("normalize", default_normalize);
  cfg.dataset.symmetrize_noise = ds.Get<bool>("symmetrize_noise", false);
  ds.RejectUnknown();

  Section problem = root.Child("problem");
  cfg.rank = problem.Require<int>("rank");
  if (cfg.rank < 1) throw ConfigurationError("problem.rank must be >= 1");
  cfg.lambda = problem.Get<double>("lambda", cfg.lambda);
  if (!(cfg.lambda >= 0.0)) throw ConfigurationError("problem.lambda must be >= 0");
  cfg.psi = ParseRegularizer(problem.Child("psi"));
  cfg.phi = ParseRegularizer(problem.Child("phi"));
  Section map = problem.Child("map");
  if (map.present()) {
    const std::string kind = map.Get<std::string>("kind", "full");
    if (kind == "sampling") {
      cfg.map.sampling = true;
      cfg.map.omega = Resolve(base_dir, map.Require<std::string>("omega"));
    } else if (kind != "full") {
      throw ConfigurationError("problem.map.kind: unknown map '" + kind +
                               "' (expected full or sampling)");
    }
    map.RejectUnknown();
  }
  problem.RejectUnknown();

  Section relax = root.Child("relaxation");
  cfg.alpha = relax.Get<double>("alpha", cfg.alpha);
  cfg.beta = relax.Optional<double>("beta");
  cfg.gamma = relax.Optional<double>("gamma");
  relax.RejectUnknown();

  ParseSolver(root.Child("solver"), cfg.solver);

  Section out = root.Child("output");
  if (out.present()) {
    cfg.out_dir = Resolve(base_dir, out.Get<std::string>("dir", cfg.out_dir.string()));
    cfg.timestamps = out.Get<bool>("timestamps", true);
    out.RejectUnknown();
  }

  cfg.sweep = ParseSweep(root.Child("sweep"));
  root.RejectUnknown();
  return cfg;
}

RunConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigurationError("config " + path.string() + ": " + e.what());
  }
  return ParseConfig(doc, path.parent_path());
}

json ToJson(const RunConfig& c) {
  json ds = {{"source", ToString(c.dataset.source)},
             {"seed", c.dataset.seed},
             {"noise_t", c.dataset.noise_t},
             {"normalize", c.dataset.normalize},
             {"symmetrize_noise", c.dataset.symmetrize_noise}};
  switch (c.dataset.source) {
    case DatasetRecipe::Source::kSynthetic:
      ds["n"] = c.dataset.n;
      ds["m"] = c.dataset.m;
      break;
    case DatasetRecipe::Source::kPlanted:
      ds["n"] = c.dataset.n;
      ds["rank"] = c.dataset.rank;
      break;
    default:
      ds["path"] = c.dataset.path.string();
  }
  json map = {{"kind", c.map.sampling ? "sampling" : "full"}};
  if (c.map.sampling) map["omega"] = c.map.omega.string();
  json relax = {{"alpha", c.alpha}};
  if (c.beta) relax["beta"] = *c.beta;
  if (c.gamma) relax["gamma"] = *c.gamma;
  const SolverConfig& s = c.solver;
  json solver = {
      {"scheme", ToString(s.scheme)},
      {"line_search",
       {{"mode", s.line_search.mode == ReferenceMode::kAverage ? "average" : "max"},
        {"p", s.line_search.p_const},
        {"p_min", s.line_search.p_min},
        {"window", s.line_search.window}}},
      {"objective", s.objective_eval == ObjectiveEval::kDirect ? "direct" : "gram"},
      {"mu_min", s.mu_min},
      {"sigma_min", s.sigma_min},
      {"sigma_max", s.sigma_max0},
      {"tau", s.tau},
      {"c", s.c},
      {"warm_start", s.warm_start},
      {"tol", s.tol},
      {"consec_required", s.consec_required},
      {"max_iters", s.max_iters},
      {"max_time_sec", s.max_time_sec},
      {"seed", s.seed},
      {"trace_residual", s.trace_residual},
      {"audit", s.audit}};
  json doc = {
      {"dataset", ds},
      {"problem",
       {{"rank", c.rank},
        {"lambda", c.lambda},
        {"psi", {{"kind", c.psi.kind}, {"weight", c.psi.weight}}},
        {"phi", {{"kind", c.phi.kind}, {"weight", c.phi.weight}}},
        {"map", map}}},
      {"relaxation", relax},
      {"solver", solver},
      {"output", {{"dir", c.out_dir.string()}, {"timestamps", c.timestamps}}}};
  if (c.sweep) {
    json sw = {{"reps", c.sweep->reps}};
    switch (c.sweep->axis) {
      case SweepSpec::Axis::kAlpha: sw["alpha"] = c.sweep->values; break;
      case SweepSpec::Axis::kLambda: sw["lambda"] = c.sweep->values; break;
      case SweepSpec::Axis::kNoiseRank:
        sw["noise_t"] = c.sweep->noise_t;
        sw["rank"] = c.sweep->rank;
        break;
    }
    doc["sweep"] = sw;
  }
  return doc;
}

RelaxationParams MakeParams(const RunConfig& c) {
  if (c.beta) {
    const double gamma =
        c.gamma ? *c.gamma : GammaMin(c.alpha, *c.beta);
    return RelaxationParams(c.alpha, *c.beta, gamma);
  }
  return c.gamma ? RelaxationParams::FromAlpha(c.alpha, *c.gamma)
                 : RelaxationParams::FromAlpha(c.alpha);
}

ProblemSpec MakeProblem(const RunConfig& c, const Matrix& target) {
  if (target.rows() != target.cols()) {
    throw DimensionError("target matrix must be square, got " + ShapeString(target.rows(), target.cols()));
  }
  const int n = static_cast<int>(target.rows());
  LinearMap map = c.map.sampling ? LinearMap::SymmetricSamplingFromCsv(n, c.map.omega)
                                 : LinearMap::FullVectorization(n);
  Vector b = map.Apply(target);
  return ProblemSpec(std::move(map), std::move(b),
                     MakeRegularizer(c.psi.kind, c.psi.weight),
                     MakeRegularizer(c.phi.kind, c.phi.weight), c.lambda, c.rank);
}

}  // namespace gsmf::cli
