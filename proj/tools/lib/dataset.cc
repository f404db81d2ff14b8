#include "dataset.h"

#include "gsmf/errors.h"
#include "gsmf/random.h"
#include "logging.h"
#include "matrix_io.h"

namespace gsmf::cli {
namespace {

// F^T F, or F F^T when `outer` is set, computed as a symmetric rank update so
// the result is exactly symmetric.
Matrix Gram(const Matrix& f, bool outer) {
  const Eigen::Index k = outer ? f.rows() : f.cols();
  Matrix g = Matrix::Zero(k, k);
  if (outer) {
    g.selfadjointView<Eigen::Lower>().rankUpdate(f);
  } else {
    g.selfadjointView<Eigen::Lower>().rankUpdate(f.transpose());
  }
  g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
  return g;
}

void FinishTarget(Matrix& m, bool normalize, double noise_t,
                  bool symmetrize_noise, Rng& rng) {
  if (normalize) {
    const double top = m.maxCoeff();
    if (!(top > 0.0)) {
      throw ParameterError("dataset: cannot normalize, largest entry is " +
                           std::to_string(top));
    }
    m /= top;
  }
  if (noise_t == 0.0) return;
  Matrix g = rng.NormalMatrix(m.rows(), m.cols());
  if (symmetrize_noise) {
    Matrix sym = 0.5 * (g + g.transpose());
    g = std::move(sym);
  }
  m += noise_t * g.cwiseAbs();
}

void CheckRecipe(const DatasetRecipe& r) {
  if (!(r.noise_t >= 0.0)) throw ParameterError("dataset.noise_t must be >= 0");
  if (r.source == DatasetRecipe::Source::kSynthetic ||
      r.source == DatasetRecipe::Source::kPlanted) {
    if (r.n < 1) throw ParameterError("dataset.n must be >= 1");
  }
  if (r.source == DatasetRecipe::Source::kSynthetic && r.m < 1) {
    throw ParameterError("dataset.m must be >= 1");
  }
  if (r.source == DatasetRecipe::Source::kPlanted && r.rank < 1) {
    throw ParameterError("dataset.rank must be >= 1");
  }
}

}  // namespace

Matrix GenerateData(const DatasetRecipe& recipe) {
  CheckRecipe(recipe);
  Rng rng(recipe.seed);
  Matrix m;
  switch (recipe.source) {
    case DatasetRecipe::Source::kSynthetic: {
      m = Gram(rng.UniformMatrix(recipe.m, recipe.n), false);
      break;
    }
    case DatasetRecipe::Source::kFile: {
      const Matrix n_factor = ReadMatrix(recipe.path);
      if ((n_factor.array() < 0.0).any()) {
        Log().warn("dataset: {} has negative entries; proceeding",
                   recipe.path.string());
      }
      m = Gram(n_factor, false);
      break;
    }
    case DatasetRecipe::Source::kPlanted: {
      m = Gram(rng.UniformMatrix(recipe.n, recipe.rank), true);
      break;
    }
    case DatasetRecipe::Source::kTarget: {
      m = ReadMatrix(recipe.path);
      if (m.rows() != m.cols()) {
        throw DimensionError("dataset: target matrix must be square, got " +
                             ShapeString(m.rows(), m.cols()));
      }
      break;
    }
  }
  FinishTarget(m, recipe.normalize, recipe.noise_t, recipe.symmetrize_noise,
               rng);
  return m;
}

std::string ToString(DatasetRecipe::Source source) {
  switch (source) {
    case DatasetRecipe::Source::kSynthetic: return "synthetic";
    case DatasetRecipe::Source::kFile: return "file";
    case DatasetRecipe::Source::kPlanted: return "planted";
    case DatasetRecipe::Source::kTarget: return "target";
  }
  return "?";
}

DatasetRecipe::Source ParseSource(const std::string& name) {
  if (name == "synthetic") return DatasetRecipe::Source::kSynthetic;
  if (name == "file") return DatasetRecipe::Source::kFile;
  if (name == "planted") return DatasetRecipe::Source::kPlanted;
  if (name == "target") return DatasetRecipe::Source::kTarget;
  throw ParameterError("dataset.source: unknown source '" + name +
                       "' (expected synthetic, file, planted or target)");
}

}  // namespace gsmf::cli
