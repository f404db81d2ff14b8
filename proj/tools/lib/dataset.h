#ifndef GSMF_TOOLS_DATASET_H_
#define GSMF_TOOLS_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "gsmf/types.h"

namespace gsmf::cli {

// How the target matrix M is produced.
//
//  * kSynthetic: N is m x n uniform(0, 1); M = N^T N.
//  * kFile:      N is read from `path`; M = N^T N.
//  * kPlanted:   Xbar is n x rank uniform(0, 1); M = Xbar Xbar^T.
//  * kTarget:    M is read from `path` as is.
//
// Then M is divided by its largest entry when `normalize` is set, and
// t |G| is added, G a standard normal n x n matrix drawn after N (or Xbar)
// from the same stream. With `symmetrize_noise`, G is replaced by
// (G + G^T) / 2 before taking absolute values.
struct DatasetRecipe {
  enum class Source { kSynthetic, kFile, kPlanted, kTarget };

  Source source = Source::kSynthetic;
  int n = 0;
  int m = 0;
  int rank = 0;
  std::uint64_t seed = 0;
  std::filesystem::path path;
  double noise_t = 0.0;
  bool normalize = true;
  bool symmetrize_noise = false;
};

Matrix GenerateData(const DatasetRecipe& recipe);

std::string ToString(DatasetRecipe::Source source);
DatasetRecipe::Source ParseSource(const std::string& name);

}  // namespace gsmf::cli

#endif  // GSMF_TOOLS_DATASET_H_
