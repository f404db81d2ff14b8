#ifndef GSMF_TOOLS_MATRIX_IO_H_
#define GSMF_TOOLS_MATRIX_IO_H_

#include <filesystem>
#include <iosfwd>

#include "gsmf/types.h"

namespace gsmf::cli {

// Reads a dense matrix. ".mtx" files are parsed as Matrix Market (array or
// coordinate, real/integer, general or symmetric); anything else as headerless
// CSV (comma or whitespace separated, one row per line).
Matrix ReadMatrix(const std::filesystem::path& path);

Matrix ReadMatrixMarket(std::istream& in);
Matrix ReadCsv(std::istream& in);

// Matrix Market "array real general" with 17 significant digits.
void WriteMatrixMarket(const std::filesystem::path& path, const Matrix& m);
void WriteMatrixMarket(std::ostream& out, const Matrix& m);

}  // namespace gsmf::cli

#endif  // GSMF_TOOLS_MATRIX_IO_H_
