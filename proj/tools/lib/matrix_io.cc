#include "matrix_io.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gsmf/errors.h"

namespace gsmf::cli {
namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool NextDataLine(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return true;
  }
  return false;
}

}  // namespace

Matrix ReadMatrixMarket(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParameterError("empty Matrix Market file");
  std::istringstream hs(Lower(header));
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%matrixmarket" || object != "matrix") {
    throw ParameterError("not a Matrix Market matrix: " + header);
  }
  if (field != "real" && field != "integer" && field != "double") {
    throw ParameterError("unsupported Matrix Market field '" + field + "'");
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") {
    throw ParameterError("unsupported Matrix Market symmetry '" + symmetry + "'");
  }
  std::string line;
  if (!NextDataLine(in, line)) throw ParameterError("missing size line");
  std::istringstream size_line(line);
  long rows = 0, cols = 0, nnz = 0;
  size_line >> rows >> cols;
  if (format == "coordinate") size_line >> nnz;
  if (!size_line || rows < 0 || cols < 0) {
    throw ParameterError("bad Matrix Market size line: " + line);
  }
  if (symmetric && rows != cols) {
    throw ParameterError("symmetric Matrix Market matrix must be square");
  }
  Matrix m = Matrix::Zero(rows, cols);
  if (format == "array") {
    for (long j = 0; j < cols; ++j) {
      for (long i = symmetric ? j : 0; i < rows; ++i) {
        double v;
        if (!(in >> v)) throw ParameterError("truncated Matrix Market array");
        m(i, j) = v;
        if (symmetric) m(j, i) = v;
      }
    }
  } else if (format == "coordinate") {
    for (long t = 0; t < nnz; ++t) {
      if (!NextDataLine(in, line)) {
        throw ParameterError("truncated Matrix Market coordinate data");
      }
      std::istringstream es(line);
      long i, j;
      double v;
      if (!(es >> i >> j >> v) || i < 1 || i > rows || j < 1 || j > cols) {
        throw ParameterError("bad Matrix Market entry: " + line);
      }
      m(i - 1, j - 1) = v;
      if (symmetric) m(j - 1, i - 1) = v;
    }
  } else {
    throw ParameterError("unsupported Matrix Market format '" + format + "'");
  }
  return m;
}

Matrix ReadCsv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<double> row;
    double v;
    while (fields >> v) row.push_back(v);
    if (!fields.eof()) {
      throw ParameterError("CSV: non-numeric field on line " +
                           std::to_string(rows.size() + 1));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParameterError("CSV: ragged row " + std::to_string(rows.size() + 1));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParameterError("CSV: no data");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix ReadMatrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open matrix file " + path.string());
  if (Lower(path.extension().string()) == ".mtx") return ReadMatrixMarket(in);
  return ReadCsv(in);
}

void WriteMatrixMarket(std::ostream& out, const Matrix& m) {
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << " " << m.cols() << "\n";
  out.precision(17);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) out << m(i, j) << "\n";
  }
}

void WriteMatrixMarket(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path.string());
  WriteMatrixMarket(out, m);
}

}  // namespace gsmf::cli
