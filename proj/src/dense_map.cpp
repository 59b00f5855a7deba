#include "projreg/dense_map.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <utility>

#include "projreg/errors.hpp"
#include "projreg/kernels.hpp"

namespace projreg {

DenseMap::DenseMap(std::size_t rows, std::size_t cols, Vec entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorCode::DimensionMismatch,
                "entry count does not match rows*cols");
  }
}

DenseMap DenseMap::identity(std::size_t n) {
  DenseMap a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
  return a;
}

DenseMap DenseMap::diagonal(const Vec& d) {
  DenseMap a(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) a(i, i) = d[i];
  return a;
}

DenseMap DenseMap::from_columns(const std::vector<Vec>& columns) {
  if (columns.empty()) return DenseMap();
  const std::size_t m = columns.front().size();
  DenseMap a(m, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != m) {
      throw Error(ErrorCode::DimensionMismatch,
                  "columns have inconsistent length");
    }
    for (std::size_t i = 0; i < m; ++i) a(i, j) = columns[j][i];
  }
  return a;
}

Vec DenseMap::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void DenseMap::set_column(std::size_t j, const Vec& v) {
  if (v.size() != rows_) {
    throw Error(ErrorCode::DimensionMismatch, "column length mismatch");
  }
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

DenseMap DenseMap::transposed() const {
  DenseMap t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Vec DenseMap::apply(const Vec& x) const {
  if (x.size() != cols_) {
    throw Error(ErrorCode::DimensionMismatch, "apply: vector length mismatch");
  }
  Vec y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    y[i] = kernels::dot(row(i), x.data(), cols_);
  }
  return y;
}

Vec DenseMap::apply_transposed(const Vec& x) const {
  if (x.size() != rows_) {
    throw Error(ErrorCode::DimensionMismatch,
                "apply_transposed: vector length mismatch");
  }
  Vec y(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    kernels::axpy(x[i], row(i), y.data(), cols_);
  }
  return y;
}

bool DenseMap::is_finite() const noexcept {
  for (double v : entries_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

DenseMap matmul(const DenseMap& a, const DenseMap& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "matmul: inner dim mismatch");
  }
  DenseMap c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      kernels::axpy(a(i, l), b.row(l), c.row(i), b.cols());
    }
  }
  return c;
}

namespace {

void require_same_shape(const DenseMap& a, const DenseMap& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, what);
  }
}

}  // namespace

DenseMap add(const DenseMap& a, const DenseMap& b) {
  require_same_shape(a, b, "add: shape mismatch");
  DenseMap c = a;
  kernels::axpy(1.0, b.entries().data(), c.entries().data(),
                c.entries().size());
  return c;
}

DenseMap sub(const DenseMap& a, const DenseMap& b) {
  require_same_shape(a, b, "sub: shape mismatch");
  DenseMap c = a;
  kernels::axpy(-1.0, b.entries().data(), c.entries().data(),
                c.entries().size());
  return c;
}

DenseMap scaled(const DenseMap& a, double s) {
  DenseMap c = a;
  kernels::scal(s, c.entries().data(), c.entries().size());
  return c;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "dot: length mismatch");
  }
  return kernels::dot(a.data(), b.data(), a.size());
}

double norm(const Vec& v) {
  return std::sqrt(kernels::sumsq(v.data(), v.size()));
}

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "vec_add: length mismatch");
  }
  Vec c = a;
  kernels::axpy(1.0, b.data(), c.data(), c.size());
  return c;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "vec_sub: length mismatch");
  }
  Vec c = a;
  kernels::axpy(-1.0, b.data(), c.data(), c.size());
  return c;
}

Vec vec_scaled(const Vec& v, double s) {
  Vec c = v;
  kernels::scal(s, c.data(), c.size());
  return c;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    throw Error(ErrorCode::IoError, "format_double failed");
  }
  return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  while (last != first &&
         (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) {
    --last;
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw Error(ErrorCode::IoError, "cannot parse number: '" + text + "'");
  }
  return v;
}

void save_csv(const DenseMap& a, const std::filesystem::path& path) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw Error(ErrorCode::BadDimensions,
                "file format requires rows, cols >= 1");
  }
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  out << a.rows() << ',' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << format_double(a(i, j));
    }
    out << '\n';
  }
  if (!out) {
    throw Error(ErrorCode::IoError, "write failed: " + path.string());
  }
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::size_t parse_size(const std::string& text,
                       const std::filesystem::path& path) {
  const double v = parse_double(text);
  if (v < 1.0 || v != std::floor(v)) {
    throw Error(ErrorCode::IoError,
                "bad dimension '" + text + "' in " + path.string());
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

DenseMap load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::IoError, "empty file: " + path.string());
  }
  const auto header = split_commas(line);
  if (header.size() != 2) {
    throw Error(ErrorCode::IoError, "bad header in " + path.string());
  }
  const std::size_t rows = parse_size(header[0], path);
  const std::size_t cols = parse_size(header[1], path);
  DenseMap a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw Error(ErrorCode::IoError, "truncated file: " + path.string());
    }
    const auto fields = split_commas(line);
    if (fields.size() != cols) {
      throw Error(ErrorCode::IoError, "bad row width in " + path.string());
    }
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = parse_double(fields[j]);
  }
  if (!a.is_finite()) {
    throw Error(ErrorCode::NonFinite,
                "non-finite entries in " + path.string());
  }
  return a;
}

void save_vector_csv(const Vec& v, const std::filesystem::path& path) {
  DenseMap a(v.size(), 1, v);
  save_csv(a, path);
}

Vec load_vector_csv(const std::filesystem::path& path) {
  const DenseMap a = load_csv(path);
  if (a.cols() != 1) {
    throw Error(ErrorCode::IoError,
                "expected one column in " + path.string());
  }
  return a.entries();
}

}  // namespace projreg
