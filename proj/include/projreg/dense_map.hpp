#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace projreg {

using Vec = std::vector<double>;

/// Dense real matrix in row-major storage, the finite stand-in for every
/// linear map in the library. Zero-sized shapes are legal in memory (empty
/// SVD factors of the zero map); the file format requires rows, cols >= 1.
class DenseMap {
 public:
  DenseMap() = default;
  DenseMap(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}
  DenseMap(std::size_t rows, std::size_t cols, Vec entries);

  static DenseMap identity(std::size_t n);
  static DenseMap diagonal(const Vec& d);
  static DenseMap from_columns(const std::vector<Vec>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }

  const double* row(std::size_t i) const { return entries_.data() + i * cols_; }
  double* row(std::size_t i) { return entries_.data() + i * cols_; }

  Vec column(std::size_t j) const;
  void set_column(std::size_t j, const Vec& v);

  DenseMap transposed() const;

  // y = A x
  Vec apply(const Vec& x) const;
  // y = A* x
  Vec apply_transposed(const Vec& x) const;

  bool is_finite() const noexcept;

  const Vec& entries() const noexcept { return entries_; }
  Vec& entries() noexcept { return entries_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec entries_;
};

DenseMap matmul(const DenseMap& a, const DenseMap& b);
DenseMap add(const DenseMap& a, const DenseMap& b);
DenseMap sub(const DenseMap& a, const DenseMap& b);
DenseMap scaled(const DenseMap& a, double s);

double dot(const Vec& a, const Vec& b);
double norm(const Vec& v);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scaled(const Vec& v, double s);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);
double parse_double(const std::string& text);

/// Plain-text CSV, first line `rows,cols`, then one line per row.
void save_csv(const DenseMap& a, const std::filesystem::path& path);
DenseMap load_csv(const std::filesystem::path& path);

/// Vectors travel as one-column maps in the same format.
void save_vector_csv(const Vec& v, const std::filesystem::path& path);
Vec load_vector_csv(const std::filesystem::path& path);

}  // namespace projreg
