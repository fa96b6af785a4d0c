#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "k3g16/field.hpp"

namespace k3g16 {

using Vec = std::vector<Elem>;

// Dense row-major matrix over F_p.
class FqMatrix {
 public:
  FqMatrix() : field_(101) {}
  FqMatrix(const Field& f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static FqMatrix identity(const Field& f, std::size_t n);
  static FqMatrix from_rows(const Field& f, const std::vector<Vec>& rows, std::size_t cols);
  // Entries given as signed integers, reduced mod p.
  static FqMatrix from_ints(const Field& f, std::initializer_list<std::initializer_list<long long>> rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vec row_vec(std::size_t i) const { return Vec(row(i).begin(), row(i).end()); }
  Vec col_vec(std::size_t j) const;
  const std::vector<Elem>& data() const { return data_; }

  void append_row(std::span<const Elem> r);
  FqMatrix transpose() const;
  FqMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  FqMatrix row_block(std::size_t begin, std::size_t end) const;

  FqMatrix operator*(const FqMatrix& o) const;
  FqMatrix operator+(const FqMatrix& o) const;
  FqMatrix operator-(const FqMatrix& o) const;
  FqMatrix scaled(Elem c) const;
  Vec apply(std::span<const Elem> v) const;        // M v
  Vec apply_left(std::span<const Elem> v) const;   // vᵀ M

  bool is_zero() const;
  bool is_symmetric() const;
  bool is_skew() const;
  friend bool operator==(const FqMatrix& a, const FqMatrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  static FqMatrix vstack(const FqMatrix& a, const FqMatrix& b);
  static FqMatrix hstack(const FqMatrix& a, const FqMatrix& b);

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

// Vector helpers.
Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b);
Vec axpy(const Field& f, Elem c, std::span<const Elem> x, std::span<const Elem> y);  // c x + y
Vec scale(const Field& f, Elem c, std::span<const Elem> x);
bool is_zero(std::span<const Elem> v);
// Scale so the first nonzero entry is 1 (projective normal form).
Vec normalize_projective(const Field& f, std::span<const Elem> v);
bool proportional(const Field& f, std::span<const Elem> a, std::span<const Elem> b);

}  // namespace k3g16
