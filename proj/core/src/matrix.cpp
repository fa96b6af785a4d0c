#include "k3g16/matrix.hpp"

#include "k3g16/errors.hpp"

namespace k3g16 {

FqMatrix FqMatrix::identity(const Field& f, std::size_t n) {
  FqMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FqMatrix FqMatrix::from_rows(const Field& f, const std::vector<Vec>& rows, std::size_t cols) {
  FqMatrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, ErrorCode::invalid_argument, "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = f.reduce(rows[i][j]);
  }
  return m;
}

FqMatrix FqMatrix::from_ints(const Field& f, std::initializer_list<std::initializer_list<long long>> rows) {
  std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  FqMatrix m(f, rows.size(), cols);
  std::size_t i = 0;
  for (const auto& r : rows) {
    require(r.size() == cols, ErrorCode::invalid_argument, "ragged rows");
    std::size_t j = 0;
    for (long long v : r) m(i, j++) = f.from_int(v);
    ++i;
  }
  return m;
}

Vec FqMatrix::col_vec(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void FqMatrix::append_row(std::span<const Elem> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  require(r.size() == cols_, ErrorCode::invalid_argument, "row length mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

FqMatrix FqMatrix::transpose() const {
  FqMatrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

FqMatrix FqMatrix::submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
  FqMatrix s(field_, rs.size(), cs.size());
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i], cs[j]);
  return s;
}

FqMatrix FqMatrix::row_block(std::size_t begin, std::size_t end) const {
  FqMatrix s(field_, end - begin, cols_);
  std::copy(data_.begin() + begin * cols_, data_.begin() + end * cols_, s.data_.begin());
  return s;
}

FqMatrix FqMatrix::operator*(const FqMatrix& o) const {
  require(cols_ == o.rows_, ErrorCode::invalid_argument, "matrix product shape mismatch");
  FqMatrix r(field_, rows_, o.cols_);
  const std::uint64_t p = field_.p();
  if (field_.small() && p < (1ULL << 31)) {
    // Entries < 2^31, products < 2^62: accumulate pairs before reducing.
    std::vector<std::uint64_t> acc(o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < cols_; ++k) {
        std::uint64_t a = (*this)(i, k);
        if (!a) continue;
        const Elem* orow = o.data_.data() + k * o.cols_;
        for (std::size_t j = 0; j < o.cols_; ++j) acc[j] = (acc[j] + a * orow[j]) % p;
      }
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = acc[j];
    }
    return r;
  }
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      Elem a = (*this)(i, k);
      if (!a) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = field_.add(r(i, j), field_.mul(a, o(k, j)));
    }
  return r;
}

FqMatrix FqMatrix::operator+(const FqMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::invalid_argument, "shape mismatch");
  FqMatrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], o.data_[i]);
  return r;
}

FqMatrix FqMatrix::operator-(const FqMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::invalid_argument, "shape mismatch");
  FqMatrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], o.data_[i]);
  return r;
}

FqMatrix FqMatrix::scaled(Elem c) const {
  FqMatrix r(*this);
  for (auto& v : r.data_) v = field_.mul(v, c);
  return r;
}

Vec FqMatrix::apply(std::span<const Elem> v) const {
  require(v.size() == cols_, ErrorCode::invalid_argument, "apply shape mismatch");
  Vec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = dot(field_, row(i), v);
  return out;
}

Vec FqMatrix::apply_left(std::span<const Elem> v) const {
  require(v.size() == rows_, ErrorCode::invalid_argument, "apply_left shape mismatch");
  Vec out(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (!v[i]) continue;
    for (std::size_t j = 0; j < cols_; ++j) out[j] = field_.add(out[j], field_.mul(v[i], (*this)(i, j)));
  }
  return out;
}

bool FqMatrix::is_zero() const {
  for (Elem v : data_)
    if (v) return false;
  return true;
}

bool FqMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool FqMatrix::is_skew() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    if ((*this)(i, i)) return false;
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (field_.add((*this)(i, j), (*this)(j, i))) return false;
  }
  return true;
}

FqMatrix FqMatrix::vstack(const FqMatrix& a, const FqMatrix& b) {
  if (a.rows_ == 0) return b;
  if (b.rows_ == 0) return a;
  require(a.cols_ == b.cols_, ErrorCode::invalid_argument, "vstack shape mismatch");
  FqMatrix r(a.field_, a.rows_ + b.rows_, a.cols_);
  std::copy(a.data_.begin(), a.data_.end(), r.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), r.data_.begin() + a.data_.size());
  return r;
}

FqMatrix FqMatrix::hstack(const FqMatrix& a, const FqMatrix& b) {
  require(a.rows_ == b.rows_, ErrorCode::invalid_argument, "hstack shape mismatch");
  FqMatrix r(a.field_, a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
  }
  return r;
}

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  Elem s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

Vec axpy(const Field& f, Elem c, std::span<const Elem> x, std::span<const Elem> y) {
  Vec r(y.begin(), y.end());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = f.add(r[i], f.mul(c, x[i]));
  return r;
}

Vec scale(const Field& f, Elem c, std::span<const Elem> x) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = f.mul(c, x[i]);
  return r;
}

bool is_zero(std::span<const Elem> v) {
  for (Elem e : v)
    if (e) return false;
  return true;
}

Vec normalize_projective(const Field& f, std::span<const Elem> v) {
  for (Elem e : v)
    if (e) return scale(f, f.inv(e), v);
  return Vec(v.begin(), v.end());
}

bool proportional(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  return normalize_projective(f, a) == normalize_projective(f, b);
}

}  // namespace k3g16
