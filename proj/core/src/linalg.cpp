#include "k3g16/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "k3g16/errors.hpp"

namespace k3g16 {

namespace {

constexpr std::size_t kBlock = 32;

// Pivot storage of width Word. With 32-bit words, block reduction runs with
// delayed modular reduction in 64-bit accumulators; with 64-bit words every
// update is reduced immediately.
template <class Word>
struct Pivots {
  Field f;
  std::size_t n;
  std::vector<Word> rows;            // pivot rows, lead entry 1
  std::vector<std::size_t> leads;
  std::size_t lazy_cap;

  Pivots(const Field& field, std::size_t ncols) : f(field), n(ncols) {
    const unsigned __int128 pm1 = field.p() - 1;
    const unsigned __int128 room = ~0ULL - field.p();
    lazy_cap = static_cast<std::size_t>(std::min<unsigned __int128>(room / (pm1 * pm1), 1u << 30));
  }

  const Word* row(std::size_t i) const { return rows.data() + i * n; }

  void reduce_lazy(std::vector<std::uint64_t>& acc, std::size_t nb, std::size_t first, std::size_t last) const {
    const std::uint64_t p = f.p();
    std::size_t count = 0;
    for (std::size_t i = first; i < last; ++i) {
      const std::size_t lead = leads[i];
      const Word* pr = row(i);
      for (std::size_t b = 0; b < nb; ++b) {
        std::uint64_t* a = acc.data() + b * n;
        const std::uint64_t c = a[lead] % p;
        if (!c) continue;
        const std::uint64_t m = p - c;
        for (std::size_t k = lead; k < n; ++k) a[k] += m * static_cast<std::uint64_t>(pr[k]);
      }
      if (++count >= lazy_cap) {
        for (auto& v : acc) v %= p;
        count = 0;
      }
    }
    for (auto& v : acc) v %= p;
  }

  void reduce_exact(std::vector<std::uint64_t>& acc, std::size_t nb, std::size_t first, std::size_t last) const {
    for (std::size_t i = first; i < last; ++i) {
      const std::size_t lead = leads[i];
      const Word* pr = row(i);
      for (std::size_t b = 0; b < nb; ++b) {
        std::uint64_t* a = acc.data() + b * n;
        const Elem c = a[lead];
        if (!c) continue;
        const Elem m = f.neg(c);
        for (std::size_t k = lead; k < n; ++k)
          if (pr[k]) a[k] = f.add(a[k], f.mul(m, pr[k]));
      }
    }
  }

  void reduce(std::vector<std::uint64_t>& acc, std::size_t nb, std::size_t first, std::size_t last) const {
    if constexpr (sizeof(Word) == 4) {
      reduce_lazy(acc, nb, first, last);
    } else {
      reduce_exact(acc, nb, first, last);
    }
  }

  // Returns number of new pivots.
  std::size_t insert(std::vector<std::uint64_t>& acc, std::size_t nb) {
    const std::size_t old = leads.size();
    reduce(acc, nb, 0, old);
    std::size_t added = 0;
    std::vector<std::uint64_t> one;
    for (std::size_t b = 0; b < nb; ++b) {
      one.assign(acc.begin() + b * n, acc.begin() + (b + 1) * n);
      reduce_exact_vec(one, old);
      std::size_t lead = 0;
      while (lead < n && one[lead] == 0) ++lead;
      if (lead == n) continue;
      const Elem inv = f.inv(one[lead]);
      const std::size_t base = rows.size();
      rows.resize(base + n);
      for (std::size_t k = 0; k < n; ++k) rows[base + k] = static_cast<Word>(f.mul(one[k], inv));
      leads.push_back(lead);
      ++added;
    }
    return added;
  }

  void reduce_exact_vec(std::vector<std::uint64_t>& v, std::size_t first) const {
    for (std::size_t i = first; i < leads.size(); ++i) {
      const std::size_t lead = leads[i];
      const Elem c = v[lead];
      if (!c) continue;
      const Elem m = f.neg(c);
      const Word* pr = row(i);
      for (std::size_t k = lead; k < n; ++k)
        if (pr[k]) v[k] = f.add(v[k], f.mul(m, pr[k]));
    }
  }
};

}  // namespace

struct RowReducer::Impl {
  bool narrow;
  Pivots<std::uint32_t> p32;
  Pivots<std::uint64_t> p64;
  std::vector<std::uint64_t> pending;
  std::size_t npending = 0;

  Impl(const Field& f, std::size_t n) : narrow(f.p() < (1ULL << 32)), p32(f, n), p64(f, n) {}

  std::size_t ncols() const { return p32.n; }

  void flush() {
    if (!npending) return;
    if (narrow) {
      p32.insert(pending, npending);
    } else {
      p64.insert(pending, npending);
    }
    pending.clear();
    npending = 0;
  }
  std::size_t rank() const { return narrow ? p32.leads.size() : p64.leads.size(); }
};

RowReducer::RowReducer(const Field& f, std::size_t ncols) : impl_(new Impl(f, ncols)) {}
RowReducer::~RowReducer() { delete impl_; }
RowReducer::RowReducer(RowReducer&& o) noexcept : impl_(o.impl_) { o.impl_ = nullptr; }
RowReducer& RowReducer::operator=(RowReducer&& o) noexcept {
  std::swap(impl_, o.impl_);
  return *this;
}

bool RowReducer::insert(std::span<const Elem> row) {
  impl_->flush();
  require(row.size() == impl_->ncols(), ErrorCode::invalid_argument, "row length mismatch");
  impl_->pending.assign(row.begin(), row.end());
  impl_->npending = 1;
  const std::size_t before = impl_->rank();
  impl_->flush();
  return impl_->rank() > before;
}

void RowReducer::insert_block(const FqMatrix& rows) {
  require(rows.cols() == impl_->ncols() || rows.rows() == 0, ErrorCode::invalid_argument, "row length mismatch");
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    auto r = rows.row(i);
    impl_->pending.insert(impl_->pending.end(), r.begin(), r.end());
    if (++impl_->npending == kBlock) impl_->flush();
  }
  impl_->flush();
}

std::size_t RowReducer::rank() const {
  impl_->flush();
  return impl_->rank();
}

std::size_t RowReducer::ncols() const { return impl_->ncols(); }

FqMatrix RowReducer::pivot_rows() const {
  impl_->flush();
  const std::size_t n = impl_->ncols();
  const std::size_t r = impl_->rank();
  FqMatrix m(impl_->p32.f, r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < n; ++k)
      m(i, k) = impl_->narrow ? impl_->p32.rows[i * n + k] : impl_->p64.rows[i * n + k];
  return m;
}

Echelon rref(const FqMatrix& m) {
  const Field& f = m.field();
  const std::size_t n = m.cols();
  if (m.rows() == 0 || n == 0) return {FqMatrix(f, 0, n), {}};
  RowReducer red(f, n);
  red.insert_block(m);
  FqMatrix piv = red.pivot_rows();
  const std::size_t r = piv.rows();
  std::vector<std::size_t> leads(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t k = 0;
    while (piv(i, k) == 0) ++k;
    leads[i] = k;
  }
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return leads[a] < leads[b]; });
  FqMatrix out(f, r, n);
  std::vector<std::size_t> pivots(r);
  for (std::size_t i = 0; i < r; ++i) {
    auto src = piv.row(order[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
    pivots[i] = leads[order[i]];
  }
  for (std::size_t i = r; i-- > 0;) {
    const std::size_t c = pivots[i];
    for (std::size_t j = 0; j < i; ++j) {
      const Elem v = out(j, c);
      if (!v) continue;
      const Elem mlt = f.neg(v);
      for (std::size_t k = c; k < n; ++k)
        if (out(i, k)) out(j, k) = f.add(out(j, k), f.mul(mlt, out(i, k)));
    }
  }
  return {std::move(out), std::move(pivots)};
}

std::size_t rank(const FqMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Reduce along the shorter dimension.
  if (m.rows() > m.cols()) {
    RowReducer red(m.field(), m.rows());
    red.insert_block(m.transpose());
    return red.rank();
  }
  RowReducer red(m.field(), m.cols());
  red.insert_block(m);
  return red.rank();
}

Subspace make_subspace(Echelon e, std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = std::move(e.rows);
  s.pivots_ = std::move(e.pivots);
  return s;
}

Subspace kernel(const FqMatrix& m) {
  const Field& f = m.field();
  const std::size_t n = m.cols();
  Echelon e = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vec> vecs;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    Vec v(n, 0);
    v[j] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = f.neg(e.rows(i, j));
    vecs.push_back(std::move(v));
  }
  return Subspace::spanned_by(f, n, vecs);
}

Subspace row_space(const FqMatrix& m) { return Subspace::spanned_by(m); }
Subspace column_space(const FqMatrix& m) { return Subspace::spanned_by(m.transpose()); }

Elem det(const FqMatrix& m) {
  require(m.rows() == m.cols(), ErrorCode::invalid_argument, "det of non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  FqMatrix a(m);
  Elem d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && a(r, c) == 0) ++r;
    if (r == n) return 0;
    if (r != c) {
      for (std::size_t k = c; k < n; ++k) std::swap(a(r, k), a(c, k));
      d = f.neg(d);
    }
    const Elem pv = a(c, c);
    d = f.mul(d, pv);
    const Elem pinv = f.inv(pv);
    for (std::size_t i = c + 1; i < n; ++i) {
      const Elem v = a(i, c);
      if (!v) continue;
      const Elem mlt = f.neg(f.mul(v, pinv));
      for (std::size_t k = c; k < n; ++k) a(i, k) = f.add(a(i, k), f.mul(mlt, a(c, k)));
    }
  }
  return d;
}

std::optional<FqMatrix> inverse(const FqMatrix& m) {
  require(m.rows() == m.cols(), ErrorCode::invalid_argument, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  Echelon e = rref(FqMatrix::hstack(m, FqMatrix::identity(m.field(), n)));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  FqMatrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rows(i, n + j);
  return inv;
}

FqMatrix adjugate(const FqMatrix& m) {
  const Field& f = m.field();
  const std::size_t n = m.rows();
  if (auto inv = inverse(m)) return inv->scaled(det(m));
  FqMatrix adj(f, n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  if (rank(m) < n - 1) return adj;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rs, cs;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) rs.push_back(k);
        if (k != i) cs.push_back(k);
      }
      Elem c = det(m.submatrix(rs, cs));
      adj(i, j) = ((i + j) % 2) ? f.neg(c) : c;
    }
  return adj;
}

SolveResult solve(const FqMatrix& m, std::span<const Elem> rhs) {
  require(rhs.size() == m.rows(), ErrorCode::invalid_argument, "rhs length mismatch");
  FqMatrix r(m.field(), m.rows(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) r(i, 0) = rhs[i];
  MultiSolveResult ms = solve_many(m, r);
  SolveResult out;
  out.consistent = ms.consistent[0];
  if (out.consistent) out.solution = ms.solutions.col_vec(0);
  return out;
}

MultiSolveResult solve_many(const FqMatrix& m, const FqMatrix& rhs) {
  require(rhs.rows() == m.rows(), ErrorCode::invalid_argument, "rhs shape mismatch");
  const Field& f = m.field();
  const std::size_t n = m.cols();
  const std::size_t rows = m.rows();
  const std::size_t k = rhs.cols();
  // [m | I] has full row rank, so its RREF carries the row transform T with T m = E.
  Echelon e = rref(FqMatrix::hstack(m, FqMatrix::identity(f, rows)));
  std::size_t r = 0;
  while (r < e.pivots.size() && e.pivots[r] < n) ++r;
  FqMatrix t(f, rows, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) t(i, j) = e.rows(i, n + j);
  FqMatrix y = t * rhs;
  MultiSolveResult out;
  out.nullity = n - r;
  out.consistent.assign(k, true);
  out.solutions = FqMatrix(f, n, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = r; i < rows; ++i)
      if (y(i, j)) {
        out.consistent[j] = false;
        break;
      }
    if (!out.consistent[j]) continue;
    for (std::size_t i = 0; i < r; ++i) out.solutions(e.pivots[i], j) = y(i, j);
  }
  return out;
}

Subspace Subspace::zero(const Field& f, std::size_t ambient) {
  return make_subspace({FqMatrix(f, 0, ambient), {}}, ambient);
}

Subspace Subspace::full(const Field& f, std::size_t ambient) {
  std::vector<std::size_t> piv(ambient);
  std::iota(piv.begin(), piv.end(), 0);
  return make_subspace({FqMatrix::identity(f, ambient), piv}, ambient);
}

Subspace Subspace::spanned_by(const FqMatrix& rows) { return make_subspace(rref(rows), rows.cols()); }

Subspace Subspace::spanned_by(const Field& f, std::size_t ambient, const std::vector<Vec>& vectors) {
  return spanned_by(FqMatrix::from_rows(f, vectors, ambient));
}

Vec Subspace::reduce(std::span<const Elem> v) const {
  require(v.size() == ambient_, ErrorCode::invalid_argument, "vector length mismatch");
  const Field& f = field();
  Vec r(v.begin(), v.end());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Elem c = r[pivots_[i]];
    if (!c) continue;
    const Elem m = f.neg(c);
    for (std::size_t k = pivots_[i]; k < ambient_; ++k)
      if (basis_(i, k)) r[k] = f.add(r[k], f.mul(m, basis_(i, k)));
  }
  return r;
}

bool Subspace::contains(std::span<const Elem> v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& s) const {
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (!contains(s.basis_.row(i))) return false;
  return true;
}

std::optional<Vec> Subspace::coordinates(std::span<const Elem> v) const {
  if (!contains(v)) return std::nullopt;
  Vec c(pivots_.size());
  for (std::size_t i = 0; i < pivots_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Subspace Subspace::annihilator() const {
  if (dim() == 0) return full(field(), ambient_);
  return kernel(basis_);
}

std::vector<std::size_t> Subspace::free_columns() const {
  std::vector<bool> piv(ambient_, false);
  for (auto c : pivots_) piv[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < ambient_; ++j)
    if (!piv[j]) out.push_back(j);
  return out;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require(a.ambient_dim() == b.ambient_dim(), ErrorCode::invalid_argument, "ambient mismatch");
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.field(), a.ambient_dim());
  // a ∩ b = ann(ann(a) + ann(b)).
  return span_union(a.annihilator(), b.annihilator()).annihilator();
}

Subspace span_union(const std::vector<Subspace>& spaces) {
  require(!spaces.empty(), ErrorCode::invalid_argument, "span_union of nothing");
  FqMatrix all(spaces[0].field(), 0, spaces[0].ambient_dim());
  for (const auto& s : spaces) {
    require(s.ambient_dim() == spaces[0].ambient_dim(), ErrorCode::invalid_argument, "ambient mismatch");
    all = FqMatrix::vstack(all, s.basis());
  }
  return Subspace::spanned_by(all);
}

Subspace span_union(const Subspace& a, const Subspace& b) { return span_union(std::vector<Subspace>{a, b}); }

Subspace image_of(const FqMatrix& m, const Subspace& s) {
  FqMatrix img(m.field(), 0, m.rows());
  for (std::size_t i = 0; i < s.dim(); ++i) img.append_row(m.apply(s.basis().row(i)));
  if (img.rows() == 0) return Subspace::zero(m.field(), m.rows());
  return Subspace::spanned_by(img);
}

}  // namespace k3g16
