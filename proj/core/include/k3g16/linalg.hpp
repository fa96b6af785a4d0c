#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "k3g16/matrix.hpp"

namespace k3g16 {

class Subspace;

struct Echelon {
  FqMatrix rows;                    // reduced row echelon, rank rows
  std::vector<std::size_t> pivots;  // strictly increasing
};

Echelon rref(const FqMatrix& m);
std::size_t rank(const FqMatrix& m);
Subspace kernel(const FqMatrix& m);      // right null space
Subspace row_space(const FqMatrix& m);
Subspace column_space(const FqMatrix& m);
Elem det(const FqMatrix& m);
std::optional<FqMatrix> inverse(const FqMatrix& m);
FqMatrix adjugate(const FqMatrix& m);

struct SolveResult {
  bool consistent = false;
  Vec solution;  // one particular solution when consistent
};
SolveResult solve(const FqMatrix& m, std::span<const Elem> rhs);

// Solve m X = R column by column, sharing one elimination.
struct MultiSolveResult {
  std::vector<bool> consistent;
  FqMatrix solutions;  // cols(m) × cols(R), zero columns where inconsistent
  std::size_t nullity = 0;
};
MultiSolveResult solve_many(const FqMatrix& m, const FqMatrix& rhs);

// Incremental row echelon builder used for large rank computations. Rows are
// reduced in blocks with delayed modular reduction.
class RowReducer {
 public:
  RowReducer(const Field& f, std::size_t ncols);
  ~RowReducer();
  RowReducer(RowReducer&&) noexcept;
  RowReducer& operator=(RowReducer&&) noexcept;

  // Returns true when the row was independent of everything inserted so far.
  bool insert(std::span<const Elem> row);
  void insert_block(const FqMatrix& rows);
  std::size_t rank() const;
  std::size_t ncols() const;
  FqMatrix pivot_rows() const;  // echelon but not reduced

 private:
  struct Impl;
  Impl* impl_;
};

class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(const Field& f, std::size_t ambient);
  static Subspace full(const Field& f, std::size_t ambient);
  static Subspace spanned_by(const FqMatrix& rows);
  static Subspace spanned_by(const Field& f, std::size_t ambient, const std::vector<Vec>& vectors);

  const Field& field() const { return basis_.field(); }
  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient_dim() const { return ambient_; }
  const FqMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vec vector(std::size_t i) const { return basis_.row_vec(i); }

  bool contains(std::span<const Elem> v) const;
  bool contains(const Subspace& s) const;
  // Remainder of v modulo the subspace (zero on pivot columns).
  Vec reduce(std::span<const Elem> v) const;
  // Coordinates of v in the basis; nullopt when v is not in the subspace.
  std::optional<Vec> coordinates(std::span<const Elem> v) const;
  // { u : <u, s> = 0 for all s }, in dual coordinates.
  Subspace annihilator() const;
  // Non-pivot columns: coordinates of the quotient ambient / this.
  std::vector<std::size_t> free_columns() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  friend Subspace make_subspace(Echelon e, std::size_t ambient);
  std::size_t ambient_ = 0;
  FqMatrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace span_union(const std::vector<Subspace>& spaces);
Subspace span_union(const Subspace& a, const Subspace& b);
// Image of a subspace under a linear map (rows of s.basis mapped by m: v ↦ m v).
Subspace image_of(const FqMatrix& m, const Subspace& s);

}  // namespace k3g16
