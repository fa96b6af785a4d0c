#include <algorithm>
#include <map>
#include <memory>

#include "k3g16/errors.hpp"
#include "k3g16/mpoly.hpp"
#include "k3g16/rng.hpp"

namespace k3g16 {

namespace {

struct GenData {
  std::vector<std::uint32_t> idx;  // nonzero monomial positions in degree deg(g)
  std::vector<Elem> coef;
  std::shared_ptr<const std::vector<std::uint32_t>> table;  // basis(e) × basis(d−e)
  std::size_t shifts = 0;            // number of degree d−e multipliers
};

// Generators of each degree are replaced by an echelon basis of their span:
// same ideal, fewer and sparser columns.
std::vector<GenData> prepare(const std::vector<MPoly>& gens, unsigned d) {
  require(!gens.empty(), ErrorCode::invalid_argument, "empty generator list");
  const Field& f = gens[0].field();
  const std::size_t n = gens[0].nvars();
  std::map<unsigned, FqMatrix> by_degree;
  for (const auto& g : gens) {
    require(g.nvars() == n, ErrorCode::invalid_argument, "generators in different rings");
    if (g.is_zero() || g.degree() > d) continue;
    auto it = by_degree.find(g.degree());
    if (it == by_degree.end())
      it = by_degree.emplace(g.degree(), FqMatrix(f, 0, monomial_count(n, g.degree()))).first;
    it->second.append_row(g.dense());
  }
  std::vector<GenData> out;
  for (const auto& [e, mat] : by_degree) {
    const MonomialBasis& bg = monomial_basis(n, e);
    const MonomialBasis& bs = monomial_basis(n, d - e);
    auto table = std::make_shared<std::vector<std::uint32_t>>(bg.product_table(bs));
    Echelon ech = rref(mat);
    for (std::size_t r = 0; r < ech.rows.rows(); ++r) {
      GenData gd;
      for (std::size_t c = 0; c < bg.size(); ++c)
        if (ech.rows(r, c)) {
          gd.idx.push_back(static_cast<std::uint32_t>(c));
          gd.coef.push_back(ech.rows(r, c));
        }
      gd.table = table;
      gd.shifts = bs.size();
      out.push_back(std::move(gd));
    }
  }
  return out;
}

// One block of sketch vectors Σ_g g·R_g with random multipliers R_g.
void sketch_block(const Field& f, const std::vector<GenData>& gens, std::size_t rows, std::size_t nb, Rng& rng,
                  FqMatrix& block) {
  const std::uint64_t p = f.p();
  std::size_t adds = 0;
  for (const auto& g : gens) adds += g.idx.size() * g.shifts;
  const unsigned __int128 pm1 = p - 1;
  const bool lazy = pm1 * pm1 * adds + p < (static_cast<unsigned __int128>(1) << 64);
  std::vector<std::uint64_t> acc(rows);
  std::vector<Elem> r;
  block = FqMatrix(f, nb, rows);
  for (std::size_t b = 0; b < nb; ++b) {
    std::fill(acc.begin(), acc.end(), 0);
    for (const auto& g : gens) {
      r.resize(g.shifts);
      for (auto& v : r) v = rng.uniform(f);
      const std::size_t stride = g.shifts;
      for (std::size_t t = 0; t < g.idx.size(); ++t) {
        const std::uint32_t* tab = g.table->data() + g.idx[t] * stride;
        const Elem c = g.coef[t];
        if (lazy) {
          for (std::size_t s = 0; s < stride; ++s) acc[tab[s]] += c * r[s];
        } else {
          for (std::size_t s = 0; s < stride; ++s) acc[tab[s]] = f.add(acc[tab[s]], f.mul(c, r[s]));
        }
      }
    }
    auto row = block.row(b);
    for (std::size_t k = 0; k < rows; ++k) row[k] = acc[k] % p;
  }
}

std::size_t sketch_rank(const Field& f, const std::vector<GenData>& gens, std::size_t rows, std::size_t width,
                        Rng& rng) {
  RowReducer red(f, rows);
  FqMatrix block;
  std::size_t done = 0;
  while (done < width) {
    const std::size_t nb = std::min<std::size_t>(64, width - done);
    sketch_block(f, gens, rows, nb, rng, block);
    red.insert_block(block);
    done += nb;
    if (red.rank() == rows) break;
  }
  return red.rank();
}

}  // namespace

namespace {

std::size_t exact_rank(const Field& f, const std::vector<GenData>& data, std::size_t rows) {
  RowReducer red(f, rows);
  FqMatrix block(f, 0, rows);
  Vec col(rows);
  for (const auto& g : data) {
    for (std::size_t s = 0; s < g.shifts; ++s) {
      std::fill(col.begin(), col.end(), 0);
      for (std::size_t t = 0; t < g.idx.size(); ++t) col[(*g.table)[g.idx[t] * g.shifts + s]] = g.coef[t];
      block.append_row(col);
      if (block.rows() == 64) {
        red.insert_block(block);
        block = FqMatrix(f, 0, rows);
      }
    }
  }
  red.insert_block(block);
  return red.rank();
}

}  // namespace

std::size_t homogeneous_ideal_dim_exact(const std::vector<MPoly>& gens, unsigned d) {
  const Field& f = gens.at(0).field();
  return exact_rank(f, prepare(gens, d), monomial_count(gens[0].nvars(), d));
}

IdealDim homogeneous_ideal_dim(const std::vector<MPoly>& gens, unsigned d, Rng& rng, const SketchOptions& opts) {
  const Field& f = gens.at(0).field();
  const std::size_t rows = monomial_count(gens[0].nvars(), d);
  auto data = prepare(gens, d);
  std::size_t cols = 0;
  for (const auto& g : data) cols += g.shifts;
  IdealDim out;
  out.attempts = 1;
  if (cols <= rows + opts.margin) {
    out.dim = cols ? exact_rank(f, data, rows) : 0;
    return out;
  }
  out.sketched = true;
  std::size_t margin = opts.margin;
  for (int attempt = 1; attempt <= opts.max_attempts; ++attempt) {
    Rng r1 = rng.fork("sketch-a");
    Rng r2 = rng.fork("sketch-b");
    const std::size_t a = sketch_rank(f, data, rows, rows + margin, r1);
    const std::size_t b = sketch_rank(f, data, rows, rows + margin, r2);
    out.attempts = attempt;
    if (a == b) {
      out.dim = a;
      return out;
    }
    margin *= 4;
  }
  fail(ErrorCode::sketch_disagreement, "independent sketches disagree in degree " + std::to_string(d));
}

ZeroDimDegree zero_dim_degree(const std::vector<MPoly>& gens, Rng& rng, unsigned cap, const SketchOptions& opts) {
  require(!gens.empty(), ErrorCode::invalid_argument, "empty generator list");
  const std::size_t n = gens[0].nvars();
  unsigned start = 0;
  for (const auto& g : gens) start = std::max(start, g.degree());
  ZeroDimDegree out;
  out.start = start;
  for (unsigned d = start; d <= cap; ++d) {
    const std::size_t dim = homogeneous_ideal_dim(gens, d, rng, opts).dim;
    out.hilbert.push_back(monomial_count(n, d) - dim);
    const std::size_t k = out.hilbert.size();
    if (k >= 2 && out.hilbert[k - 1] == out.hilbert[k - 2]) {
      out.plateau = true;
      out.degree = out.hilbert[k - 1];
      out.plateau_at = d - 1;
      return out;
    }
  }
  return out;
}

std::vector<Interpolant> interpolate_many(const Field& f, std::size_t nvars, unsigned d,
                                          const std::vector<Vec>& points, const FqMatrix& values) {
  require(values.rows() == points.size(), ErrorCode::invalid_argument, "one value row per sample point");
  const MonomialBasis& b = monomial_basis(nvars, d);
  FqMatrix ev(f, 0, b.size());
  for (const auto& pt : points) ev.append_row(monomial_values(f, b, pt));
  if (points.empty()) ev = FqMatrix(f, 0, b.size());
  MultiSolveResult sol = solve_many(ev, values);
  Subspace amb = kernel(ev);
  std::vector<Interpolant> out;
  for (std::size_t j = 0; j < values.cols(); ++j) {
    require(sol.consistent[j], ErrorCode::inconsistent, "samples do not fit a form of degree " + std::to_string(d));
    out.push_back({MPoly::from_dense(f, nvars, d, sol.solutions.col_vec(j)), amb});
  }
  return out;
}

Interpolant interpolate(const Field& f, std::size_t nvars, unsigned d, const std::vector<Vec>& points,
                        std::span<const Elem> values) {
  FqMatrix v(f, values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) v(i, 0) = values[i];
  return interpolate_many(f, nvars, d, points, v).at(0);
}

Subspace vanishing_forms(const Field& f, std::size_t nvars, unsigned d, const std::vector<Vec>& points) {
  const MonomialBasis& b = monomial_basis(nvars, d);
  if (points.empty()) return Subspace::full(f, b.size());
  FqMatrix ev(f, 0, b.size());
  for (const auto& pt : points) ev.append_row(monomial_values(f, b, pt));
  return kernel(ev);
}

}  // namespace k3g16
