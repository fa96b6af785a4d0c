#include "k3g16/mukai.hpp"

#include "k3g16/errors.hpp"
#include "k3g16/mpoly.hpp"
#include "k3g16/multilinear.hpp"
#include "k3g16/rng.hpp"

namespace k3g16 {

FqMatrix AlphaTensor::at(std::span<const Elem> x) const {
  FqMatrix m(f_, 10, 8);
  for (std::size_t j = 0; j < 8; ++j)
    for (std::size_t w = 0; w < 10; ++w) {
      Elem s = 0;
      for (std::size_t i = 0; i < 4; ++i) s = f_.add(s, f_.mul((*this)(j, w, i), x[i]));
      m(w, j) = s;
    }
  return m;
}

Vec square_of_linear(const Field& f, std::span<const Elem> x) {
  const MonomialBasis& b = monomial_basis(4, 2);
  Vec q(b.size());
  for (std::size_t a = 0; a < b.size(); ++a) {
    Elem v = 1;
    for (std::size_t i = 0; i < 4; ++i)
      for (unsigned e = 0; e < b[a][i]; ++e) v = f.mul(v, x[i]);
    // (Σ x_i w_i)² has coefficient 2 x_i x_j on w_i w_j for i ≠ j.
    bool square = false;
    for (std::size_t i = 0; i < 4; ++i) square |= b[a][i] == 2;
    q[a] = square ? v : f.mul(2, v);
  }
  return q;
}

MukaiModel::MukaiModel(const Seed& seed) : seed_(seed) {
  const Field& f = seed_.field;
  FqMatrix proj = schur::s21_projector(f);
  // π_{2,1}(M ⊗ V^∨) ⊕ N inside S_{2,1} coordinates.
  FqMatrix span(f, 0, schur::kS21);
  for (std::size_t m = 0; m < seed_.M.dim(); ++m)
    for (std::size_t k = 0; k < 4; ++k) {
      Vec lin(4, 0);
      lin[k] = 1;
      span.append_row(schur::s21_coordinates(f, proj.apply(schur::tensor(f, seed_.M.vector(m), lin))));
    }
  span = FqMatrix::vstack(span, seed_.N.basis());
  k21_ = Subspace::spanned_by(span);
  const auto free = k21_.free_columns();
  q_ = FqMatrix(f, free.size(), schur::kS21);
  for (std::size_t s = 0; s < schur::kS21; ++s) {
    Vec e(schur::kS21, 0);
    e[s] = 1;
    Vec r = k21_.reduce(e);
    for (std::size_t w = 0; w < free.size(); ++w) q_(w, s) = r[free[w]];
  }
  cosets_ = seed_.M.free_columns();
  if (free.size() != 10 || cosets_.size() != 8) return;  // validate_seed reports the failure
  std::vector<Elem> data(8 * 10 * 4);
  for (std::size_t j = 0; j < 8; ++j)
    for (std::size_t i = 0; i < 4; ++i) {
      Vec quad(10, 0), lin(4, 0);
      quad[cosets_[j]] = 1;
      lin[i] = 1;
      Vec w = w10_of_tensor(schur::tensor(f, quad, lin));
      for (std::size_t c = 0; c < 10; ++c) data[(j * 10 + c) * 4 + i] = w[c];
    }
  alpha_ = AlphaTensor(f, std::move(data));
}

Vec MukaiModel::w10_of_tensor(std::span<const Elem> t) const {
  const Field& f = field();
  return q_.apply(schur::s21_coordinates(f, schur::s21_project(f, t)));
}

Vec MukaiModel::quotient_s2(std::span<const Elem> quad) const {
  Vec r = seed_.M.reduce(quad);
  Vec out(cosets_.size());
  for (std::size_t j = 0; j < cosets_.size(); ++j) out[j] = r[cosets_[j]];
  return out;
}

Subspace MukaiModel::t_fiber(std::span<const Elem> x) const {
  FqMatrix a = alpha_at(x);
  require(rank(a) == 7, ErrorCode::non_generic_point, "rank of alpha_x is not 7");
  return kernel(a.transpose());
}

FqMatrix MukaiModel::beta_at(std::span<const Elem> w) const {
  const Field& f = field();
  FqMatrix b(f, 4, 8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      Elem s = 0;
      for (std::size_t c = 0; c < 10; ++c) s = f.add(s, f.mul(w[c], alpha_(j, c, i)));
      b(i, j) = s;
    }
  return b;
}

SeedReport validate_seed(const Seed& seed, std::uint64_t check_seed) {
  SeedReport rep;
  auto failed = [&](const std::string& id) {
    rep.ok = false;
    rep.failed_check = id;
    return rep;
  };
  if (seed.M.dim() != 2) return failed("dim-M");
  if (seed.N.dim() != 2) return failed("dim-N");
  MukaiModel model(seed);
  rep.kernel_dim = model.quotient_kernel().dim();
  rep.w10_dim = model.w10_dim();
  if (rep.kernel_dim != 10) return failed("dim-kernel-q");
  if (rep.w10_dim != 10) return failed("dim-W10");
  const Field& f = seed.field;
  Rng rng(seed.rng_seed ^ check_seed, "validate-seed");
  // M ⊗ V^∨ must lie in the kernel of q (well-definedness of α).
  for (std::size_t m = 0; m < 2; ++m)
    for (std::size_t k = 0; k < 4; ++k) {
      Vec lin(4, 0);
      lin[k] = 1;
      if (!is_zero(model.w10_of_tensor(schur::tensor(f, seed.M.vector(m), lin)))) return failed("alpha-well-defined");
    }
  for (int t = 0; t < 10; ++t) {
    Vec x = rng.nonzero_vector(f, 4);
    FqMatrix a = model.alpha_at(x);
    rep.alpha_ranks.push_back(rank(a));
    if (rep.alpha_ranks.back() != 7) return failed("rank-alpha");
    // x² survives modulo M and spans ker α_x.
    Vec x2 = model.quotient_s2(square_of_linear(f, x));
    if (is_zero(x2)) return failed("cubic-kernel");
    if (!is_zero(a.apply(x2))) return failed("cubic-kernel");
  }
  return rep;
}

Seed make_seed(const Field& f, std::uint64_t rng_seed, const FqMatrix& m_rows, const FqMatrix& n_rows) {
  Seed s;
  s.field = f;
  s.rng_seed = rng_seed;
  s.M = Subspace::spanned_by(m_rows);
  s.N = Subspace::spanned_by(n_rows);
  return s;
}

Seed generate_seed(std::uint64_t p, std::uint64_t rng_seed, int max_retries) {
  const Field f(p);
  Rng rng(rng_seed, "seed");
  std::vector<std::string> log;
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    Seed s = make_seed(f, rng_seed, rng.matrix(f, 2, 10), rng.matrix(f, 2, 20));
    SeedReport rep = validate_seed(s);
    if (rep.ok) {
      s.retries = log;
      return s;
    }
    log.push_back(rep.failed_check);
  }
  std::string joined;
  for (const auto& id : log) joined += (joined.empty() ? "" : ",") + id;
  fail(ErrorCode::seed_not_generic, "no generic seed within the retry budget; rejected draws: " + joined);
}

}  // namespace k3g16
