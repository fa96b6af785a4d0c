#include "k3g16/t1.hpp"

#include "k3g16/errors.hpp"
#include "k3g16/rng.hpp"

namespace k3g16 {

namespace {

[[noreturn]] void step_failure(const std::string& step, const std::string& what) {
  fail(ErrorCode::non_generic_point, "t1-step-" + step + ": " + what);
}

}  // namespace

Subspace k_space(const QuadricSystem& sys, const Ruling& a, const Ruling& b) {
  const Field& f = sys.field();
  const FqMatrix span = FqMatrix::from_rows(f, {a.point, a.direction, b.point, b.direction}, a.point.size());
  require(rank(span) == 4, ErrorCode::non_generic_point, "rulings are not skew");
  FqMatrix restricted(f, 0, monomial_count(4, 2));
  for (const FqMatrix& g : sys.restricted_grams(span)) restricted.append_row(MPoly::from_gram(g).dense());
  return kernel(restricted.transpose());
}

std::size_t nonzero_on_wedge3(const Trivector& t, const Subspace& s) {
  std::size_t count = 0;
  for (const auto& [a, b, c] : triple_list(s.dim()))
    if (t.evaluate(s.basis().row(a), s.basis().row(b), s.basis().row(c)) != 0) ++count;
  return count;
}

T1Run run_algorithm(const QuadricSystem& sys, const std::vector<XPoint>& points) {
  const Field& f = sys.field();
  require(points.size() == 5, ErrorCode::invalid_argument, "the algorithm takes five points");
  T1Run run;
  run.points = points;
  for (const XPoint& p : points) run.rulings.push_back(ruling_through(sys, p));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      if (run.rulings[i].span(f) == run.rulings[j].span(f)) step_failure("ii", "two points share a ruling");

  for (const auto& [i, j] : pair_list(5)) {
    Subspace k;
    try {
      k = k_space(sys, run.rulings[i], run.rulings[j]);
    } catch (const Error&) {
      step_failure("iii", "rulings are not skew");
    }
    if (k.dim() != 6) step_failure("iii", "K space of dimension " + std::to_string(k.dim()));
    run.k.push_back(std::move(k));
  }

  std::vector<Vec> wedges;
  for (const auto& [a, b] : pair_list(run.k.size())) {
    Subspace d = intersect(run.k[a], run.k[b]);
    if (d.dim() != 2) step_failure("iv", "intersection of dimension " + std::to_string(d.dim()));
    wedges.push_back(wedge2(f, d.vector(0), d.vector(1)));
    run.delta.push_back(std::move(d));
  }
  run.v35 = Subspace::spanned_by(f, 45, wedges);
  run.n10 = run.v35.annihilator();
  if (run.v35.dim() != 35 || run.n10.dim() != 10)
    step_failure("iv", "V35 has dimension " + std::to_string(run.v35.dim()));

  // Step (v): trivectors with every contraction t(v, −, −) in N₁₀, i.e. vanishing on V₃₅.
  const auto& triples = triple_list(10);
  FqMatrix eq(f, 0, triples.size());
  Vec unit(triples.size(), 0);
  std::vector<FqMatrix> flat;
  for (std::size_t c = 0; c < triples.size(); ++c) {
    unit[c] = 1;
    flat.push_back(Trivector::from_coeffs(f, 10, unit, Variance::dual).flattening());
    unit[c] = 0;
  }
  for (std::size_t v = 0; v < 10; ++v)
    for (std::size_t d = 0; d < run.v35.dim(); ++d) {
      Vec row(triples.size(), 0);
      const auto w = run.v35.basis().row(d);
      for (std::size_t c = 0; c < triples.size(); ++c) row[c] = dot(f, flat[c].row(v), w);
      eq.append_row(row);
    }
  const Subspace sol = kernel(eq);
  run.solution_dim = sol.dim();
  if (sol.dim() != 1) step_failure("v", "solution space of dimension " + std::to_string(sol.dim()));
  run.t1 = Trivector::from_coeffs(f, 10, sol.vector(0), Variance::dual).normalized(&run.scale);
  const FqMatrix fl = run.t1.flattening();
  run.flattening_rank = rank(fl);
  run.flattening_onto_n10 = row_space(fl) == run.n10;
  if (run.flattening_rank != 10 || !run.flattening_onto_n10) step_failure("v", "flattening is not an isomorphism");
  return run;
}

T1Run compute_t1(const MukaiModel& model, const QuadricSystem& sys, Rng& rng, std::size_t budget) {
  std::vector<std::string> rejected;
  for (std::size_t attempt = 1; attempt <= budget; ++attempt) {
    // One point per fiber plane keeps the rulings apart.
    std::vector<XPoint> pts;
    while (pts.size() < 5) pts.push_back(sample_x_points(model, sys, 1, rng).points.front());
    try {
      T1Run run = run_algorithm(sys, pts);
      run.attempts = attempt;
      run.rejected = rejected;
      return run;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::non_generic_point) throw;
      rejected.push_back(e.what());
    }
  }
  fail(ErrorCode::seed_not_generic, "t1 algorithm failed on every point set");
}

T1Verification verify_t1(const QuadricSystem& sys, const T1Run& run, const Ruling* extra) {
  T1Verification v;
  for (const Subspace& d : run.delta) {
    ++v.delta_lines;
    if (is_zero(run.t1.contract(d.vector(0)).apply(d.vector(1)))) ++v.delta_in_congruence;
  }
  for (const Subspace& k : run.k) {
    ++v.k_spaces;
    v.k_nonzero_values += nonzero_on_wedge3(run.t1, k);
  }
  if (extra) {
    for (const Ruling& r : run.rulings) {
      const Subspace k = k_space(sys, *extra, r);
      ++v.extra_k_spaces;
      v.extra_nonzero_values += k.dim() == 6 ? nonzero_on_wedge3(run.t1, k) : 1;
    }
  }
  v.ok = v.delta_in_congruence == v.delta_lines && v.delta_lines == 45 && v.k_nonzero_values == 0 &&
         v.extra_nonzero_values == 0;
  return v;
}

}  // namespace k3g16
