#include <chrono>

#include "k3g16/chow.hpp"
#include "k3g16/cover.hpp"
#include "k3g16/discrim.hpp"
#include "k3g16/errors.hpp"
#include "k3g16/kummer.hpp"
#include "k3g16/rng.hpp"
#include "serialize.hpp"
#include "stages.hpp"

namespace k3g16::pipeline {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

CheckRecord rec(std::string id, std::string anchor, bool ok, json value, json expected, std::string provenance,
                bool mandatory = true) {
  CheckRecord r;
  r.id = std::move(id);
  r.anchor = std::move(anchor);
  r.status = ok ? Status::pass : Status::fail;
  r.value = std::move(value);
  r.expected = std::move(expected);
  r.provenance = std::move(provenance);
  r.mandatory = mandatory;
  return r;
}

// Length of a finite slice scheme can only jump up on special slices, so the
// smallest plateau value is the degree once two slices agree on it.
CheckRecord degree_rec(std::string id, const std::vector<ZeroDimDegree>& hfs, std::size_t expected, bool extra_ok,
                       json extra) {
  json degrees = json::array(), plateau = json::array();
  std::optional<std::size_t> low;
  bool any_open = false;
  for (const auto& h : hfs) {
    degrees.push_back(h.plateau ? json(h.degree) : json(nullptr));
    plateau.push_back(h.plateau ? json(h.plateau_at) : json(nullptr));
    if (!h.plateau) any_open = true;
    else if (!low || h.degree < *low) low = h.degree;
  }
  std::size_t at_low = 0;
  for (const auto& h : hfs) at_low += h.plateau && low && h.degree == *low;
  json value{{"degrees", degrees}, {"plateau_at", plateau}, {"degree", low ? json(*low) : json(nullptr)}};
  for (auto& [k, v] : extra.items()) value[k] = v;
  const bool settled = at_low >= 2;
  CheckRecord r = rec(std::move(id), "c10", settled && *low == expected && extra_ok, value, expected,
                      "slice-hilbert-plateau");
  if (!settled && any_open) {
    r.status = Status::inconclusive;
    r.note = "no Hilbert plateau under the degree cap";
  } else if (hfs.size() > 2) {
    r.note = "slices disagreed; larger values come from special slices";
  }
  return r;
}

// True when at least two slices reached the same smallest plateau value.
bool degree_settled(const std::vector<ZeroDimDegree>& hfs) {
  std::optional<std::size_t> low;
  for (const auto& h : hfs)
    if (h.plateau && (!low || h.degree < *low)) low = h.degree;
  std::size_t n = 0;
  for (const auto& h : hfs) n += h.plateau && low && h.degree == *low;
  return n >= 2;
}

Rng stage_rng(const Ctx& c, const std::string& label) { return Rng(c.cfg.rng_seed, label); }

}  // namespace

Ctx::Ctx(const RunConfig& config, State& state) : cfg(config), st(state), f(config.p) {}

void Ctx::hydrate() {
  if (st.seed && !model) model.emplace(*st.seed);
  if (st.done.count(Stage::quadrics) && sys.dim() == 0) sys = QuadricSystem(st.v10);
  if (st.done.count(Stage::syzygy) && syz.dim() == 0) syz = SyzygySpace(st.v8);
}

void stage_quadrics(Ctx& c, StageOutput& out) {
  auto t0 = Clock::now();
  Seed seed;
  try {
    seed = generate_seed(c.cfg.p, c.cfg.rng_seed, static_cast<int>(c.cfg.budgets.retries));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::seed_not_generic) throw;
    CheckRecord r = rec("quadrics.seed", "c01", false, nullptr, "generic seed", "seed-validation");
    r.note = e.what();
    out.records.push_back(r);
    throw StageAbort(e.what());
  }
  c.st.seed = seed;
  c.st.seed_log = seed.retries;
  out.records.push_back(rec("quadrics.seed", "c01", true, json{{"retries", seed.retries}}, "generic seed",
                            "seed-validation"));
  c.model.emplace(seed);
  const MukaiModel& model = *c.model;

  Rng rng = stage_rng(c, "quadrics/v10");
  V10Assembly v10 = assemble_v10(model, rng, 6, c.cfg.budgets.planes, 4);
  c.sys = v10.system;
  c.st.v10 = v10.system.space();
  c.st.planes_needed = v10.planes_needed;
  c.st.growth = v10.growth;
  c.st.pencil = pencil(c.sys, v10.planes);
  json plane_dims = json::array();
  bool planes_ok = true;
  for (const auto& pl : v10.planes) {
    plane_dims.push_back(pl.quadrics.dim());
    planes_ok = planes_ok && pl.quadrics.dim() == 4;
  }
  CheckRecord dim = rec("quadrics.v10_dim", "c01", c.sys.dim() == 10, c.sys.dim(), 10, "point-vanishing");
  dim.note = "planes needed: " + std::to_string(v10.planes_needed);
  out.records.push_back(dim);
  out.records.push_back(rec("quadrics.plane_dims", "c01", planes_ok, plane_dims, 4, "point-vanishing"));
  out.seconds["c01"] = since(t0);

  Rng prng = stage_rng(c, "quadrics/points");
  c.st.points = sample_x_points(model, c.sys, c.cfg.budgets.points, prng).points;
  bool on_x = c.st.points.size() >= 10;
  for (const auto& x : c.st.points) on_x = on_x && c.sys.vanishes_at(x.coords);
  out.records.push_back(rec("quadrics.x_points", "c01", on_x, c.st.points.size(), json{{"min", 10}},
                            "enumeration"));

  t0 = Clock::now();
  Rng hrng = stage_rng(c, "quadrics/hilbert");
  const HilbertReport h = hilbert_check(c.sys, 6, hrng);
  c.st.hilbert = h.values;
  out.records.push_back(rec("quadrics.hilbert", "c02", h.values == h.expected, h.values, h.expected,
                            "macaulay-rank"));
  out.records.push_back(rec("quadrics.degree", "c02", h.third_difference == 21, h.third_difference, 21,
                            "third-difference"));
  const std::vector<std::size_t> expanded{45, 128, 280, 522, 880};
  CheckRecord pr = rec("quadrics.hilbert_expanded", "c02", h.values == expanded, h.values, expanded,
                       "closed-form", false);
  if (h.values != expanded)
    pr.note = "the expanded polynomial gives 880 at m = 6; the combination 21P3 - 36P2 + 17P1 gives 875 and is the mandatory check";
  out.records.push_back(pr);
  out.seconds["c02"] = since(t0);
}

void stage_syzygy(Ctx& c, StageOutput& out) {
  auto t0 = Clock::now();
  const QuadricSystem& sys = c.sys;
  c.syz = linear_syzygies(sys);
  c.st.v8 = c.syz.space();
  out.records.push_back(rec("syzygy.v8_dim", "c03", c.syz.dim() == 8, c.syz.dim(), 8, "kernel"));
  const std::size_t i3 = homogeneous_ideal_dim_exact(sys.quadrics(), 3);
  out.records.push_back(rec("syzygy.cubic_ideal", "c03", i3 == 92, i3, 92, "macaulay-rank"));

  auto t4 = Clock::now();
  const SymplecticPhi phi = phi_compute(sys, c.syz);
  const T2Result t2 = t2_compute(sys, c.syz, phi);
  c.st.phi = phi.phi;
  c.st.t2 = t2.t2;
  c.st.t2_scale = t2.scale;
  double c4 = since(t4);

  const QuadraticSyzygyReport q = quadratic_syzygy_check(sys, c.syz, t2.t2);
  out.records.push_back(rec("syzygy.quadratic_kernel", "c03", q.kernel_dim == 10 && q.kernel_is_flattening,
                            json{{"kernel_dim", q.kernel_dim}, {"equals_flattening", q.kernel_is_flattening}},
                            json{{"kernel_dim", 10}, {"equals_flattening", true}}, "kernel"));
  out.records.push_back(rec("syzygy.koszul_image", "c03", q.image_dim == 35, q.image_dim, 35, "rank"));
  out.seconds["c03"] = since(t0) - c4;

  t4 = Clock::now();
  out.records.push_back(rec("syzygy.phi", "c04",
                            phi.kernel_dim == 1 && phi.phi.is_skew() && phi.rank == 8,
                            json{{"kernel_dim", phi.kernel_dim}, {"skew", phi.phi.is_skew()}, {"rank", phi.rank}},
                            json{{"kernel_dim", 1}, {"skew", true}, {"rank", 8}}, "kernel"));
  std::size_t isotropic = 0;
  for (const auto& x : c.st.points) isotropic += phi_isotropic_at(phi, c.syz, x.coords);
  out.records.push_back(rec("syzygy.phi_isotropy", "c04",
                            isotropic == c.st.points.size() && isotropic >= 10, isotropic,
                            json{{"all_of", c.st.points.size()}, {"min", 10}}, "evaluation"));
  const FqMatrix fl = t2.t2.flattening();
  const std::size_t fr = rank(fl);
  const std::size_t fk = kernel(fl).dim();
  out.records.push_back(rec("syzygy.t2_flattening", "c04", fr == 10 && fk == 35,
                            json{{"rank", fr}, {"kernel", fk}}, json{{"rank", 10}, {"kernel", 35}}, "rank"));
  Rng arng = stage_rng(c, "syzygy/alternating");
  bool alternating = !t2.t2.is_zero();
  for (int i = 0; i < 20; ++i) {
    const Vec u = arng.vector(c.f, 10), v = arng.vector(c.f, 10), w = arng.vector(c.f, 10);
    const Elem a = t2.t2.evaluate(u, v, w);
    alternating = alternating && t2.t2.evaluate(v, u, w) == c.f.neg(a) && t2.t2.evaluate(u, w, v) == c.f.neg(a) &&
                  t2.t2.evaluate(u, u, w) == 0;
  }
  out.records.push_back(rec("syzygy.t2_alternating", "c04", alternating, alternating, true, "evaluation"));
  out.seconds["c04"] = c4 + since(t4);

  auto t6 = Clock::now();
  std::size_t fibers_ok = 0, constant_ok = 0;
  std::vector<Subspace> fibers;
  for (const auto& x : c.st.points) {
    const Subspace fib = vertex_fiber(sys, c.syz, x.coords);
    fibers.push_back(fib);
    fibers_ok += fib.dim() == 4 && fib == singular_at(sys, x.coords);
    const Ruling l = ruling_through(sys, x);
    const Subspace k0 = kernel(c.syz.s_at(x.coords));
    constant_ok += kernel(c.syz.s_at(axpy(c.f, 5, l.direction, l.point))) == k0 &&
                   kernel(c.syz.s_at(l.direction)) == k0;
  }
  const std::size_t n = c.st.points.size();
  out.records.push_back(rec("syzygy.vertex_fibers", "c06", n >= 10 && fibers_ok == n && constant_ok == n,
                            json{{"points", n}, {"dim4_singular", fibers_ok}, {"constant_on_ruling", constant_ok}},
                            json{{"points_min", 10}, {"dim4_singular", n}, {"constant_on_ruling", n}},
                            "kernel"));
  Rng xrng = stage_rng(c, "syzygy/x60");
  std::size_t member_ok = 0;
  json gram_ranks = json::array();
  for (const auto& x : c.st.points) {
    const X60Report r = x60_membership(sys, c.syz, x, xrng);
    gram_ranks.push_back(r.gram_rank);
    member_ok += r.ok && r.gram_rank == 9;
  }
  out.records.push_back(rec("syzygy.vertex_member", "c06", n >= 10 && member_ok == n,
                            json{{"ok", member_ok}, {"gram_ranks", gram_ranks}},
                            json{{"ok", n}, {"gram_rank", 9}}, "evaluation"));
  out.seconds["c06"] = since(t6);

  auto t7 = Clock::now();
  std::size_t nonzero = 0, orth6 = 0;
  for (const auto& fib : fibers) {
    const SixPlaneReport r = dv_sixplane_check(t2.t2, fib);
    nonzero += r.nonzero_values;
    orth6 += r.orthogonal_dim == 6;
  }
  out.records.push_back(rec("syzygy.sixplane", "c07", n >= 10 && nonzero == 0 && orth6 == n,
                            json{{"points", n}, {"orthogonal_dim6", orth6}, {"nonzero_values", nonzero}},
                            json{{"orthogonal_dim6", n}, {"nonzero_values", 0}}, "evaluation"));
  out.seconds["c07"] = since(t7);
}

void stage_cover(Ctx& c, StageOutput& out) {
  auto t0 = Clock::now();
  const QuadricSystem& sys = c.sys;
  Rng rng = stage_rng(c, "cover/involution");
  std::size_t checked = 0, square_id = 0, same_image = 0, skipped = 0;
  for (int i = 0; i < 400 && checked < 100; ++i) {
    const Vec p = normalize_projective(c.f, rng.nonzero_vector(c.f, 10));
    try {
      const Vec q = involute(sys, c.syz, p);
      square_id += involute(sys, c.syz, q) == p;
      same_image += f_x(sys, q) == f_x(sys, p);
      ++checked;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::non_generic_point && e.code() != ErrorCode::on_base_locus) throw;
      ++skipped;
    }
  }
  CheckRecord inv = rec("cover.involution", "c05", checked == 100 && square_id == 100 && same_image == 100,
                        json{{"checked", checked}, {"square_identity", square_id}, {"same_image", same_image}},
                        json{{"checked", 100}, {"square_identity", 100}, {"same_image", 100}}, "evaluation");
  if (skipped) inv.note = std::to_string(skipped) + " non-generic draws skipped";
  out.records.push_back(inv);

  Rng lrng = stage_rng(c, "cover/lines");
  std::size_t lines = 0, in_cong = 0, deg4 = 0, bis_checked = 0, bis_ok = 0;
  for (int i = 0; i < 40 && lines < 20; ++i) {
    try {
      const CongruenceCheck r = invariant_line_congruence_check(sys, c.syz, c.st.t2, lrng.nonzero_vector(c.f, 10));
      ++lines;
      in_cong += r.image_in_congruence && r.equals_congruence_line;
      deg4 += r.secancy.degree == 4;
      bis_checked += r.bisecant_checked;
      bis_ok += r.bisecant_ok;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::non_generic_point && e.code() != ErrorCode::on_base_locus) throw;
    }
  }
  out.records.push_back(rec("cover.invariant_lines", "c05",
                            lines == 20 && in_cong == 20 && deg4 == 20 && bis_ok == bis_checked,
                            json{{"lines", lines},
                                 {"in_congruence", in_cong},
                                 {"secancy_degree4", deg4},
                                 {"bisecant_checked", bis_checked},
                                 {"bisecant_ok", bis_ok}},
                            json{{"lines", 20}, {"in_congruence", 20}, {"secancy_degree4", 20}}, "evaluation"));
  out.seconds["c05"] = since(t0);
}

void stage_trivectors(Ctx& c, StageOutput& out) {
  auto t0 = Clock::now();
  const QuadricSystem& sys = c.sys;
  Rng rng = stage_rng(c, "trivectors/t1");
  const T1Run run = compute_t1(*c.model, sys, rng, c.cfg.budgets.retries);
  c.st.t1 = run.t1;
  c.st.t1_scale = run.scale;
  c.st.t1_points = run.points;
  c.st.rulings = run.rulings;
  json kd = json::array();
  bool k_ok = run.k.size() == 10, d_ok = run.delta.size() == 45;
  for (const auto& k : run.k) {
    kd.push_back(k.dim());
    k_ok = k_ok && k.dim() == 6;
  }
  for (const auto& d : run.delta) d_ok = d_ok && d.dim() == 2;
  const bool ok = k_ok && d_ok && run.v35.dim() == 35 && run.n10.dim() == 10 && run.solution_dim == 1 &&
                  run.flattening_rank == 10 && run.flattening_onto_n10;
  CheckRecord alg = rec("trivectors.t1_algorithm", "c08", ok,
                        json{{"k_dims", kd},
                             {"delta_dim2", d_ok},
                             {"v35", run.v35.dim()},
                             {"n10", run.n10.dim()},
                             {"solution_dim", run.solution_dim},
                             {"flattening_rank", run.flattening_rank},
                             {"flattening_onto_n10", run.flattening_onto_n10}},
                        json{{"k_dim", 6},
                             {"delta_dim2", true},
                             {"v35", 35},
                             {"n10", 10},
                             {"solution_dim", 1},
                             {"flattening_rank", 10},
                             {"flattening_onto_n10", true}},
                        "kernel");
  alg.note = "point sets tried: " + std::to_string(run.attempts);
  out.records.push_back(alg);
  Rng srng = stage_rng(c, "trivectors/sixth");
  const XSample sixth = sample_x_points(*c.model, sys, 1, srng);
  std::optional<Ruling> extra;
  if (!sixth.points.empty()) extra = ruling_through(sys, sixth.points.front());
  const T1Verification v = verify_t1(sys, run, extra ? &*extra : nullptr);
  out.records.push_back(rec("trivectors.t1_vanishing", "c08",
                            v.ok && v.delta_in_congruence == 45 && v.k_nonzero_values == 0 && v.k_spaces == 10,
                            json{{"delta_in_congruence", v.delta_in_congruence},
                                 {"k_spaces", v.k_spaces},
                                 {"k_nonzero_values", v.k_nonzero_values},
                                 {"extra_k_spaces", v.extra_k_spaces},
                                 {"extra_nonzero_values", v.extra_nonzero_values}},
                            json{{"delta_in_congruence", 45},
                                 {"k_spaces", 10},
                                 {"k_nonzero_values", 0},
                                 {"extra_nonzero_values", 0}},
                            "evaluation"));
  out.seconds["c08"] = since(t0);

  auto t1 = Clock::now();
  const Subspace& pen = c.st.pencil;
  std::size_t members = 0, rank8 = 0;
  if (pen.dim() == 2) {
    for (Elem s = 0; s <= c.f.p(); ++s) {
      const Vec u = s == c.f.p() ? pen.vector(1) : axpy(c.f, s, pen.vector(1), pen.vector(0));
      ++members;
      rank8 += rank(sys.gram_combination(u)) == 8;
    }
  }
  std::size_t sec_degree = 0;
  bool form_nonzero = false, congruence = false;
  if (pen.dim() == 2) {
    const Secancy s = line_secancy(run.t1, pen);
    sec_degree = s.degree;
    form_nonzero = !is_zero(s.quartic);
    congruence = is_congruence_line(run.t1, pen);
  }
  out.records.push_back(rec("trivectors.pencil", "c11",
                            pen.dim() == 2 && rank8 == members && sec_degree == 4 && form_nonzero,
                            json{{"dim", pen.dim()},
                                 {"members", members},
                                 {"rank8", rank8},
                                 {"secancy_degree", sec_degree},
                                 {"form_nonzero", form_nonzero},
                                 {"congruence_line", congruence}},
                            json{{"dim", 2}, {"rank8", members}, {"secancy_degree", 4}, {"form_nonzero", true}},
                            "enumeration"));
  out.seconds["c11"] = since(t1);
}

void stage_orthogonality(Ctx& c, StageOutput& out) {
  auto t0 = Clock::now();
  const bool comp = compose(c.st.t2, c.st.t1).is_zero();
  const Subspace perp = perp_space(c.st.t2);
  const std::size_t inter = orbit_tangent_intersection(c.st.t1, perp);
  out.records.push_back(rec("orthogonality.compose", "c09", comp, comp, true, "evaluation"));
  out.records.push_back(rec("orthogonality.perp_dim", "c09", perp.dim() == 20 && perp.contains(c.st.t1.coeffs()),
                            json{{"dim", perp.dim()}, {"contains_t1", perp.contains(c.st.t1.coeffs())}},
                            json{{"dim", 20}, {"contains_t1", true}}, "kernel"));
  out.records.push_back(rec("orthogonality.orbit_intersection", "c09", inter == 1, inter, 1, "kernel"));
  out.seconds["c09"] = since(t0);
}

void stage_degrees(Ctx& c, StageOutput& out) {
  const unsigned cap = c.cfg.budgets.degree_cap;
  constexpr std::size_t kMaxSlices = 4;
  // One slice of one locus; extra_ok carries the per-slice side checks.
  struct SliceResult {
    ZeroDimDegree hf;
    bool extra_ok = true;
  };
  struct Locus {
    std::string key;
    std::size_t expected;
    std::function<SliceResult(Rng&, std::size_t)> fn;
    std::vector<SliceResult> slices;
  };
  Fit0Report f0;
  std::vector<Locus> loci;
  loci.push_back({"peskine_t2", 15, [&](Rng& r, std::size_t) {
                    const SliceDegree d = peskine_slice_degree(c.st.t2, r, cap);
                    return SliceResult{d.hf, d.interpolation_unique};
                  }, {}});
  loci.push_back({"peskine_t1", 15, [&](Rng& r, std::size_t) {
                    const SliceDegree d = peskine_slice_degree(c.st.t1, r, cap);
                    return SliceResult{d.hf, d.interpolation_unique};
                  }, {}});
  loci.push_back({"fit1", 165, [&](Rng& r, std::size_t) {
                    const SliceReport d = fit1_slice_degree(c.sys, r, cap);
                    return SliceResult{d.hf, d.identity_checked};
                  }, {}});
  loci.push_back({"sing", 225, [&](Rng& r, std::size_t) {
                    const SliceReport d = sing_slice_degree(c.sys, r, cap);
                    return SliceResult{d.hf, d.identity_checked};
                  }, {}});
  // The rank checks are reported from the first fit0 slice.
  loci.push_back({"fit0", 120, [&](Rng& r, std::size_t k) {
                    const auto pk = peskine_sample(c.st.t2, PeskineStrategy::secant, 6, r);
                    Fit0Report d = fit0_sprime_checks(c.syz, pk.points, r, 100, cap);
                    SliceResult res{d.slice.hf, true};
                    if (k == 0) f0 = std::move(d);
                    return res;
                  }, {}});

  for (std::size_t round = 0; round < kMaxSlices; ++round) {
    std::vector<std::pair<std::size_t, std::size_t>> work;  // (locus, slice index)
    for (std::size_t i = 0; i < loci.size(); ++i) {
      std::vector<ZeroDimDegree> hfs;
      for (const auto& s : loci[i].slices) hfs.push_back(s.hf);
      if (round < 2 || !degree_settled(hfs)) work.emplace_back(i, round);
    }
    if (work.empty()) break;
    for (auto [i, k] : work) loci[i].slices.resize(k + 1);
    std::vector<double> secs(work.size());
    std::vector<std::function<void()>> tasks;
    for (std::size_t w = 0; w < work.size(); ++w)
      tasks.push_back([&, w] {
        const auto t0 = Clock::now();
        auto [i, k] = work[w];
        Rng r = stage_rng(c, "degrees/" + loci[i].key + "/" + std::string(1, static_cast<char>('a' + k)));
        loci[i].slices[k] = loci[i].fn(r, k);
        secs[w] = since(t0);
      });
    run_parallel(tasks, thread_count(c.cfg.threads));
    for (std::size_t w = 0; w < work.size(); ++w) out.seconds["c10." + loci[work[w].first].key] += secs[w];
  }

  for (const auto& l : loci) {
    std::vector<ZeroDimDegree> hfs;
    bool extra = true;
    for (const auto& s : l.slices) {
      hfs.push_back(s.hf);
      extra = extra && s.extra_ok;
    }
    json more = json::object();
    if (l.key == "peskine_t2" || l.key == "peskine_t1") more["interpolation_unique"] = extra;
    if (l.key == "fit1" || l.key == "sing") more["identity_checked"] = extra;
    out.records.push_back(degree_rec("degrees." + l.key, hfs, l.expected, extra, more));
  }

  bool pes6 = !f0.peskine_ranks.empty();
  for (std::size_t r : f0.peskine_ranks) pes6 = pes6 && r == 6;
  const Fit0Report& a = f0;
  CheckRecord ranks = rec("degrees.fit0_ranks", "c10",
                          pes6 && a.generic_rank8 == a.generic_points && a.rank7_found,
                          json{{"peskine_ranks", a.peskine_ranks},
                               {"generic_points", a.generic_points},
                               {"generic_rank8", a.generic_rank8},
                               {"rank7_found", a.rank7_found},
                               {"rank7_point", a.rank7_found ? to_json(a.rank7_point) : json(nullptr)}},
                          json{{"peskine_rank", 6}, {"generic_rank8", a.generic_points}, {"rank7_found", true}},
                          "evaluation");
  ranks.note = "rank-7 slices tried: " + std::to_string(a.rank7_slices_tried);
  out.records.push_back(ranks);
}

void stage_kummer(Ctx& c, StageOutput& out) {
  auto t0 = Clock::now();
  Rng rng = stage_rng(c, "kummer");
  std::optional<SixSecantFrame> best;
  std::size_t tried = 0, rejected = 0;
  while (tried < c.cfg.budgets.peskine && !(best && best->z6.size() >= 2)) {
    ++tried;
    const auto pk = peskine_sample(c.st.t2, PeskineStrategy::secant, 1, rng);
    if (pk.points.empty()) continue;
    try {
      SixSecantFrame fr = six_secant_frame(c.sys, c.syz, pk.points.front(), rng);
      if (!best || fr.z6.size() > best->z6.size()) best = std::move(fr);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::non_generic_point && e.code() != ErrorCode::not_on_peskine) throw;
      ++rejected;
    }
  }
  if (!best) {
    for (const char* id : {"kummer.frame", "kummer.weddle", "kummer.quartic"}) {
      CheckRecord r = rec(id, "c12", false, nullptr, nullptr, "sampling");
      r.status = Status::skipped;
      r.note = "no rational Peskine point with a valid frame within the budget";
      out.records.push_back(r);
    }
    return;
  }
  const SixSecantFrame& fr = *best;
  CheckRecord frame = rec("kummer.frame", "c12",
                          fr.pq.dim() == 4 && fr.z6_closure == 6 && fr.restriction_kernel.dim() == 6 &&
                              fr.annihilator_ok && fr.image_ok && fr.fiber_degree == 8,
                          json{{"q", to_json(fr.q.coords)},
                               {"pq_dim", fr.pq.dim()},
                               {"z6_closure", fr.z6_closure},
                               {"z6_rational", fr.z6.size()},
                               {"restriction_rank", 10 - fr.restriction_kernel.dim()},
                               {"annihilator_is_e", fr.annihilator_ok},
                               {"image_in_e", fr.image_ok},
                               {"fiber_degree", fr.fiber_degree}},
                          json{{"pq_dim", 4},
                               {"z6_closure", 6},
                               {"restriction_rank", 4},
                               {"annihilator_is_e", true},
                               {"image_in_e", true},
                               {"fiber_degree", 8}},
                          "enumeration");
  frame.note = "Peskine points tried: " + std::to_string(tried) + ", rejected: " + std::to_string(rejected);
  out.records.push_back(frame);
  const WeddleReport w = weddle(fr, rng);
  out.records.push_back(rec("kummer.weddle", "c12", w.nodes_ok,
                            json{{"rational_nodes_checked", w.rational_nodes_checked},
                                 {"closure_degree", w.closure_degree}},
                            json{{"closure_degree", 6}}, "evaluation"));
  const KummerReport k = kummer_quartic(fr, w, rng);
  out.records.push_back(rec("kummer.quartic", "c12", k.ok && k.solution_dim == 1,
                            json{{"solution_dim", k.solution_dim},
                                 {"fit_points", k.fit_points},
                                 {"verified_points", k.verified_points},
                                 {"identity", k.identity_ok},
                                 {"node_at_q", k.node_at_q},
                                 {"bisecant_images", k.bisecant_images},
                                 {"bisecants_singular", k.bisecants_singular},
                                 {"rational_singular", k.rational_singular.size()},
                                 {"singular_closure", k.singular_closure.plateau ? json(k.singular_closure.degree)
                                                                                 : json(nullptr)}},
                            json{{"solution_dim", 1},
                                 {"identity", true},
                                 {"node_at_q", true},
                                 {"bisecants_singular", true},
                                 {"rational_singular_max", 16},
                                 {"singular_closure_max", 16}},
                            "interpolation"));
  out.seconds["c12"] = since(t0);

  auto t1 = Clock::now();
  const CubicSurfaceReport cs = cubic_surface(fr, c.st.t2, rng);
  out.records.push_back(rec("kummer.cubic_surface", "c12", cs.ok && cs.solution_dim == 1,
                            json{{"points", cs.points},
                                 {"solution_dim", cs.solution_dim},
                                 {"q_off_cubic", cs.q_off_cubic},
                                 {"smooth_checked", cs.smooth_checked}},
                            json{{"solution_dim", 1}, {"q_off_cubic", true}}, "interpolation", false));
  out.seconds["kummer.cubic_surface"] = since(t1);

  t1 = Clock::now();
  Rng trng = stage_rng(c, "kummer/tangent");
  const TangentDecomposition td = tangent_decomposition(c.sys, c.syz, c.st.t2, trng, c.cfg.budgets.tangent);
  CheckRecord tr = rec("kummer.tangent_decomposition", "c12", td.ok,
                       json{{"attempts", td.attempts},
                            {"singular_rejected", td.singular_rejected},
                            {"line_in_all", td.line_in_all},
                            {"sum_dim", td.sum_dim},
                            {"on_kummer", td.on_kummer}},
                       json{{"line_in_all", true}, {"sum_dim", 8}, {"on_kummer", {true, true, true, true}}},
                       "enumeration", false);
  if (td.skipped) {
    tr.status = Status::skipped;
    tr.note = td.reason;
  }
  out.records.push_back(tr);
  out.seconds["kummer.tangent"] = since(t1);
}

void stage_chow(Ctx& c, StageOutput& out) {
  using namespace chow;
  using B = PFClass::Basis;
  auto t0 = Clock::now();
  out.records.push_back(rec("chow.ring", "c13", ring_consistent(), ring_consistent(), true, "exact-integer"));
  const SegreReport s = segre_normal_check();
  out.records.push_back(rec("chow.segre", "c13", s.ok,
                            json{{"degree1", {s.segre[B::H], s.segre[B::h]}},
                                 {"degree2", {s.segre[B::hH], s.segre[B::p]}},
                                 {"degree3", s.segre[B::pH]},
                                 {"product_top", s.product_top},
                                 {"cover_degree", s.cover_degree}},
                            json{{"degree1", {s.expected[B::H], s.expected[B::h]}},
                                 {"degree2", {s.expected[B::hH], s.expected[B::p]}},
                                 {"degree3", s.expected[B::pH]},
                                 {"product_top", 510},
                                 {"cover_degree", 2}},
                            "exact-integer"));
  const DegreeXReport d = degree_x();
  json dv{{"h3", d.h3}, {"hH2", d.hH2}};
  bool cross = true;
  if (!c.st.hilbert.empty()) {
    const auto diffs = third_differences(c.st.hilbert);
    dv["hilbert_third_differences"] = diffs;
    for (auto x : diffs) cross = cross && x == d.h3;
  }
  out.records.push_back(rec("chow.degree_x", "c13", d.ok && cross, dv, json{{"h3", 21}, {"hH2", 30}},
                            "exact-integer"));
  const ChernTReport ct = chern_t_check();
  out.records.push_back(rec("chow.chern_t", "c13", ct.ok, ct.c, std::vector<int>{1, 5, 12, 12}, "exact-integer"));
  const StabilityReport st = stability_check();
  json cases = json::array();
  for (const auto& k : st.cases) cases.push_back({{"alpha", k.alpha}, {"beta_min", k.beta_min}});
  CheckRecord sr = rec("chow.stability", "c13", st.ok,
                       json{{"q_c1", st.q_c1},
                            {"c1_4", st.c1_4},
                            {"three_quarters_c1_4", st.three_quarters},
                            {"L_c1_3", st.l_c1_3},
                            {"delta_c1_3", st.delta_c1_3},
                            {"alpha_bound", std::to_string(st.bound_num) + "/" + std::to_string(st.bound_den)},
                            {"cases", cases},
                            {"verdict", st.verdict}},
                       json{{"q_c1", 22},
                            {"c1_4", 1452},
                            {"three_quarters_c1_4", 1089},
                            {"L_c1_3", 3960},
                            {"delta_c1_3", 924},
                            {"cases", {{{"alpha", 1}, {"beta_min", 4}}, {{"alpha", 2}, {"beta_min", 8}}}},
                            {"verdict", "no destabilizing movable class"}},
                       "exact-integer");
  sr.note = "alpha <= 1089/495 = 2.2, so alpha is 1 or 2";
  out.records.push_back(sr);
  out.seconds["c13"] = since(t0);
}

void stage_plucker(Ctx& c, StageOutput& out) {
  auto t0 = Clock::now();
  Rng rng = stage_rng(c, "plucker");
  const XSample s = sample_x_points(*c.model, c.sys, 40, rng);
  std::vector<Ruling> rulings;
  for (const auto& p : s.points) rulings.push_back(ruling_through(c.sys, p));
  const PluckerReport r = plucker_model(c.f, rulings, rng);
  std::vector<std::size_t> expected_h;
  for (std::size_t m = 1; m <= 4; ++m) expected_h.push_back(2 + 15 * m * m);
  out.records.push_back(rec("plucker.model", "c14",
                            r.span_dim == 17 && r.annihilator_dim == 28 && r.hilbert == expected_h,
                            json{{"rulings", r.rulings},
                                 {"span_dim", r.span_dim},
                                 {"annihilator_dim", r.annihilator_dim},
                                 {"pfaffian_span", r.pfaffian_span},
                                 {"hilbert", r.hilbert}},
                            json{{"span_dim", 17}, {"annihilator_dim", 28}, {"hilbert", expected_h}},
                            "macaulay-rank"));
  out.seconds["c14"] = since(t0);
}

void stage_probes(Ctx& c, StageOutput& out) {
  Rng rng = stage_rng(c, "probes");
  const auto pk = peskine_sample(c.st.t1, PeskineStrategy::secant, 6, rng);
  const ProbeReport r = conjecture_probes(c.sys, pk.points, c.st.points);
  bool in_fit1 = !r.skipped;
  for (std::size_t g : r.t1_peskine_gram_ranks) in_fit1 = in_fit1 && g <= 8;
  CheckRecord a = rec("probes.t1_peskine_in_fit1", "probe", in_fit1, r.t1_peskine_gram_ranks,
                      json{{"gram_rank_max", 8}}, "evaluation", false);
  if (r.skipped) {
    a.status = Status::skipped;
    a.note = "no rational Peskine point of t1 found";
  }
  out.records.push_back(a);
  bool identically = r.chords > 0;
  for (std::size_t o : r.chord_endpoint_orders) identically = identically && o > 10;
  CheckRecord b = rec("probes.chord_ramification", "probe", identically,
                      json{{"chords", r.chords}, {"endpoint_orders", r.chord_endpoint_orders}},
                      json{{"endpoint_order", "identically zero (reported as 11)"}}, "interpolation", false);
  b.note = "the quadric map contracts chords of X, so the Jacobian determinant vanishes along them";
  out.records.push_back(b);
  out.records.push_back(rec("probes.degree_arithmetic", "probe", r.degree_arithmetic, "150 + 15 + 60", 225,
                            "exact-integer", false));
}

}  // namespace k3g16::pipeline
