// Runs the whole pipeline and prints one line per acceptance criterion.
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pipeline.hpp"
#include "serialize.hpp"

using namespace k3g16::pipeline;

namespace {

struct Criterion {
  std::string id;
  std::string title;
  // Timing keys and their limits in seconds.
  std::vector<std::pair<std::string, double>> limits;
};

const std::vector<Criterion> kCriteria{
    {"c01", "ten quadrics through X from plane data", {{"c01", 30}}},
    {"c02", "Hilbert function and degree 21 of X", {{"c02", 300}}},
    {"c03", "linear syzygies, cubic ideal, quadratic relations", {{"c03", 60}}},
    {"c04", "symplectic form and the trivector t2", {{"c04", 120}}},
    {"c05", "covering involution and invariant lines", {{"c05", 120}}},
    {"c06", "vertex fibers of the rank-9 quadrics", {{"c06", 120}}},
    {"c07", "six-dimensional orthogonal spaces", {{"c07", 60}}},
    {"c08", "t1 from five rulings", {{"c08", 300}}},
    {"c09", "t1 and t2 are orthogonal", {{"c09", 120}}},
    {"c10",
     "degrees 15, 15, 165, 225, 120 on slices",
     {{"c10.peskine_t2", 900}, {"c10.peskine_t1", 900}, {"c10.fit1", 900}, {"c10.sing", 900}, {"c10.fit0", 900}}},
    {"c11", "pencil of rank-8 quadrics", {{"c11", 60}}},
    {"c12", "six-secant frame, Weddle and Kummer quartics", {{"c12", 600}}},
    {"c13", "intersection numbers and stability", {{"c13", 1}}},
    {"c14", "Plucker model of the rulings", {{"c14", 600}}},
};

struct Verdict {
  bool ok = false;
  std::string detail;
};

Verdict judge(const Criterion& c, const State& st, const std::map<std::string, double>& secs) {
  Verdict v{true, {}};
  std::size_t n = 0;
  for (const auto& r : st.records) {
    if (r.anchor != c.id || !r.mandatory) continue;
    ++n;
    if (r.status != Status::pass) {
      v.ok = false;
      v.detail += r.id + "=" + status_name(r.status) + " ";
    }
  }
  if (n == 0) {
    v.ok = false;
    v.detail += "no checks recorded ";
  }
  std::ostringstream t;
  t << std::fixed << std::setprecision(2);
  for (const auto& [key, limit] : c.limits) {
    const auto it = secs.find(key);
    const double s = it == secs.end() ? 0.0 : it->second;
    t << key << " " << s << "s ";
    if (it == secs.end() || s > limit) {
      v.ok = false;
      v.detail += key + (it == secs.end() ? " not timed " : " over " + std::to_string(limit) + "s ");
    }
  }
  v.detail += "(" + t.str().substr(0, t.str().size() - 1) + ")";
  return v;
}

bool kummer_skipped(const State& st) {
  for (const auto& r : st.records)
    if (r.anchor == "c12" && r.mandatory && r.status == Status::skipped) return true;
  return false;
}

const std::vector<std::string> kInvariantIds{
    "quadrics.v10_dim", "quadrics.hilbert",       "quadrics.degree",      "syzygy.v8_dim",
    "syzygy.cubic_ideal", "syzygy.quadratic_kernel", "syzygy.koszul_image", "syzygy.phi",
    "syzygy.t2_flattening", "syzygy.t2_alternating", "trivectors.t1_algorithm", "orthogonality.compose",
    "orthogonality.perp_dim", "orthogonality.orbit_intersection", "chow.segre", "chow.degree_x",
    "chow.stability",
};

const CheckRecord* find(const State& st, const std::string& id) {
  for (const auto& r : st.records)
    if (r.id == id) return &r;
  return nullptr;
}

void line(const std::string& id, bool ok, const std::string& title, const std::string& detail) {
  std::cout << id << " " << (ok ? "PASS" : "FAIL") << "  " << title << "  " << detail << std::endl;
}

}  // namespace

int main() {
  RunConfig cfg;
  cfg.p = 101;
  cfg.rng_seed = 11;
  cfg.threads = thread_count();
  std::cerr << "full run, seed 11, " << cfg.threads << " thread(s)" << std::endl;
  RunResult a = run(cfg);

  // A skipped frame search is retried once with another seed.
  State kummer_state = a.state;
  std::map<std::string, double> kummer_secs = a.seconds;
  std::string kummer_note;
  if (kummer_skipped(a.state)) {
    RunConfig retry = cfg;
    retry.rng_seed = cfg.rng_seed + 100;
    retry.stages = {Stage::kummer};
    std::cerr << "kummer skipped, retrying with seed " << retry.rng_seed << std::endl;
    RunResult b = run(retry);
    kummer_state = b.state;
    kummer_secs = b.seconds;
    kummer_note = "retried with seed " + std::to_string(retry.rng_seed) + " ";
  }

  int failures = 0;
  for (const auto& c : kCriteria) {
    const bool is_kummer = c.id == "c12";
    Verdict v = judge(c, is_kummer ? kummer_state : a.state, is_kummer ? kummer_secs : a.seconds);
    if (is_kummer) v.detail = kummer_note + v.detail;
    failures += !v.ok;
    line(c.id, v.ok, c.title, v.detail);
  }

  // c15: identical runs, resume against the monolithic run, and a second seed.
  std::string detail;
  bool ok = true;
  {
    RunConfig again = cfg;
    again.threads = cfg.threads > 1 ? 1 : 2;
    std::cerr << "repeat run with " << again.threads << " thread(s)" << std::endl;
    const RunResult b = run(again);
    const bool same = dump(a.certificate) == dump(b.certificate);
    ok = ok && same;
    detail += std::string("repeat ") + (same ? "identical" : "DIFFERS") + "; ";
  }
  {
    State partial = a.state;
    partial.done.erase(Stage::kummer);
    std::erase_if(partial.records, [](const CheckRecord& r) { return r.id.rfind("kummer.", 0) == 0; });
    const std::string path = "acceptance_state.json";
    save_state(partial, path);
    RunConfig rc = cfg;
    rc.stages = {Stage::kummer};
    const RunResult r = resume(rc, load_state(path, cfg.p));
    std::remove(path.c_str());
    const bool same = dump(a.certificate) == dump(r.certificate);
    ok = ok && same;
    detail += std::string("resume ") + (same ? "identical" : "DIFFERS") + "; ";
  }
  {
    RunConfig other = cfg;
    other.rng_seed = 12;
    other.stages = {Stage::quadrics, Stage::syzygy, Stage::trivectors, Stage::orthogonality, Stage::chow,
                    Stage::kummer};
    std::cerr << "second seed run" << std::endl;
    const RunResult o = run(other);
    std::size_t same = 0;
    std::string differ;
    for (const auto& id : kInvariantIds) {
      const CheckRecord* x = find(a.state, id);
      const CheckRecord* y = find(o.state, id);
      if (!x || !y) {
        differ += id + "(missing) ";
        continue;
      }
      if (x->value == y->value && y->status == Status::pass) ++same;
      else differ += id + " ";
    }
    const bool new_k3 = o.state.seed && a.state.seed && !(o.state.seed->M == a.state.seed->M) &&
                        !(o.state.v10 == a.state.v10);
    const bool all = same == kInvariantIds.size() && new_k3;
    ok = ok && all;
    detail += "seed 12: " + std::to_string(same) + "/" + std::to_string(kInvariantIds.size()) +
              " invariants reproduced, " + (new_k3 ? "different K3" : "SAME normalization data");
    if (!differ.empty()) detail += ", differing: " + differ;
  }
  failures += !ok;
  line("c15", ok, "deterministic, resumable, seed-independent invariants", detail);

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
