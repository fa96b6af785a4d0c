#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <sstream>
#include <thread>

#include "k3g16/errors.hpp"
#include "k3g16/rng.hpp"
#include "serialize.hpp"
#include "stages.hpp"

namespace k3g16::pipeline {

namespace {

using Clock = std::chrono::steady_clock;
using StageFn = void (*)(Ctx&, StageOutput&);

StageFn stage_fn(Stage s) {
  switch (s) {
    case Stage::quadrics: return stage_quadrics;
    case Stage::syzygy: return stage_syzygy;
    case Stage::cover: return stage_cover;
    case Stage::trivectors: return stage_trivectors;
    case Stage::orthogonality: return stage_orthogonality;
    case Stage::degrees: return stage_degrees;
    case Stage::kummer: return stage_kummer;
    case Stage::chow: return stage_chow;
    case Stage::plucker: return stage_plucker;
    case Stage::probes: return stage_probes;
  }
  return nullptr;
}

bool has_prefix(const std::string& id, const std::string& stage) {
  return id.size() > stage.size() && id.compare(0, stage.size(), stage) == 0 && id[stage.size()] == '.';
}

CheckRecord stage_error(Stage s, const std::string& what) {
  CheckRecord r;
  r.id = std::string(stage_name(s)) + ".error";
  r.anchor = "stage";
  r.status = Status::fail;
  r.value = nullptr;
  r.expected = nullptr;
  r.provenance = "exception";
  r.mandatory = s != Stage::probes;
  r.note = what;
  return r;
}

CheckRecord blocked(Stage s, Stage dep) {
  CheckRecord r = stage_error(s, std::string("requires stage ") + stage_name(dep) + ", which failed");
  r.id = std::string(stage_name(s)) + ".dependencies";
  r.status = Status::skipped;
  r.provenance = "scheduler";
  return r;
}

// Hard dependencies plus chow after quadrics when both run, so its Hilbert cross-check is deterministic.
std::vector<Stage> scheduling_deps(Stage s, const std::set<Stage>& plan) {
  std::vector<Stage> d = stage_dependencies(s);
  if (s == Stage::chow && plan.count(Stage::quadrics)) d.push_back(Stage::quadrics);
  return d;
}

bool mandatory_ok(const std::vector<CheckRecord>& records) {
  bool any = false;
  for (const auto& r : records) {
    if (!r.mandatory) continue;
    any = true;
    if (r.status != Status::pass) return false;
  }
  return any;
}

RunResult execute(const RunConfig& config, State st) {
  RunResult result;
  Ctx ctx(config, st);
  ctx.hydrate();
  const std::vector<Stage> plan = resolve(config.stages, st.done);
  const std::set<Stage> plan_set(plan.begin(), plan.end());
  std::map<Stage, int> level;
  int max_level = 0;
  for (Stage s : plan) {
    int l = 0;
    for (Stage d : scheduling_deps(s, plan_set))
      if (level.count(d)) l = std::max(l, level[d] + 1);
    level[s] = l;
    max_level = std::max(max_level, l);
  }
  std::set<Stage> failed;
  const unsigned threads = thread_count(config.threads);
  for (int l = 0; l <= max_level; ++l) {
    std::vector<Stage> batch;
    for (Stage s : plan) {
      if (level[s] != l) continue;
      bool runnable = true;
      for (Stage d : stage_dependencies(s)) {
        if (st.done.count(d)) continue;
        runnable = false;
        std::erase_if(st.records, [&](const CheckRecord& r) { return has_prefix(r.id, stage_name(s)); });
        st.records.push_back(blocked(s, d));
        break;
      }
      if (runnable) batch.push_back(s);
      else failed.insert(s);
    }
    std::vector<StageOutput> outs(batch.size());
    std::vector<std::string> errors(batch.size());
    std::vector<double> secs(batch.size());
    std::vector<std::function<void()>> tasks;
    for (std::size_t i = 0; i < batch.size(); ++i)
      tasks.push_back([&, i] {
        const auto t0 = Clock::now();
        try {
          stage_fn(batch[i])(ctx, outs[i]);
        } catch (const StageAbort& e) {
          errors[i] = std::string("aborted: ") + e.what();
        } catch (const std::exception& e) {
          errors[i] = e.what();
          outs[i].records.push_back(stage_error(batch[i], e.what()));
        }
        secs[i] = std::chrono::duration<double>(Clock::now() - t0).count();
      });
    run_parallel(tasks, threads);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const Stage s = batch[i];
      std::erase_if(st.records, [&](const CheckRecord& r) { return has_prefix(r.id, stage_name(s)); });
      for (auto& r : outs[i].records) st.records.push_back(std::move(r));
      for (const auto& [k, v] : outs[i].seconds) result.seconds[k] += v;
      result.seconds[std::string("stage.") + stage_name(s)] = secs[i];
      if (errors[i].empty()) st.done.insert(s);
      else {
        st.done.erase(s);
        failed.insert(s);
      }
    }
  }
  std::stable_sort(st.records.begin(), st.records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
  result.mandatory_pass = mandatory_ok(st.records);
  result.certificate = certificate(config, st);
  result.state = std::move(st);
  return result;
}

json budgets_json(const Budgets& b) {
  return json{{"planes", b.planes},   {"points", b.points},   {"retries", b.retries},
              {"degree_cap", b.degree_cap}, {"peskine", b.peskine}, {"tangent", b.tangent}};
}

std::string short_json(const json& j, std::size_t width) {
  std::string s = j.is_string() ? j.get<std::string>() : j.dump();
  if (s.size() > width) s = s.substr(0, width - 3) + "...";
  return s;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::inconclusive: return "inconclusive";
  }
  return "fail";
}

const std::vector<Stage>& all_stages() {
  static const std::vector<Stage> v{Stage::quadrics, Stage::syzygy,  Stage::cover,  Stage::trivectors,
                                    Stage::orthogonality, Stage::degrees, Stage::kummer, Stage::chow,
                                    Stage::plucker, Stage::probes};
  return v;
}

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::quadrics: return "quadrics";
    case Stage::syzygy: return "syzygy";
    case Stage::cover: return "cover";
    case Stage::trivectors: return "trivectors";
    case Stage::orthogonality: return "orthogonality";
    case Stage::degrees: return "degrees";
    case Stage::kummer: return "kummer";
    case Stage::chow: return "chow";
    case Stage::plucker: return "plucker";
    case Stage::probes: return "probes";
  }
  return "?";
}

Stage parse_stage(const std::string& name) {
  for (Stage s : all_stages())
    if (name == stage_name(s)) return s;
  fail(ErrorCode::invalid_argument, "unknown stage '" + name + "'");
}

std::vector<Stage> stage_dependencies(Stage s) {
  switch (s) {
    case Stage::quadrics:
    case Stage::chow: return {};
    case Stage::syzygy:
    case Stage::trivectors:
    case Stage::plucker: return {Stage::quadrics};
    case Stage::cover:
    case Stage::kummer: return {Stage::quadrics, Stage::syzygy};
    case Stage::orthogonality: return {Stage::syzygy, Stage::trivectors};
    case Stage::degrees:
    case Stage::probes: return {Stage::quadrics, Stage::syzygy, Stage::trivectors};
  }
  return {};
}

std::vector<Stage> resolve(const std::set<Stage>& requested, const std::set<Stage>& done) {
  std::set<Stage> need(requested);
  bool grew = true;
  while (grew) {
    grew = false;
    for (Stage s : std::set<Stage>(need))
      for (Stage d : stage_dependencies(s))
        if (!done.count(d) && need.insert(d).second) grew = true;
  }
  std::vector<Stage> out;
  for (Stage s : all_stages())
    if (need.count(s)) out.push_back(s);
  return out;
}

unsigned thread_count(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("K3G16_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    require(end != env && *end == '\0' && v > 0 && v <= 1024, ErrorCode::invalid_argument,
            std::string("K3G16_THREADS must be a positive integer, got '") + env + "'");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void run_parallel(const std::vector<std::function<void()>>& tasks, unsigned threads) {
  const std::size_t n = std::min<std::size_t>(threads, tasks.size());
  if (n <= 1) {
    for (const auto& t : tasks) t();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(tasks.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

RunResult run(const RunConfig& config) {
  State st;
  st.p = config.p;
  st.rng_seed = config.rng_seed;
  return execute(config, std::move(st));
}

RunResult resume(const RunConfig& config, State state) {
  require(state.p == config.p, ErrorCode::state_mismatch,
          "state prime " + std::to_string(state.p) + " does not match " + std::to_string(config.p));
  require(state.rng_seed == config.rng_seed, ErrorCode::state_mismatch,
          "state seed " + std::to_string(state.rng_seed) + " does not match " + std::to_string(config.rng_seed));
  return execute(config, std::move(state));
}

json certificate(const RunConfig& config, const State& s) {
  json cert;
  cert["format"] = kFormat;
  cert["version"] = kStateVersion;
  cert["config"] = json{{"p", config.p}, {"rng_seed", config.rng_seed}, {"budgets", budgets_json(config.budgets)}};
  cert["seed"] = s.seed ? to_json(*s.seed) : json(nullptr);
  std::vector<CheckRecord> records = s.records;
  std::stable_sort(records.begin(), records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
  json checks = json::array();
  std::map<std::string, int> counts{{"pass", 0}, {"fail", 0}, {"skipped", 0}, {"inconclusive", 0}};
  for (const auto& r : records) {
    checks.push_back(to_json(r));
    ++counts[status_name(r.status)];
  }
  cert["checks"] = checks;
  json art = json::object();
  if (s.done.count(Stage::quadrics)) {
    art["v10"] = to_json(s.v10);
    art["pencil"] = to_json(s.pencil);
    json pts = json::array();
    for (const auto& x : s.points) pts.push_back(to_json(x));
    art["points"] = pts;
  }
  if (s.done.count(Stage::syzygy)) {
    art["v8"] = to_json(s.v8);
    art["phi"] = to_json(s.phi);
    art["t2"] = to_json(s.t2);
  }
  if (s.done.count(Stage::trivectors)) {
    art["t1"] = to_json(s.t1);
    json rul = json::array();
    for (const auto& r : s.rulings) rul.push_back(to_json(r));
    art["rulings"] = rul;
  }
  cert["artifacts"] = art;
  json done = json::array();
  for (Stage st : all_stages())
    if (s.done.count(st)) done.push_back(stage_name(st));
  cert["summary"] = json{{"mandatory_pass", mandatory_ok(records)}, {"counts", counts}, {"stages_done", done}};
  return cert;
}

std::vector<VerifyItem> verify(const json& cert) {
  std::vector<VerifyItem> items;
  auto add = [&](std::string id, bool ok, std::string detail = {}) {
    items.push_back({std::move(id), ok, std::move(detail)});
  };
  try {
    require(cert.is_object() && cert.value("format", "") == kFormat, ErrorCode::corrupt_state,
            "not a certificate");
    require(cert.at("version").get<int>() == kStateVersion, ErrorCode::state_mismatch,
            "certificate version does not match");
    const Field f(cert.at("config").at("p").get<std::uint64_t>());
    const json& art = cert.at("artifacts");
    Rng rng(cert.at("config").at("rng_seed").get<std::uint64_t>(), "verify");

    if (!cert.at("seed").is_null()) {
      const Seed seed = seed_from(f, cert.at("seed"));
      const SeedReport r = validate_seed(seed);
      add("seed.generic", r.ok, r.failed_check);
    }

    std::optional<QuadricSystem> sys;
    if (art.contains("v10")) {
      sys.emplace(subspace_from(f, art.at("v10")));
      add("v10.dim", sys->dim() == 10, std::to_string(sys->dim()));
      std::size_t on = 0, n = 0;
      for (const auto& x : art.at("points")) {
        ++n;
        on += sys->vanishes_at(xpoint_from(f, x).coords);
      }
      add("v10.points_on_x", n > 0 && on == n, std::to_string(on) + "/" + std::to_string(n));
      const Subspace pen = subspace_from(f, art.at("pencil"));
      std::size_t rank8 = 0;
      for (Elem t = 0; t <= f.p() && pen.dim() == 2; ++t) {
        const Vec u = t == f.p() ? pen.vector(1) : axpy(f, t, pen.vector(1), pen.vector(0));
        rank8 += rank(sys->gram_combination(u)) == 8;
      }
      add("pencil.rank8", pen.dim() == 2 && rank8 == f.p() + 1, std::to_string(rank8));
    }
    if (art.contains("v8") && sys) {
      const SyzygySpace syz(subspace_from(f, art.at("v8")));
      bool zero = syz.dim() == 8;
      for (int i = 0; i < 30 && zero; ++i) {
        const Vec x = rng.vector(f, 10);
        zero = is_zero(syz.s_at(x).apply_left(sys->values(x)));
      }
      add("v8.relations", zero, std::to_string(syz.dim()) + " syzygies");
      const FqMatrix phi = matrix_from(f, art.at("phi"));
      add("phi.skew_rank8", phi.rows() == 8 && phi.is_skew() && rank(phi) == 8);
    }
    std::optional<Trivector> t1, t2;
    if (art.contains("t2")) {
      t2 = trivector_from(f, art.at("t2"));
      add("t2.flattening_rank", rank(t2->flattening()) == 10);
    }
    if (art.contains("t1")) {
      t1 = trivector_from(f, art.at("t1"));
      add("t1.flattening_rank", rank(t1->flattening()) == 10);
      if (sys) {
        std::size_t on = 0, n = 0;
        for (const auto& r : art.at("rulings")) {
          const Ruling l = ruling_from(f, r);
          ++n;
          on += sys->vanishes_at(l.point) && sys->vanishes_at(l.direction) &&
                sys->vanishes_at(axpy(f, 1, l.point, l.direction));
        }
        add("t1.rulings_in_x", n > 0 && on == n, std::to_string(on) + "/" + std::to_string(n));
      }
    }
    if (t1 && t2) add("orthogonality", compose(*t2, *t1).is_zero());

    std::vector<CheckRecord> records;
    for (const auto& r : cert.at("checks")) records.push_back(record_from(r));
    bool sorted = std::is_sorted(records.begin(), records.end(),
                                 [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < records.size(); ++i) sorted = sorted && records[i - 1].id != records[i].id;
    add("checks.sorted_unique", sorted);
    const bool claimed = cert.at("summary").at("mandatory_pass").get<bool>();
    add("summary.mandatory_pass", claimed == mandatory_ok(records),
        std::string("claimed ") + (claimed ? "true" : "false"));
  } catch (const Error& e) {
    add("certificate.readable", false, e.what());
  } catch (const json::exception& e) {
    add("certificate.readable", false, e.what());
  }
  return items;
}

std::string report(const json& cert) {
  std::ostringstream os;
  const json& cfg = cert.at("config");
  os << "p = " << cfg.at("p") << ", seed = " << cfg.at("rng_seed") << "\n\n";
  os << std::left << std::setw(36) << "check" << std::setw(6) << "crit" << std::setw(14) << "status"
     << "value\n";
  for (const auto& r : cert.at("checks")) {
    std::string status = r.at("status").get<std::string>();
    if (!r.at("mandatory").get<bool>()) status += "*";
    os << std::setw(36) << r.at("id").get<std::string>() << std::setw(6) << r.at("anchor").get<std::string>()
       << std::setw(14) << status << short_json(r.at("value"), 70) << "\n";
    if (r.contains("note")) os << std::setw(56) << "" << "note: " << r.at("note").get<std::string>() << "\n";
  }
  const json& sum = cert.at("summary");
  os << "\n* not mandatory\n";
  os << "counts: " << sum.at("counts").dump() << "\n";
  os << "mandatory checks: " << (sum.at("mandatory_pass").get<bool>() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace k3g16::pipeline
