#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "k3g16/mukai.hpp"
#include "k3g16/syzygy.hpp"
#include "k3g16/t1.hpp"
#include "k3g16/xquad.hpp"

namespace k3g16::pipeline {

using json = nlohmann::json;

inline constexpr int kStateVersion = 1;
inline constexpr const char* kFormat = "k3g16-certificate";
inline constexpr const char* kStateFormat = "k3g16-state";

enum class Stage { quadrics, syzygy, cover, trivectors, orthogonality, degrees, kummer, chow, plucker, probes };

const std::vector<Stage>& all_stages();  // dependency order
const char* stage_name(Stage s);
Stage parse_stage(const std::string& name);  // throws Error(invalid_argument)
std::vector<Stage> stage_dependencies(Stage s);
// Requested stages plus everything they need that is not already done, in dependency order.
std::vector<Stage> resolve(const std::set<Stage>& requested, const std::set<Stage>& done);

struct Budgets {
  std::size_t planes = 12;          // plane draws for V₁₀
  std::size_t points = 20;          // sampled points of X
  std::size_t retries = 8;          // seed redraws and t₁ point sets
  unsigned degree_cap = 40;         // Hilbert plateau cap for the slice degrees
  std::size_t peskine = 60;         // Peskine points tried for the six-secant frame
  std::size_t tangent = 400;        // candidates for the tangent decomposition
};

struct RunConfig {
  std::uint64_t p = 101;
  std::uint64_t rng_seed = 11;
  std::set<Stage> stages{all_stages().begin(), all_stages().end()};
  Budgets budgets;
  std::string out;
  unsigned threads = 0;  // 0: K3G16_THREADS or hardware concurrency
};

enum class Status { pass, fail, skipped, inconclusive };
const char* status_name(Status s);

struct CheckRecord {
  std::string id;
  std::string anchor;      // acceptance criterion, e.g. "c03"
  Status status = Status::fail;
  json value;
  json expected;
  std::string provenance;  // how the value was obtained
  bool mandatory = true;
  std::string note;
};

// Everything later stages need, as produced by earlier ones.
struct State {
  std::uint64_t p = 101;
  std::uint64_t rng_seed = 11;
  std::set<Stage> done;
  std::vector<CheckRecord> records;
  std::optional<Seed> seed;
  std::vector<std::string> seed_log;  // failing check of each rejected seed draw
  Subspace v10;                       // ambient 55
  std::size_t planes_needed = 0;
  std::vector<std::size_t> growth;
  Subspace pencil;                    // V₁₀ coordinates
  std::vector<XPoint> points;
  std::vector<std::size_t> hilbert;   // m = 2..6
  Subspace v8;                        // ambient 100
  FqMatrix phi;
  Trivector t2;
  Elem t2_scale = 1;
  Trivector t1;
  Elem t1_scale = 1;
  std::vector<XPoint> t1_points;
  std::vector<Ruling> rulings;        // through the t₁ points
};

struct RunResult {
  json certificate;
  State state;
  std::map<std::string, double> seconds;  // per timed criterion or stage
  bool mandatory_pass = false;
};

RunResult run(const RunConfig& config);
// Continues from a loaded state with the requested stages.
RunResult resume(const RunConfig& config, State state);

json state_to_json(const State& s);
State state_from_json(const json& j, std::optional<std::uint64_t> expected_p = std::nullopt);
void save_state(const State& s, const std::string& path);
State load_state(const std::string& path, std::optional<std::uint64_t> expected_p = std::nullopt);

json certificate(const RunConfig& config, const State& s);
std::string dump(const json& j);  // canonical text: sorted keys, 1-space indent, trailing newline

struct VerifyItem {
  std::string id;
  bool ok = false;
  std::string detail;
};
// Re-checks the certificate from its serialized artifacts alone.
std::vector<VerifyItem> verify(const json& cert);
std::string report(const json& cert);

unsigned thread_count(unsigned requested = 0);

}  // namespace k3g16::pipeline
