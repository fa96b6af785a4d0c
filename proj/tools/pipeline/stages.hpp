#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "k3g16/syzygy.hpp"
#include "pipeline.hpp"

namespace k3g16::pipeline {

// Thrown by a stage after it has recorded its own failing check.
struct StageAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StageOutput {
  std::vector<CheckRecord> records;
  std::map<std::string, double> seconds;
};

// Shared between the stages of one run. Stages of the same level write disjoint members.
struct Ctx {
  Ctx(const RunConfig& config, State& state);
  // Rebuilds the derived objects from a loaded state.
  void hydrate();

  const RunConfig& cfg;
  State& st;
  Field f;
  std::optional<MukaiModel> model;
  QuadricSystem sys;
  SyzygySpace syz;
};

void run_parallel(const std::vector<std::function<void()>>& tasks, unsigned threads);

void stage_quadrics(Ctx& c, StageOutput& out);
void stage_syzygy(Ctx& c, StageOutput& out);
void stage_cover(Ctx& c, StageOutput& out);
void stage_trivectors(Ctx& c, StageOutput& out);
void stage_orthogonality(Ctx& c, StageOutput& out);
void stage_degrees(Ctx& c, StageOutput& out);
void stage_kummer(Ctx& c, StageOutput& out);
void stage_chow(Ctx& c, StageOutput& out);
void stage_plucker(Ctx& c, StageOutput& out);
void stage_probes(Ctx& c, StageOutput& out);

}  // namespace k3g16::pipeline
