#include <cstdio>
#include <fstream>

#include "doctest.h"

#include "fixture.hpp"
#include "k3g16/errors.hpp"
#include "pipeline.hpp"
#include "serialize.hpp"

using namespace k3g16;
using namespace k3g16::pipeline;

namespace {

State sample_state() {
  const auto& s = testing::stages();
  State st;
  st.p = 101;
  st.rng_seed = 11;
  st.done = {Stage::quadrics, Stage::syzygy, Stage::chow};
  st.seed = s.seed;
  st.seed_log = s.seed.retries;
  st.v10 = s.sys().space();
  st.planes_needed = s.v10.planes_needed;
  st.growth = s.v10.growth;
  st.pencil = pencil(s.sys(), s.v10.planes);
  st.points = s.points;
  st.hilbert = {45, 128, 280, 522, 875};
  st.v8 = s.syz.space();
  st.phi = s.phi.phi;
  st.t2 = s.t2;
  CheckRecord r;
  r.id = "chow.ring";
  r.anchor = "c13";
  r.status = Status::pass;
  r.value = true;
  r.expected = true;
  r.provenance = "exact-integer";
  st.records.push_back(r);
  r.id = "probes.x";
  r.status = Status::inconclusive;
  r.mandatory = false;
  r.note = "n";
  st.records.push_back(r);
  return st;
}

ErrorCode code_of(const json& j, std::optional<std::uint64_t> p = std::nullopt) {
  try {
    state_from_json(j, p);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

}  // namespace

TEST_CASE("state round trip") {
  const State st = sample_state();
  const json j = state_to_json(st);
  const State back = state_from_json(j, 101);
  CHECK(state_to_json(back) == j);
  CHECK(back.v10 == st.v10);
  CHECK(back.t2 == st.t2);
  CHECK(back.points.size() == st.points.size());
  CHECK(back.records.size() == 2);
  CHECK(back.records[1].status == Status::inconclusive);
  CHECK_FALSE(back.records[1].mandatory);

  const std::string path = "test_state_roundtrip.json";
  save_state(st, path);
  CHECK(state_to_json(load_state(path, 101)) == j);
  std::remove(path.c_str());
}

TEST_CASE("state mismatches are refused") {
  const json j = state_to_json(sample_state());
  CHECK(code_of(j, 103) == ErrorCode::state_mismatch);
  json v = j;
  v["version"] = kStateVersion + 1;
  CHECK(code_of(v) == ErrorCode::state_mismatch);
}

TEST_CASE("corrupt states give structured errors") {
  const json j = state_to_json(sample_state());
  json tampered = j;
  tampered["payload"]["rng_seed"] = 12;
  CHECK(code_of(tampered) == ErrorCode::corrupt_state);

  json missing = j;
  missing.erase("checksum");
  CHECK(code_of(missing) == ErrorCode::corrupt_state);

  CHECK(code_of(json::array()) == ErrorCode::corrupt_state);
  json wrong_format = j;
  wrong_format["format"] = "something-else";
  CHECK(code_of(wrong_format) == ErrorCode::corrupt_state);

  // Valid checksum over invalid content.
  json unreduced = j["payload"];
  unreduced["v10"]["basis"][0][0] = 101;
  CHECK(code_of(seal_state(unreduced)) == ErrorCode::corrupt_state);
  json no_v8 = j["payload"];
  no_v8.erase("v8");
  CHECK(code_of(seal_state(no_v8)) == ErrorCode::corrupt_state);
  json bad_stage = j["payload"];
  bad_stage["done"].push_back("nonsense");
  CHECK(code_of(seal_state(bad_stage)) == ErrorCode::corrupt_state);
  json bad_trivector = j["payload"];
  bad_trivector["t2"]["coeffs"].erase(0);
  CHECK(code_of(seal_state(bad_trivector)) == ErrorCode::corrupt_state);

  const std::string path = "test_state_truncated.json";
  {
    const std::string text = dump(j);
    std::ofstream(path) << text.substr(0, text.size() / 2);
  }
  try {
    load_state(path);
    FAIL("truncated state loaded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::corrupt_state);
  }
  std::remove(path.c_str());
}
