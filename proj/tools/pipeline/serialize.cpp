#include <fstream>
#include <sstream>

#include "k3g16/errors.hpp"
#include "k3g16/rng.hpp"
#include "pipeline.hpp"
#include "serialize.hpp"

namespace k3g16::pipeline {

namespace {

void corrupt_unless(bool cond, const std::string& what) { require(cond, ErrorCode::corrupt_state, what); }

const json& field(const json& j, const char* key) {
  corrupt_unless(j.is_object() && j.contains(key), std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string checksum(const json& payload) {
  std::ostringstream os;
  os << std::hex << hash_label(payload.dump());
  return os.str();
}

}  // namespace

json to_json(std::span<const Elem> v) { return json(std::vector<Elem>(v.begin(), v.end())); }

json to_json(const FqMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

json to_json(const Subspace& s) { return json{{"ambient", s.ambient_dim()}, {"basis", to_json(s.basis())["data"]}}; }

json to_json(const Trivector& t) {
  return json{{"dim", t.dim()},
              {"variance", t.variance() == Variance::primal ? "primal" : "dual"},
              {"coeffs", to_json(t.coeffs())}};
}

json to_json(const XPoint& x) { return json{{"coords", to_json(x.coords)}, {"source_x", to_json(x.source_x)}}; }

json to_json(const Ruling& r) { return json{{"point", to_json(r.point)}, {"direction", to_json(r.direction)}}; }

json to_json(const Seed& s) {
  return json{{"rng_seed", s.rng_seed},
              {"retries", s.retries},
              {"M", to_json(s.M)},
              {"N", to_json(s.N)}};
}

json to_json(const CheckRecord& r) {
  json j{{"id", r.id},         {"anchor", r.anchor},         {"status", status_name(r.status)},
         {"value", r.value},   {"expected", r.expected},     {"provenance", r.provenance},
         {"mandatory", r.mandatory}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Vec vec_from(const Field& f, const json& j, std::size_t n) {
  corrupt_unless(j.is_array(), "vector is not an array");
  if (n) corrupt_unless(j.size() == n, "vector has the wrong length");
  Vec v;
  for (const auto& e : j) {
    corrupt_unless(e.is_number_unsigned(), "vector entry is not a residue");
    const auto x = e.get<std::uint64_t>();
    corrupt_unless(x < f.p(), "vector entry is not reduced");
    v.push_back(x);
  }
  return v;
}

FqMatrix rows_from(const Field& f, const json& data, std::size_t cols) {
  corrupt_unless(data.is_array(), "matrix rows are not an array");
  FqMatrix m(f, 0, cols);
  for (const auto& r : data) m.append_row(vec_from(f, r, cols));
  return m;
}

FqMatrix matrix_from(const Field& f, const json& j) {
  const std::size_t rows = field(j, "rows").get<std::size_t>();
  const std::size_t cols = field(j, "cols").get<std::size_t>();
  FqMatrix m = rows_from(f, field(j, "data"), cols);
  corrupt_unless(m.rows() == rows, "matrix has the wrong number of rows");
  return m;
}

Subspace subspace_from(const Field& f, const json& j) {
  const std::size_t ambient = field(j, "ambient").get<std::size_t>();
  const FqMatrix b = rows_from(f, field(j, "basis"), ambient);
  if (b.rows() == 0) return Subspace::zero(f, ambient);
  Subspace s = Subspace::spanned_by(b);
  corrupt_unless(s.dim() == b.rows() && s.basis() == b, "subspace basis is not in echelon form");
  return s;
}

Trivector trivector_from(const Field& f, const json& j) {
  const std::size_t dim = field(j, "dim").get<std::size_t>();
  const std::string var = field(j, "variance").get<std::string>();
  corrupt_unless(var == "primal" || var == "dual", "unknown variance");
  const Vec c = vec_from(f, field(j, "coeffs"), dim * (dim - 1) * (dim - 2) / 6);
  return Trivector::from_coeffs(f, dim, c, var == "primal" ? Variance::primal : Variance::dual);
}

XPoint xpoint_from(const Field& f, const json& j) {
  return {vec_from(f, field(j, "coords"), 10), vec_from(f, field(j, "source_x"), 0)};
}

Ruling ruling_from(const Field& f, const json& j) {
  return {vec_from(f, field(j, "point"), 10), vec_from(f, field(j, "direction"), 10)};
}

Seed seed_from(const Field& f, const json& j) {
  Seed s = make_seed(f, field(j, "rng_seed").get<std::uint64_t>(), subspace_from(f, field(j, "M")).basis(),
                     subspace_from(f, field(j, "N")).basis());
  s.retries = field(j, "retries").get<std::vector<std::string>>();
  return s;
}

CheckRecord record_from(const json& j) {
  CheckRecord r;
  r.id = field(j, "id").get<std::string>();
  r.anchor = field(j, "anchor").get<std::string>();
  r.status = parse_status(field(j, "status").get<std::string>());
  r.value = field(j, "value");
  r.expected = field(j, "expected");
  r.provenance = field(j, "provenance").get<std::string>();
  r.mandatory = field(j, "mandatory").get<bool>();
  if (j.contains("note")) r.note = j.at("note").get<std::string>();
  return r;
}

Status parse_status(const std::string& s) {
  for (Status st : {Status::pass, Status::fail, Status::skipped, Status::inconclusive})
    if (s == status_name(st)) return st;
  fail(ErrorCode::corrupt_state, "unknown status '" + s + "'");
}

json state_to_json(const State& s) {
  json payload;
  payload["p"] = s.p;
  payload["rng_seed"] = s.rng_seed;
  json done = json::array();
  for (Stage st : all_stages())
    if (s.done.count(st)) done.push_back(stage_name(st));
  payload["done"] = done;
  json recs = json::array();
  for (const auto& r : s.records) recs.push_back(to_json(r));
  payload["records"] = recs;
  payload["seed_log"] = s.seed_log;
  if (s.seed) payload["seed"] = to_json(*s.seed);
  if (s.done.count(Stage::quadrics)) {
    payload["v10"] = to_json(s.v10);
    payload["planes_needed"] = s.planes_needed;
    payload["growth"] = s.growth;
    payload["pencil"] = to_json(s.pencil);
    json pts = json::array();
    for (const auto& x : s.points) pts.push_back(to_json(x));
    payload["points"] = pts;
    payload["hilbert"] = s.hilbert;
  }
  if (s.done.count(Stage::syzygy)) {
    payload["v8"] = to_json(s.v8);
    payload["phi"] = to_json(s.phi);
    payload["t2"] = to_json(s.t2);
    payload["t2_scale"] = s.t2_scale;
  }
  if (s.done.count(Stage::trivectors)) {
    payload["t1"] = to_json(s.t1);
    payload["t1_scale"] = s.t1_scale;
    json pts = json::array(), rul = json::array();
    for (const auto& x : s.t1_points) pts.push_back(to_json(x));
    for (const auto& r : s.rulings) rul.push_back(to_json(r));
    payload["t1_points"] = pts;
    payload["rulings"] = rul;
  }
  return seal_state(payload);
}

json seal_state(const json& payload) {
  return json{{"format", kStateFormat}, {"version", kStateVersion}, {"payload", payload},
              {"checksum", checksum(payload)}};
}

State state_from_json(const json& j, std::optional<std::uint64_t> expected_p) {
  corrupt_unless(j.is_object(), "state is not a JSON object");
  corrupt_unless(j.value("format", "") == kStateFormat, "not a state file");
  const int version = field(j, "version").get<int>();
  require(version == kStateVersion, ErrorCode::state_mismatch,
          "state version " + std::to_string(version) + " does not match " + std::to_string(kStateVersion));
  const json& payload = field(j, "payload");
  corrupt_unless(field(j, "checksum").get<std::string>() == checksum(payload), "checksum mismatch");
  State s;
  try {
    s.p = field(payload, "p").get<std::uint64_t>();
    if (expected_p)
      require(s.p == *expected_p, ErrorCode::state_mismatch,
              "state prime " + std::to_string(s.p) + " does not match " + std::to_string(*expected_p));
    const Field f(s.p);
    s.rng_seed = field(payload, "rng_seed").get<std::uint64_t>();
    for (const auto& d : field(payload, "done")) s.done.insert(parse_stage(d.get<std::string>()));
    for (const auto& r : field(payload, "records")) s.records.push_back(record_from(r));
    s.seed_log = field(payload, "seed_log").get<std::vector<std::string>>();
    if (payload.contains("seed")) s.seed = seed_from(f, payload.at("seed"));
    if (s.done.count(Stage::quadrics)) {
      corrupt_unless(s.seed.has_value(), "quadrics stage done without a seed");
      s.v10 = subspace_from(f, field(payload, "v10"));
      corrupt_unless(s.v10.ambient_dim() == 55, "V10 has the wrong ambient dimension");
      s.planes_needed = field(payload, "planes_needed").get<std::size_t>();
      s.growth = field(payload, "growth").get<std::vector<std::size_t>>();
      s.pencil = subspace_from(f, field(payload, "pencil"));
      for (const auto& x : field(payload, "points")) s.points.push_back(xpoint_from(f, x));
      s.hilbert = field(payload, "hilbert").get<std::vector<std::size_t>>();
    }
    if (s.done.count(Stage::syzygy)) {
      s.v8 = subspace_from(f, field(payload, "v8"));
      corrupt_unless(s.v8.ambient_dim() == 100, "V8 has the wrong ambient dimension");
      s.phi = matrix_from(f, field(payload, "phi"));
      s.t2 = trivector_from(f, field(payload, "t2"));
      s.t2_scale = field(payload, "t2_scale").get<Elem>();
    }
    if (s.done.count(Stage::trivectors)) {
      s.t1 = trivector_from(f, field(payload, "t1"));
      s.t1_scale = field(payload, "t1_scale").get<Elem>();
      for (const auto& x : field(payload, "t1_points")) s.t1_points.push_back(xpoint_from(f, x));
      for (const auto& r : field(payload, "rulings")) s.rulings.push_back(ruling_from(f, r));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::corrupt_state, std::string("malformed state: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::state_mismatch || e.code() == ErrorCode::corrupt_state) throw;
    fail(ErrorCode::corrupt_state, std::string("invalid state: ") + e.what());
  }
  return s;
}

void save_state(const State& s, const std::string& path) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::invalid_argument, "cannot write " + path);
  out << dump(state_to_json(s));
}

State load_state(const std::string& path, std::optional<std::uint64_t> expected_p) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::invalid_argument, "cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::corrupt_state, std::string("state is not valid JSON: ") + e.what());
  }
  return state_from_json(j, expected_p);
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

}  // namespace k3g16::pipeline
