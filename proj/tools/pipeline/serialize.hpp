#pragma once

#include "pipeline.hpp"

namespace k3g16::pipeline {

json to_json(std::span<const Elem> v);
json to_json(const FqMatrix& m);
json to_json(const Subspace& s);
json to_json(const Trivector& t);
json to_json(const XPoint& x);
json to_json(const Ruling& r);
json to_json(const Seed& s);
json to_json(const CheckRecord& r);

// Readers throw Error(corrupt_state) on malformed input.
Vec vec_from(const Field& f, const json& j, std::size_t n = 0);
FqMatrix rows_from(const Field& f, const json& data, std::size_t cols);
FqMatrix matrix_from(const Field& f, const json& j);
Subspace subspace_from(const Field& f, const json& j);
Trivector trivector_from(const Field& f, const json& j);
XPoint xpoint_from(const Field& f, const json& j);
Ruling ruling_from(const Field& f, const json& j);
Seed seed_from(const Field& f, const json& j);
CheckRecord record_from(const json& j);
Status parse_status(const std::string& s);
// Wraps a payload with format, version and checksum.
json seal_state(const json& payload);

}  // namespace k3g16::pipeline
