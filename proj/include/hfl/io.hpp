#pragma once
// io.hpp - JSON encodings shared by the hyperbox and system-model formats

#include "hfl/complex.hpp"
#include "hfl/ring.hpp"

#include <json.hpp>

#include <string>

namespace hfl::io {

using nlohmann::json;

json ring_to_json(const TruncatedRing& r);
TruncatedRing ring_from_json(const json& j);

// A ring element is a list of exponent vectors, e.g. [[1,0],[0,2]].
json elem_to_json(const RingElement& e);
RingElement elem_from_json(const TruncatedRing& r, const json& j);

// Sparse entries [[row, col, element], ...].
json mat_to_json(const RMat& m);
RMat mat_from_json(const TruncatedRing& r, int rows, int cols, const json& j);

// {"generators": [{"name": .., "grading": ..}], "graded": bool, "d": entries}
json complex_to_json(const GradedComplex& c);
GradedComplex complex_from_json(const TruncatedRing& r, const json& j);

std::string read_file(const std::string& path);
json parse_json(const std::string& text, const std::string& what);

}  // namespace hfl::io
