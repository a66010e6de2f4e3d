#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pqpierce/epsnet.hpp"
#include "pqpierce/exactlp.hpp"
#include "pqpierce/family.hpp"
#include "pqpierce/generate.hpp"
#include "pqpierce/pipeline.hpp"
#include "pqpierce/piercing.hpp"

// JSON schema shared by the CLI and certificate dumps. Rationals are
// [numerator, denominator] pairs in lowest terms; each component is a JSON
// integer when it fits in 64 bits and a decimal string otherwise. Points are
// arrays of rationals. Bodies are {"type": "interval"|"box"|"polygon",
// "data": ...} with interval data [lo, hi], box data {"lo": P, "hi": P} and
// polygon data [P, ...].

namespace pqpierce::json_io {

using nlohmann::json;

/// Malformed document.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

json encode(const Rational& r);
json encode(const Point& p);
json encode(const ConvexBody& b);
json encode(const Instance& inst);
json encode(const PQReport& r);
json encode(const FractionalHellyCensus& c);
json encode(const PiercingCertificate& c);
json encode(const ExactPiercingResult& r);
json encode(const IncidenceHypergraph& h, const FractionalCertificate& c);
json encode(const HeavyMultiset& y);
json encode(const NetVerification& v);
json encode(const WeakNetResult& r);
json encode(const PipelineReport& r);
json encode(const lp::LinearProgram& lp);
json encode(const lp::LPOutcome& out);
json encode(const DeepestPoint& d);

Rational decode_rational(const json& j);
Point decode_point(const json& j);
ConvexBody decode_body(const json& j);
Instance decode_instance(const json& j);
lp::LinearProgram decode_program(const json& j);
lp::LPOutcome decode_outcome(const json& j);

/// Point multiset document {"dim", "points", "counts"?}; a heavy-multiset
/// dump is accepted as-is. Returns the points repeated by count.
std::vector<Point> decode_multiset(const json& j);
json encode_multiset(const std::vector<Point>& points);

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace pqpierce::json_io
