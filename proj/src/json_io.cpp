#include "pqpierce/json_io.hpp"

#include <fstream>
#include <limits>

namespace pqpierce::json_io {

namespace {

json encode_integer(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

Integer decode_integer(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_string()) {
    Rational r;
    try {
      r = parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
    if (denominator_of(r) == 1) return numerator_of(r);
  }
  throw SchemaError("expected an integer, got " + j.dump());
}

template <class T>
json encode_all(const std::vector<T>& items) {
  json out = json::array();
  for (const auto& item : items) out.push_back(encode(item));
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<Rational> decode_vector(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(decode_rational(e));
  return out;
}

json encode_optional_indices(const std::optional<std::vector<std::size_t>>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json encode(const Rational& r) {
  return json::array({encode_integer(numerator_of(r)), encode_integer(denominator_of(r))});
}

json encode(const Point& p) { return encode_all(p.coords()); }

json encode(const ConvexBody& b) {
  switch (b.kind()) {
    case ConvexBody::Kind::Interval:
      return {{"type", "interval"}, {"data", json::array({encode(b.as_interval().lo), encode(b.as_interval().hi)})}};
    case ConvexBody::Kind::Box:
      return {{"type", "box"}, {"data", {{"lo", encode(b.as_box().lo)}, {"hi", encode(b.as_box().hi)}}}};
    case ConvexBody::Kind::Polygon:
      return {{"type", "polygon"}, {"data", encode_all(b.as_polygon().vertices)}};
  }
  return nullptr;
}

json encode(const Instance& inst) {
  json j = {{"name", inst.name}, {"dim", inst.dim}, {"bodies", encode_all(inst.bodies)}};
  if (!inst.multiplicities.empty()) j["multiplicities"] = inst.multiplicities;
  j["metadata"] = inst.metadata;
  return j;
}

json encode(const PQReport& r) {
  return {{"p", r.p},
          {"q", r.q},
          {"holds", r.holds},
          {"witness", encode_optional_indices(r.witness)},
          {"subsets_checked", r.subsets_checked}};
}

json encode(const FractionalHellyCensus& c) {
  return {{"n", c.n},
          {"d", c.d},
          {"alpha", encode(c.alpha)},
          {"delta", encode(c.delta)},
          {"intersecting_tuples", c.intersecting_tuples},
          {"total_tuples", c.total_tuples},
          {"max_depth", c.max_depth}};
}

json encode(const PiercingCertificate& c) {
  return {{"points", encode_all(c.points)}, {"assignment", c.assignment}};
}

json encode(const ExactPiercingResult& r) {
  return {{"piercing_number", r.size()},
          {"optimal", r.optimal},
          {"certificate", encode(r.certificate)},
          {"lp_lower_bound", r.lp_lower_bound},
          {"greedy_upper_bound", r.greedy_upper_bound},
          {"nodes", r.nodes},
          {"double_checked", r.double_checked}};
}

json encode(const IncidenceHypergraph& h, const FractionalCertificate& c) {
  return {{"gamma", encode(c.gamma)},
          {"vertices", encode_all(h.vertices)},
          {"f", encode_all(c.f)},
          {"g", encode_all(c.g)}};
}

json encode(const HeavyMultiset& y) {
  return {{"dim", y.points.empty() ? 0 : y.points.front().dim()},
          {"points", encode_all(y.points)},
          {"counts", y.counts},
          {"total", y.total},
          {"gamma", encode(y.gamma)},
          {"denominator_guard_fired", y.denominator_guard_fired}};
}

json encode(const NetVerification& v) {
  static constexpr const char* kOutcome[] = {"passed", "failed", "unverifiable"};
  return {{"outcome", kOutcome[static_cast<int>(v.outcome)]},
          {"strategy", v.strategy},
          {"subsets_checked", v.subsets_checked},
          {"first_failure", encode_optional_indices(v.first_failure)}};
}

json encode(const WeakNetResult& r) {
  json j = {{"net", encode_all(r.net)},
            {"epsilon", encode(r.epsilon)},
            {"source_size", r.source_size},
            {"method", to_string(r.method)},
            {"verified", r.verified ? json(*r.verified) : json(nullptr)},
            {"transcript", encode(r.transcript)}};
  j["abandoned"] = r.abandoned ? json(to_string(*r.abandoned)) : json(nullptr);
  return j;
}

json encode(const PipelineReport& r) {
  return {{"pq", encode(r.pq)},
          {"fractional", {{"gamma", encode(r.fractional.gamma)},
                          {"f", encode_all(r.fractional.f)},
                          {"g", encode_all(r.fractional.g)}}},
          {"multiset", encode(r.multiset)},
          {"net", encode(r.net)},
          {"piercing", encode(r.piercing)},
          {"exact_optimum", r.exact_optimum ? json(*r.exact_optimum) : json(nullptr)},
          {"fallback_used", r.fallback_used},
          {"sizes",
           {{"Y", r.multiset_size()}, {"X", r.net_size()}, {"gamma", encode(r.achieved_gamma())}}}};
}

json encode(const lp::LinearProgram& prog) {
  json a = json::array();
  for (const auto& row : prog.A) a.push_back(encode_all(row));
  json j = {{"A", a}, {"b", encode_all(prog.b)}, {"sense", prog.sense == lp::Sense::Maximize ? "maximize" : "feasibility"}};
  if (prog.objective) j["objective"] = encode_all(*prog.objective);
  return j;
}

json encode(const lp::LPOutcome& out) {
  json j = {{"status", lp::status_name(out)}};
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, lp::Feasible>) {
          j["x"] = encode_all(o.x);
        } else if constexpr (std::is_same_v<T, lp::Infeasible>) {
          j["y"] = encode_all(o.y);
        } else if constexpr (std::is_same_v<T, lp::Optimal>) {
          j["x"] = encode_all(o.x);
          j["y"] = encode_all(o.y);
          j["value"] = encode(o.value);
        } else {
          j["x"] = encode_all(o.x);
          j["ray"] = encode_all(o.ray);
        }
      },
      out);
  return j;
}

json encode(const DeepestPoint& d) {
  return {{"point", encode(d.point)}, {"depth", d.depth}, {"total", d.total}, {"ratio", encode(d.ratio())}};
}

Rational decode_rational(const json& j) {
  if (j.is_array() && j.size() == 2) {
    const Integer den = decode_integer(j[1]);
    if (den <= 0) throw SchemaError("rational denominator must be positive: " + j.dump());
    return Rational(decode_integer(j[0]), den);
  }
  if (j.is_number_integer()) return Rational(decode_integer(j));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
  }
  throw SchemaError("expected a rational [num, den], got " + j.dump());
}

Point decode_point(const json& j) { return Point(decode_vector(j)); }

ConvexBody decode_body(const json& j) {
  const std::string type = field(j, "type").get<std::string>();
  const json& data = field(j, "data");
  if (type == "interval") {
    if (!data.is_array() || data.size() != 2) throw SchemaError("interval data must be [lo, hi]");
    return ConvexBody::interval(decode_rational(data[0]), decode_rational(data[1]));
  }
  if (type == "box") return ConvexBody::box(decode_point(field(data, "lo")), decode_point(field(data, "hi")));
  if (type == "polygon") {
    if (!data.is_array()) throw SchemaError("polygon data must be an array of points");
    std::vector<Point> vertices;
    for (const auto& v : data) vertices.push_back(decode_point(v));
    return ConvexBody::polygon(std::move(vertices));
  }
  throw SchemaError("unknown body type '" + type + "'");
}

Instance decode_instance(const json& j) {
  Instance inst;
  inst.name = j.value("name", std::string{});
  inst.dim = field(j, "dim").get<std::size_t>();
  for (const auto& b : field(j, "bodies")) {
    inst.bodies.push_back(decode_body(b));
    if (inst.bodies.back().dim() != inst.dim)
      throw SchemaError("body " + std::to_string(inst.bodies.size() - 1) + " does not match dim " +
                        std::to_string(inst.dim));
  }
  if (j.contains("multiplicities")) inst.multiplicities = j.at("multiplicities").get<std::vector<std::size_t>>();
  if (j.contains("metadata")) inst.metadata = j.at("metadata");
  return inst;
}

lp::LinearProgram decode_program(const json& j) {
  lp::LinearProgram prog;
  for (const auto& row : field(j, "A")) prog.A.push_back(decode_vector(row));
  prog.b = decode_vector(field(j, "b"));
  if (j.contains("objective") && !j.at("objective").is_null()) prog.objective = decode_vector(j.at("objective"));
  prog.sense = j.value("sense", std::string("feasibility")) == "maximize" ? lp::Sense::Maximize : lp::Sense::Feasibility;
  try {
    prog.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  return prog;
}

lp::LPOutcome decode_outcome(const json& j) {
  const std::string status = field(j, "status").get<std::string>();
  if (status == "feasible") return lp::Feasible{decode_vector(field(j, "x"))};
  if (status == "infeasible") return lp::Infeasible{decode_vector(field(j, "y"))};
  if (status == "optimal")
    return lp::Optimal{decode_vector(field(j, "x")), decode_vector(field(j, "y")), decode_rational(field(j, "value"))};
  if (status == "unbounded") return lp::Unbounded{decode_vector(field(j, "x")), decode_vector(field(j, "ray"))};
  throw SchemaError("unknown LP status '" + status + "'");
}

std::vector<Point> decode_multiset(const json& j) {
  std::vector<Point> out;
  const json& pts = field(j, "points");
  std::vector<std::size_t> counts(pts.size(), 1);
  if (j.contains("counts")) counts = j.at("counts").get<std::vector<std::size_t>>();
  if (counts.size() != pts.size()) throw SchemaError("counts length differs from points length");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point p = decode_point(pts[i]);
    for (std::size_t c = 0; c < counts[i]; ++c) out.push_back(p);
  }
  return out;
}

json encode_multiset(const std::vector<Point>& points) {
  return {{"dim", points.empty() ? 0 : points.front().dim()}, {"points", encode_all(points)}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace pqpierce::json_io
