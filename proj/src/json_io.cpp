#include "tslab/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stack>

namespace tslab {

namespace {

/// Builds a Json tree, turning floating-point literals into strings.
class ExactSax {
 public:
  using number_integer_t = Json::number_integer_t;
  using number_unsigned_t = Json::number_unsigned_t;
  using number_float_t = Json::number_float_t;
  using string_t = Json::string_t;
  using binary_t = Json::binary_t;

  bool null() { return put(Json(nullptr)); }
  bool boolean(bool v) { return put(Json(v)); }
  bool number_integer(number_integer_t v) { return put(Json(v)); }
  bool number_unsigned(number_unsigned_t v) { return put(Json(v)); }
  bool number_float(number_float_t, const string_t& text) { return put(Json(text)); }
  bool string(string_t& v) { return put(Json(v)); }
  bool binary(binary_t& v) { return put(Json::binary(v)); }
  bool start_object(std::size_t) {
    open_.push(put_ref(Json::object()));
    return true;
  }
  bool key(string_t& k) {
    key_ = k;
    return true;
  }
  bool end_object() {
    open_.pop();
    return true;
  }
  bool start_array(std::size_t) {
    open_.push(put_ref(Json::array()));
    return true;
  }
  bool end_array() {
    open_.pop();
    return true;
  }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& e) {
    throw InputError("invalid JSON at byte " + std::to_string(position) + ": " + e.what());
  }

  Json result() { return std::move(root_); }

 private:
  bool put(Json v) {
    put_ref(std::move(v));
    return true;
  }
  Json* put_ref(Json v) {
    if (open_.empty()) {
      root_ = std::move(v);
      return &root_;
    }
    Json& parent = *open_.top();
    if (parent.is_array()) {
      parent.push_back(std::move(v));
      return &parent.back();
    }
    parent[key_] = std::move(v);
    return &parent[key_];
  }

  Json root_;
  std::stack<Json*> open_;
  std::string key_;
};

std::string text_of(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer() || j.is_number_unsigned()) return j.dump();
  if (j.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return os.str();
  }
  throw InputError("expected a number or string, got " + j.dump());
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace

Json parse_json_exact(std::string_view text) {
  ExactSax sax;
  Json::sax_parse(text.begin(), text.end(), &sax);
  return sax.result();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_exact(buf.str());
}

Rational rational_from_json(const Json& j) { return parse_rational(text_of(j)); }

Exponent exponent_from_json(const Json& j) { return Exponent::parse(text_of(j)); }

Ordinal ordinal_from_json(const Json& j) { return Ordinal::parse(text_of(j)); }

FinVec vector_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("a vector must be a JSON object mapping indices to coefficients");
  FinVec v;
  for (const auto& [key, value] : j.items()) {
    std::size_t used = 0;
    unsigned long index = 0;
    try {
      index = std::stoul(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || index == 0 || index > 0xffffffffUL)
      throw InputError("vector index '" + key + "' is not a positive integer");
    if (v.get(static_cast<std::uint32_t>(index)) != 0) throw InputError("vector index " + key + " given twice");
    v.set(static_cast<std::uint32_t>(index), rational_from_json(value));
  }
  return v;
}

Point point_from_json(const Json& j, const Space& space) {
  if (space.is_sum()) {
    if (!j.is_array()) throw InputError("a direct sum vector is an array of component vectors");
    SumVec out;
    for (const auto& c : j) out.push_back(vector_from_json(c));
    Point p = out;
    check_shape(space, p);
    return p;
  }
  return vector_from_json(j);
}

std::vector<Point> points_from_json(const Json& j, const Space& space) {
  if (j.is_object() && j.contains("vectors")) return points_from_json(j.at("vectors"), space);
  std::vector<Point> out;
  if (j.is_array() && !(space.is_sum() && !j.empty() && j.front().is_object())) {
    for (const auto& item : j) out.push_back(point_from_json(item, space));
  } else {
    out.push_back(point_from_json(j, space));
  }
  return out;
}

namespace {

TsirelsonParams tsirelson_from_json(const Json& j) {
  TsirelsonParams p;
  if (j.contains("theta")) p.theta = rational_from_json(j.at("theta"));
  if (j.contains("q")) p.q = exponent_from_json(j.at("q"));
  if (j.contains("xi")) p.xi = ordinal_from_json(j.at("xi"));
  if (j.contains("max_depth")) p.max_depth = j.at("max_depth").get<unsigned>();
  return p;
}

}  // namespace

Space space_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("a space must be a JSON object");
  const std::string kind = text_of(field(j, "kind"));
  Space s;
  try {
    if (kind == "lp") {
      s = Space::lp(exponent_from_json(field(j, "p")));
    } else if (kind == "c0") {
      s = Space::c0();
    } else if (kind == "xm") {
      const Json& m = field(j, "m");
      if (!m.is_number_unsigned() && !m.is_number_integer()) throw InputError("xm needs an integer m");
      if (m.get<long long>() < 1) throw InputError("xm needs m >= 1");
      s = Space::xm(exponent_from_json(field(j, "p")), m.get<std::uint32_t>());
    } else if (kind == "tsirelson") {
      s = Space::tsirelson_space(tsirelson_from_json(j));
    } else if (kind == "tsirelson_dual") {
      s = Space::tsirelson_dual(tsirelson_from_json(j));
    } else if (kind == "sum") {
      std::vector<SumPart> parts;
      const Json& list = field(j, "parts");
      if (!list.is_array()) throw InputError("sum parts must be an array");
      for (const auto& part : list) {
        SumPart sp;
        sp.weight = part.contains("weight") ? rational_from_json(part.at("weight")) : Rational(1);
        sp.space = std::make_shared<const Space>(space_from_json(field(part, "space")));
        parts.push_back(std::move(sp));
      }
      s = Space::sum(exponent_from_json(field(j, "q")), std::move(parts));
    } else {
      throw InputError("unknown space kind '" + kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed space: ") + e.what());
  }
  s.validate();
  return s;
}

Json to_json(const Rational& v) { return tslab::to_string(v); }

Json to_json(const Exponent& p) { return p.to_string(); }

Json to_json(const Ordinal& xi) { return xi.to_string(); }

Json to_json(const FinVec& v) {
  Json out = Json::object();
  for (const auto& [k, c] : v.entries()) out[std::to_string(k)] = tslab::to_string(c);
  return out;
}

Json to_json(const FinSet& s) { return s.elements(); }

Json to_json(const Point& x) {
  if (const auto* v = std::get_if<FinVec>(&x)) return to_json(*v);
  Json out = Json::array();
  for (const auto& c : std::get<SumVec>(x)) out.push_back(to_json(c));
  return out;
}

Json to_json(const NormValue& v) {
  Json out;
  switch (v.kind()) {
    case NormValue::Kind::exact:
      out["kind"] = "exact";
      out["value"] = tslab::to_string(v.rational());
      out["approx"] = v.value();
      break;
    case NormValue::Kind::approximate:
      out["kind"] = "approximate";
      out["value"] = v.value();
      out["tolerance"] = v.tolerance();
      break;
    case NormValue::Kind::lower_bound:
      out["kind"] = "lower_bound";
      out["value"] = v.value();
      out["width"] = v.tolerance();
      break;
  }
  return out;
}

Json to_json(const Space& space) {
  Json out;
  out["kind"] = to_string(space.kind);
  switch (space.kind) {
    case Space::Kind::lp: out["p"] = to_json(space.p); break;
    case Space::Kind::c0: break;
    case Space::Kind::xm:
      out["p"] = to_json(space.p);
      out["m"] = space.m;
      break;
    case Space::Kind::tsirelson:
    case Space::Kind::tsirelson_dual:
      out["theta"] = to_json(space.tsirelson.theta);
      out["q"] = to_json(space.tsirelson.q);
      out["xi"] = to_json(space.tsirelson.xi);
      if (space.tsirelson.max_depth) out["max_depth"] = *space.tsirelson.max_depth;
      break;
    case Space::Kind::sum:
      out["q"] = to_json(space.p);
      out["parts"] = Json::array();
      for (const auto& part : space.parts)
        out["parts"].push_back({{"weight", to_json(part.weight)}, {"space", to_json(*part.space)}});
      break;
  }
  return out;
}

Json to_json(const WindowReport& r) {
  Json out;
  out["constant"] = to_json(r.constant);
  out["witness_support"] = to_json(r.witness_support);
  out["witness_coeffs"] = to_json(r.witness_coeffs);
  out["mode"] = to_string(r.mode);
  out["p"] = to_json(r.p);
  out["xi"] = to_json(r.xi);
  out["window"] = r.window;
  out["supports"] = r.supports;
  out["evaluated"] = r.evaluated;
  if (r.mode == CertifyMode::heuristic) {
    out["restarts"] = r.restarts;
    out["seed"] = r.seed;
  }
  return out;
}

Json to_json(const ThresholdResult& t) {
  Json out;
  out["d"] = t.d ? Json(*t.d) : Json(nullptr);
  out["window"] = t.window;
  out["d_max"] = t.d_max;
  out["window_relative"] = t.window_relative;
  out["counterexamples"] = Json::array();
  for (const auto& [d, F] : t.counterexamples) out["counterexamples"].push_back({{"d", d}, {"set", to_json(F)}});
  return out;
}

}  // namespace tslab
