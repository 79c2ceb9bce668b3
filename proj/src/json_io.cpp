#include "kadapt/json_io.hpp"

#include <fstream>
#include <limits>

#include "kadapt/errors.hpp"

namespace kadapt {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what);
}

const json& get(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "parent is not an object");
  auto it = j.find(field);
  if (it == j.end()) fail(field, "missing required field");
  return *it;
}

long long int_from_json(const json& j, const std::string& field) {
  if (j.is_number_float()) fail(field, "floating-point numbers are not accepted");
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<long long>();
}

int small_int(const json& j, const std::string& field) {
  const long long v = int_from_json(j, field);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    fail(field, "value out of range");
  return static_cast<int>(v);
}

std::vector<long long> int_vector(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array");
  std::vector<long long> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(int_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

IntMatrix int_matrix(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of rows");
  IntMatrix out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(int_vector(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Rat> rat_vector(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array");
  std::vector<Rat> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(rat_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

json sense_to_json(Sense s) {
  switch (s) {
    case Sense::Ge: return ">=";
    case Sense::Le: return "<=";
    case Sense::Eq: return "=";
  }
  return ">=";
}

Sense sense_from_json(const json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a sense string");
  const std::string s = j.get<std::string>();
  if (s == ">=") return Sense::Ge;
  if (s == "<=") return Sense::Le;
  if (s == "=" || s == "==") return Sense::Eq;
  fail(field, "unknown sense '" + s + "'");
}

json int_constraint_to_json(const IntConstraint& c) {
  return json{{"row", c.row}, {"sense", sense_to_json(c.sense)}, {"rhs", c.rhs}};
}

json rat_constraint_to_json(const RatConstraint& c) {
  json row = json::array();
  for (const auto& v : c.row) row.push_back(rat_to_json(v));
  return json{{"row", row}, {"sense", sense_to_json(c.sense)}, {"rhs", rat_to_json(c.rhs)}};
}

IntConstraint int_constraint_from_json(const json& j, const std::string& field) {
  IntConstraint c;
  c.row = int_vector(get(j, "row"), field + ".row");
  c.sense = sense_from_json(get(j, "sense"), field + ".sense");
  c.rhs = int_from_json(get(j, "rhs"), field + ".rhs");
  return normalize(std::move(c));
}

RatConstraint rat_constraint_from_json(const json& j, const std::string& field) {
  RatConstraint c;
  c.row = rat_vector(get(j, "row"), field + ".row");
  c.sense = sense_from_json(get(j, "sense"), field + ".sense");
  c.rhs = rat_from_json(get(j, "rhs"), field + ".rhs");
  return normalize(std::move(c));
}

json yspace_to_json(const YSpace& ys) {
  json j;
  j["lower"] = ys.lower;
  j["upper"] = ys.upper;
  json cons = json::array();
  for (const auto& c : ys.constraints) cons.push_back(int_constraint_to_json(c));
  j["constraints"] = cons;
  if (ys.explicit_mode()) j["explicit"] = ys.explicit_points;
  return j;
}

YSpace yspace_from_json(const json& j, const std::string& field) {
  YSpace ys;
  if (j.contains("explicit")) {
    const json& pts = j["explicit"];
    if (!pts.is_array() || pts.empty()) fail(field + ".explicit", "expected a nonempty array");
    for (std::size_t i = 0; i < pts.size(); ++i)
      ys.explicit_points.push_back(
          int_vector(pts[i], field + ".explicit[" + std::to_string(i) + "]"));
  }
  if (j.contains("lower") || j.contains("upper") || ys.explicit_points.empty()) {
    ys.lower = int_vector(get(j, "lower"), field + ".lower");
    ys.upper = int_vector(get(j, "upper"), field + ".upper");
  } else {
    // Bounding box of the explicit list.
    ys.lower = ys.explicit_points[0];
    ys.upper = ys.explicit_points[0];
    for (const auto& p : ys.explicit_points) {
      if (p.size() != ys.lower.size()) fail(field + ".explicit", "ragged point list");
      for (std::size_t i = 0; i < p.size(); ++i) {
        ys.lower[i] = std::min(ys.lower[i], p[i]);
        ys.upper[i] = std::max(ys.upper[i], p[i]);
      }
    }
  }
  if (j.contains("constraints")) {
    const json& cons = j["constraints"];
    if (!cons.is_array()) fail(field + ".constraints", "expected an array");
    for (std::size_t i = 0; i < cons.size(); ++i)
      ys.constraints.push_back(int_constraint_from_json(
          cons[i], field + ".constraints[" + std::to_string(i) + "]"));
  }
  return ys;
}

json ubox_to_json(const UBox& u) {
  json j;
  json lo = json::array(), hi = json::array(), cons = json::array();
  for (const auto& v : u.lower) lo.push_back(rat_to_json(v));
  for (const auto& v : u.upper) hi.push_back(rat_to_json(v));
  for (const auto& c : u.constraints) cons.push_back(rat_constraint_to_json(c));
  j["lower"] = lo;
  j["upper"] = hi;
  j["constraints"] = cons;
  return j;
}

UBox ubox_from_json(const json& j, const std::string& field) {
  UBox u;
  u.lower = rat_vector(get(j, "lower"), field + ".lower");
  u.upper = rat_vector(get(j, "upper"), field + ".upper");
  if (j.contains("constraints")) {
    const json& cons = j["constraints"];
    if (!cons.is_array()) fail(field + ".constraints", "expected an array");
    for (std::size_t i = 0; i < cons.size(); ++i)
      u.constraints.push_back(rat_constraint_from_json(
          cons[i], field + ".constraints[" + std::to_string(i) + "]"));
  }
  return u;
}

void common_header_from_json(const json& j, std::string& name, uint64_t& seed,
                             bool& generated) {
  const long long version = int_from_json(get(j, "schema_version"), "schema_version");
  if (version != kSchemaVersion)
    fail("schema_version", "unsupported version " + std::to_string(version));
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("name", "expected a string");
    name = j["name"].get<std::string>();
  }
  if (j.contains("seed")) {
    const json& s = j["seed"];
    if (s.is_number_unsigned())
      seed = s.get<uint64_t>();
    else
      seed = static_cast<uint64_t>(int_from_json(s, "seed"));
  }
  if (j.contains("generated")) {
    if (!j["generated"].is_boolean()) fail("generated", "expected a boolean");
    generated = j["generated"].get<bool>();
  }
}

json common_header_to_json(const std::string& name, uint64_t seed, bool generated,
                           const char* kind) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["name"] = name;
  j["seed"] = seed;
  j["generated"] = generated;
  return j;
}

}  // namespace

nlohmann::json rat_to_json(const Rat& r) {
  if (rat_is_integral(r)) {
    const Int& num = r.get_num();
    if (num.fits_slong_p()) return static_cast<long long>(num.get_si());
  }
  return rat_to_string(r);
}

Rat rat_from_json(const nlohmann::json& j, const std::string& field) {
  if (j.is_number_float()) fail(field, "floating-point numbers are not accepted");
  if (j.is_number_integer()) return rat_of(j.get<long long>());
  if (j.is_string()) {
    try {
      return rat_from_string(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(field, e.what());
    }
  }
  fail(field, "expected an integer or a 'p/q' string");
}

nlohmann::json to_json(const FiniteInstance& inst) {
  json j = common_header_to_json(inst.name, inst.seed, inst.generated, "finite");
  j["n_y"] = inst.n_y;
  j["t"] = inst.t();
  j["y_space"] = yspace_to_json(inst.y_space);
  json scen = json::array();
  for (const auto& sc : inst.scenarios) {
    json o = json::array();
    for (const auto& v : sc.objective) o.push_back(rat_to_json(v));
    json cons = json::array();
    for (const auto& c : sc.constraints) cons.push_back(rat_constraint_to_json(c));
    scen.push_back(json{{"objective", o}, {"constraints", cons}});
  }
  j["scenarios"] = scen;
  return j;
}

nlohmann::json to_json(const AffineInstance& inst) {
  json j = common_header_to_json(inst.name, inst.seed, inst.generated, "affine");
  j["n_x"] = inst.n_x;
  j["n_y"] = inst.n_y;
  j["n_xi"] = inst.n_xi;
  j["m"] = inst.m;
  j["X"] = inst.X;
  j["y_space"] = yspace_to_json(inst.y_space);
  j["A"] = inst.A;
  json ai = json::array();
  for (const auto& M : inst.Ai) ai.push_back(M);
  j["Ai"] = ai;
  j["B"] = inst.B;
  json bi = json::array();
  for (const auto& M : inst.Bi) bi.push_back(M);
  j["Bi"] = bi;
  j["H"] = inst.H;
  j["h"] = inst.h;
  j["U_box"] = ubox_to_json(inst.u_box);
  json c0 = json::array();
  for (const auto& v : inst.objective.c0) c0.push_back(rat_to_json(v));
  json C = json::array();
  for (const auto& row : inst.objective.C) {
    json r = json::array();
    for (const auto& v : row) r.push_back(rat_to_json(v));
    C.push_back(r);
  }
  j["objective"] = json{{"c0", c0}, {"C", C}};
  return j;
}

nlohmann::json to_json(const Instance& inst) {
  return std::visit([](const auto& x) { return to_json(x); }, inst);
}

Instance instance_from_json(const nlohmann::json& j) {
  const json& kind_j = get(j, "kind");
  if (!kind_j.is_string()) fail("kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "finite") {
    FiniteInstance inst;
    common_header_from_json(j, inst.name, inst.seed, inst.generated);
    inst.n_y = small_int(get(j, "n_y"), "n_y");
    inst.y_space = yspace_from_json(get(j, "y_space"), "y_space");
    const json& scen = get(j, "scenarios");
    if (!scen.is_array()) fail("scenarios", "expected an array");
    for (std::size_t s = 0; s < scen.size(); ++s) {
      const std::string where = "scenarios[" + std::to_string(s) + "]";
      Scenario sc;
      sc.objective = rat_vector(get(scen[s], "objective"), where + ".objective");
      if (scen[s].contains("constraints")) {
        const json& cons = scen[s]["constraints"];
        if (!cons.is_array()) fail(where + ".constraints", "expected an array");
        for (std::size_t i = 0; i < cons.size(); ++i)
          sc.constraints.push_back(rat_constraint_from_json(
              cons[i], where + ".constraints[" + std::to_string(i) + "]"));
      }
      inst.scenarios.push_back(std::move(sc));
    }
    if (j.contains("t") && int_from_json(j["t"], "t") != inst.t())
      fail("t", "does not match the scenario count");
    const ValidationReport rep = validate(inst);
    if (!rep.ok()) throw ParseError("invalid instance: " + rep.joined());
    return inst;
  }
  if (kind == "affine") {
    AffineInstance inst;
    common_header_from_json(j, inst.name, inst.seed, inst.generated);
    inst.n_x = small_int(get(j, "n_x"), "n_x");
    inst.n_y = small_int(get(j, "n_y"), "n_y");
    inst.n_xi = small_int(get(j, "n_xi"), "n_xi");
    inst.m = small_int(get(j, "m"), "m");
    inst.X = int_matrix(get(j, "X"), "X");
    inst.y_space = yspace_from_json(get(j, "y_space"), "y_space");
    inst.A = int_matrix(get(j, "A"), "A");
    const json& ai = get(j, "Ai");
    if (!ai.is_array()) fail("Ai", "expected an array of matrices");
    for (std::size_t i = 0; i < ai.size(); ++i)
      inst.Ai.push_back(int_matrix(ai[i], "Ai[" + std::to_string(i) + "]"));
    inst.B = int_matrix(get(j, "B"), "B");
    const json& bi = get(j, "Bi");
    if (!bi.is_array()) fail("Bi", "expected an array of matrices");
    for (std::size_t i = 0; i < bi.size(); ++i)
      inst.Bi.push_back(int_matrix(bi[i], "Bi[" + std::to_string(i) + "]"));
    inst.H = int_matrix(get(j, "H"), "H");
    inst.h = int_vector(get(j, "h"), "h");
    inst.u_box = ubox_from_json(get(j, "U_box"), "U_box");
    const json& obj = get(j, "objective");
    inst.objective.c0 = rat_vector(get(obj, "c0"), "objective.c0");
    if (obj.contains("C")) {
      const json& C = obj["C"];
      if (!C.is_array()) fail("objective.C", "expected an array of rows");
      for (std::size_t i = 0; i < C.size(); ++i)
        inst.objective.C.push_back(
            rat_vector(C[i], "objective.C[" + std::to_string(i) + "]"));
    }
    const ValidationReport rep = validate(inst);
    if (!rep.ok()) throw ParseError("invalid instance: " + rep.joined());
    return inst;
  }
  fail("kind", "unknown instance kind '" + kind + "'");
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << to_json(inst).dump(2) << "\n";
}

}  // namespace kadapt
