#pragma once

// JSON for polytopes, functions, integrands, measures and reports; CSV for
// reports.

#include "convexfn/measure.hpp"
#include "convexfn/pa_function.hpp"
#include "convexfn/radial.hpp"
#include "convexfn/rec_function.hpp"
#include "convexfn/report.hpp"

#include "json.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace convexfn {

using Json = nlohmann::ordered_json;

namespace detail {

inline Vec vec_from(const Json& a) {
  if (!a.is_array() || a.empty()) throw InputError("json: expected a non-empty array of numbers");
  Vec v(static_cast<Eigen::Index>(a.size()));
  for (size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a.at(i).get<double>();
  return v;
}

inline Json vec_to(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline std::vector<double> doubles_from(const Json& a) {
  if (!a.is_array()) throw InputError("json: expected an array of numbers");
  std::vector<double> out;
  for (const Json& x : a) out.push_back(x.get<double>());
  return out;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InputError(std::string("json: ") + e.what());
  }
}

}  // namespace detail

inline Json to_json(const Polytope& K) {
  Json j;
  j["dim"] = K.dim();
  j["vertices"] = Json::array();
  for (const Vec& v : K.vertices()) j["vertices"].push_back(detail::vec_to(v));
  return j;
}

inline Polytope polytope_from_json(const Json& j) {
  return detail::guarded([&] {
    const int d = j.at("dim").get<int>();
    std::vector<Vec> pts;
    for (const Json& v : j.at("vertices")) {
      pts.push_back(detail::vec_from(v));
      if (pts.back().size() != d) throw InputError("polytope json: vertex dimension differs from dim");
    }
    if (pts.empty()) throw InputError("polytope json: no vertices");
    return Polytope::hull(pts);
  });
}

/// {"n": n, "sites": [[x_1, ..., x_n, value], ...]}
inline Json to_json(const PAFunction& u) {
  Json j;
  j["n"] = u.n();
  j["sites"] = Json::array();
  for (size_t i = 0; i < u.points().size(); ++i) {
    Json s = detail::vec_to(u.points()[i]);
    s.push_back(u.values()[i]);
    j["sites"].push_back(s);
  }
  return j;
}

inline PAFunction pa_from_json(const Json& j) {
  return detail::guarded([&] {
    const int n = j.at("n").get<int>();
    if (n < 1) throw InputError("function json: n must be positive");
    std::vector<Vec> pts;
    std::vector<double> vals;
    for (const Json& s : j.at("sites")) {
      const Vec row = detail::vec_from(s);
      if (row.size() != n + 1) throw InputError("function json: each site needs n coordinates and a value");
      pts.push_back(row.head(n));
      vals.push_back(row[n]);
    }
    if (pts.empty()) throw InputError("function json: no sites");
    return PAFunction(pts, vals);
  });
}

inline Json to_json(const RadialFunction& u) {
  Json j;
  j["n"] = u.n();
  j["breakpoints"] = u.radii();
  j["values"] = u.values();
  return j;
}

inline RadialFunction radial_from_json(const Json& j) {
  return detail::guarded([&] {
    return RadialFunction(j.at("n").get<int>(), detail::doubles_from(j.at("breakpoints")), detail::doubles_from(j.at("values")));
  });
}

inline Json to_json(const Profile& a) {
  Json j;
  j["knots"] = a.knots();
  j["values"] = a.values();
  return j;
}

inline Profile profile_from_json(const Json& j) {
  return detail::guarded([&] { return Profile(detail::doubles_from(j.at("knots")), detail::doubles_from(j.at("values"))); });
}

/// {"kind": "affine-max" | "radial-compact" | "sum", "slopes", "intercepts", "n",
/// "alpha": {"knots", "values"}}
inline Json to_json(const RecFunction& phi) {
  Json j;
  j["kind"] = phi.kind() == RecFunction::Kind::AffineMax ? "affine-max" : phi.kind() == RecFunction::Kind::Sum ? "sum" : "radial-compact";
  j["n"] = phi.n();
  if (phi.has_affine()) {
    j["slopes"] = Json::array();
    for (const Vec& s : phi.affine().slopes) j["slopes"].push_back(detail::vec_to(s));
    j["intercepts"] = phi.affine().intercepts;
  }
  if (phi.has_radial()) j["alpha"] = to_json(phi.alpha());
  return j;
}

inline RecFunction rec_from_json(const Json& j) {
  return detail::guarded([&] {
    const std::string kind = j.at("kind").get<std::string>();
    auto affine = [&] {
      AffineMax a;
      for (const Json& s : j.at("slopes")) a.slopes.push_back(detail::vec_from(s));
      a.intercepts = detail::doubles_from(j.at("intercepts"));
      return a;
    };
    if (kind == "affine-max") return RecFunction::affine_max(affine());
    if (kind == "radial-compact" || kind == "radial") return RecFunction::radial(j.at("n").get<int>(), profile_from_json(j.at("alpha")));
    if (kind == "sum") return RecFunction::sum(affine(), profile_from_json(j.at("alpha")));
    throw InputError("integrand json: unknown kind " + kind);
  });
}

/// {"atoms": [[g_1, ..., g_n, mass], ...]}
inline Json to_json(const AtomicMeasure& m) {
  Json j;
  j["atoms"] = Json::array();
  for (const Atom& a : m.atoms()) {
    Json row = detail::vec_to(a.point);
    row.push_back(a.mass);
    j["atoms"].push_back(row);
  }
  return j;
}

inline AtomicMeasure measure_from_json(const Json& j) {
  return detail::guarded([&] {
    AtomicMeasure m;
    int dim = -1;
    for (const Json& a : j.at("atoms")) {
      const Vec row = detail::vec_from(a);
      if (row.size() < 2) throw InputError("measure json: atom needs a point and a mass");
      if (dim < 0) {
        dim = static_cast<int>(row.size()) - 1;
        m = AtomicMeasure(dim);
      } else if (row.size() != dim + 1) {
        throw InputError("measure json: mixed dimensions");
      }
      m.add(row.head(dim), row[dim]);
    }
    return m;
  });
}

/// "0:1,1:0" -> knots {0, 1}, values {1, 0}.
inline Profile parse_profile(const std::string& text) {
  std::vector<double> knots, values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InputError("profile: expected knot:value pairs, got " + item);
    try {
      knots.push_back(std::stod(item.substr(0, colon)));
      values.push_back(std::stod(item.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw InputError("profile: bad number in " + item);
    }
  }
  if (knots.empty()) throw InputError("profile: empty");
  return Profile(knots, values);
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return detail::guarded([&] { return Json::parse(in); });
}

/// Report JSON; runtime only on request so that replays compare
/// byte-for-byte.
inline Json to_json(const Report& r, bool timing = false) {
  Json j;
  j["statement"] = r.statement;
  j["quantities"] = Json::object();
  for (const auto& [k, v] : r.quantities) j["quantities"][k] = v;
  j["tolerance"] = r.tolerance;
  j["verdict"] = to_string(r.verdict);
  j["seed"] = r.seed;
  j["inputs_digest"] = r.inputs_digest;
  j["note"] = r.note;
  if (timing) j["runtime_seconds"] = r.runtime_seconds;
  return j;
}

inline Json to_json(const std::vector<Report>& rs, bool timing = false) {
  Json a = Json::array();
  for (const Report& r : rs) a.push_back(to_json(r, timing));
  return a;
}

/// One row per quantity.
inline void write_csv(std::ostream& os, const std::vector<Report>& rs) {
  auto quoted = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  os << "statement,verdict,seed,tolerance,inputs_digest,quantity,value\n";
  os.precision(17);
  for (const Report& r : rs)
    for (const auto& [k, v] : r.quantities)
      os << r.statement << ',' << to_string(r.verdict) << ',' << r.seed << ',' << r.tolerance << ',' << r.inputs_digest << ','
         << quoted(k) << ',' << v << '\n';
}

}  // namespace convexfn
