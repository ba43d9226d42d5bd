#include "gabor/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "gabor/error.hpp"

namespace gabor {

json to_json_complex(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(Errc::ConfigError, "complex numbers are [re, im] arrays");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<PoleTerm> pole_terms_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
    throw Error(Errc::ConfigError, "window document needs a \"terms\" array");
  std::vector<PoleTerm> out;
  for (const auto& t : doc["terms"]) {
    if (!t.is_object() || !t.contains("a") || !t.contains("w"))
      throw Error(Errc::ConfigError, "each term needs \"a\" and \"w\"");
    PoleTerm p;
    p.a = complex_from_json(t["a"]);
    p.w = complex_from_json(t["w"]);
    if (t.contains("j")) {
      if (!t["j"].is_number_integer()) throw Error(Errc::ConfigError, "\"j\" must be an integer");
      p.j = t["j"].get<int>();
    }
    out.push_back(p);
  }
  return out;
}

json window_to_json(const Window& w) {
  json terms = json::array();
  for (const auto& t : terms_of(w))
    terms.push_back({{"a", to_json_complex(t.a)}, {"w", to_json_complex(t.w)}, {"j", t.j}});
  return {{"terms", terms}};
}

json universal_to_json(const UniversalSet& s) {
  const Rational d = density(s);
  return {{"N", s.N},
          {"N1", s.N1},
          {"eps", s.eps},
          {"delta", s.delta},
          {"eps1", s.eps1},
          {"period", s.period()},
          {"base_points", s.base_points()},
          {"density", d.str()},
          {"density_value", d.value()}};
}

PeriodicPointSet point_set_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("base_points") || !doc.contains("period"))
    throw Error(Errc::ConfigError, "point-set document needs \"base_points\" and \"period\"");
  try {
    return PeriodicPointSet(doc["base_points"].get<std::vector<double>>(), doc["period"].get<double>());
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, e.what());
  } catch (const Error& e) {
    throw Error(Errc::ConfigError, e.what());
  }
}

json family_to_json(const SymbolFamily& f) {
  json m = json::array();
  for (const auto& poly : f.m) {
    json terms = json::array();
    for (const auto& t : poly.terms())
      terms.push_back({{"c", to_json_complex(t.c)}, {"w", to_json_complex(t.w)}, {"p", t.p}});
    m.push_back(terms);
  }
  json A = json::array();
  for (const auto& row : f.A) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_json_complex(v));
    A.push_back(r);
  }
  json out{{"M", f.M}, {"general", f.general}, {"m", m}, {"A", A}};
  if (f.general) {
    json tricks = json::array();
    for (const auto& t : f.tricks) {
      json a = json::array();
      for (const auto& row : t.a) {
        json r = json::array();
        for (const auto& v : row) r.push_back(to_json_complex(v));
        a.push_back(r);
      }
      tricks.push_back({{"j", t.j}, {"w", to_json_complex(t.w)}, {"a", a}});
    }
    out["trick_tables"] = tricks;
  }
  return out;
}

json segment_to_json(const Segment& s) {
  json rows = json::array();
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const auto& r = s.rows[i];
    rows.push_back({{"lambda_index", r.lambda_index},
                    {"lambda", r.lambda},
                    {"b", r.b},
                    {"t", r.t},
                    {"role", s.roles[i] == RowRole::Cluster ? "cluster" : "tail"}});
  }
  json matrix = json::array();
  for (std::size_t r = 0; r < s.matrix.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < s.matrix.cols(); ++c) row.push_back(to_json_complex(s.matrix(r, c)));
    matrix.push_back(row);
  }
  json out{{"xi", s.xi}, {"M", s.M}, {"N1", s.N1}, {"period_index", s.period_index},
           {"rows", rows}, {"matrix", matrix}};
  out["erased_row"] = s.erased_row ? json(*s.erased_row) : json(nullptr);
  return out;
}

Segment segment_from_json(const json& doc) {
  try {
    Segment s;
    s.xi = doc.at("xi").get<double>();
    s.M = doc.at("M").get<int>();
    s.N1 = doc.at("N1").get<int>();
    s.period_index = doc.value("period_index", 0L);
    for (const auto& r : doc.at("rows")) {
      s.rows.push_back({r.at("lambda_index").get<long>(), r.at("lambda").get<double>(), r.at("b").get<long>(),
                        r.at("t").get<double>()});
      const auto role = r.at("role").get<std::string>();
      if (role != "cluster" && role != "tail") throw Error(Errc::ConfigError, "unknown row role " + role);
      s.roles.push_back(role == "cluster" ? RowRole::Cluster : RowRole::Tail);
    }
    const auto& m = doc.at("matrix");
    const std::size_t nr = m.size();
    const std::size_t nc = nr ? m[0].size() : 0;
    s.matrix = ComplexMatrix(nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
      if (m[r].size() != nc) throw Error(Errc::ConfigError, "ragged segment matrix");
      for (std::size_t c = 0; c < nc; ++c) s.matrix(r, c) = complex_from_json(m[r][c]);
    }
    if (nr != s.rows.size()) throw Error(Errc::ConfigError, "matrix rows do not match row provenance");
    if (doc.contains("erased_row") && !doc["erased_row"].is_null()) s.erased_row = doc["erased_row"].get<int>();
    return s;
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, e.what());
  }
}

json estimate_summary(const FrameEstimate& e) {
  return {{"A_est", e.A_est}, {"B_est", e.B_est}, {"periods", e.periods}, {"xi_steps", e.xi_steps},
          {"eta", e.eta}, {"xi_at_min", e.xi_at_min}, {"grid_points", e.xi.size()}};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_estimate_csv(std::ostream& os, const FrameEstimate& e) {
  os << "xi,sigma_min,sigma_max\n";
  for (std::size_t i = 0; i < e.xi.size(); ++i)
    os << format_double(e.xi[i]) << ',' << format_double(e.sigma_min[i]) << ',' << format_double(e.sigma_max[i])
       << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ConfigError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, path + ": " + e.what());
  }
}

}  // namespace gabor
