#include "quatkit/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace quatkit::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Format, what); }

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) bad(std::string(what) + ": non-finite number");
  return x;
}

std::size_t count(const json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    bad(std::string(what) + ": expected an integer");
  }
  const auto x = j.get<long long>();
  if (x < 0) bad(std::string(what) + ": negative size");
  return static_cast<std::size_t>(x);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

const json& array(const json& j, const char* what, std::optional<std::size_t> size = {}) {
  if (!j.is_array()) bad(std::string(what) + ": expected an array");
  if (size && j.size() != *size) {
    bad(std::string(what) + ": expected " + std::to_string(*size) + " elements, got " +
        std::to_string(j.size()));
  }
  return j;
}

Vec3 vec3_from_json(const json& j, const char* what) {
  array(j, what, 3);
  return {number(j[0], what), number(j[1], what), number(j[2], what)};
}

}  // namespace

json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

json to_json(const ImaginaryUnit& u) {
  const auto& d = u.direction();
  return json::array({d[0], d[1], d[2]});
}

json to_json(const Frame& f) { return {{"i", to_json(f.i())}, {"j", to_json(f.j())}}; }

json to_json(const QVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

json to_json(const QMatrix& t) {
  json rows = json::array();
  for (std::size_t r = 0; r < t.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < t.size(); ++c) row.push_back(to_json(t(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"n", t.size()}, {"entries", std::move(rows)}};
}

json to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  return {{"n2", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

json to_json(const SplitSpace& s) {
  json basis = json::array();
  for (const auto& b : s.plus_basis) basis.push_back(to_json(b));
  return {{"J", to_json(s.J)}, {"i", to_json(s.i())}, {"plus_basis", std::move(basis)}};
}

json to_json(const StarAlgebra& a) {
  json gens = json::array();
  for (const auto& g : a.generators()) gens.push_back(to_json(g));
  return {{"n", a.n()}, {"generators", std::move(gens)}};
}

json to_json(const Classification& c) {
  json out = {{"kind", to_string(c.kind)}, {"commutant_dim", c.commutant_dim}};
  if (c.J) out["J"] = to_json(*c.J);
  if (c.I) out["I"] = to_json(*c.I);
  if (c.K) out["K"] = to_json(*c.K);
  return out;
}

Quaternion quaternion_from_json(const json& j) {
  array(j, "quaternion", 4);
  return {number(j[0], "quaternion"), number(j[1], "quaternion"), number(j[2], "quaternion"),
          number(j[3], "quaternion")};
}

ImaginaryUnit unit_from_json(const json& j) {
  try {
    return ImaginaryUnit::normalized(vec3_from_json(j, "imaginary unit"));
  } catch (const Error& e) {
    bad(std::string("imaginary unit: ") + e.what());
  }
}

Frame frame_from_json(const json& j) {
  const auto i = vec3_from_json(field(j, "i"), "frame i");
  const auto jj = vec3_from_json(field(j, "j"), "frame j");
  try {
    return Frame(ImaginaryUnit(i, 1e-9), ImaginaryUnit(jj, 1e-9), 1e-9);
  } catch (const Error& e) {
    bad(std::string("frame: ") + e.what());
  }
}

QVector qvector_from_json(const json& j) {
  array(j, "vector");
  QVector v(j.size());
  for (std::size_t m = 0; m < j.size(); ++m) v[m] = quaternion_from_json(j[m]);
  return v;
}

QMatrix qmatrix_from_json(const json& j) {
  const std::size_t n = count(field(j, "n"), "n");
  const json& rows = array(field(j, "entries"), "entries", n);
  QMatrix t(n);
  for (std::size_t r = 0; r < n; ++r) {
    const json& row = array(rows[r], "entries row", n);
    for (std::size_t c = 0; c < n; ++c) t(r, c) = quaternion_from_json(row[c]);
  }
  return t;
}

ComplexMatrix cmatrix_from_json(const json& j) {
  const std::size_t n = count(field(j, "n2"), "n2");
  const json& re = array(field(j, "re"), "re", n * n);
  const json& im = array(field(j, "im"), "im", n * n);
  const auto ni = static_cast<Eigen::Index>(n);
  ComplexMatrix m(ni, ni);
  for (Eigen::Index r = 0; r < ni; ++r)
    for (Eigen::Index c = 0; c < ni; ++c) {
      const auto k = static_cast<std::size_t>(r * ni + c);
      m(r, c) = Complex(number(re[k], "re"), number(im[k], "im"));
    }
  return m;
}

SplitSpace split_space_from_json(const json& j) {
  SplitSpace s{qmatrix_from_json(field(j, "J")), frame_complete(unit_from_json(field(j, "i"))),
               {}};
  for (const auto& b : array(field(j, "plus_basis"), "plus_basis")) {
    s.plus_basis.push_back(qvector_from_json(b));
    if (s.plus_basis.back().size() != s.J.size()) bad("plus_basis vector has the wrong size");
  }
  return s;
}

StarAlgebra star_algebra_from_json(const json& j) {
  const std::size_t n = count(field(j, "n"), "n");
  if (n == 0) bad("n must be positive");
  std::vector<QMatrix> gens;
  for (const auto& g : array(field(j, "generators"), "generators")) {
    gens.push_back(qmatrix_from_json(g));
    if (gens.back().size() != n) bad("generator size differs from n");
  }
  return StarAlgebra(n, std::move(gens));
}

Classification classification_from_json(const json& j) {
  const json& kind = field(j, "kind");
  if (!kind.is_string()) bad("kind: expected a string");
  const auto parsed = algebra_kind_from_string(kind.get<std::string>());
  if (!parsed) bad("unknown algebra kind \"" + kind.get<std::string>() + "\"");
  Classification c;
  c.kind = *parsed;
  c.commutant_dim = count(field(j, "commutant_dim"), "commutant_dim");
  if (j.contains("J")) c.J = qmatrix_from_json(j["J"]);
  if (j.contains("I")) c.I = qmatrix_from_json(j["I"]);
  if (j.contains("K")) c.K = qmatrix_from_json(j["K"]);
  return c;
}

SystemFile system_from_json(const json& j) {
  SystemFile s{star_algebra_from_json(j), {}};
  if (j.contains("evolution")) {
    for (const auto& u : array(j["evolution"], "evolution")) {
      s.evolution.push_back(qmatrix_from_json(u));
      if (s.evolution.back().size() != s.algebra.n()) bad("evolution operator has the wrong size");
    }
  }
  return s;
}

json to_json(const SystemFile& s) {
  json out = to_json(s.algebra);
  if (!s.evolution.empty()) {
    json ev = json::array();
    for (const auto& u : s.evolution) ev.push_back(to_json(u));
    out["evolution"] = std::move(ev);
  }
  return out;
}

json evolution_trace(const std::vector<double>& t, const std::vector<QVector>& states) {
  json norms = json::array();
  json vs = json::array();
  for (const auto& v : states) {
    norms.push_back(norm(v));
    vs.push_back(to_json(v));
  }
  return {{"t", t}, {"states", std::move(vs)}, {"norms", std::move(norms)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

}  // namespace quatkit::io
