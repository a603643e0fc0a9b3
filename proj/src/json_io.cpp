#include "momext/json_io.hpp"

#include <fstream>

namespace momext {

namespace {

std::runtime_error input_error(const std::string& what) {
  return std::runtime_error("input error: " + what);
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  json data = json::array();
  for (const auto& v : m.data()) data.push_back({v.real(), v.imag()});
  out["data"] = std::move(data);
  return out;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data")) {
    throw input_error("matrix object needs rows, cols, data");
  }
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  const json& data = j.at("data");
  if (!data.is_array() || data.size() != rows * cols) {
    throw input_error("matrix data length does not match rows*cols");
  }
  CVector entries;
  entries.reserve(rows * cols);
  for (const auto& pair : data) {
    if (!pair.is_array() || pair.size() != 2) {
      throw input_error("matrix entries must be [re, im] pairs");
    }
    entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  ComplexMatrix m(rows, cols, std::move(entries));
  if (!m.all_finite()) throw input_error("matrix entries must be finite");
  return m;
}

json conjugation_to_json(const Conjugation& c) {
  json out = matrix_to_json(c.matrix());
  out["kind"] = "conjugation";
  return out;
}

Conjugation conjugation_from_json(const json& j) {
  if (!j.is_object() || j.value("kind", "") != std::string("conjugation")) {
    throw input_error("expected an object with kind == \"conjugation\"");
  }
  return Conjugation(matrix_from_json(j));
}

json tuple_to_json(const CommutingTupleInstance& t) {
  json out;
  out["ambient_dim"] = t.ambient_dim;
  out["domain"] = matrix_to_json(t.a1.domain.basis);
  out["A1_action"] = matrix_to_json(t.a1.action);
  json rest = json::array();
  for (const auto& a : t.a_rest) rest.push_back(matrix_to_json(a));
  out["A_rest"] = std::move(rest);
  json bs = json::array();
  for (const auto& b : t.b_list) bs.push_back(matrix_to_json(b));
  out["B"] = std::move(bs);
  out["J"] = conjugation_to_json(t.j);
  out["z0"] = {t.z0.real(), t.z0.imag()};
  return out;
}

CommutingTupleInstance tuple_from_json(const json& j) {
  if (!j.is_object()) throw input_error("tuple must be an object");
  CommutingTupleInstance t;
  t.ambient_dim = j.at("ambient_dim").get<std::size_t>();
  ComplexMatrix domain = matrix_from_json(j.at("domain"));
  ComplexMatrix action = matrix_from_json(j.at("A1_action"));
  if (domain.rows() != t.ambient_dim || action.rows() != t.ambient_dim ||
      domain.cols() != action.cols()) {
    throw input_error("domain / A1_action shapes do not match ambient_dim");
  }
  Subspace d;
  d.ambient_dim = t.ambient_dim;
  d.basis = std::move(domain);
  const double ortho = unitary_defect(d.basis);
  if (ortho > 1e-8 * static_cast<double>(std::max<std::size_t>(t.ambient_dim, 1))) {
    throw input_error("domain basis is not orthonormal (defect " +
                      std::to_string(ortho) + ")");
  }
  t.a1 = make_partial_symmetric(t.ambient_dim, std::move(d), std::move(action),
                                1e-8);
  for (const auto& a : j.value("A_rest", json::array())) {
    t.a_rest.push_back(matrix_from_json(a));
  }
  for (const auto& b : j.value("B", json::array())) {
    t.b_list.push_back(matrix_from_json(b));
  }
  t.j = conjugation_from_json(j.at("J"));
  if (j.contains("z0")) {
    const json& z = j.at("z0");
    if (!z.is_array() || z.size() != 2) throw input_error("z0 must be [re, im]");
    t.z0 = cplx(z[0].get<double>(), z[1].get<double>());
  }
  for (const auto& a : t.a_rest) {
    if (a.rows() != t.ambient_dim || a.cols() != t.ambient_dim) {
      throw input_error("A_rest member has wrong shape");
    }
  }
  for (const auto& b : t.b_list) {
    if (b.rows() != t.ambient_dim || b.cols() != t.ambient_dim) {
      throw input_error("B member has wrong shape");
    }
  }
  if (t.j.dim() != t.ambient_dim) throw input_error("J has wrong dimension");
  return t;
}

json moment_table_to_json(const MomentTable& s) {
  json out;
  out["r"] = s.r();
  out["l"] = s.l();
  out["m_box"] = s.m_box();
  out["n_box"] = s.n_box();
  json entries = json::array();
  for (const auto& [idx, value] : s.entries()) {
    json e;
    e["m"] = idx.m;
    e["n"] = idx.n;
    e["re"] = value.real();
    e["im"] = value.imag();
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  return out;
}

MomentTable moment_table_from_json(const json& j) {
  if (!j.is_object()) throw input_error("moment table must be an object");
  const auto m_box = j.at("m_box").get<std::vector<int>>();
  const auto n_box = j.at("n_box").get<std::vector<int>>();
  if (j.contains("r") && j.at("r").get<std::size_t>() != m_box.size()) {
    throw input_error("r does not match m_box length");
  }
  if (j.contains("l") && j.at("l").get<std::size_t>() != n_box.size()) {
    throw input_error("l does not match n_box length");
  }
  MomentTable table(m_box, n_box);
  for (const auto& e : j.at("entries")) {
    MonomialIndex idx{e.at("m").get<std::vector<int>>(),
                      e.at("n").get<std::vector<int>>()};
    if (idx.m.size() != table.r() || idx.n.size() != table.l()) {
      throw input_error("moment entry arity mismatch");
    }
    table.set(idx, cplx(e.at("re").get<double>(), e.at("im").get<double>()));
  }
  return table;
}

json measure_to_json(const AtomicMeasure& mu) {
  json out;
  out["r"] = mu.r;
  out["l"] = mu.l;
  json atoms = json::array();
  for (std::size_t a = 0; a < mu.atom_count(); ++a) {
    json atom;
    atom["x"] = mu.x[a];
    atom["phi"] = mu.phi[a];
    atom["weight"] = mu.weights[a];
    atoms.push_back(std::move(atom));
  }
  out["atoms"] = std::move(atoms);
  return out;
}

AtomicMeasure measure_from_json(const json& j) {
  if (!j.is_object()) throw input_error("measure must be an object");
  AtomicMeasure mu;
  mu.r = j.at("r").get<std::size_t>();
  mu.l = j.at("l").get<std::size_t>();
  for (const auto& atom : j.at("atoms")) {
    mu.x.push_back(atom.at("x").get<std::vector<double>>());
    mu.phi.push_back(atom.at("phi").get<std::vector<double>>());
    mu.weights.push_back(atom.at("weight").get<double>());
  }
  mu.validate();
  return mu;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw input_error("cannot parse " + path + ": " + err.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace momext
