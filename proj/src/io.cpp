#include "gaudin/io.hpp"

#include "gaudin/errors.hpp"

namespace gaudin {

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(cplx c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const Partition& la) { return Json(la.parts()); }

Json to_json(const Weight& w) {
  Json coeffs = Json::array();
  for (const auto& [d, c] : w.coeffs()) coeffs.push_back({d, c});
  return Json{{"level", to_json(w.level())}, {"coeffs", coeffs}};
}

Json to_json(const Algebra& alg) {
  const IndexSet& idx = alg.indices;
  return Json{{"flavor", flavor_name(idx.flavor())}, {"q", idx.q()}, {"m", idx.m()}, {"p", idx.p()},
              {"n", idx.n()}, {"central", alg.central}, {"indices", idx.str()}};
}

Json to_json(const AlgebraElement& x) {
  Json terms = Json::array();
  for (const auto& [e, c] : x.terms()) terms.push_back({e.row.doubled, e.col.doubled, to_json(c)});
  return Json{{"central", to_json(x.central())}, {"terms", terms}};
}

Json to_json(const Matrix& m) {
  Json entries = Json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) entries.push_back({r, c, to_json(m(r, c))});
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

Json to_json(const CVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const CMat& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

Json to_json(const WeightModule& mod, bool with_action) {
  Json weights = Json::array();
  for (int wi = 0; wi < mod.num_weights(); ++wi)
    weights.push_back({{"weight", to_json(mod.weights[wi])},
                       {"dim", mod.weight_dim(wi)},
                       {"height", mod.heights[wi]},
                       {"parity", mod.parities[wi]}});
  Json j{{"algebra", to_json(mod.algebra)},
         {"level", to_json(mod.level)},
         {"provenance", provenance_name(mod.provenance)},
         {"depth", mod.depth},
         {"top", to_json(mod.top)},
         {"dim", mod.dim()},
         {"weights", weights}};
  if (with_action) {
    Json action = Json::array();
    for (const auto& [key, cols] : mod.action) {
      Json entries = Json::array();
      for (size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, x] : cols[c]) entries.push_back({r, c, to_json(x)});
      action.push_back({{"row", key.first}, {"col", key.second}, {"entries", entries}});
    }
    j["action"] = action;
  }
  return j;
}

Json to_json(const SingularSpace& s) {
  return Json{{"weight", to_json(s.block.mu)}, {"weight_dim", s.block.dim()}, {"dim", s.dim()}, {"basis", to_json(s.basis)}};
}

Json to_json(const JointSpectrum& js) {
  Json spectra = Json::array();
  for (const auto& member : js.spectra) {
    Json list = Json::array();
    for (const auto& e : member) list.push_back({{"value", to_json(e.value)}, {"multiplicity", e.multiplicity}});
    spectra.push_back(list);
  }
  Json cert = Json::array();
  for (const auto& c : js.certificates)
    cert.push_back({{"squarefree", c.diagonalizable}, {"charpoly", to_json(c.charpoly)}, {"repeated_factor", to_json(c.repeated_factor)}});
  Json joint = Json::array();
  for (const auto& row : js.joint) {
    Json r = Json::array();
    for (auto v : row) r.push_back(to_json(v));
    joint.push_back(r);
  }
  return Json{{"spectrum", spectra},
              {"joint", joint},
              {"certificates", {{"squarefree", js.diagonalizable}, {"commutators_zero", js.commuting}, {"per_member", cert}}},
              {"residual", js.residual}};
}

Json to_json(const CyclicReport& r) {
  return Json{{"cyclic", r.cyclic}, {"dimension", r.dimension}, {"profile", r.profile}, {"trials", r.trials}};
}

namespace {

Json points(const std::vector<Rational>& z) {
  Json out = Json::array();
  for (const auto& x : z) out.push_back(to_json(x));
  return out;
}

}  // namespace

Json to_json(const SpectrumReport& r) {
  Json per = Json::array();
  for (const auto& s : r.per_i)
    per.push_back({{"charpoly_super", to_json(s.super_charpoly)}, {"charpoly_classical", to_json(s.classical_charpoly)}, {"equal", s.equal}});
  return Json{{"kind", kind_name(r.kind)},
              {"z", points(r.z)},
              {"dims", {{"super", r.dim_super}, {"classical", r.dim_classical}}},
              {"per_i", per},
              {"diagonalizable", {{"super", r.super_diagonalizable}, {"classical", r.classical_diagonalizable}}},
              {"passed", r.passed}};
}

Json to_json(const ShiftReport& r) {
  return Json{{"dim", r.dim}, {"shifts", points(r.shifts)}, {"matrices_match", r.matrices_match}, {"charpolys_match", r.charpolys_match}};
}

Json to_json(const TruncationReport& r) {
  return Json{{"zero", r.zero}, {"dims_match", r.dims_match}, {"intertwines", r.intertwines}, {"passed", r.passed}, {"detail", r.detail}};
}

Json to_json(const KZTruncationReport& r) {
  return Json{{"dim_small", r.dim_small}, {"dim_big", r.dim_big}, {"intertwines", r.intertwines}, {"deviation", r.deviation}};
}

Json to_json(const PathSolution& s) {
  Json path = Json::array();
  for (const auto& p : s.path) {
    Json q = Json::array();
    for (auto c : p) q.push_back(to_json(c));
    path.push_back(q);
  }
  Json samples = Json::array();
  for (const auto& k : s.samples) {
    Json z = Json::array();
    for (auto c : k.z) z.push_back(to_json(c));
    samples.push_back({{"t", k.t}, {"z", z}, {"psi", to_json(k.psi)}, {"norm", k.psi.norm()}});
  }
  return Json{{"path", path}, {"steps", s.steps}, {"samples", samples}};
}

Json to_json(const PartialFraction& f) {
  Json terms = Json::array();
  for (const auto& [key, m] : f.terms()) terms.push_back({{"pole", key.first}, {"order", key.second}, {"matrix", to_json(m)}});
  return Json{{"poles", points(f.poles())}, {"dim", f.dim()}, {"terms", terms}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw PreconditionError("expected a rational string or integer, got " + j.dump());
}

Weight weight_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs")) throw PreconditionError("weight needs a coeffs list");
  Weight w(j.contains("level") ? rational_from_json(j["level"]) : Rational(0));
  for (const auto& e : j["coeffs"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw PreconditionError("weight coefficient entries are [doubled_index, coeff]");
    w.add(HalfIndex{e[0].get<int>()}, e[1].get<long>());
  }
  return w;
}

Partition partition_from_json(const Json& j) {
  if (!j.is_array()) throw PreconditionError("partition must be an integer array");
  std::vector<int> parts;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw PreconditionError("partition must be an integer array");
    parts.push_back(x.get<int>());
  }
  return Partition(parts);
}

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw PreconditionError("complex numbers are [re, im] pairs, got " + j.dump());
}

std::vector<Point> path_from_json(const Json& j, int ell) {
  if (!j.is_array() || j.empty()) throw PreconditionError("path must be a nonempty list of waypoints");
  std::vector<Point> out;
  for (const auto& p : j) {
    if (!p.is_array() || static_cast<int>(p.size()) != ell)
      throw PreconditionError("each waypoint needs " + std::to_string(ell) + " coordinates");
    Point z;
    for (const auto& c : p) z.push_back(complex_from_json(c));
    out.push_back(z);
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace gaudin
