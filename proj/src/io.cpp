#include "zpath/io.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace zpath {

namespace {

using nlohmann::json;

json complex_to_json(const cplx& v) { return json::array({v.real(), v.imag()}); }

cplx complex_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorCode::IoError,
                std::string(where) + ": expected [re, im] pair");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const CMatrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.n(); ++j) row.push_back(complex_to_json(a.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorCode::IoError, std::string(where) + ": expected matrix rows");
  const int n = static_cast<int>(j.size());
  CMatrix a(n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != n)
      throw Error(ErrorCode::IoError, std::string(where) + ": ragged matrix rows");
    for (int k = 0; k < n; ++k) a.at(i, k) = complex_from_json(j[i][k], where);
  }
  require_finite(a, where);
  return a;
}

json tuple_to_json(const MatrixTuple& x) {
  json mats = json::array();
  for (const CMatrix& a : x) mats.push_back(matrix_to_json(a));
  json doc;
  doc["m"] = x.size();
  doc["n"] = x.empty() ? 0 : x[0].n();
  doc["matrices"] = std::move(mats);
  return doc;
}

MatrixTuple tuple_from_json(const json& doc, const char* where) {
  if (!doc.contains("m") || !doc.contains("n") || !doc.contains("matrices"))
    throw Error(ErrorCode::IoError,
                std::string(where) + ": missing m/n/matrices fields");
  const auto& mats = doc["matrices"];
  if (!mats.is_array() || mats.size() != doc["m"].get<size_t>())
    throw Error(ErrorCode::IoError,
                std::string(where) + ": component count disagrees with m");
  MatrixTuple x;
  for (const auto& mj : mats) x.push_back(matrix_from_json(mj, where));
  const int n = doc["n"].get<int>();
  for (const CMatrix& a : x)
    if (a.n() != n)
      throw Error(ErrorCode::IoError,
                  std::string(where) + ": matrix size disagrees with n");
  return x;
}

json load_document(const std::string& file) {
  std::ifstream in(file);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open " + file);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded())
    throw Error(ErrorCode::IoError, "invalid JSON in " + file);
  return doc;
}

void write_document(const std::string& file, const json& doc) {
  std::ofstream out(file);
  if (!out)
    throw Error(ErrorCode::IoError, "cannot write " + file);
  out << doc.dump(2) << '\n';
  if (!out)
    throw Error(ErrorCode::IoError, "failed writing " + file);
}

}  // namespace

void save_tuple(const std::string& file, const MatrixTuple& x) {
  write_document(file, tuple_to_json(x));
}

MatrixTuple load_tuple(const std::string& file) {
  return tuple_from_json(load_document(file), "tuple file");
}

void save_constraints(const std::string& file, const MultiPolySystem& system,
                      const ZeroSet& z) {
  json polys = json::array();
  for (const MultiPoly& p : system.polys) {
    json monomials = json::array();
    for (const auto& [exps, coeff] : p.terms()) {
      json mono;
      mono["exps"] = exps;
      mono["coeff"] = complex_to_json(coeff);
      monomials.push_back(std::move(mono));
    }
    polys.push_back(json{{"monomials", std::move(monomials)}});
  }
  json zero = json::array();
  for (const auto& pt : z.points) {
    json row = json::array();
    for (const cplx& v : pt) row.push_back(complex_to_json(v));
    zero.push_back(std::move(row));
  }
  json doc;
  doc["variables"] = system.vars;
  doc["polys"] = std::move(polys);
  doc["zero_set"] = std::move(zero);
  write_document(file, doc);
}

ConstraintData load_constraints(const std::string& file,
                                const ToleranceConfig& tol) {
  const json doc = load_document(file);
  if (!doc.contains("variables") || !doc.contains("polys") ||
      !doc.contains("zero_set"))
    throw Error(ErrorCode::IoError,
                "constraint file: missing variables/polys/zero_set");
  const int vars = doc["variables"].get<int>();
  if (vars <= 0)
    throw Error(ErrorCode::IoError, "constraint file: variables must be positive");

  MultiPolySystem system;
  system.vars = vars;
  for (const auto& pj : doc["polys"]) {
    if (!pj.contains("monomials"))
      throw Error(ErrorCode::IoError, "constraint file: poly without monomials");
    MultiPoly p(vars);
    for (const auto& mono : pj["monomials"]) {
      if (!mono.contains("exps") || !mono.contains("coeff"))
        throw Error(ErrorCode::IoError,
                    "constraint file: monomial needs exps and coeff");
      std::vector<unsigned> exps = mono["exps"].get<std::vector<unsigned>>();
      if (static_cast<int>(exps.size()) != vars)
        throw Error(ErrorCode::IoError,
                    "constraint file: exponent arity mismatch");
      p.add_term(std::move(exps), complex_from_json(mono["coeff"], "coeff"));
    }
    system.polys.push_back(std::move(p));
  }

  std::vector<std::vector<cplx>> points;
  for (const auto& row : doc["zero_set"]) {
    std::vector<cplx> pt;
    for (const auto& v : row) pt.push_back(complex_from_json(v, "zero_set"));
    if (static_cast<int>(pt.size()) != vars)
      throw Error(ErrorCode::IoError, "constraint file: zero point arity mismatch");
    points.push_back(std::move(pt));
  }
  ConstraintData data;
  data.zero_set = validate_zero_set(points, system, tol);
  data.system = std::move(system);
  return data;
}

void save_path(const std::string& file, const MatrixPath& p) {
  json segs = json::array();
  for (const PathSegment& seg : p.segments()) {
    json sj;
    if (const auto* lin = std::get_if<LinearSegment>(&seg)) {
      sj["kind"] = "linear";
      sj["start"] = tuple_to_json(lin->start);
      sj["end"] = tuple_to_json(lin->end);
    } else {
      const auto& c = std::get<ConjugationSegment>(seg);
      sj["kind"] = "conjugation";
      sj["base"] = tuple_to_json(c.base);
      sj["k"] = matrix_to_json(c.k);
      sj["a"] = c.a;
      sj["b"] = c.b;
    }
    segs.push_back(std::move(sj));
  }
  json doc;
  doc["kind"] = "path";
  doc["m"] = p.m();
  doc["n"] = p.n();
  doc["segments"] = std::move(segs);
  write_document(file, doc);
}

MatrixPath load_path(const std::string& file, const ToleranceConfig& tol) {
  const json doc = load_document(file);
  if (doc.value("kind", "") != "path" || !doc.contains("segments"))
    throw Error(ErrorCode::IoError, "path file: missing kind/segments");
  std::vector<PathSegment> segs;
  for (const auto& sj : doc["segments"]) {
    const std::string kind = sj.value("kind", "");
    if (kind == "linear") {
      segs.push_back(LinearSegment{tuple_from_json(sj.at("start"), "path start"),
                                   tuple_from_json(sj.at("end"), "path end")});
    } else if (kind == "conjugation") {
      segs.push_back(make_conjugation(
          tuple_from_json(sj.at("base"), "path base"),
          matrix_from_json(sj.at("k"), "path exponent"), sj.at("a").get<double>(),
          sj.at("b").get<double>(), tol));
    } else {
      throw Error(ErrorCode::IoError, "path file: unknown segment kind");
    }
  }
  return MatrixPath(std::move(segs));
}

void save_certificate(const std::string& file, const PathCertificate& cert) {
  json checks = json::array();
  for (const BoundCheck& c : cert.checks)
    checks.push_back(json{{"name", c.name},
                          {"claimed", c.claimed},
                          {"measured", c.measured},
                          {"pass", c.pass}});
  json doc;
  doc["kind"] = "certificate";
  doc["pass"] = cert.pass;
  doc["samples"] = cert.samples;
  doc["epsilon"] = cert.epsilon;
  doc["poly_gate"] = cert.poly_gate;
  doc["family"] = cert.family == SetFamily::Cube ? "cube" : "disk";
  doc["endpoint_residuals"] =
      json::array({cert.endpoint_residual_start, cert.endpoint_residual_end});
  doc["max_ball_distance"] = cert.max_ball_distance;
  doc["max_ball_excess"] = cert.max_ball_excess;
  doc["max_poly_residual"] = cert.max_poly_residual;
  doc["max_commutator"] = cert.max_commutator;
  doc["max_normality"] = cert.max_normality;
  doc["max_contraction_excess"] = cert.max_contraction_excess;
  doc["frame_defect"] = cert.frame_defect;
  doc["bound_checks"] = std::move(checks);
  doc["tolerances"] = json{{"tol_unitary", cert.tolerances.tol_unitary},
                           {"tol_recon", cert.tolerances.tol_recon},
                           {"tol_commute", cert.tolerances.tol_commute},
                           {"tol_member", cert.tolerances.tol_member},
                           {"tol_cluster", cert.tolerances.tol_cluster}};
  doc["seed"] = cert.seed;
  write_document(file, doc);
}

void save_cpa_report(const std::string& file, const CpaResult& cpa,
                     double requested_delta) {
  json degrees = json::array();
  for (const MultiPoly& p : cpa.minimal_polys)
    degrees.push_back(p.max_variable_degree());
  json doc;
  doc["kind"] = "cpa_report";
  doc["requested_delta"] = requested_delta;
  doc["delta_used"] = cpa.delta_used;
  doc["achieved_distance"] = cpa.achieved_distance;
  doc["max_degree"] = cpa.max_degree;
  doc["component_degrees"] = std::move(degrees);
  doc["distinct_rows"] = cpa.quantized_rows.size();
  write_document(file, doc);
}

void save_sweep_csv(const std::string& file, const SweepReport& report) {
  std::ofstream out(file);
  if (!out)
    throw Error(ErrorCode::IoError, "cannot write " + file);
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "n,delta_used,success,input_distance,margin_ball,margin_poly,"
         "margin_commutator,margin_endpoint,k_norm,margin_k_eps4,"
         "margin_k_eps2,cpa_max_degree,cpa_distance,failure\n";
  for (const SweepRow& r : report.rows) {
    out << r.n << ',' << num(r.delta_used) << ','
        << (r.success ? "true" : "false") << ',' << num(r.input_distance) << ','
        << num(r.margin_ball) << ',' << num(r.margin_poly) << ','
        << num(r.margin_commutator) << ',' << num(r.margin_endpoint) << ','
        << num(r.k_norm) << ',' << num(r.margin_k_eps4) << ','
        << num(r.margin_k_eps2) << ',' << r.cpa_max_degree << ','
        << num(r.cpa_distance) << ',' << r.failure << '\n';
  }
  if (!out)
    throw Error(ErrorCode::IoError, "failed writing " + file);
}

}  // namespace zpath
