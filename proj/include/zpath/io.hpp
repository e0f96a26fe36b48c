#pragma once

#include <string>

#include "zpath/certify.hpp"

namespace zpath {

// JSON tuple files: { "m", "n", "matrices": [ per-component row-major
// [re, im] grids ] }.  Doubles round-trip exactly.
void save_tuple(const std::string& file, const MatrixTuple& x);
MatrixTuple load_tuple(const std::string& file);

// Constraint files carry the polynomial system and its finite zero set; the
// zero set is re-validated against the system on load.
struct ConstraintData {
  MultiPolySystem system;
  ZeroSet zero_set;
};

void save_constraints(const std::string& file, const MultiPolySystem& system,
                      const ZeroSet& z);
ConstraintData load_constraints(const std::string& file,
                                const ToleranceConfig& tol = {});

// Path files list segments; conjugation exponents are re-validated and their
// eigendecompositions rebuilt on load.
void save_path(const std::string& file, const MatrixPath& p);
MatrixPath load_path(const std::string& file, const ToleranceConfig& tol = {});

void save_certificate(const std::string& file, const PathCertificate& cert);
void save_cpa_report(const std::string& file, const CpaResult& cpa,
                     double requested_delta);
// CSV with one row per sweep dimension; numeric formatting is fixed so
// repeated runs produce byte-identical files.
void save_sweep_csv(const std::string& file, const SweepReport& report);

}  // namespace zpath
