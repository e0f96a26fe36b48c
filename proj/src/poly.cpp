#include "zpath/poly.hpp"

#include <algorithm>
#include <cmath>

namespace zpath {

MultiPoly MultiPoly::constant(int vars, cplx c) {
  MultiPoly p(vars);
  p.add_term(std::vector<unsigned>(vars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int vars, int k) {
  if (k < 0 || k >= vars)
    throw Error(ErrorCode::IndexOutOfRange, "MultiPoly::variable: bad index");
  MultiPoly p(vars);
  std::vector<unsigned> e(vars, 0);
  e[k] = 1;
  p.add_term(std::move(e), 1.0);
  return p;
}

int MultiPoly::degree_in(int k) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[k]));
  return d;
}

int MultiPoly::max_variable_degree() const {
  int d = 0;
  for (int k = 0; k < vars_; ++k) d = std::max(d, degree_in(k));
  return d;
}

void MultiPoly::add_term(std::vector<unsigned> exps, cplx c) {
  if (static_cast<int>(exps.size()) != vars_)
    throw Error(ErrorCode::ShapeMismatch, "MultiPoly::add_term: arity mismatch");
  auto [it, inserted] = terms_.try_emplace(std::move(exps), c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx(0.0)) terms_.erase(it);
  } else if (c == cplx(0.0)) {
    terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r(vars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      std::vector<unsigned> e(vars_);
      for (int k = 0; k < vars_; ++k) e[k] = ea[k] + eb[k];
      r.add_term(std::move(e), ca * cb);
    }
  return r;
}

MultiPoly MultiPoly::scaled(cplx s) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) r.add_term(e, c * s);
  return r;
}

cplx MultiPoly::eval(const std::vector<cplx>& point) const {
  if (static_cast<int>(point.size()) != vars_)
    throw Error(ErrorCode::ShapeMismatch, "MultiPoly::eval: arity mismatch");
  cplx acc = 0.0;
  for (const auto& [e, c] : terms_) {
    cplx term = c;
    for (int k = 0; k < vars_; ++k)
      for (unsigned p = 0; p < e[k]; ++p) term *= point[k];
    acc += term;
  }
  return acc;
}

CMatrix eval_poly(const MultiPoly& p, const MatrixTuple& x) {
  if (static_cast<int>(x.size()) != p.vars())
    throw Error(ErrorCode::ShapeMismatch, "eval_poly: arity mismatch");
  const int n = tuple_size(x, "eval_poly");

  // Power cache per variable, filled lazily up to the needed degree.
  std::vector<std::vector<CMatrix>> pow(x.size());
  auto power = [&](int k, unsigned e) -> const CMatrix& {
    auto& cache = pow[k];
    if (cache.empty()) cache.push_back(CMatrix::identity(n));
    while (cache.size() <= e) cache.push_back(mul(cache.back(), x[k]));
    return cache[e];
  };

  CMatrix acc(n);
  for (const auto& [e, c] : p.terms()) {
    CMatrix term = CMatrix::identity(n);
    term *= c;
    for (int k = 0; k < p.vars(); ++k)
      if (e[k] > 0) term = mul(term, power(k, e[k]));
    acc += term;
  }
  return acc;
}

std::vector<MultiPoly> coordinate_polynomials(
    const std::vector<std::vector<cplx>>& points, double dedup_tol) {
  if (points.empty())
    throw Error(ErrorCode::EmptyZeroSet, "coordinate_polynomials: no points");
  const size_t m = points.front().size();
  std::vector<MultiPoly> out;
  out.reserve(m);
  for (size_t k = 0; k < m; ++k) {
    std::vector<cplx> vals;
    for (const auto& pt : points) vals.push_back(pt[k]);
    std::sort(vals.begin(), vals.end(), [](cplx a, cplx b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    std::vector<cplx> distinct;
    for (const cplx& v : vals)
      if (distinct.empty() || std::abs(v - distinct.back()) > dedup_tol)
        distinct.push_back(v);
    MultiPoly p = MultiPoly::constant(1, 1.0);
    for (const cplx& root : distinct) {
      MultiPoly factor = MultiPoly::variable(1, 0);
      factor.add_term({0}, -root);
      p = p * factor;
    }
    out.push_back(std::move(p));
  }
  return out;
}

RealifiedSystem realify_system(const MultiPolySystem& system,
                               const std::vector<std::vector<cplx>>& zero_points) {
  const int m = system.vars;
  RealifiedSystem out;
  out.system.vars = 2 * m;

  for (const MultiPoly& p : system.polys) {
    MultiPoly expanded(2 * m);
    for (const auto& [e, c] : p.terms()) {
      MultiPoly term = MultiPoly::constant(2 * m, c);
      for (int k = 0; k < m; ++k) {
        if (e[k] == 0) continue;
        MultiPoly binom = MultiPoly::variable(2 * m, k);
        std::vector<unsigned> imag_exp(2 * m, 0);
        imag_exp[m + k] = 1;
        binom.add_term(std::move(imag_exp), cplx(0.0, 1.0));
        for (unsigned pw = 0; pw < e[k]; ++pw) term = term * binom;
      }
      expanded = expanded + term;
    }
    MultiPoly re(2 * m), im(2 * m);
    for (const auto& [e, c] : expanded.terms()) {
      re.add_term(e, cplx(c.real(), 0.0));
      im.add_term(e, cplx(c.imag(), 0.0));
    }
    out.system.polys.push_back(std::move(re));
    out.system.polys.push_back(std::move(im));
  }

  for (const auto& z : zero_points) {
    if (static_cast<int>(z.size()) != m)
      throw Error(ErrorCode::ShapeMismatch, "realify_system: bad zero point");
    std::vector<cplx> img(2 * m);
    for (int k = 0; k < m; ++k) {
      img[k] = cplx(z[k].real(), 0.0);
      img[m + k] = cplx(z[k].imag(), 0.0);
    }
    out.zero_points.push_back(std::move(img));
  }
  return out;
}

}  // namespace zpath
