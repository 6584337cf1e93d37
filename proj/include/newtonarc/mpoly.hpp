#ifndef NEWTONARC_MPOLY_HPP
#define NEWTONARC_MPOLY_HPP

// Sparse multivariate polynomials over a Scalar ring, with the global graded
// lexicographic term order.  No zero coefficients are ever stored, so equality
// is representation equality.

#include <map>
#include <string>
#include <vector>

#include "newtonarc/scalar.hpp"

namespace newtonarc {

class MPoly {
public:
  using Terms = std::map<ExpVec, Scalar, GrlexLess>;

  MPoly() = default;

  static MPoly zero(const RingPtr& ring, std::vector<std::string> vars) {
    MPoly p;
    p.ring_ = ring;
    p.vars_ = std::move(vars);
    return p;
  }

  static MPoly constant(const RingPtr& ring, const std::vector<std::string>& vars,
                        const Scalar& c) {
    MPoly p = zero(ring, vars);
    Scalar cc = Scalar::embed(ring, c);
    if (!cc.is_zero()) p.terms_.emplace(ExpVec(vars.size(), 0), cc);
    return p;
  }

  static MPoly one(const RingPtr& ring, const std::vector<std::string>& vars) {
    return constant(ring, vars, Scalar::one(ring));
  }

  static MPoly variable(const RingPtr& ring, const std::vector<std::string>& vars,
                        const std::string& name) {
    MPoly p = zero(ring, vars);
    ExpVec e(vars.size(), 0);
    e[p.var_index(name)] = 1;
    p.terms_.emplace(std::move(e), Scalar::one(ring));
    return p;
  }

  static MPoly monomial(const RingPtr& ring, const std::vector<std::string>& vars,
                        const ExpVec& exp, const Scalar& c) {
    MPoly p = zero(ring, vars);
    if (exp.size() != vars.size()) fail("invalid-poly", "exponent arity mismatch");
    Scalar cc = Scalar::embed(ring, c);
    if (!cc.is_zero()) p.terms_.emplace(exp, cc);
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::size_t var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    fail("unknown-variable", "variable '" + name + "' is not in the polynomial ring");
  }

  bool has_var(const std::string& name) const {
    for (const auto& v : vars_)
      if (v == name) return true;
    return false;
  }

  // Variables that actually occur with positive exponent.
  std::vector<std::string> used_vars() const {
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) used[i] = true;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (used[i]) out.push_back(vars_[i]);
    return out;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  Scalar constant_coeff() const {
    auto it = terms_.find(ExpVec(vars_.size(), 0));
    return it == terms_.end() ? Scalar::zero(ring_) : it->second;
  }

  // Constant value; error if nonconstant.
  Scalar as_constant() const {
    if (degree() > 0) fail("invalid-poly", "polynomial is not constant");
    return constant_coeff();
  }

  friend MPoly operator-(const MPoly& a) {
    MPoly p = a;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    a.require_compatible(b);
    MPoly p = a;
    for (const auto& [e, c] : b.terms_) p.add_term(e, c);
    return p;
  }

  friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.require_compatible(b);
    MPoly p = zero(a.ring_, a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) p.add_term(exp_add(ea, eb), ca * cb);
    return p;
  }

  friend MPoly operator*(const Scalar& c, const MPoly& a) {
    MPoly p = zero(a.ring_, a.vars_);
    Scalar cc = Scalar::embed(a.ring_, c);
    for (const auto& [e, t] : a.terms_) p.add_term(e, cc * t);
    return p;
  }

  MPoly pow(unsigned e) const {
    MPoly acc = one(ring_, vars_);
    MPoly b = *this;
    while (e) {
      if (e & 1) acc = acc * b;
      b = b * b;
      e >>= 1;
    }
    return acc;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return same_ring(a.ring_, b.ring_) && a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  // Reinterpret in a larger variable list (same ring).
  MPoly lift_vars(const std::vector<std::string>& new_vars) const {
    MPoly p = zero(ring_, new_vars);
    std::vector<std::size_t> pos(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) pos[i] = p.var_index(vars_[i]);
    for (const auto& [e, c] : terms_) {
      ExpVec ne(new_vars.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
      p.terms_.emplace(std::move(ne), c);
    }
    return p;
  }

  // Coefficients embedded into a larger scalar ring.
  MPoly embed_ring(const RingPtr& target) const {
    MPoly p = zero(target, vars_);
    for (const auto& [e, c] : terms_) {
      Scalar cc = Scalar::embed(target, c);
      if (!cc.is_zero()) p.terms_.emplace(e, cc);
    }
    return p;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string coef = it->second.to_string();
      bool neg = false;
      // pull a leading '-' out of plain field coefficients
      if (!coef.empty() && coef[0] == '-' && coef.find_first_of("+- ", 1) == std::string::npos) {
        neg = true;
        coef = coef.substr(1);
      }
      bool composite = coef.find_first_of("+- ") != std::string::npos;
      std::string mono;
      for (std::size_t i = 0; i < it->first.size(); ++i) {
        unsigned e = it->first[i];
        if (!e) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (e > 1) mono += "^" + std::to_string(e);
      }
      std::string term;
      if (mono.empty())
        term = composite ? "(" + coef + ")" : coef;
      else if (coef == "1" && !composite)
        term = mono;
      else if (composite)
        term = "(" + coef + ")*" + mono;
      else
        term = coef + "*" + mono;
      if (out.empty())
        out = (neg ? "-" : "") + term;
      else
        out += (neg ? " - " : " + ") + term;
    }
    return out;
  }

  void add_term(const ExpVec& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

private:
  void require_compatible(const MPoly& o) const {
    if (!same_ring(ring_, o.ring_) || vars_ != o.vars_)
      fail("ring-mismatch", "polynomials live in different rings");
  }

  RingPtr ring_;
  std::vector<std::string> vars_;
  Terms terms_;
};

inline MPoly one_like(const MPoly& p) { return MPoly::one(p.ring(), p.vars()); }

// Formal partial derivative.
inline MPoly partial_derivative(const MPoly& p, const std::string& var) {
  std::size_t vi = p.var_index(var);
  MPoly out = MPoly::zero(p.ring(), p.vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[vi] == 0) continue;
    ExpVec ne = e;
    ne[vi] -= 1;
    out.add_term(ne, Scalar::of_int(p.ring(), e[vi]) * c);
  }
  return out;
}

// Exact division: returns s with s*den == num; throws "not-divisible"
// otherwise.  Requires the leading coefficient of den to be a unit (always
// true over fields, which is the only case the chart construction needs).
inline MPoly exact_divide(const MPoly& num, const MPoly& den) {
  if (den.is_zero()) fail("not-divisible", "division by the zero polynomial");
  if (!same_ring(num.ring(), den.ring()) || num.vars() != den.vars())
    fail("ring-mismatch", "polynomials live in different rings");
  const auto& dlead = *den.terms().rbegin();
  if (!dlead.second.is_unit())
    fail("not-divisible", "leading coefficient of divisor is not a unit");
  Scalar dlc_inv = dlead.second.inverse();
  MPoly rem = num;
  MPoly quo = MPoly::zero(num.ring(), num.vars());
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms().rbegin();
    if (!exp_divides(dlead.first, rlead.first))
      fail("not-divisible", "remainder has leading term " + rem.to_string());
    ExpVec e(rlead.first.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = rlead.first[i] - dlead.first[i];
    Scalar c = rlead.second * dlc_inv;
    MPoly t = MPoly::monomial(num.ring(), num.vars(), e, c);
    quo = quo + t;
    rem = rem - t * den;
  }
  return quo;
}

// ---------------------------------------------------------------------------
// Generic evaluation.  The carrier C must support operator+ and operator*;
// the context turns coefficients into carrier constants (embedding the
// coefficient ring into the point ring where necessary).
// ---------------------------------------------------------------------------

struct ScalarContext {
  RingPtr ring;
  Scalar constant(const Scalar& c) const { return Scalar::embed(ring, c); }
};

struct MPolyContext {
  RingPtr ring;
  std::vector<std::string> vars;
  MPoly constant(const Scalar& c) const { return MPoly::constant(ring, vars, c); }
};

template <class Carrier, class Ctx>
Carrier eval_poly(const MPoly& p, const std::map<std::string, Carrier>& point,
                  const Ctx& ctx) {
  const auto& vars = p.vars();
  // resolve assignments and maximal exponents
  std::vector<const Carrier*> vals(vars.size(), nullptr);
  std::vector<unsigned> maxe(vars.size(), 0);
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < e.size(); ++i) maxe[i] = std::max(maxe[i], e[i]);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (maxe[i] == 0) continue;
    auto it = point.find(vars[i]);
    if (it == point.end())
      fail("missing-variable", "no value for variable '" + vars[i] + "'");
    vals[i] = &it->second;
  }
  // cached powers per variable
  std::vector<std::vector<Carrier>> pows(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!vals[i]) continue;
    pows[i].reserve(maxe[i]);
    for (unsigned k = 1; k <= maxe[i]; ++k)
      pows[i].push_back(k == 1 ? *vals[i] : pows[i].back() * *vals[i]);
  }
  Carrier acc = ctx.constant(Scalar::zero(p.ring()));
  for (const auto& [e, c] : p.terms()) {
    Carrier term = ctx.constant(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term = term * pows[i][e[i] - 1];
    acc = acc + term;
  }
  return acc;
}

inline Scalar eval_at_scalars(const MPoly& p, const std::map<std::string, Scalar>& point,
                              const RingPtr& point_ring) {
  return eval_poly(p, point, ScalarContext{point_ring});
}

// Substitution of polynomials for variables (used by the chart construction).
inline MPoly eval_at_polys(const MPoly& p, const std::map<std::string, MPoly>& point,
                           const RingPtr& ring, const std::vector<std::string>& vars) {
  return eval_poly(p, point, MPolyContext{ring, vars});
}

}  // namespace newtonarc

#endif
