#ifndef NEWTONARC_SYSTEM_HPP
#define NEWTONARC_SYSTEM_HPP

// The complete-intersection datum f : A^{n+l} -> A^l with its Jacobian
// apparatus (C = df/dy, Q = det C, the adjugate Chat), and the chart
// polynomials of the associated groupoid:
//
//   Q^r * u = f(x + Q^r xi, y + Q^{r-1} eta) - f(x,y) - Q^{r-1} C eta
//   Q   * v = Q(x + Q^r xi, y + Q^{r-1} eta)
//
// Both divisions are exact in the polynomial ring; a failure would falsify
// the polynomiality claim and surfaces as "not-divisible".

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "newtonarc/matrix.hpp"
#include "newtonarc/mpoly.hpp"
#include "newtonarc/parse.hpp"

namespace newtonarc {

inline std::vector<std::string> coord_names(const std::string& base, unsigned count) {
  std::vector<std::string> out;
  if (count == 1) {
    out.push_back(base);
  } else {
    for (unsigned i = 1; i <= count; ++i) out.push_back(base + std::to_string(i));
  }
  return out;
}

struct ChartPolys {
  unsigned r = 0;
  std::vector<std::string> vars;  // x.., y.., xi.., eta..
  std::vector<std::string> xi_names, eta_names;
  std::vector<MPoly> u;  // l entries
  MPoly v;
};

struct SystemF {
  RingPtr ring;
  unsigned n = 0, l = 0;
  std::vector<std::string> xvars, yvars;
  std::vector<std::string> vars;  // xvars + yvars
  std::vector<MPoly> f;
  SquareMatrix<MPoly> C;     // df/dy
  MPoly Q;                   // det C
  SquareMatrix<MPoly> Chat;  // adjugate, Chat*C = Q*I

  mutable std::mutex chart_mu;
  mutable std::map<unsigned, std::shared_ptr<const ChartPolys>> chart_cache;
};

using SystemPtr = std::shared_ptr<const SystemF>;

inline SystemPtr build_system(std::vector<MPoly> polys, unsigned n, unsigned l) {
  if (polys.empty() || polys.size() != l)
    fail("invalid-system", "need exactly l polynomials");
  if (n < 1 || l < 1) fail("invalid-system", "n and l must be positive");
  auto S = std::make_shared<SystemF>();
  S->ring = polys[0].ring();
  S->n = n;
  S->l = l;
  S->xvars = coord_names("x", n);
  S->yvars = coord_names("y", l);
  S->vars = S->xvars;
  S->vars.insert(S->vars.end(), S->yvars.begin(), S->yvars.end());
  for (auto& p : polys) {
    if (p.vars() != S->vars)
      fail("variable-mismatch",
           "system polynomials must use exactly the variables x_1..x_n, y_1..y_l");
    if (!same_ring(p.ring(), S->ring)) fail("ring-mismatch", "inconsistent base ring");
  }
  S->f = std::move(polys);

  SquareMatrix<MPoly> C(l, MPoly::zero(S->ring, S->vars));
  for (unsigned i = 0; i < l; ++i)
    for (unsigned j = 0; j < l; ++j)
      C.at(i, j) = partial_derivative(S->f[i], S->yvars[j]);
  auto [Q, Chat] = det_and_adjugate(C);
  S->C = std::move(C);
  S->Q = std::move(Q);
  S->Chat = std::move(Chat);
  return S;
}

inline SystemPtr build_system(const std::vector<std::string>& texts, unsigned n,
                              unsigned l, const RingPtr& ring) {
  std::vector<std::string> vars = coord_names("x", n);
  auto yv = coord_names("y", l);
  vars.insert(vars.end(), yv.begin(), yv.end());
  std::vector<MPoly> polys;
  polys.reserve(texts.size());
  for (const auto& t : texts) polys.push_back(parse_poly(t, vars, ring));
  return build_system(std::move(polys), n, l);
}

inline std::shared_ptr<const ChartPolys> chart_polys(const SystemPtr& S, unsigned r) {
  if (r < 2) fail("precondition-violated", "chart polynomials need r >= 2");
  {
    std::lock_guard<std::mutex> lock(S->chart_mu);
    auto it = S->chart_cache.find(r);
    if (it != S->chart_cache.end()) return it->second;
  }
  if (S->Q.is_zero())
    fail("degenerate", "Q = det(df/dy) vanishes identically; no chart exists");

  auto cp = std::make_shared<ChartPolys>();
  cp->r = r;
  cp->xi_names = coord_names("xi", S->n);
  cp->eta_names = coord_names("eta", S->l);
  cp->vars = S->vars;
  cp->vars.insert(cp->vars.end(), cp->xi_names.begin(), cp->xi_names.end());
  cp->vars.insert(cp->vars.end(), cp->eta_names.begin(), cp->eta_names.end());

  const RingPtr& ring = S->ring;
  auto lift = [&](const MPoly& p) { return p.lift_vars(cp->vars); };
  MPoly Qb = lift(S->Q);
  MPoly Qr = Qb.pow(r);
  MPoly Qr1 = Qb.pow(r - 1);

  // substitution x_i -> x_i + Q^r xi_i, y_j -> y_j + Q^{r-1} eta_j
  std::map<std::string, MPoly> shift;
  for (unsigned i = 0; i < S->n; ++i)
    shift.emplace(S->xvars[i], MPoly::variable(ring, cp->vars, S->xvars[i]) +
                                   Qr * MPoly::variable(ring, cp->vars, cp->xi_names[i]));
  for (unsigned j = 0; j < S->l; ++j)
    shift.emplace(S->yvars[j], MPoly::variable(ring, cp->vars, S->yvars[j]) +
                                   Qr1 * MPoly::variable(ring, cp->vars, cp->eta_names[j]));
  MPolyContext ctx{ring, cp->vars};

  for (unsigned i = 0; i < S->l; ++i) {
    MPoly shifted = eval_poly(lift(S->f[i]), shift, ctx);
    MPoly c_eta = MPoly::zero(ring, cp->vars);
    for (unsigned j = 0; j < S->l; ++j)
      c_eta = c_eta + lift(S->C.at(i, j)) *
                          MPoly::variable(ring, cp->vars, cp->eta_names[j]);
    MPoly num = shifted - lift(S->f[i]) - Qr1 * c_eta;
    cp->u.push_back(exact_divide(num, Qr));
  }
  MPoly q_shifted = eval_poly(Qb, shift, ctx);
  cp->v = exact_divide(q_shifted, Qb);

  // sanity of the chart at xi = eta = 0
  std::map<std::string, MPoly> zero_xi_eta;
  for (const auto& nm : cp->xi_names)
    zero_xi_eta.emplace(nm, MPoly::zero(ring, cp->vars));
  for (const auto& nm : cp->eta_names)
    zero_xi_eta.emplace(nm, MPoly::zero(ring, cp->vars));
  for (const auto& nm : S->vars)
    zero_xi_eta.emplace(nm, MPoly::variable(ring, cp->vars, nm));
  if (!(eval_poly(cp->v, zero_xi_eta, ctx) == MPoly::one(ring, cp->vars)))
    fail("internal-error", "v(x,y,0,0) != 1");
  for (const auto& ui : cp->u)
    if (!eval_poly(ui, zero_xi_eta, ctx).is_zero())
      fail("internal-error", "u(x,y,0,0) != 0");

  std::lock_guard<std::mutex> lock(S->chart_mu);
  auto [it, inserted] = S->chart_cache.emplace(r, cp);
  return it->second;
}

}  // namespace newtonarc

#endif
