#pragma once

// Right inverses R_n e_v and approximants I_n e_v from the hypercyclicity
// criterion, built on the weighted-space representation X(mu) with the
// unweighted backward shift.

#include <string>
#include <vector>

#include "extremal.hpp"
#include "shifts.hpp"

namespace tsl {

enum class Branch { None, Alpha, Beta };

inline const char* branch_name(Branch b)
{
  switch (b) {
    case Branch::None: return "none";
    case Branch::Alpha: return "alpha";
    case Branch::Beta: return "beta";
  }
  return "?";
}

template <class T>
struct WitnessBundle {
  Vertex v = 0;
  int n = 0;
  // prt^n(v); kNoVertex on rooted trees when it does not exist.
  Vertex top = kNoVertex;
  FinVector<T> R_vec;
  FinVector<T> I_vec;
  Branch branch = Branch::None;
  // M_{v,n}; for l1 the limit form min(|mu_w|, inf |mu_u|) is kept in `bound_pstar`.
  T M = T(0);
  // (2/M): the p*-th power of the guarantee bound (l1: the bound itself).
  T bound_pstar = T(0);
  double bound = 0;
};

// Space weight mu with B_lambda on the unweighted space (or on X(nu))
// conjugate to the plain shift on X(mu).
template <class T>
SpaceSpec<T> mu_space_from_lambda(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s)
{
  auto w = absorb_mu(lambda, s.mu);
  SpaceSpec<T> out = s;
  out.mu = mu_from_lambda(w, t, T(1));
  return out;
}

// g_{v,n}: the extremal minimizer over Chi^n(v); nonnegative with l1 mass 1,
// so B^n g = e_v for the plain shift.
template <class T>
FinVector<T> build_R_witness(const Tree& t, const SpaceSpec<T>& s, Vertex v, int n)
{
  auto J = descendants(t, v, n);
  auto pr = problem_on(t, s, J);
  return minimizer(pr);
}

template <class T>
WitnessBundle<T> build_I_witness(const Tree& t, const SpaceSpec<T>& s, Vertex v, int n)
{
  if (t.rooted()) throw Error(ErrorCode::InvalidSpec, "I-witnesses are defined on unrooted trees");
  WitnessBundle<T> b;
  b.v = v;
  b.n = n;
  auto a = ancestor(t, v, n);
  b.top = *a;
  auto J = descendants(t, b.top, n);
  auto pr = problem_on(t, s, J);
  b.R_vec = build_R_witness(t, s, v, n);
  T mw = abs_of(weight_at(s.mu, t, b.top));
  FinVector<T> ev = FinVector<T>::basis(v);
  if (s.is_l1()) {
    T inf = infimum_pow(pr);
    b.M = std::min(mw, inf);
    b.bound_pstar = b.M;
    b.bound = to_double(b.M);
    if (mw <= inf) {
      b.branch = Branch::Alpha;
      b.I_vec = ev;
    } else {
      b.branch = Branch::Beta;
      b.I_vec = ev - minimizer(pr);
    }
    return b;
  }
  Exponent q = pr.shape();
  T head = pow_abs(T(1) / mw, q);
  b.M = head + dual_sum(pr);
  b.bound_pstar = T(2) / b.M;
  b.bound = std::pow(to_double(b.bound_pstar), 1.0 / q.value());
  // Ties go to alpha.
  if (head * T(2) >= b.M) {
    b.branch = Branch::Alpha;
    b.I_vec = ev;
  } else {
    b.branch = Branch::Beta;
    b.I_vec = ev - minimizer(pr);
  }
  return b;
}

// ||x|| <= bound given ||x||^p (or ||x|| for sup spaces) and bound^{p*}:
// compares without roots where the exponents are rational.
template <class T>
bool norm_within(const SpaceSpec<T>& s, const T& norm_pow_value, const T& bound_pstar)
{
  if (s.is_sup() || s.is_l1()) return norm_pow_value <= bound_pstar;
  // ||x||^{p*} = (||x||^p)^{1/(p-1)}: compare (||x||^p)^den <= (bound^{p*})^num for p-1 = num/den.
  const Exponent& p = s.p;
  if (!p.approx) {
    std::int64_t num = p.num - p.den, den = p.den;
    if (num <= 64 && den <= 64) return ipow(norm_pow_value, den) <= ipow(bound_pstar, num);
  }
  double lhs = std::pow(to_double(norm_pow_value), 1.0 / (p.value() - 1.0));
  return lhs <= to_double(bound_pstar) * (1 + 1e-12);
}

// l1 mass of the nonpositive part h = I - e_v.
template <class T>
T mass(const FinVector<T>& f)
{
  T acc(0);
  for (auto& [v, x] : f) acc += abs_of(x);
  return acc;
}

struct AuditRow {
  Vertex v = 0;
  int n = 0;
  double Bn_ev = 0;
  double R_norm = 0;
  double BR_residual = 0;
  bool has_I = false;
  double I_residual = 0;
  double BI_norm = 0;
  double bound = 0;
  std::string branch;
};

struct AuditReport {
  std::vector<AuditRow> rows;
  // Per basis vertex: R norms nonincreasing along the sequence and strictly
  // smaller at the end.
  std::map<Vertex, bool> R_decay;
  std::map<Vertex, bool> I_decay;
  // B^n R_n e_v = e_v: exactly for rationals, to 1e-12 in double.
  bool exact_identity = true;
};

template <class T>
AuditReport criterion_audit(const Tree& t, const SpaceSpec<T>& s, const std::vector<Vertex>& basis,
                            const std::vector<int>& seq)
{
  AuditReport rep;
  auto one = WeightFamily<T>::constant(T(1));
  for (Vertex v : basis) {
    std::vector<double> rn, in;
    for (int n : seq) {
      AuditRow row;
      row.v = v;
      row.n = n;
      auto ev = FinVector<T>::basis(v);
      row.Bn_ev = norm_value(s, apply_backward_pow(t, one, ev, n), t);
      auto g = build_R_witness(t, s, v, n);
      row.R_norm = norm_value(s, g, t);
      auto back = apply_backward_pow(t, one, g, n) - ev;
      row.BR_residual = back.empty() ? 0.0 : to_double(max_abs(back));
      if (is_exact_v<T> ? !back.empty() : row.BR_residual > 1e-12) rep.exact_identity = false;
      rn.push_back(row.R_norm);
      if (!t.rooted()) {
        auto b = build_I_witness(t, s, v, n);
        row.has_I = true;
        auto d = b.I_vec - ev;
        row.I_residual = d.empty() ? 0.0 : norm_value(s, d, t);
        row.BI_norm = norm_value(s, apply_backward_pow(t, one, b.I_vec, n), t);
        row.bound = b.bound;
        row.branch = branch_name(b.branch);
        in.push_back(std::max(row.I_residual, row.BI_norm));
      }
      rep.rows.push_back(row);
    }
    auto decay = [](const std::vector<double>& x) {
      if (x.size() < 2) return false;
      for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i] > x[i - 1] * (1 + 1e-12)) return false;
      return x.back() < x.front();
    };
    rep.R_decay[v] = decay(rn);
    if (!t.rooted()) rep.I_decay[v] = decay(in);
  }
  return rep;
}

// Audit on the lambda representation: conjugate first.
template <class T>
AuditReport criterion_audit_lambda(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s,
                                   const std::vector<Vertex>& basis, const std::vector<int>& seq)
{
  return criterion_audit(t, mu_space_from_lambda(t, lambda, s), basis, seq);
}

}  // namespace tsl
