#pragma once

// Weight families: nonzero scalars indexed by vertices, either explicit or
// generated from the vertex's position (generation, child slot, ...).

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "scalar.hpp"
#include "tree.hpp"

namespace tsl {

// Scalar values by generation n in Z; an empty left side repeats entry 0.
template <class T>
struct ScalarProfile {
  EventuallyPeriodic<T> right;
  EventuallyPeriodic<T> left;

  const T& at(long n) const
  {
    if (n >= 0) return right.at(static_cast<std::size_t>(n));
    if (left.empty()) return right.at(0);
    return left.at(static_cast<std::size_t>(-n - 1));
  }
  std::size_t right_prefix() const { return right.prefix(); }
  std::size_t right_period() const { return right.period; }
  std::size_t left_prefix() const { return left.empty() ? 0 : left.prefix(); }
  std::size_t left_period() const { return left.empty() ? 1 : left.period; }
};

// Builds the profile n -> f(n) given how far each side must be tabulated.
template <class T, class F>
ScalarProfile<T> tabulate_profile(std::size_t rpre, std::size_t rper, std::size_t lpre, std::size_t lper, F f)
{
  ScalarProfile<T> out;
  for (std::size_t i = 0; i < rpre + rper; ++i) out.right.values.push_back(f(static_cast<long>(i)));
  out.right.period = rper;
  for (std::size_t i = 0; i < lpre + lper; ++i) out.left.values.push_back(f(-static_cast<long>(i) - 1));
  out.left.period = lper;
  return out;
}

enum class WeightKind { Constant, Symmetric, Dirichlet, Explicit, ByChild, TwoBranch, Procedural };

inline const char* weight_kind_name(WeightKind k)
{
  switch (k) {
    case WeightKind::Constant: return "constant";
    case WeightKind::Symmetric: return "symmetric";
    case WeightKind::Dirichlet: return "dirichlet";
    case WeightKind::Explicit: return "explicit";
    case WeightKind::ByChild: return "by_child";
    case WeightKind::TwoBranch: return "two_branch";
    case WeightKind::Procedural: return "procedural";
  }
  return "unknown";
}

template <class T>
struct WeightFamily {
  WeightKind kind = WeightKind::Constant;
  T value = T(1);
  ScalarProfile<T> profile;
  double q = 1.0;
  // Explicit values, dense by vertex id; `defined[v] == 0` marks a gap.
  std::vector<T> values;
  std::vector<std::uint8_t> defined;
  std::vector<T> by_child;
  // Two-branch (mixing) weights are tuned to this conjugate exponent.
  Exponent pstar = Exponent::rational(2, 1);
  std::function<T(const Tree&, Vertex)> fn;
  // Set when the inputs carried a sign or complex phase; dynamics only use moduli.
  bool phase = false;

  static WeightFamily constant(T c)
  {
    WeightFamily w;
    w.kind = WeightKind::Constant;
    w.value = c;
    w.validate();
    return w;
  }
  static WeightFamily symmetric(ScalarProfile<T> p)
  {
    WeightFamily w;
    w.kind = WeightKind::Symmetric;
    w.profile = std::move(p);
    w.validate();
    return w;
  }
  static WeightFamily symmetric(std::vector<T> table, std::size_t period = 1)
  {
    ScalarProfile<T> p;
    p.right.values = std::move(table);
    p.right.period = period;
    return symmetric(std::move(p));
  }
  static WeightFamily dirichlet(double q)
  {
    if (!(q >= 1.0)) throw Error(ErrorCode::InvalidSpec, "Dirichlet parameter q must be >= 1");
    WeightFamily w;
    w.kind = WeightKind::Dirichlet;
    w.q = q;
    return w;
  }
  static WeightFamily explicit_values(const std::map<Vertex, T>& vals)
  {
    WeightFamily w;
    w.kind = WeightKind::Explicit;
    for (auto& [v, x] : vals) {
      if (v < 0) throw Error(ErrorCode::InvalidSpec, "negative vertex id in weight map");
      w.set(v, x);
    }
    w.validate();
    return w;
  }
  static WeightFamily explicit_dense(std::vector<T> vals, std::vector<std::uint8_t> def)
  {
    WeightFamily w;
    w.kind = WeightKind::Explicit;
    w.values = std::move(vals);
    w.defined = std::move(def);
    w.defined.resize(w.values.size(), 0);
    w.validate();
    return w;
  }
  void set(Vertex v, const T& x)
  {
    auto i = static_cast<std::size_t>(v);
    if (i >= values.size()) {
      values.resize(i + 1, T(0));
      defined.resize(i + 1, 0);
    }
    values[i] = x;
    defined[i] = 1;
  }
  bool has(Vertex v) const
  {
    auto i = static_cast<std::size_t>(v);
    return v >= 0 && i < defined.size() && defined[i];
  }
  static WeightFamily child_pattern(std::vector<T> vals)
  {
    WeightFamily w;
    w.kind = WeightKind::ByChild;
    w.by_child = std::move(vals);
    w.validate();
    return w;
  }
  static WeightFamily two_branch(Exponent pstar)
  {
    WeightFamily w;
    w.kind = WeightKind::TwoBranch;
    w.pstar = pstar;
    return w;
  }
  static WeightFamily procedural(std::function<T(const Tree&, Vertex)> f)
  {
    WeightFamily w;
    w.kind = WeightKind::Procedural;
    w.fn = std::move(f);
    return w;
  }

  bool is_constant() const { return kind == WeightKind::Constant; }
  bool is_generation_symmetric() const { return kind == WeightKind::Constant || kind == WeightKind::Symmetric; }

  void validate() const
  {
    auto nz = [&](const T& x, const std::string& where) {
      if (x == T(0)) throw Error(ErrorCode::ZeroWeight, "weight is zero at " + where);
    };
    switch (kind) {
      case WeightKind::Constant: nz(value, "constant"); break;
      case WeightKind::Symmetric:
        profile.right.validate("weight table");
        for (auto& x : profile.right.values) nz(x, "symmetric table");
        if (!profile.left.empty()) {
          profile.left.validate("left weight table");
          for (auto& x : profile.left.values) nz(x, "symmetric left table");
        }
        break;
      case WeightKind::Explicit:
        for (std::size_t i = 0; i < values.size(); ++i)
          if (defined[i]) nz(values[i], "vertex " + std::to_string(i));
        break;
      case WeightKind::ByChild:
        if (by_child.empty()) throw Error(ErrorCode::InvalidSpec, "by_child weights need at least one value");
        for (auto& x : by_child) nz(x, "by_child pattern");
        break;
      default: break;
    }
  }
};

// lambda_v.
template <class T>
T weight_at(const WeightFamily<T>& w, const Tree& t, Vertex v)
{
  switch (w.kind) {
    case WeightKind::Constant: return w.value;
    case WeightKind::Symmetric: return w.profile.at(t.generation(v));
    case WeightKind::Dirichlet: {
      if (!t.rooted()) throw Error(ErrorCode::InvalidSpec, "Dirichlet weights need a rooted tree");
      Vertex p = t.parent(v);
      if (p == kNoVertex) return T(1);
      auto d = static_cast<long>(t.outdegree(p));
      long nv = t.generation(p);
      if constexpr (is_exact_v<T>) {
        Rational r = (Rational(nv) + Rational(w.q)) / (Rational(nv + 1) * Rational(d));
        return exact_root(r, 2);
      } else {
        return std::sqrt((static_cast<double>(nv) + w.q) / (static_cast<double>(nv) + 1.0) / static_cast<double>(d));
      }
    }
    case WeightKind::Explicit: {
      if (!w.has(v)) throw Error(ErrorCode::WeightUndefined, "no weight for vertex " + std::to_string(v));
      return w.values[static_cast<std::size_t>(v)];
    }
    case WeightKind::ByChild: {
      if (t.rooted() && v == 0) return T(1);
      return w.by_child[t.child_index(v) % w.by_child.size()];
    }
    case WeightKind::TwoBranch: {
      if (t.rooted() && v == 0) return T(1);
      auto d = t.parent_outdegree(v);
      if (!d) throw Error(ErrorCode::TruncationExceeded, "parent of vertex " + std::to_string(v) + " unknown");
      bool dist = t.child_index(v) == 0;
      if (t.generation(v) <= 0) {
        if (w.pstar.infinite()) return T(1) / T(2);
        return pow_abs(T(1) / (T(2) * T(*d)), reciprocal(w.pstar));
      }
      if (dist) return T(2);
      if (w.pstar.infinite()) return T(1);
      return pow_abs(T(1) / T(*d - 1), reciprocal(w.pstar));
    }
    case WeightKind::Procedural: return w.fn(t, v);
  }
  throw Error(ErrorCode::InvalidSpec, "unknown weight kind");
}

// |lambda_v|^e, exact for Dirichlet and two-branch weights whenever the power
// itself is rational (e.g. e = 2 for Dirichlet, e = p* for two-branch).
template <class T>
T weight_pow(const WeightFamily<T>& w, const Tree& t, Vertex v, const Exponent& e)
{
  if (w.kind == WeightKind::Dirichlet && t.rooted() && t.parent(v) != kNoVertex) {
    Vertex p = t.parent(v);
    auto d = static_cast<long>(t.outdegree(p));
    long nv = t.generation(p);
    T base = (T(nv) + from_double<T>(w.q)) / (T(nv + 1) * T(d));
    return pow_abs(base, times(e, Exponent::rational(1, 2)));
  }
  if (w.kind == WeightKind::TwoBranch && !w.pstar.infinite() && !(t.rooted() && v == 0)) {
    auto d = t.parent_outdegree(v);
    if (!d) throw Error(ErrorCode::TruncationExceeded, "parent of vertex " + std::to_string(v) + " unknown");
    Exponent r = times(e, reciprocal(w.pstar));
    if (t.generation(v) <= 0) return pow_abs(T(1) / (T(2) * T(*d)), r);
    if (t.child_index(v) == 0) return pow_abs(T(2), e);
    return pow_abs(T(1) / T(*d - 1), r);
  }
  return pow_abs(weight_at(w, t, v), e);
}

// lambda(v -> u): product of the weights on the branch from v (exclusive)
// down to u (inclusive).
template <class T>
T path_product(const WeightFamily<T>& w, const Tree& t, Vertex v, Vertex u)
{
  int gv = t.generation(v);
  T prod(1);
  Vertex x = u;
  while (x != v) {
    if (t.generation(x) <= gv)
      throw Error(ErrorCode::NotADescendant,
                  std::to_string(u) + " is not a descendant of " + std::to_string(v));
    prod *= weight_at(w, t, x);
    x = t.parent(x);
    if (x == kNoVertex)
      throw Error(ErrorCode::NotADescendant, std::to_string(u) + " is not a descendant of " + std::to_string(v));
  }
  return prod;
}

inline std::size_t lcm_size(std::size_t a, std::size_t b) { return a / std::gcd(a, b) * b; }

// Moves a space weight into the operator: B_lambda on X(mu) is conjugate to
// B_lambda' on the unweighted space with lambda'_u = lambda_u mu_prt(u) / mu_u.
template <class T>
WeightFamily<T> absorb_mu(const WeightFamily<T>& lambda, const WeightFamily<T>& mu)
{
  if (mu.is_constant()) return lambda;
  if (lambda.is_generation_symmetric() && mu.is_generation_symmetric()) {
    auto lp = lambda.is_constant() ? WeightFamily<T>::symmetric({lambda.value}).profile : lambda.profile;
    auto mp = mu.profile;
    std::size_t rper = lcm_size(lp.right_period(), mp.right_period());
    std::size_t rpre = std::max(lp.right_prefix(), mp.right_prefix() + 1);
    std::size_t lper = lcm_size(lp.left_period(), mp.left_period());
    std::size_t lpre = std::max(lp.left_prefix(), mp.left_prefix()) + 1;
    auto prof = tabulate_profile<T>(rpre, rper, lpre, lper,
                                    [&](long n) { return lp.at(n) * mp.at(n - 1) / mp.at(n); });
    auto out = WeightFamily<T>::symmetric(std::move(prof));
    out.phase = lambda.phase || mu.phase;
    return out;
  }
  auto out = WeightFamily<T>::procedural([lambda, mu](const Tree& t, Vertex u) -> T {
    Vertex p = t.parent(u);
    T mp;
    if (p != kNoVertex) {
      mp = weight_at(mu, t, p);
    } else if (mu.is_generation_symmetric()) {
      mp = mu.is_constant() ? mu.value : mu.profile.at(t.generation(u) - 1);
    } else {
      throw Error(ErrorCode::TruncationExceeded, "space weight of the parent of the top vertex is unknown");
    }
    return weight_at(lambda, t, u) * mp / weight_at(mu, t, u);
  });
  out.phase = lambda.phase || mu.phase;
  return out;
}

template <class U, class T>
WeightFamily<U> convert_weights(const WeightFamily<T>& w)
{
  auto cv = [](const T& x) -> U {
    if constexpr (std::is_same_v<U, T>) return x;
    else if constexpr (std::is_same_v<U, double>) return to_double(x);
    else return from_double<U>(to_double(x));
  };
  WeightFamily<U> o;
  o.kind = w.kind;
  o.value = cv(w.value);
  for (auto& x : w.profile.right.values) o.profile.right.values.push_back(cv(x));
  o.profile.right.period = w.profile.right.period;
  for (auto& x : w.profile.left.values) o.profile.left.values.push_back(cv(x));
  o.profile.left.period = w.profile.left.period;
  o.q = w.q;
  o.values.reserve(w.values.size());
  for (auto& x : w.values) o.values.push_back(cv(x));
  o.defined = w.defined;
  for (auto& x : w.by_child) o.by_child.push_back(cv(x));
  o.pstar = w.pstar;
  if (w.fn) {
    auto f = w.fn;
    o.fn = [f, cv](const Tree& t, Vertex v) { return cv(f(t, v)); };
  }
  o.phase = w.phase;
  return o;
}

// Snapshot of a family on every materialized vertex (top excluded when its
// weight depends on unmaterialized data).
template <class T>
WeightFamily<T> to_explicit(const WeightFamily<T>& w, const Tree& t)
{
  std::vector<T> vals(t.size(), T(1));
  std::vector<std::uint8_t> def(t.size(), 1);
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
    try {
      vals[static_cast<std::size_t>(v)] = weight_at(w, t, v);
    } catch (const Error&) {
      if (v != t.top()) throw;
      def[static_cast<std::size_t>(v)] = 0;
    }
  }
  auto out = WeightFamily<T>::explicit_dense(std::move(vals), std::move(def));
  out.phase = w.phase;
  return out;
}

}  // namespace tsl
