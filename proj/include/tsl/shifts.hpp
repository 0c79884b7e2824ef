#pragma once

// Weighted forward/backward shifts: action on finite vectors, operator norms,
// adjoints and the diagonal conjugacy phi_mu.

#include <optional>
#include <string>
#include <vector>

#include "spaces.hpp"

namespace tsl {

enum class Direction { Forward, Backward };

inline const char* direction_name(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

// (S f)(u) = lambda_u f(prt u).
template <class T>
FinVector<T> apply_forward(const Tree& t, const WeightFamily<T>& lambda, const FinVector<T>& f)
{
  FinVector<T> out;
  for (auto& [v, x] : f) {
    if (t.is_frontier(v))
      throw Error(ErrorCode::FrontierHit, "children of vertex " + std::to_string(v) + " are not materialized");
    for (Vertex u : t.children(v)) out.add(u, weight_at(lambda, t, u) * x);
  }
  return out;
}

// (B f)(v) = sum_{u in Chi(v)} lambda_u f(u).
template <class T>
FinVector<T> apply_backward(const Tree& t, const WeightFamily<T>& lambda, const FinVector<T>& f)
{
  FinVector<T> out;
  for (auto& [u, x] : f) {
    Vertex p = t.parent(u);
    if (p == kNoVertex) {
      if (t.rooted()) continue;
      throw Error(ErrorCode::TruncationExceeded, "parent of vertex " + std::to_string(u) + " is beyond the left horizon");
    }
    out.add(p, weight_at(lambda, t, u) * x);
  }
  return out;
}

template <class T>
FinVector<T> apply_forward_pow(const Tree& t, const WeightFamily<T>& lambda, FinVector<T> f, int n)
{
  for (int k = 0; k < n && !f.empty(); ++k) f = apply_forward(t, lambda, f);
  return f;
}

template <class T>
FinVector<T> apply_backward_pow(const Tree& t, const WeightFamily<T>& lambda, FinVector<T> f, int n)
{
  for (int k = 0; k < n && !f.empty(); ++k) f = apply_backward(t, lambda, f);
  return f;
}

template <class T>
struct NormReport {
  Tri bounded = Tri::Unknown;
  // The supremum runs over the whole (infinite) tree rather than the truncation.
  bool exact = false;
  double value = 0.0;
  std::optional<T> value_exact;
  // inner = norm^power, the supremum of the formula before taking the root.
  std::optional<T> inner;
  Exponent power = Exponent::rational(1, 1);
  Vertex arg_sup = kNoVertex;
  std::optional<long> arg_generation;
  int horizon = 0;
  std::string formula;
};

template <class T>
void finish_norm(NormReport<T>& r)
{
  if (r.bounded == Tri::No) {
    r.value = kInf;
    return;
  }
  if (!r.inner) return;
  r.value = r.power.is_one() ? to_double(*r.inner) : std::pow(to_double(*r.inner), 1.0 / r.power.value());
  try {
    r.value_exact = r.power.is_one() ? *r.inner : pow_abs(*r.inner, reciprocal(r.power));
  } catch (const Error&) {
    r.value_exact.reset();
  }
}

inline std::string norm_formula(Direction d, SpaceKind k, bool l1)
{
  if (d == Direction::Forward) return k == SpaceKind::Lp ? "forward-lp" : "forward-sup";
  if (k != SpaceKind::Lp) return "backward-sup";
  return l1 ? "backward-l1" : "backward-lp";
}

// lambda''_v = lambda_v mu_v / mu_prt(v): S_lambda on X(mu) is conjugate to
// S_lambda'' on the unweighted space.
template <class T>
WeightFamily<T> absorb_mu_forward(const WeightFamily<T>& lambda, const WeightFamily<T>& mu)
{
  if (mu.is_constant()) return lambda;
  auto inv = [](const WeightFamily<T>& m) {
    WeightFamily<T> o = m;
    if (o.kind == WeightKind::Constant) o.value = T(1) / o.value;
    for (auto& x : o.profile.right.values) x = T(1) / x;
    for (auto& x : o.profile.left.values) x = T(1) / x;
    if (o.kind == WeightKind::Explicit)
      for (std::size_t i = 0; i < o.values.size(); ++i)
        if (o.defined[i]) o.values[i] = T(1) / o.values[i];
    return o;
  };
  if (mu.kind == WeightKind::Constant || mu.kind == WeightKind::Symmetric || mu.kind == WeightKind::Explicit)
    return absorb_mu(lambda, inv(mu));
  auto out = WeightFamily<T>::procedural([lambda, mu](const Tree& t, Vertex v) -> T {
    Vertex p = t.parent(v);
    if (p == kNoVertex) throw Error(ErrorCode::TruncationExceeded, "space weight of the parent of the top vertex is unknown");
    return weight_at(lambda, t, v) * weight_at(mu, t, v) / weight_at(mu, t, p);
  });
  out.phase = lambda.phase || mu.phase;
  return out;
}

// Generations n realizing every value of (gamma_n, w_n, w_{n+1}) for an
// eventually periodic degree profile and weight profile.
template <class T>
std::vector<long> representative_generations(const DegreeProfile& g, const ScalarProfile<T>& w, bool rooted)
{
  std::vector<long> out;
  std::size_t wper = w.right_period(), wpre = w.right_prefix();
  if (g.kind == DegreeProfile::Kind::Periodic) {
    std::size_t per = lcm_size(g.right.period, wper);
    std::size_t pre = std::max(g.right.prefix(), wpre) + 1;
    for (std::size_t n = 0; n < pre + per; ++n) out.push_back(static_cast<long>(n));
  } else if (g.kind == DegreeProfile::Kind::Geometric) {
    for (std::size_t n = 0; n < wpre + wper + 1; ++n) out.push_back(static_cast<long>(n));
  } else {
    // Stretches grow, so eventually each of low/high meets every weight phase.
    std::set<std::pair<long, std::size_t>> seen;
    std::size_t need = 2 * wper;
    for (long n = 0; n < 4'000'000; ++n) {
      if (static_cast<std::size_t>(n) <= wpre + 1) {
        out.push_back(n);
        continue;
      }
      auto key = std::make_pair(g.at(n), (static_cast<std::size_t>(n) - wpre) % wper);
      if (seen.insert(key).second) out.push_back(n);
      if (seen.size() >= need || (g.low == g.high && seen.size() >= wper)) break;
    }
  }
  if (!rooted) {
    std::size_t gl_pre = g.left.empty() ? 0 : g.left.prefix();
    std::size_t gl_per = g.left.empty() ? 1 : g.left.period;
    std::size_t per = lcm_size(gl_per, w.left_period());
    std::size_t pre = std::max(gl_pre, w.left_prefix()) + 2;
    for (std::size_t i = 1; i <= pre + per; ++i) out.push_back(-static_cast<long>(i));
  }
  return out;
}

inline DegreeProfile profile_of_rule(const ExtensionRule& r)
{
  if (r.kind == ExtensionRule::Kind::Symmetric) return r.gamma;
  DegreeProfile g;
  g.right.values = {r.constant};
  g.right.period = 1;
  return g;
}

// Largest outdegree anywhere on the (possibly infinite) tree when it is known.
inline std::optional<long> known_max_outdegree(const Tree& t, bool& infinite)
{
  infinite = false;
  long m = 0;
  bool frontier = false;
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
    if (t.is_frontier(v))
      frontier = true;
    else
      m = std::max(m, static_cast<long>(t.outdegree(v)));
  }
  if (!t.has_rule()) {
    if (frontier) return std::nullopt;
    return m;
  }
  const auto& r = *t.rule();
  switch (r.kind) {
    case ExtensionRule::Kind::Constant: return std::max(m, r.constant);
    case ExtensionRule::Kind::Symmetric:
      if (r.gamma.unbounded()) {
        infinite = true;
        return std::nullopt;
      }
      return std::max(m, r.gamma.max_value());
    case ExtensionRule::Kind::Table: {
      long x = std::max(m, r.fallback);
      for (auto& [g, row] : r.rows)
        for (long d : row) x = std::max(x, d);
      for (long d : r.left.values) x = std::max(x, d);
      return x;
    }
    case ExtensionRule::Kind::Procedural: return std::nullopt;
  }
  return std::nullopt;
}

template <class T>
std::optional<NormReport<T>> symbolic_norm(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s,
                                           Direction dir)
{
  NormReport<T> r;
  r.formula = norm_formula(dir, s.kind, s.is_l1());
  r.horizon = t.depth_right();
  bool fwd = dir == Direction::Forward;
  bool per_edge = fwd ? s.is_sup() : s.is_l1();
  Exponent e = fwd ? (s.is_sup() ? Exponent::rational(1, 1) : s.p) : (s.is_l1() || s.is_sup() ? Exponent::rational(1, 1) : s.dual());
  r.power = e;
  auto done = [&](const T& inner, std::optional<long> gen) {
    r.inner = inner;
    r.bounded = Tri::Yes;
    r.exact = true;
    r.arg_generation = gen;
    if (gen)
      for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v)
        if (t.generation(v) == *gen && !t.is_frontier(v)) {
          r.arg_sup = v;
          break;
        }
    finish_norm(r);
    return std::optional<NormReport<T>>(r);
  };

  // Dirichlet shift on l2: the per-vertex sum is (n+q)/(n+1), largest at the root.
  if (lambda.kind == WeightKind::Dirichlet && s.mu.is_constant() && t.rooted() && s.kind == SpaceKind::Lp &&
      !s.p.approx && s.p.num == 2 && s.p.den == 1)
    return done(from_double<T>(lambda.q), 0);

  const bool mu_const = s.mu.is_constant();
  if (lambda.kind == WeightKind::ByChild && mu_const && t.pure_rule() &&
      t.rule()->kind == ExtensionRule::Kind::Constant) {
    long n = t.rule()->constant;
    T acc(0);
    for (long i = 0; i < n; ++i) {
      T a = abs_of(lambda.by_child[static_cast<std::size_t>(i) % lambda.by_child.size()]);
      if (per_edge)
        acc = std::max(acc, a);
      else
        acc += pow_abs(a, e);
    }
    return done(acc, std::nullopt);
  }

  WeightFamily<T> w = fwd ? absorb_mu_forward(lambda, s.mu) : absorb_mu(lambda, s.mu);
  if (w.is_generation_symmetric() && t.pure_rule() &&
      (t.rule()->kind == ExtensionRule::Kind::Constant || t.rule()->kind == ExtensionRule::Kind::Symmetric)) {
    DegreeProfile g = profile_of_rule(*t.rule());
    ScalarProfile<T> wp = w.is_constant() ? WeightFamily<T>::symmetric({w.value}).profile : w.profile;
    if (g.unbounded() && !per_edge) {
      r.bounded = Tri::No;
      r.exact = true;
      finish_norm(r);
      return r;
    }
    T best(0);
    std::optional<long> arg;
    bool first = true;
    for (long n : representative_generations(g, wp, t.rooted())) {
      T q;
      if (per_edge) {
        if (t.rooted() && n == 0) continue;
        q = abs_of(wp.at(n));
      } else {
        q = T(g.at(n)) * pow_abs(wp.at(n + 1), e);
      }
      if (first || q > best) {
        best = q;
        arg = per_edge ? n - 1 : n;
        first = false;
      }
    }
    return done(best, arg);
  }

  if (w.is_constant()) {
    bool inf = false;
    auto d = known_max_outdegree(t, inf);
    if (inf && !per_edge) {
      r.bounded = Tri::No;
      r.exact = true;
      finish_norm(r);
      return r;
    }
    if (d) {
      T a = abs_of(w.value);
      return done(per_edge ? a : T(*d) * pow_abs(a, e), std::nullopt);
    }
  }
  return std::nullopt;
}

// Supremum of the norm formula over the materialized vertices: a lower bound
// unless the whole tree is materialized.
template <class T>
NormReport<T> truncated_norm(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s, Direction dir)
{
  NormReport<T> r;
  r.formula = norm_formula(dir, s.kind, s.is_l1());
  r.horizon = t.depth_right();
  bool fwd = dir == Direction::Forward;
  T best(0);
  bool any = false, frontier = false;
  auto consider = [&](const T& q, Vertex v) {
    if (!any || q > best) {
      best = q;
      r.arg_sup = v;
      any = true;
    }
  };
  auto mu = [&](Vertex v) { return abs_of(weight_at(s.mu, t, v)); };
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
    if (t.is_frontier(v)) frontier = true;
    if (fwd) {
      if (s.is_sup()) {
        Vertex p = t.parent(v);
        if (p == kNoVertex) continue;
        consider(abs_of(weight_at(lambda, t, v)) * mu(v) / mu(p), v);
      } else {
        if (t.is_frontier(v)) continue;
        T acc(0);
        for (Vertex u : t.children(v)) acc += weight_pow(lambda, t, u, s.p) * pow_abs(mu(u), s.p);
        consider(acc / pow_abs(mu(v), s.p), v);
      }
    } else if (s.is_l1()) {
      Vertex p = t.parent(v);
      if (p == kNoVertex) continue;
      consider(mu(p) * abs_of(weight_at(lambda, t, v)) / mu(v), v);
    } else {
      if (t.is_frontier(v)) continue;
      Exponent e = s.is_sup() ? Exponent::rational(1, 1) : s.dual();
      T acc(0);
      for (Vertex u : t.children(v)) acc += weight_pow(lambda, t, u, e) / pow_abs(mu(u), e);
      consider(pow_abs(mu(v), e) * acc, v);
    }
  }
  r.power = fwd ? (s.is_sup() ? Exponent::rational(1, 1) : s.p)
                : (s.is_l1() || s.is_sup() ? Exponent::rational(1, 1) : s.dual());
  if (any) {
    r.inner = best;
    r.arg_generation = t.generation(r.arg_sup);
  } else {
    r.inner = T(0);
  }
  bool whole = t.rooted() && !frontier && !t.has_rule();
  r.bounded = whole ? Tri::Yes : Tri::Unknown;
  r.exact = whole;
  finish_norm(r);
  return r;
}

template <class T>
NormReport<T> operator_norm(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s,
                            Direction dir = Direction::Backward)
{
  if (auto r = symbolic_norm(t, lambda, s, dir)) return *r;
  return truncated_norm(t, lambda, s, dir);
}

// |<S f, g> - <f, B g>|; zero for real weights.
template <class T>
T adjoint_residual(const Tree& t, const WeightFamily<T>& lambda, const FinVector<T>& f, const FinVector<T>& g)
{
  T a = pairing(apply_forward(t, lambda, f), g);
  T b = pairing(f, apply_backward(t, lambda, g));
  return abs_of(a - b);
}

template <class T>
FinVector<T> phi(const Tree& t, const WeightFamily<T>& mu, const FinVector<T>& f)
{
  FinVector<T> out;
  for (auto& [v, x] : f) out.set(v, weight_at(mu, t, v) * x);
  return out;
}

// mu with B_lambda on X conjugate to B on X(mu); mu_anchor fixes the scale.
// Walking from the anchor reproduces the product formula through the lowest
// common ancestor of v and the anchor.
template <class T>
WeightFamily<T> mu_from_lambda(const WeightFamily<T>& lambda, const Tree& t, const T& mu_anchor,
                               Direction dir = Direction::Backward)
{
  std::vector<T> mu(t.size(), T(0));
  std::vector<std::uint8_t> def(t.size(), 0);
  mu[0] = mu_anchor;
  def[0] = 1;
  std::vector<Vertex> queue{0};
  bool fwd = dir == Direction::Forward;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    Vertex v = queue[h];
    auto vi = static_cast<std::size_t>(v);
    Vertex p = t.parent(v);
    if (p != kNoVertex && !def[static_cast<std::size_t>(p)]) {
      T l = weight_at(lambda, t, v);
      mu[static_cast<std::size_t>(p)] = fwd ? mu[vi] / l : mu[vi] * l;
      def[static_cast<std::size_t>(p)] = 1;
      queue.push_back(p);
    }
    for (Vertex u : t.children(v)) {
      auto ui = static_cast<std::size_t>(u);
      if (def[ui]) continue;
      T l = weight_at(lambda, t, u);
      mu[ui] = fwd ? mu[vi] * l : mu[vi] / l;
      def[ui] = 1;
      queue.push_back(u);
    }
  }
  auto out = WeightFamily<T>::explicit_dense(std::move(mu), std::move(def));
  out.phase = lambda.phase;
  return out;
}

// lambda_v = mu_prt(v) / mu_v (backward) or mu_v / mu_prt(v) (forward).
template <class T>
WeightFamily<T> lambda_from_mu(const WeightFamily<T>& mu, const Tree& t, Direction dir = Direction::Backward)
{
  std::vector<T> lam(t.size(), T(1));
  std::vector<std::uint8_t> def(t.size(), 0);
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
    Vertex p = t.parent(v);
    if (p == kNoVertex) continue;
    T a = weight_at(mu, t, p), b = weight_at(mu, t, v);
    lam[static_cast<std::size_t>(v)] = dir == Direction::Forward ? b / a : a / b;
    def[static_cast<std::size_t>(v)] = 1;
  }
  return WeightFamily<T>::explicit_dense(std::move(lam), std::move(def));
}

// sup-norm of phi_mu(B f) - B_lambda(phi_mu f), or of the forward analogue.
template <class T>
T conjugacy_residual(const Tree& t, const WeightFamily<T>& lambda, const WeightFamily<T>& mu, const FinVector<T>& f,
                     Direction dir = Direction::Backward)
{
  auto one = WeightFamily<T>::constant(T(1));
  FinVector<T> lhs, rhs;
  if (dir == Direction::Backward) {
    lhs = phi(t, mu, apply_backward(t, one, f));
    rhs = apply_backward(t, lambda, phi(t, mu, f));
  } else {
    lhs = phi(t, mu, apply_forward(t, one, f));
    rhs = apply_forward(t, lambda, phi(t, mu, f));
  }
  return max_abs(lhs - rhs);
}

template <class T>
WeightFamily<T> scale_weights(const WeightFamily<T>& w, const T& c)
{
  WeightFamily<T> o = w;
  switch (w.kind) {
    case WeightKind::Constant: o.value *= c; break;
    case WeightKind::Symmetric:
      for (auto& x : o.profile.right.values) x *= c;
      for (auto& x : o.profile.left.values) x *= c;
      break;
    case WeightKind::Explicit:
      for (auto& x : o.values) x *= c;
      break;
    case WeightKind::ByChild:
      for (auto& x : o.by_child) x *= c;
      break;
    default:
      o = WeightFamily<T>::procedural([w, c](const Tree& t, Vertex v) { return c * weight_at(w, t, v); });
      break;
  }
  o.phase = w.phase || c < T(0);
  return o;
}

// max_v | |mu~_v / mu~_0| - |mu_v / mu_0| | for the conjugating weights of
// c*lambda and lambda; zero for |c| = 1.
template <class T>
T circularity_residual(const Tree& t, const WeightFamily<T>& lambda, const T& c)
{
  auto a = mu_from_lambda(lambda, t, T(1));
  auto b = mu_from_lambda(scale_weights(lambda, c), t, T(1));
  T worst(0);
  for (std::size_t v = 0; v < t.size(); ++v) {
    if (!a.defined[v]) continue;
    worst = std::max(worst, abs_of(abs_of(b.values[v] / b.values[0]) - abs_of(a.values[v] / a.values[0])));
  }
  return worst;
}

}  // namespace tsl
