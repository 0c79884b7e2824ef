#pragma once

// Diagnostic series and hypercyclicity / mixing verdicts for weighted
// backward shifts, plus the forward-shift obstructions.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "shifts.hpp"

namespace tsl {

enum class Status { Proven, Refuted, Supported, Undetermined };
enum class Property { Hypercyclic, Mixing };

inline const char* status_name(Status s)
{
  switch (s) {
    case Status::Proven: return "Proven";
    case Status::Refuted: return "Refuted";
    case Status::Supported: return "Supported";
    case Status::Undetermined: return "Undetermined";
  }
  return "?";
}
inline const char* property_name(Property p) { return p == Property::Hypercyclic ? "hypercyclic" : "mixing"; }

struct DiagnosticPoint {
  Vertex v = 0;
  int n = 0;
  std::string kind;
  double value = 0;
};

struct Witness {
  std::string rule;
  std::map<std::string, std::string> params;
  std::vector<Vertex> vertices;
  std::vector<DiagnosticPoint> diagnostics;
};

struct Verdict {
  Status status = Status::Undetermined;
  Property property = Property::Hypercyclic;
  int horizon = 0;
  Witness witness;
};

struct Certification {
  Verdict hc;
  Verdict mixing;
  const Verdict& get(Property p) const { return p == Property::Hypercyclic ? hc : mixing; }
};

struct CertifyPolicy {
  int horizon = 24;
  double threshold = 1e3;
  // Vertices within this undirected distance of the anchor are sampled.
  int sample_radius = 4;
  std::size_t max_vertices = 2'000'000;
  bool empirical = true;
};

enum class Aggregate { Sum, Max };

// values[n] = agg over u in Chi^n(v) of |lambda(v->u)|^e for n = 0..H. With
// `partial` the series stops at the first level that is not fully
// materialized; otherwise FrontierHit is thrown.
template <class T>
std::vector<T> branch_series(const Tree& t, const WeightFamily<T>& lambda, Vertex v, int H, const Exponent& e,
                             Aggregate agg, bool partial = false)
{
  std::vector<T> out{T(1)};
  std::vector<std::pair<Vertex, T>> level{{v, T(1)}}, next;
  for (int n = 1; n <= H; ++n) {
    next.clear();
    bool blocked = false;
    for (auto& [x, a] : level) {
      if (t.is_frontier(x)) {
        blocked = true;
        break;
      }
      for (Vertex u : t.children(x)) next.emplace_back(u, a * weight_pow(lambda, t, u, e));
    }
    if (blocked) {
      if (partial) break;
      throw Error(ErrorCode::FrontierHit, "descendants of vertex " + std::to_string(v) + " beyond the horizon");
    }
    T acc(0);
    for (auto& [u, a] : next) acc = agg == Aggregate::Sum ? acc + a : std::max(acc, a);
    out.push_back(acc);
    level.swap(next);
    if (level.empty()) {
      // A leaf ends every branch: all later values vanish.
      while (static_cast<int>(out.size()) <= H) out.push_back(T(0));
      break;
    }
  }
  return out;
}

template <class T>
Exponent diagnostic_exponent(const SpaceSpec<T>& s)
{
  if (s.is_l1()) return Exponent::rational(1, 1);
  return s.dual();
}

template <class T>
Aggregate diagnostic_aggregate(const SpaceSpec<T>& s)
{
  return s.is_l1() ? Aggregate::Max : Aggregate::Sum;
}

// Rooted main diagnostic series for n = 0..H on the unweighted representation.
template <class T>
std::vector<T> main_series(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s, Vertex v, int H,
                           bool partial = false)
{
  auto w = absorb_mu(lambda, s.mu);
  return branch_series(t, w, v, H, diagnostic_exponent(s), diagnostic_aggregate(s), partial);
}

// sup_u |lambda(v->u)| (l1), sum |lambda(v->u)|^{p*} (l^p) or sum |lambda(v->u)| (c0).
template <class T>
T rooted_diagnostic(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s, Vertex v, int n)
{
  return main_series(t, lambda, s, v, n).back();
}

// Lambda_{v,n} = sum_{u in Chi^n(v)} |lambda(v->u)|.
template <class T>
T lambda_big(const Tree& t, const WeightFamily<T>& lambda, Vertex v, int n)
{
  return branch_series(t, lambda, v, n, Exponent::rational(1, 1), Aggregate::Sum).back();
}

template <class T>
struct UnrootedDiagnostic {
  T main;
  T parent;
};

// Parent diagnostic from the main series of w = prt^n(v) at index n.
template <class T>
T parent_from(const Tree& t, const WeightFamily<T>& w, const SpaceSpec<T>& s, Vertex v, Vertex anc, const T& main_w)
{
  Exponent e = diagnostic_exponent(s);
  T den = pow_abs(path_product(w, t, anc, v), e);
  if (s.is_l1()) return std::max(T(1), main_w) / den;
  return (T(1) + main_w) / den;
}

template <class T>
UnrootedDiagnostic<T> unrooted_diagnostics(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s,
                                           Vertex v, int n)
{
  if (t.rooted()) throw Error(ErrorCode::InvalidSpec, "unrooted diagnostics need an unrooted tree");
  auto w = absorb_mu(lambda, s.mu);
  Vertex anc = *ancestor(t, v, n);
  Exponent e = diagnostic_exponent(s);
  auto agg = diagnostic_aggregate(s);
  T main = branch_series(t, w, v, n, e, agg).back();
  T mw = branch_series(t, w, anc, n, e, agg).back();
  return {main, parent_from(t, w, s, v, anc, mw)};
}

template <class T>
struct SufficientReport {
  Vertex v = 0;
  std::vector<int> n;
  std::vector<double> lambda_big;
  // Lambda_{v,n} / |Chi^n(v)|^{1/p}.
  std::vector<double> normalized;
  // |Chi^n(v)|^{-p} sum_u |lambda(v->u)|^{-p}.
  std::vector<double> remark;
  // |lambda(prt^n(v) -> v)| (unrooted only).
  std::vector<double> left_product;
  bool necessary_fires = false;
  bool normalized_fires = false;
  bool remark_fires = false;
  bool left_fires = false;
};

// One-sided tests: the necessary condition Lambda -> infinity and the
// sufficient conditions, judged against `threshold` at the last n.
template <class T>
SufficientReport<T> sufficient_report(const Tree& t, const WeightFamily<T>& lambda, const Exponent& p, Vertex v,
                                      int H, double threshold = 1e3)
{
  SufficientReport<T> r;
  r.v = v;
  double pv = p.infinite() ? 1.0 : p.value();
  std::vector<std::pair<Vertex, double>> level{{v, 1.0}}, next;
  for (int n = 1; n <= H; ++n) {
    next.clear();
    for (auto& [x, a] : level) {
      if (t.is_frontier(x)) throw Error(ErrorCode::FrontierHit, "descendants beyond the horizon");
      for (Vertex u : t.children(x)) next.emplace_back(u, a * std::abs(to_double(weight_at(lambda, t, u))));
    }
    level.swap(next);
    double big = 0, inv = 0;
    for (auto& [u, a] : level) {
      big += a;
      inv += std::pow(a, -pv);
    }
    double cnt = static_cast<double>(level.size());
    r.n.push_back(n);
    r.lambda_big.push_back(big);
    r.normalized.push_back(big / std::pow(cnt, 1.0 / pv));
    r.remark.push_back(inv / std::pow(cnt, pv));
    if (!t.rooted()) {
      try {
        Vertex a = *ancestor(t, v, n);
        r.left_product.push_back(std::abs(to_double(path_product(lambda, t, a, v))));
      } catch (const Error&) {
        r.left_product.push_back(std::nan(""));
      }
    }
  }
  if (!r.n.empty()) {
    r.necessary_fires = r.lambda_big.back() > threshold;
    r.normalized_fires = r.normalized.back() > threshold;
    r.remark_fires = r.remark.back() < 1.0 / threshold;
    r.left_fires = !r.left_product.empty() && r.left_product.back() < 1.0 / threshold;
  }
  return r;
}

namespace detail {

inline Verdict make_verdict(Status s, Property p, const std::string& rule, int horizon = 0)
{
  Verdict v;
  v.status = s;
  v.property = p;
  v.horizon = horizon;
  v.witness.rule = rule;
  return v;
}

inline Certification both(Status hc, Status mix, const std::string& rule, std::map<std::string, std::string> params = {},
                          std::vector<Vertex> vertices = {})
{
  Certification c;
  c.hc = make_verdict(hc, Property::Hypercyclic, rule);
  c.mixing = make_verdict(mix, Property::Mixing, rule);
  c.hc.witness.params = c.mixing.witness.params = std::move(params);
  c.hc.witness.vertices = c.mixing.witness.vertices = std::move(vertices);
  return c;
}

inline Status yes_no(bool b) { return b ? Status::Proven : Status::Refuted; }

// Eventual outdegree D of a Constant or Table rule (all far descendants).
inline std::optional<long> eventual_outdegree(const Tree& t)
{
  if (!t.has_rule()) return std::nullopt;
  const auto& r = *t.rule();
  if (r.kind == ExtensionRule::Kind::Constant) return r.constant;
  if (r.kind == ExtensionRule::Kind::Table) return r.fallback;
  return std::nullopt;
}

// Sign of D |lambda|^e - 1, decided as D^den |lambda|^num vs 1 for rational
// e. Doubles are converted exactly, so only approximate exponents use logs.
template <class T>
int compare_power_one(long D, const T& lam_abs, const Exponent& e)
{
  if (!e.approx && !e.infinite() && e.num <= 4096) {
    Rational x;
    if constexpr (is_exact_v<T>)
      x = lam_abs;
    else
      x = Rational(lam_abs);
    Rational lhs = Rational(ipow(BigInt(D), e.den)) * ipow(x, e.num);
    return lhs > 1 ? 1 : (lhs < 1 ? -1 : 0);
  }
  double y = std::log(static_cast<double>(D)) + e.value() * std::log(to_double(lam_abs));
  return y > 0 ? 1 : (y < 0 ? -1 : 0);
}

template <class T>
int compare_one(const T& x)
{
  return x > T(1) ? 1 : (x < T(1) ? -1 : 0);
}

}  // namespace detail

// Period product of an eventually periodic sequence a_n (n >= 0), computed
// from representative values.
template <class T>
T period_product(const std::function<T(long)>& a, std::size_t pre, std::size_t per)
{
  T prod(1);
  for (std::size_t i = 0; i < per; ++i) prod *= a(static_cast<long>(pre + i));
  return prod;
}

template <class T>
Certification certify_rolewicz(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s)
{
  auto w = absorb_mu(lambda, s.mu);
  if (!w.is_constant()) throw Error(ErrorCode::NotConstantWeight, "Rolewicz certification needs a constant weight");
  T a = abs_of(w.value);
  std::map<std::string, std::string> params{{"lambda", to_string(a)}, {"space", s.name()}};
  if (s.is_l1()) {
    if (!t.rooted()) return detail::both(Status::Refuted, Status::Refuted, "rolewicz-l1-unrooted", params);
    bool ok = a > T(1);
    return detail::both(detail::yes_no(ok), detail::yes_no(ok), "rolewicz-l1", params);
  }
  auto D = detail::eventual_outdegree(t);
  if (!D || !t.pure_rule()) throw Error(ErrorCode::NotSymmetric, "Rolewicz threshold needs a constant or table rule");
  Exponent e = s.dual();
  int c = detail::compare_power_one(*D, a, e);
  bool ok = c > 0;
  params["eventual_outdegree"] = std::to_string(*D);
  params["pstar"] = e.str();
  if (!t.rooted()) {
    auto rep = classify(t);
    if (rep.free_left_end == Tri::Yes) {
      params["free_left_end"] = "yes";
      ok = ok && a < T(1);
    }
  }
  return detail::both(detail::yes_no(ok), detail::yes_no(ok), "rolewicz-threshold", params);
}

// Symmetric tree and weight with eventually periodic profiles:
// a_k = gamma_k |lambda'_{k+1}|^{p*}.
template <class T>
std::optional<Certification> certify_symmetric(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s)
{
  if (!t.pure_rule()) return std::nullopt;
  const auto& rule = *t.rule();
  if (rule.kind != ExtensionRule::Kind::Constant && rule.kind != ExtensionRule::Kind::Symmetric) return std::nullopt;
  auto w = absorb_mu(lambda, s.mu);
  if (!w.is_generation_symmetric()) return std::nullopt;
  DegreeProfile g = profile_of_rule(rule);
  if (g.kind != DegreeProfile::Kind::Periodic) return std::nullopt;
  ScalarProfile<T> wp = w.is_constant() ? WeightFamily<T>::symmetric({w.value}).profile : w.profile;
  Exponent e = s.is_l1() ? Exponent::rational(1, 1) : s.dual();
  bool l1 = s.is_l1();
  // Right side: terms indexed by k >= 0 (gamma_k, lambda_{k+1}).
  std::size_t rper = lcm_size(g.right.period, wp.right_period());
  std::size_t rpre = std::max(g.right.prefix(), wp.right_prefix()) + 1;
  std::function<T(long)> term = [&](long k) {
    T x = pow_abs(wp.at(k + 1), e);
    return l1 ? x : T(g.at(k)) * x;
  };
  T P = period_product<T>(term, rpre, rper);
  std::map<std::string, std::string> params{{"right_period_product", to_string(P)}, {"space", s.name()}};
  bool right_ok = P > T(1);
  if (t.rooted()) {
    auto st = detail::yes_no(right_ok);
    return detail::both(st, st, "symmetric-product", params);
  }
  // Left tail: either branching (some gamma >= 2 in the left period) or the
  // weights over the left window tend to zero.
  std::size_t gl_pre = g.left.empty() ? 0 : g.left.prefix();
  std::size_t gl_per = g.left.empty() ? 1 : g.left.period;
  std::size_t lper = lcm_size(gl_per, wp.left_period());
  std::size_t lpre = std::max(gl_pre, wp.left_prefix()) + 2;
  bool branching = false;
  T L(1);
  for (std::size_t i = 0; i < lper; ++i) {
    long n = -static_cast<long>(lpre + i) - 1;
    if (g.at(n) >= 2) branching = true;
    L *= abs_of(wp.at(n));
  }
  params["left_period_product"] = to_string(L);
  params["left_branching"] = branching ? "yes" : "no";
  bool left_ok = l1 ? L < T(1) : (branching || L < T(1));
  auto st = detail::yes_no(right_ok && left_ok);
  return detail::both(st, st, "symmetric-product", params);
}

// Rooted symmetric tree with stretches of low/high outdegree and a constant
// weight; the period structure is not eventually periodic.
template <class T>
std::optional<Certification> certify_alternating(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s)
{
  if (!t.pure_rule() || !t.rooted() || s.is_l1()) return std::nullopt;
  const auto& rule = *t.rule();
  if (rule.kind != ExtensionRule::Kind::Symmetric || rule.gamma.kind != DegreeProfile::Kind::Alternating)
    return std::nullopt;
  auto w = absorb_mu(lambda, s.mu);
  if (!w.is_constant()) return std::nullopt;
  const auto& g = rule.gamma;
  if (g.r == 1) return std::nullopt;
  double lp = s.dual().value() * std::log(std::abs(to_double(w.value)));
  double u = std::log(static_cast<double>(g.low)) + lp;
  double v = std::log(static_cast<double>(g.high)) + lp;
  double au = static_cast<double>(g.a) * u;
  double C = au + static_cast<double>(g.b) * v;
  double base = C / static_cast<double>(g.r - 1);
  double kp = base + std::max({0.0, au, C});
  double km = base + std::min({0.0, au, C});
  std::map<std::string, std::string> params{{"k_plus", to_string(kp)}, {"k_minus", to_string(km)}};
  auto st = [](double k) {
    if (std::abs(k) < 1e-12) return Status::Undetermined;
    return k > 0 ? Status::Proven : Status::Refuted;
  };
  return detail::both(st(kp), st(km), "symmetric-alternating", params);
}

template <class T>
std::optional<Certification> certify_child_pattern(const Tree& t, const WeightFamily<T>& lambda,
                                                   const SpaceSpec<T>& s)
{
  if (lambda.kind != WeightKind::ByChild || !s.mu.is_constant() || !t.pure_rule() ||
      t.rule()->kind != ExtensionRule::Kind::Constant)
    return std::nullopt;
  long N = t.rule()->constant;
  const auto& a = lambda.by_child;
  std::map<std::string, std::string> params{{"outdegree", std::to_string(N)}};
  if (s.is_l1()) {
    T M(0);
    for (long i = 0; i < N; ++i) M = std::max(M, abs_of(a[static_cast<std::size_t>(i) % a.size()]));
    params["max"] = to_string(M);
    bool ok = M > T(1) && (t.rooted() || M > abs_of(a[0]));
    return detail::both(detail::yes_no(ok), detail::yes_no(ok), "child-pattern", params);
  }
  T S(0);
  for (long i = 0; i < N; ++i) S += pow_abs(a[static_cast<std::size_t>(i) % a.size()], s.dual());
  params["sum"] = to_string(S);
  bool ok = S > T(1) && (t.rooted() || N >= 2);
  return detail::both(detail::yes_no(ok), detail::yes_no(ok), "child-pattern", params);
}

// Re-checks the per-vertex budgets of the two-branch family on the
// materialized tree: sum |lambda_u|^{p*} <= 3^{p*} on generations >= 0 and
// <= 1/2 on generations < 0, with a weight-2 child below every vertex of
// generation >= 0.
template <class T>
bool two_branch_budgets_ok(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s)
{
  Exponent e = s.is_l1() ? Exponent::infinity() : s.dual();
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
    if (t.is_frontier(v)) continue;
    T acc(0);
    bool has2 = false;
    for (Vertex u : t.children(v)) {
      T x = abs_of(weight_at(lambda, t, u));
      if (x == T(2)) has2 = true;
      if (e.infinite())
        acc = std::max(acc, x);
      else
        acc += weight_pow(lambda, t, u, e);
    }
    if (t.generation(v) < 0) {
      if (acc > T(1) / T(2)) return false;
    } else {
      T cap = e.infinite() ? T(3) : pow_abs(T(3), e);
      if (acc > cap || !has2) return false;
    }
  }
  return true;
}

namespace detail {

// Empirical tier: diagnostics on the undirected distance ball around the anchor.
template <class T>
Certification empirical(const Tree& t0, const WeightFamily<T>& lambda, const SpaceSpec<T>& s, const CertifyPolicy& pol)
{
  int radius = pol.sample_radius;
  // Largest feasible horizon.
  Tree t = t0;
  int H = pol.horizon;
  auto ball_of = [&](const Tree& tr) {
    auto d = distance_from_anchor(tr);
    std::vector<Vertex> ball;
    for (Vertex v = 0; v < static_cast<Vertex>(tr.size()); ++v)
      if (d[static_cast<std::size_t>(v)] >= 0 && d[static_cast<std::size_t>(v)] <= radius) ball.push_back(v);
    return ball;
  };
  if (t0.has_rule()) {
    // Grow the horizon until the size limit; growth is geometric, so the
    // failed attempt costs about as much as the successful ones together.
    int best = 0;
    for (int h = 1; h <= pol.horizon; ++h) {
      TreeSpec sp = t0.spec();
      sp.max_vertices = pol.max_vertices;
      sp.depth_right = std::max(sp.depth_right, radius + h);
      sp.depth_left = t0.rooted() ? 0 : std::max(sp.depth_left, radius + h);
      try {
        t = materialize(sp);
        best = h;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SizeLimit) throw;
        break;
      }
    }
    H = best;
    if (H < 1) {
      Certification c = both(Status::Undetermined, Status::Undetermined, "empirical-diagnostics");
      c.hc.witness.params["reason"] = c.mixing.witness.params["reason"] = "size limit";
      return c;
    }
  }
  auto ball = ball_of(t);
  auto w = absorb_mu(lambda, s.mu);
  Exponent e = diagnostic_exponent(s);
  Aggregate agg = diagnostic_aggregate(s);
  bool partial = !t0.has_rule();

  std::map<Vertex, std::vector<T>> cache;
  auto series = [&](Vertex x) -> const std::vector<T>& {
    auto it = cache.find(x);
    if (it != cache.end()) return it->second;
    return cache.emplace(x, branch_series(t, w, x, H, e, agg, partial)).first->second;
  };
  // Horizon actually reached by every sampled series.
  int reach = H;
  std::vector<std::vector<double>> main(ball.size()), par(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    Vertex v = ball[i];
    const auto& ms = series(v);
    for (auto& x : ms) main[i].push_back(to_double(x));
    reach = std::min(reach, static_cast<int>(ms.size()) - 1);
    if (!t.rooted()) {
      par[i].push_back(0);
      Vertex a = v;
      for (int n = 1; n <= H; ++n) {
        a = t.parent(a);
        if (a == kNoVertex) {
          reach = std::min(reach, n - 1);
          break;
        }
        const auto& ws = series(a);
        if (static_cast<int>(ws.size()) <= n) {
          reach = std::min(reach, n - 1);
          break;
        }
        par[i].push_back(to_double(parent_from(t, w, s, v, a, ws[static_cast<std::size_t>(n)])));
      }
    }
  }
  Certification c = both(Status::Undetermined, Status::Undetermined, "empirical-diagnostics");
  c.hc.horizon = c.mixing.horizon = reach;
  std::map<std::string, std::string> params{{"threshold", to_string(pol.threshold)},
                                            {"sample_radius", std::to_string(radius)},
                                            {"sampled", std::to_string(ball.size())},
                                            {"horizon", std::to_string(reach)}};
  c.hc.witness.params = c.mixing.witness.params = params;
  if (reach < 1) return c;
  // S_v = {n : every diagnostic of v exceeds the threshold}.
  std::vector<char> common(static_cast<std::size_t>(reach) + 1, 1);
  common[0] = 0;
  Vertex limiting = ball.empty() ? 0 : ball[0];
  int limiting_count = reach + 1;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    int cnt = 0;
    for (int n = 1; n <= reach; ++n) {
      bool ok = main[i][static_cast<std::size_t>(n)] > pol.threshold;
      if (!t.rooted()) ok = ok && par[i][static_cast<std::size_t>(n)] > pol.threshold;
      if (!ok) common[static_cast<std::size_t>(n)] = 0;
      cnt += ok;
    }
    if (cnt < limiting_count) {
      limiting_count = cnt;
      limiting = ball[i];
    }
  }
  int first = -1;
  for (int n = 1; n <= reach; ++n)
    if (common[static_cast<std::size_t>(n)]) {
      first = n;
      break;
    }
  int tail_start = reach - std::max(1, reach / 4) + 1;
  bool tail = true;
  for (int n = tail_start; n <= reach; ++n) tail = tail && common[static_cast<std::size_t>(n)];
  c.hc.status = first > 0 ? Status::Supported : Status::Undetermined;
  c.mixing.status = tail ? Status::Supported : Status::Undetermined;
  // Excerpt: the limiting vertex, at the last n.
  auto idx = static_cast<std::size_t>(std::find(ball.begin(), ball.end(), limiting) - ball.begin());
  std::vector<DiagnosticPoint> ex;
  for (int n = 1; n <= reach; ++n) {
    ex.push_back({limiting, n, "main", main[idx][static_cast<std::size_t>(n)]});
    if (!t.rooted()) ex.push_back({limiting, n, "parent", par[idx][static_cast<std::size_t>(n)]});
  }
  c.hc.witness.diagnostics = c.mixing.witness.diagnostics = ex;
  c.hc.witness.vertices = c.mixing.witness.vertices = {limiting};
  if (first > 0) c.hc.witness.params["first_common_n"] = std::to_string(first);
  c.mixing.witness.params["tail_start"] = std::to_string(tail_start);
  return c;
}

}  // namespace detail

// Weighted backward shift: exact rules first, then the empirical tier.
template <class T>
Certification certify_backward(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s,
                               const CertifyPolicy& pol = {})
{
  auto rep = classify(t);
  if (!rep.leafless) {
    Vertex leaf = kNoVertex;
    for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v)
      if (!t.is_frontier(v) && t.outdegree(v) == 0) {
        leaf = v;
        break;
      }
    return detail::both(Status::Refuted, Status::Refuted, "leaf-obstruction", {}, {leaf});
  }
  if (s.kind == SpaceKind::Linf) throw Error(ErrorCode::InvalidSpec, "dynamics on l-infinity are not supported");

  auto nr = operator_norm(t, lambda, s, Direction::Backward);
  if (nr.exact && nr.bounded == Tri::No)
    return detail::both(Status::Undetermined, Status::Undetermined, "unbounded-operator");
  if (nr.exact && nr.bounded == Tri::Yes && nr.inner && *nr.inner <= T(1))
    return detail::both(Status::Refuted, Status::Refuted, "norm-at-most-one", {{"norm", to_string(nr.value)}});

  auto w = absorb_mu(lambda, s.mu);
  if (w.is_constant()) {
    if (s.is_l1() || (t.pure_rule() && detail::eventual_outdegree(t))) return certify_rolewicz(t, lambda, s);
  }
  if (auto c = certify_symmetric(t, lambda, s)) return *c;
  if (auto c = certify_alternating(t, lambda, s)) return *c;
  if (lambda.kind == WeightKind::Dirichlet && s.mu.is_constant() && t.rooted() && s.kind == SpaceKind::Lp &&
      !s.p.approx && s.p.num == 2 && s.p.den == 1) {
    bool ok = lambda.q > 1.0;
    return detail::both(detail::yes_no(ok), detail::yes_no(ok), "dirichlet-growth", {{"q", to_string(lambda.q)}});
  }
  if (auto c = certify_child_pattern(t, lambda, s)) return *c;
  if (lambda.kind == WeightKind::TwoBranch && s.mu.is_constant()) {
    Exponent want = s.is_l1() ? Exponent::infinity() : s.dual();
    bool same = want.infinite() ? lambda.pstar.infinite()
                                : (!lambda.pstar.infinite() && std::abs(want.value() - lambda.pstar.value()) < 1e-15);
    if (same && two_branch_budgets_ok(t, lambda, s))
      return detail::both(Status::Proven, Status::Proven, "eventually-2-branch", {{"pstar", want.str()}});
  }
  if (!pol.empirical) return detail::both(Status::Undetermined, Status::Undetermined, "no-exact-rule");
  if constexpr (is_exact_v<T>) {
    SpaceSpec<double> sd;
    sd.kind = s.kind;
    sd.p = s.p;
    sd.mu = convert_weights<double>(s.mu);
    return detail::empirical(t, convert_weights<double>(lambda), sd, pol);
  } else {
    return detail::empirical(t, lambda, s, pol);
  }
}

template <class T>
Verdict certify(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s, Property prop,
                const CertifyPolicy& pol = {})
{
  return certify_backward(t, lambda, s, pol).get(prop);
}

// Orientation reversal of a branchless unrooted tree: S_lambda on Z is
// B_lambda' on the reversed line with lambda'_m = lambda_{1-m}.
template <class T>
WeightFamily<T> reverse_line_weights(const WeightFamily<T>& lambda)
{
  if (lambda.is_constant()) return lambda;
  if (lambda.kind == WeightKind::Symmetric) {
    const auto& pr = lambda.profile;
    std::size_t rpre = pr.left_prefix() + 2, rper = pr.left_period();
    std::size_t lpre = pr.right_prefix() + 1, lper = pr.right_period();
    auto prof = tabulate_profile<T>(rpre, rper, lpre, lper, [&](long m) { return pr.at(1 - m); });
    auto out = WeightFamily<T>::symmetric(std::move(prof));
    out.phase = lambda.phase;
    return out;
  }
  // Keyed by generation: read lambda at generation 1-m of the original line.
  auto out = WeightFamily<T>::procedural([lambda](const Tree& t, Vertex v) -> T {
    int m = 1 - t.generation(v);
    Vertex x = 0;
    while (t.generation(x) < m) {
      if (t.is_frontier(x) || t.outdegree(x) == 0) throw Error(ErrorCode::FrontierHit, "line too short");
      x = t.children(x)[0];
    }
    while (t.generation(x) > m) {
      x = t.parent(x);
      if (x == kNoVertex) throw Error(ErrorCode::TruncationExceeded, "line too short");
    }
    return weight_at(lambda, t, x);
  });
  out.phase = lambda.phase;
  return out;
}

template <class T>
Certification certify_forward(const Tree& t, const WeightFamily<T>& lambda, const SpaceSpec<T>& s,
                              const CertifyPolicy& pol = {})
{
  if (t.rooted()) return detail::both(Status::Refuted, Status::Refuted, "rooted-forward", {}, {0});
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
    if (t.is_frontier(v) || t.outdegree(v) < 2) continue;
    auto ch = t.children(v);
    // (S^n f)(v1) / lambda(v->v1) = (S^n f)(v2) / lambda(v->v2) for every f.
    return detail::both(Status::Refuted, Status::Refuted, "branching-forward",
                        {{"branch_vertex", std::to_string(v)}}, {ch[0], ch[1]});
  }
  auto rep = classify(t);
  if (t.has_rule() && !(rep.max_outdegree_exact && rep.max_outdegree == 1))
    return detail::both(Status::Undetermined, Status::Undetermined, "forward-unresolved");
  // The line Z, possibly truncated: reverse and treat as a backward shift.
  TreeSpec line;
  line.rooted = false;
  line.rule = ExtensionRule::make_constant(1);
  line.depth_right = std::max(t.depth_right(), t.depth_left() + 1);
  line.depth_left = std::max(t.depth_left(), t.depth_right());
  Tree z = build_tree(line);
  WeightFamily<T> rev;
  if (lambda.is_generation_symmetric()) {
    rev = reverse_line_weights(lambda);
  } else {
    // Tabulate the original weights by generation first.
    std::map<int, T> by_gen;
    for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v)
      if (t.parent(v) != kNoVertex || !t.rooted()) {
        try {
          by_gen[t.generation(v)] = weight_at(lambda, t, v);
        } catch (const Error&) {
        }
      }
    rev = WeightFamily<T>::procedural([by_gen](const Tree& tz, Vertex v) -> T {
      auto it = by_gen.find(1 - tz.generation(v));
      if (it == by_gen.end()) throw Error(ErrorCode::TruncationExceeded, "forward weight outside the truncation");
      return it->second;
    });
  }
  SpaceSpec<T> s2 = s;
  if (!s.mu.is_constant()) throw Error(ErrorCode::InvalidSpec, "reversed line needs an unweighted space");
  Certification c = certify_backward(z, rev, s2, pol);
  for (Verdict* v : {&c.hc, &c.mixing}) {
    v->witness.params["via"] = v->witness.rule;
    v->witness.rule = "reversed-line";
  }
  return c;
}

}  // namespace tsl
