#pragma once

// Weighted sequence spaces on a tree and finitely supported vectors.

#include <map>
#include <string>
#include <vector>

#include "scalar.hpp"
#include "tree.hpp"
#include "weights.hpp"

namespace tsl {

enum class SpaceKind { Lp, C0, Linf };

template <class T>
struct SpaceSpec {
  SpaceKind kind = SpaceKind::Lp;
  Exponent p = Exponent::rational(2, 1);
  WeightFamily<T> mu = WeightFamily<T>::constant(T(1));

  static SpaceSpec lp(Exponent p)
  {
    if (p.infinite()) return linf();
    if (p.value() < 1.0) throw Error(ErrorCode::InvalidSpec, "p must be >= 1");
    SpaceSpec s;
    s.kind = SpaceKind::Lp;
    s.p = p;
    return s;
  }
  static SpaceSpec lp(std::int64_t num, std::int64_t den = 1) { return lp(Exponent::rational(num, den)); }
  static SpaceSpec c0()
  {
    SpaceSpec s;
    s.kind = SpaceKind::C0;
    s.p = Exponent::infinity();
    return s;
  }
  static SpaceSpec linf()
  {
    SpaceSpec s;
    s.kind = SpaceKind::Linf;
    s.p = Exponent::infinity();
    return s;
  }
  SpaceSpec with_mu(WeightFamily<T> m) const
  {
    SpaceSpec s = *this;
    s.mu = std::move(m);
    return s;
  }

  bool is_l1() const { return kind == SpaceKind::Lp && p.is_one(); }
  bool is_sup() const { return kind != SpaceKind::Lp; }
  // p* = p/(p-1); infinity for l1; 1 for c0 and l-infinity.
  Exponent dual() const
  {
    if (kind != SpaceKind::Lp) return Exponent::rational(1, 1);
    return conjugate(p);
  }
  bool unweighted() const { return mu.is_constant() && abs_of(mu.value) == T(1); }
  std::string name() const
  {
    switch (kind) {
      case SpaceKind::Lp: return "l" + p.str();
      case SpaceKind::C0: return "c0";
      case SpaceKind::Linf: return "linf";
    }
    return "?";
  }
};

// "l1", "l2", "lp:1.5", "lp:3/2", "c0", "linf".
template <class T>
SpaceSpec<T> parse_space(const std::string& s)
{
  if (s == "c0") return SpaceSpec<T>::c0();
  if (s == "linf") return SpaceSpec<T>::linf();
  std::string body;
  if (s.rfind("lp:", 0) == 0)
    body = s.substr(3);
  else if (s.size() > 1 && s[0] == 'l')
    body = s.substr(1);
  else
    throw Error(ErrorCode::InvalidSpec, "unknown space '" + s + "' (use l1, l2, lp:P, c0, linf)");
  if (body == "inf") return SpaceSpec<T>::linf();
  Rational r;
  try {
    r = parse_rational(body);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidSpec, "bad exponent in space '" + s + "'");
  }
  if (r < 1) throw Error(ErrorCode::InvalidSpec, "p must be >= 1");
  BigInt n = boost::multiprecision::numerator(r), d = boost::multiprecision::denominator(r);
  if (n > 1000000 || d > 1000000) return SpaceSpec<T>::lp(Exponent::from_double(to_double(r)));
  return SpaceSpec<T>::lp(Exponent::rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)));
}

// Finitely supported function on vertices; zero entries are never stored.
template <class T>
class FinVector {
 public:
  using Map = std::map<Vertex, T>;

  FinVector() = default;
  static FinVector basis(Vertex v, const T& c = T(1))
  {
    FinVector f;
    f.set(v, c);
    return f;
  }

  T get(Vertex v) const
  {
    auto it = m_.find(v);
    return it == m_.end() ? T(0) : it->second;
  }
  void set(Vertex v, const T& x)
  {
    if (x == T(0))
      m_.erase(v);
    else
      m_[v] = x;
  }
  void add(Vertex v, const T& x)
  {
    if (x == T(0)) return;
    auto [it, ins] = m_.emplace(v, x);
    if (!ins) {
      it->second += x;
      if (it->second == T(0)) m_.erase(it);
    }
  }
  std::size_t size() const { return m_.size(); }
  bool empty() const { return m_.empty(); }
  const Map& entries() const { return m_; }
  typename Map::const_iterator begin() const { return m_.begin(); }
  typename Map::const_iterator end() const { return m_.end(); }
  std::vector<Vertex> support() const
  {
    std::vector<Vertex> s;
    for (auto& [v, x] : m_) s.push_back(v);
    return s;
  }

  FinVector& operator+=(const FinVector& o)
  {
    for (auto& [v, x] : o.m_) add(v, x);
    return *this;
  }
  FinVector& operator-=(const FinVector& o)
  {
    for (auto& [v, x] : o.m_) add(v, -x);
    return *this;
  }
  FinVector& operator*=(const T& c)
  {
    if (c == T(0)) {
      m_.clear();
      return *this;
    }
    for (auto& [v, x] : m_) x *= c;
    return *this;
  }
  friend FinVector operator+(FinVector a, const FinVector& b) { return a += b; }
  friend FinVector operator-(FinVector a, const FinVector& b) { return a -= b; }
  friend FinVector operator*(FinVector a, const T& c) { return a *= c; }
  friend FinVector operator*(const T& c, FinVector a) { return a *= c; }
  friend bool operator==(const FinVector& a, const FinVector& b) { return a.m_ == b.m_; }

 private:
  Map m_;
};

template <class T>
T max_abs(const FinVector<T>& f)
{
  T m(0);
  for (auto& [v, x] : f) m = std::max(m, abs_of(x));
  return m;
}

// sum_v |f(v) mu_v|^p for l^p, sup_v |f(v) mu_v| for c0 / l-infinity.
template <class T>
T norm_pow(const SpaceSpec<T>& s, const FinVector<T>& f, const Tree& t)
{
  T acc(0);
  for (auto& [v, x] : f) {
    T y = abs_of(x * weight_at(s.mu, t, v));
    if (s.is_sup())
      acc = std::max(acc, y);
    else
      acc += pow_abs(y, s.p);
  }
  return acc;
}

template <class T>
T norm(const SpaceSpec<T>& s, const FinVector<T>& f, const Tree& t)
{
  if (f.size() == 1) {
    auto& [v, x] = *f.begin();
    return abs_of(x * weight_at(s.mu, t, v));
  }
  T a = norm_pow(s, f, t);
  if (s.is_sup() || s.p.is_one()) return a;
  return pow_abs(a, reciprocal(s.p));
}

// Norm as a double; safe in exact mode where the root may be irrational.
template <class T>
double norm_value(const SpaceSpec<T>& s, const FinVector<T>& f, const Tree& t)
{
  double a = to_double(norm_pow(s, f, t));
  if (s.is_sup() || s.p.is_one()) return a;
  return std::pow(a, 1.0 / s.p.value());
}

// <f, g> = sum_v f(v) g(v) (real scalars).
template <class T>
T pairing(const FinVector<T>& f, const FinVector<T>& g)
{
  T acc(0);
  const auto& a = f.entries();
  const auto& b = g.entries();
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first)
      ++i;
    else if (j->first < i->first)
      ++j;
    else {
      acc += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return acc;
}

template <class U, class T>
FinVector<U> convert_vector(const FinVector<T>& f)
{
  FinVector<U> o;
  for (auto& [v, x] : f) {
    if constexpr (std::is_same_v<U, double>)
      o.set(v, to_double(x));
    else
      o.set(v, U(x));
  }
  return o;
}

}  // namespace tsl
