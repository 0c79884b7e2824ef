#pragma once

#include <random>
#include <string>

#include <doctest.h>

#include <tsl/tsl.hpp>

namespace th {

using namespace tsl;

inline Tree mk(const std::string& s) { return build_tree(parse_tree_spec(json::parse(s))); }

inline Tree rooted_nary(long n, int depth)
{
  TreeSpec s;
  s.rule = ExtensionRule::make_constant(n);
  s.depth_right = depth;
  return build_tree(s);
}

inline Tree unrooted_nary(long n, int right, int left)
{
  TreeSpec s;
  s.rooted = false;
  s.rule = ExtensionRule::make_constant(n);
  s.depth_right = right;
  s.depth_left = left;
  return build_tree(s);
}

// Random finite rooted tree: vertex i > 0 hangs below a uniform earlier vertex.
inline Tree random_finite(std::mt19937& g, int n)
{
  TreeSpec s;
  for (int i = 1; i < n; ++i) s.edges.emplace_back(std::uniform_int_distribution<int>(0, i - 1)(g), i);
  return build_tree(s);
}

// Random leafless truncation: every vertex of the random seed that is childless
// becomes a frontier vertex continued by a constant rule.
inline Tree random_leafless(std::mt19937& g, int n, long outdeg, int depth)
{
  TreeSpec s;
  for (int i = 1; i < n; ++i) s.edges.emplace_back(std::uniform_int_distribution<int>(0, i - 1)(g), i);
  s.rule = ExtensionRule::make_constant(outdeg);
  s.depth_right = depth;
  return build_tree(s);
}

inline Rational rand_rational(std::mt19937& g, int lo = 1, int hi = 9)
{
  std::uniform_int_distribution<int> d(lo, hi);
  return Rational(d(g), d(g));
}

template <class T>
FinVector<T> random_vector(std::mt19937& g, const Tree& t, int terms, bool only_inner = false)
{
  FinVector<T> f;
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(t.size()) - 1);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  for (int i = 0; i < terms; ++i) {
    Vertex v = pick(g);
    if (only_inner && t.is_frontier(v)) continue;
    int a = num(g);
    if (a == 0) a = 1;
    if constexpr (is_exact_v<T>)
      f.add(v, Rational(a, den(g)));
    else
      f.add(v, static_cast<double>(a) / den(g));
  }
  return f;
}

inline ErrorCode code_of(const std::function<void()>& f)
{
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidSpec;
}

}  // namespace th
