#pragma once

// Reverse Hoelder extremal problem: inf over the l1 unit simplex of the
// weighted l^p (or sup) norm, with explicit minimizers.

#include <vector>

#include "spaces.hpp"

namespace tsl {

enum class ExtremalMode { P1, P, Sup };

inline const char* extremal_mode_name(ExtremalMode m)
{
  switch (m) {
    case ExtremalMode::P1: return "p1";
    case ExtremalMode::P: return "p";
    case ExtremalMode::Sup: return "sup";
  }
  return "?";
}

template <class T>
struct ExtremalProblem {
  std::vector<Vertex> J;
  std::vector<T> mu;
  ExtremalMode mode = ExtremalMode::P;
  Exponent p = Exponent::rational(2, 1);
  // J is a finite piece of a possibly larger index set.
  bool truncated = false;

  void validate() const
  {
    if (J.empty()) throw Error(ErrorCode::InvalidSpec, "extremal problem needs a nonempty index set");
    if (J.size() != mu.size()) throw Error(ErrorCode::InvalidSpec, "index set and weights differ in size");
    for (auto& m : mu)
      if (m == T(0)) throw Error(ErrorCode::ZeroWeight, "extremal weight is zero");
    if (mode == ExtremalMode::P && (p.infinite() || p.is_one()))
      throw Error(ErrorCode::InvalidSpec, "mode p needs 1 < p < infinity");
  }
  // Exponent q with |mu_j|^{-q} the minimizer's shape: p* in mode p, 1 in mode sup.
  Exponent shape() const { return mode == ExtremalMode::Sup ? Exponent::rational(1, 1) : conjugate(p); }
};

template <class T>
ExtremalMode mode_for(const SpaceSpec<T>& s)
{
  if (s.is_sup()) return ExtremalMode::Sup;
  return s.is_l1() ? ExtremalMode::P1 : ExtremalMode::P;
}

// Problem over J with mu read from the space weight.
template <class T>
ExtremalProblem<T> problem_on(const Tree& t, const SpaceSpec<T>& s, std::vector<Vertex> J)
{
  ExtremalProblem<T> pr;
  pr.mode = mode_for(s);
  pr.p = s.p;
  for (Vertex v : J) pr.mu.push_back(weight_at(s.mu, t, v));
  pr.J = std::move(J);
  pr.validate();
  return pr;
}

// Sum_j |mu_j|^{-q}, q the shape exponent (not used in mode p1).
template <class T>
T dual_sum(const ExtremalProblem<T>& pr)
{
  Exponent q = pr.shape();
  T acc(0);
  for (auto& m : pr.mu) acc += pow_abs(T(1) / abs_of(m), q);
  return acc;
}

// infimum^q: exact whenever the dual sum is; min |mu_j| in mode p1.
template <class T>
T infimum_pow(const ExtremalProblem<T>& pr)
{
  pr.validate();
  if (pr.mode == ExtremalMode::P1) {
    T m = abs_of(pr.mu[0]);
    for (auto& x : pr.mu) m = std::min(m, abs_of(x));
    return m;
  }
  return T(1) / dual_sum(pr);
}

template <class T>
T infimum(const ExtremalProblem<T>& pr)
{
  T a = infimum_pow(pr);
  if (pr.mode != ExtremalMode::P) return a;
  return pow_abs(a, reciprocal(pr.shape()));
}

template <class T>
double infimum_value(const ExtremalProblem<T>& pr)
{
  double a = to_double(infimum_pow(pr));
  if (pr.mode != ExtremalMode::P) return a;
  return std::pow(a, 1.0 / pr.shape().value());
}

template <class T>
FinVector<T> minimizer(const ExtremalProblem<T>& pr)
{
  pr.validate();
  FinVector<T> x;
  if (pr.mode == ExtremalMode::P1) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pr.mu.size(); ++i) {
      T a = abs_of(pr.mu[i]), b = abs_of(pr.mu[best]);
      if (a < b || (a == b && pr.J[i] < pr.J[best])) best = i;
    }
    x.set(pr.J[best], T(1));
    return x;
  }
  Exponent q = pr.shape();
  std::vector<T> w;
  T sum(0);
  for (auto& m : pr.mu) {
    w.push_back(pow_abs(T(1) / abs_of(m), q));
    sum += w.back();
  }
  for (std::size_t i = 0; i < w.size(); ++i) x.add(pr.J[i], w[i] / sum);
  return x;
}

// In mode p1 the minimum over a truncation can drop when J grows.
template <class T>
bool epsilon_minimizer(const ExtremalProblem<T>& pr)
{
  return pr.mode == ExtremalMode::P1 && pr.truncated;
}

// Objective at x (x indexed like J): (sum |x_j mu_j|^p)^{1/p}, max, or sum.
template <class T>
double objective(const ExtremalProblem<T>& pr, const std::vector<double>& x)
{
  double acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double y = std::abs(x[i] * to_double(pr.mu[i]));
    if (pr.mode == ExtremalMode::Sup)
      acc = std::max(acc, y);
    else if (pr.mode == ExtremalMode::P1)
      acc += y;
    else
      acc += std::pow(y, pr.p.value());
  }
  return pr.mode == ExtremalMode::P ? std::pow(acc, 1.0 / pr.p.value()) : acc;
}

// objective^p (mode p) or objective (other modes) at a FinVector, in T.
template <class T>
T objective_pow(const ExtremalProblem<T>& pr, const FinVector<T>& x)
{
  T acc(0);
  for (std::size_t i = 0; i < pr.J.size(); ++i) {
    T y = abs_of(x.get(pr.J[i]) * pr.mu[i]);
    if (y == T(0)) continue;
    if (pr.mode == ExtremalMode::Sup)
      acc = std::max(acc, y);
    else if (pr.mode == ExtremalMode::P1)
      acc += y;
    else
      acc += pow_abs(y, pr.p);
  }
  return acc;
}

}  // namespace tsl
