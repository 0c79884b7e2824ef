#include "helpers.hpp"
#include "oracles.hpp"

using namespace tsl;

namespace {

template <class T>
ExtremalProblem<T> prob(std::vector<T> mu, ExtremalMode mode, Exponent p = Exponent::rational(2, 1))
{
  ExtremalProblem<T> pr;
  pr.mu = std::move(mu);
  for (std::size_t i = 0; i < pr.mu.size(); ++i) pr.J.push_back(static_cast<Vertex>(i));
  pr.mode = mode;
  pr.p = p;
  return pr;
}

}  // namespace

TEST_CASE("infimum examples")
{
  CHECK(infimum(prob<Rational>({3, 5}, ExtremalMode::P1)) == Rational(3));
  CHECK(infimum_value(prob<Rational>({1, 1}, ExtremalMode::P)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(infimum(prob<Rational>({1, 2}, ExtremalMode::Sup)) == Rational(2, 3));
  // grid over the simplex for max(x, 2(1-x))
  double grid = 1e9;
  for (int i = 0; i <= 30000; ++i) {
    double x = i / 30000.0;
    grid = std::min(grid, std::max(x, 2 * (1 - x)));
  }
  CHECK(grid == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("minimizer examples")
{
  auto m1 = minimizer(prob<Rational>({1, 1}, ExtremalMode::P));
  CHECK(m1.get(0) == Rational(1, 2));
  CHECK(m1.get(1) == Rational(1, 2));
  auto m2 = minimizer(prob<Rational>({1, 2}, ExtremalMode::Sup));
  CHECK(m2.get(0) == Rational(2, 3));
  CHECK(m2.get(1) == Rational(1, 3));
  auto pr = prob<Rational>({1, 2}, ExtremalMode::P);
  auto m3 = minimizer(pr);
  CHECK(m3.get(0) == Rational(4, 5));
  CHECK(m3.get(1) == Rational(1, 5));
  CHECK(infimum_value(pr) == doctest::Approx(2 / std::sqrt(5.0)).epsilon(1e-14));
  std::mt19937 g(1);
  CHECK(oracle::simplex_search(ExtremalMode::P, 2, {1, 2}, g) == doctest::Approx(2 / std::sqrt(5.0)).epsilon(1e-6));
  // ties go to the lowest vertex id
  auto p1 = prob<Rational>({4, 2, 2, 3}, ExtremalMode::P1);
  CHECK(minimizer(p1) == FinVector<Rational>::basis(1));
}

TEST_CASE("attainment, optimality, normalization")
{
  std::mt19937 g(17);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + trial % 5;
    for (auto [mode, p] : {std::pair{ExtremalMode::P1, Exponent::rational(1, 1)}, std::pair{ExtremalMode::P, Exponent::rational(2, 1)},
                           std::pair{ExtremalMode::P, Exponent::rational(3, 2)}, std::pair{ExtremalMode::P, Exponent::rational(3, 1)},
                           std::pair{ExtremalMode::Sup, Exponent::infinity()}}) {
      std::vector<double> mu(n);
      for (auto& m : mu) m = u(g);
      auto pr = prob<double>(mu, mode, p);
      double inf = infimum_value(pr);
      auto x = minimizer(pr);
      std::vector<double> xv(n);
      for (std::size_t i = 0; i < n; ++i) xv[i] = x.get(static_cast<Vertex>(i));
      CHECK(objective(pr, xv) == doctest::Approx(inf).epsilon(1e-12));
      for (int i = 0; i < 400; ++i) CHECK(objective(pr, oracle::random_simplex_point(g, n)) >= inf - 1e-12);
      CHECK(oracle::simplex_search(mode, p.infinite() ? 1 : p.value(), mu, g) == doctest::Approx(inf).epsilon(1e-6));
    }
    std::vector<Rational> mr(n);
    for (auto& m : mr) m = th::rand_rational(g);
    for (auto mode : {ExtremalMode::P1, ExtremalMode::P, ExtremalMode::Sup}) {
      auto pr = prob<Rational>(mr, mode);
      Rational s(0);
      for (auto& [v, c] : minimizer(pr)) {
        CHECK(c > Rational(0));
        s += c;
      }
      CHECK(s == Rational(1));
      // rational mode: objective^p at the minimizer equals infimum^p
      CHECK(objective_pow(pr, minimizer(pr)) ==
            (mode == ExtremalMode::P ? infimum_pow(pr) : infimum(pr)));
    }
  }
}

TEST_CASE("enlarging J never increases the infimum")
{
  std::mt19937 g(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> mu{th::rand_rational(g)};
    for (int k = 0; k < 5; ++k) {
      auto before_p = infimum_pow(prob<Rational>(mu, ExtremalMode::P));
      auto before_s = infimum(prob<Rational>(mu, ExtremalMode::Sup));
      mu.push_back(th::rand_rational(g));
      CHECK(infimum_pow(prob<Rational>(mu, ExtremalMode::P)) <= before_p);
      CHECK(infimum(prob<Rational>(mu, ExtremalMode::Sup)) <= before_s);
    }
  }
}

TEST_CASE("validation")
{
  CHECK(th::code_of([] { infimum(prob<Rational>({}, ExtremalMode::P)); }) == ErrorCode::InvalidSpec);
  CHECK(th::code_of([] { infimum(prob<Rational>({1, 0}, ExtremalMode::P)); }) == ErrorCode::ZeroWeight);
  CHECK(th::code_of([] { infimum(prob<Rational>({1}, ExtremalMode::P, Exponent::rational(1, 1))); }) ==
        ErrorCode::InvalidSpec);
  auto pr = prob<Rational>({1, 2}, ExtremalMode::P1);
  pr.truncated = true;
  CHECK(epsilon_minimizer(pr));
}
