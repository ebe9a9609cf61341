#include "hfkb/identities.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace hfkb;

namespace {

// Evaluate at r_i = s_i^2; half-exponents become powers of s_i.
BigInt evaluate(const SymPoly& p, const std::vector<long long>& s) {
  BigInt total = 0;
  for (const auto& [e, c] : p.terms) {
    BigInt m = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) m *= s[i];
    total += m;
  }
  return total;
}

// Coefficients of prod (1 + s_i t)(1 - s_i t): e_j of the doubled list.
std::vector<BigInt> doubled_elementary(const std::vector<long long>& s) {
  std::vector<BigInt> c{1};
  for (long long v : s) {
    for (long long sign : {1LL, -1LL}) {
      c.push_back(0);
      for (std::size_t j = c.size() - 1; j > 0; --j) c[j] += c[j - 1] * (sign * v);
    }
  }
  return c;
}

long long det(std::vector<std::vector<long long>> a) {
  const std::size_t n = a.size();
  long long sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) std::swap(a[p], a[k]), sign = -sign;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// gcd of maximal minors; 1 iff the columns span a direct summand.
long long maximal_minor_gcd(const ZMatrix& m) {
  long long g = 0;
  for (const auto& rows : k_subsets(static_cast<int>(m.rows()), static_cast<int>(m.cols()))) {
    std::vector<std::vector<long long>> a;
    for (int r : rows) {
      std::vector<long long> row;
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(static_cast<long long>(m(static_cast<std::size_t>(r), c)));
      a.push_back(row);
    }
    g = std::gcd(g, det(a));
    if (g == 1) return 1;
  }
  return g;
}

long long binom(int m, int k) {
  long long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (m - k + i) / i;
  return b;
}

}  // namespace

TEST_CASE("doubled roots: small cases") {
  const auto one = sigma_doubling(1);
  REQUIRE(one.size() == 2);
  CHECK(one[0].is_zero());
  CHECK(one[1].to_string() == "-r1");
  const auto two = sigma_doubling(2);
  CHECK(two[3].to_string() == "r1*r2");
  CHECK(two[1].to_string() == "-r1 - r2");
  const auto five = sigma_doubling(5);
  for (std::size_t j = 0; j < five.size(); j += 2) CHECK(five[j].is_zero());
  for (int k = 1; k <= 5; ++k) CHECK(check_sigma_doubling(k));
}

TEST_CASE("doubled roots agree with numeric expansion") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<long long> v(-7, 7);
  for (int k = 1; k <= 5; ++k) {
    const auto polys = sigma_doubling(k);
    for (int t = 0; t < 5; ++t) {
      std::vector<long long> s(static_cast<std::size_t>(k));
      for (auto& x : s) x = v(rng);
      const auto want = doubled_elementary(s);
      for (int j = 1; j <= 2 * k; ++j) CHECK(evaluate(polys[static_cast<std::size_t>(j - 1)], s) == want[static_cast<std::size_t>(j)]);
    }
  }
}

TEST_CASE("doubled roots are symmetric in the variables") {
  const auto polys = sigma_doubling(4);
  for (const auto& p : polys) {
    SymPoly swapped;
    for (const auto& [e, c] : p.terms) {
      auto f = e;
      std::swap(f[0], f[3]);
      swapped.terms[f] = c;
    }
    CHECK(swapped == p);
  }
}

TEST_CASE("Betti numbers of skeleta of tori") {
  CHECK(sym_wedge_betti(5, 2) == std::vector<long long>{1, 5, 10});
  CHECK(sym_wedge_betti(3, 3) == std::vector<long long>{1, 3, 3, 1});
  CHECK(sym_wedge_betti(1, 1) == std::vector<long long>{1, 1});
  CHECK(sym_wedge_betti(2, 4) == std::vector<long long>{1, 2, 1, 0, 0});
  for (int n = 2; n <= 5; ++n) {
    const int m = 2 * n - 1, r = n - 1;
    const auto b = sym_wedge_betti(m, r);
    long long sum = 0, want = 0;
    for (int k = 0; k <= r; ++k) {
      CHECK(b[static_cast<std::size_t>(k)] == binom(m, k));
      sum += b[static_cast<std::size_t>(k)];
      want += binom(m, k);
    }
    CHECK(sum == want);
  }
}

TEST_CASE("push-forward for two basepoint pairs") {
  const ZMatrix m = i1_pushforward(2, 1);
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 2);
  CHECK(m == ZMatrix(3, 2, {1, 0, 1, 1, 0, 1}));
  CHECK(check_i1_surjectivity(2));
}

TEST_CASE("push-forward splits in every degree") {
  for (int n = 2; n <= 5; ++n) CHECK(check_i1_surjectivity(n));
  for (int n = 2; n <= 4; ++n) {
    for (int k = 1; k <= n - 1; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const ZMatrix m = i1_pushforward(n, k);
      CHECK(maximal_minor_gcd(m) == 1);
      CHECK(pushforward_splits(n, k));
    }
  }
}

TEST_CASE("k-subsets") {
  CHECK(k_subsets(4, 2).size() == 6);
  CHECK(k_subsets(3, 0).size() == 1);
  CHECK(k_subsets(2, 3).empty());
}
