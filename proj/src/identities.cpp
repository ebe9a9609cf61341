#include "hfkb/identities.hpp"

#include <algorithm>
#include <sstream>

namespace hfkb {

bool SymPoly::integral() const {
  for (const auto& [e, c] : terms) {
    for (int v : e) {
      if (v % 2 != 0) return false;
    }
  }
  return true;
}

SymPoly SymPoly::operator-() const {
  SymPoly out;
  for (const auto& [e, c] : terms) out.terms[e] = -c;
  return out;
}

std::string SymPoly::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [e, c] = *it;
    const BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::ostringstream mono;
    bool any = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any) mono << '*';
      any = true;
      if (e[i] % 2 == 0) {
        mono << 'r' << i + 1;
        if (e[i] != 2) mono << '^' << e[i] / 2;
      } else {
        mono << "r" << i + 1 << "^(" << e[i] << "/2)";
      }
    }
    if (!any) {
      os << mag;
    } else {
      if (mag != 1) os << mag << '*';
      os << mono.str();
    }
  }
  return os.str();
}

std::vector<std::vector<int>> k_subsets(int m, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > m) return out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < m; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<SymPoly> sigma_doubling(int k) {
  std::vector<SymPoly> out(static_cast<std::size_t>(2 * k));
  // Variable 2i is +sqrt(r_i), variable 2i + 1 is -sqrt(r_i).
  for (unsigned long mask = 1; mask < (1ul << (2 * k)); ++mask) {
    std::vector<int> e(static_cast<std::size_t>(k), 0);
    int sign = 1;
    int j = 0;
    for (int v = 0; v < 2 * k; ++v) {
      if (!((mask >> v) & 1ul)) continue;
      ++j;
      ++e[static_cast<std::size_t>(v / 2)];
      if (v % 2 == 1) sign = -sign;
    }
    auto& poly = out[static_cast<std::size_t>(j - 1)];
    BigInt& c = poly.terms[e];
    c += sign;
    if (c == 0) poly.terms.erase(e);
  }
  return out;
}

SymPoly elementary_symmetric(int k, int m) {
  SymPoly out;
  for (const auto& s : k_subsets(k, m)) {
    std::vector<int> e(static_cast<std::size_t>(k), 0);
    for (int i : s) e[static_cast<std::size_t>(i)] = 2;
    out.terms[e] += 1;
  }
  return out;
}

bool check_sigma_doubling(int k) {
  const auto s = sigma_doubling(k);
  for (int j = 1; j <= 2 * k; ++j) {
    const auto& p = s[static_cast<std::size_t>(j - 1)];
    if (j % 2 == 1) {
      if (!p.is_zero()) return false;
    } else {
      const int m = j / 2;
      const SymPoly expect = m % 2 == 0 ? elementary_symmetric(k, m) : -elementary_symmetric(k, m);
      if (!p.integral() || p != expect) return false;
    }
  }
  return true;
}

std::vector<long long> sym_wedge_betti(int m, int r) {
  const int top = std::min(m, r);
  std::vector<std::vector<std::vector<int>>> cells;
  for (int k = 0; k <= top; ++k) cells.push_back(k_subsets(m, k));
  // Each circle has one 0-cell and one 1-cell whose boundary is x0 - x0.
  const long long circle_boundary = 1 - 1;
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 2, 0);
  for (int k = 1; k <= top; ++k) {
    const auto& hi = cells[static_cast<std::size_t>(k)];
    const auto& lo = cells[static_cast<std::size_t>(k - 1)];
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < lo.size(); ++i) index[lo[i]] = i;
    ZMatrix d(lo.size(), hi.size());
    for (std::size_t c = 0; c < hi.size(); ++c) {
      for (std::size_t t = 0; t < hi[c].size(); ++t) {
        std::vector<int> face = hi[c];
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(t));
        d(index.at(face), c) += (t % 2 == 0 ? 1 : -1) * circle_boundary;
      }
    }
    ranks[static_cast<std::size_t>(k)] = smith_form(d).rank;
  }
  std::vector<long long> betti(static_cast<std::size_t>(r) + 1, 0);
  for (int k = 0; k <= top; ++k) {
    betti[static_cast<std::size_t>(k)] = static_cast<long long>(cells[static_cast<std::size_t>(k)].size() -
                                                                 ranks[static_cast<std::size_t>(k)] -
                                                                 ranks[static_cast<std::size_t>(k) + 1]);
  }
  return betti;
}

namespace {

BigInt determinant(std::vector<std::vector<BigInt>> a) {
  // Fraction-free elimination.
  const std::size_t n = a.size();
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

ZMatrix i1_pushforward(int n, int k) {
  const int dim = 2 * n - 1;
  // Images of the one-cycles in the nu' basis (0-based nu'_1 = index 0).
  std::vector<std::vector<long long>> beta, alpha;
  for (int i = 1; i <= n - 1; ++i) {
    std::vector<long long> b(static_cast<std::size_t>(dim), 0), a(static_cast<std::size_t>(dim), 0);
    b[static_cast<std::size_t>(2 * i - 2)] = 1;
    b[static_cast<std::size_t>(2 * i - 1)] = 1;
    a[static_cast<std::size_t>(2 * i - 1)] = 1;
    a[static_cast<std::size_t>(2 * i)] = 1;
    beta.push_back(b);
    alpha.push_back(a);
  }
  const auto rows = k_subsets(dim, k);
  const auto picks = k_subsets(n - 1, k);
  ZMatrix m(rows.size(), 2 * picks.size());
  for (int family = 0; family < 2; ++family) {
    const auto& vecs = family == 0 ? beta : alpha;
    for (std::size_t c = 0; c < picks.size(); ++c) {
      for (std::size_t r = 0; r < rows.size(); ++r) {
        std::vector<std::vector<BigInt>> minor(static_cast<std::size_t>(k), std::vector<BigInt>(static_cast<std::size_t>(k)));
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) {
            minor[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                vecs[static_cast<std::size_t>(picks[c][static_cast<std::size_t>(j)])][static_cast<std::size_t>(rows[r][static_cast<std::size_t>(i)])];
          }
        }
        m(r, static_cast<std::size_t>(family) * picks.size() + c) = determinant(std::move(minor));
      }
    }
  }
  return m;
}

bool pushforward_splits(int n, int k) {
  const ZMatrix m = i1_pushforward(n, k);
  const SmithForm s = smith_form(m);
  if (s.rank != m.cols()) return false;
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.factors[i] != 1) return false;
  }
  return true;
}

bool check_i1_surjectivity(int n) {
  for (int k = 1; k <= n - 1; ++k) {
    if (!pushforward_splits(n, k)) return false;
  }
  return true;
}

}  // namespace hfkb
