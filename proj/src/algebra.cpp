#include "hfkb/algebra.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace hfkb {

// ---------------------------------------------------------------------------
// F2Matrix

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * ((cols + 63) / 64), 0) {}

F2Matrix F2Matrix::from_entries(std::size_t rows, std::size_t cols,
                                std::span<const std::pair<std::size_t, std::size_t>> entries) {
  F2Matrix m(rows, cols);
  for (auto [r, c] : entries) {
    if (r >= rows || c >= cols) {
      throw AlgebraError("entry (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
    }
    if (m.get(r, c)) {
      throw AlgebraError("duplicate entry (" + std::to_string(r) + "," + std::to_string(c) + ")");
    }
    m.set(r, c, true);
  }
  return m;
}

F2Matrix F2Matrix::identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void F2Matrix::set(std::size_t r, std::size_t c, bool v) {
  auto& w = bits_[r * words_ + c / 64];
  const std::uint64_t mask = std::uint64_t{1} << (c % 64);
  w = v ? (w | mask) : (w & ~mask);
}

bool F2Matrix::is_zero() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t F2Matrix::count_ones() const {
  std::size_t n = 0;
  for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::pair<std::size_t, std::size_t>> F2Matrix::entries() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = bits_[r * words_ + w];
      while (bits) {
        const int b = std::countr_zero(bits);
        out.emplace_back(r, w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }
  return out;
}

F2Matrix F2Matrix::operator*(const F2Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw AlgebraError("matrix product: inner dimensions differ");
  F2Matrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t* dst = &out.bits_[r * out.words_];
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!get(r, k)) continue;
      const std::uint64_t* src = &rhs.bits_[k * rhs.words_];
      for (std::size_t w = 0; w < out.words_; ++w) dst[w] ^= src[w];
    }
  }
  return out;
}

F2Matrix F2Matrix::operator+(const F2Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw AlgebraError("matrix sum: shapes differ");
  F2Matrix out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] ^= rhs.bits_[i];
  return out;
}

F2Matrix F2Matrix::transposed() const {
  F2Matrix out(cols_, rows_);
  for (auto [r, c] : entries()) out.set(c, r, true);
  return out;
}

F2Matrix F2Matrix::submatrix(std::span<const std::size_t> row_ids,
                             std::span<const std::size_t> col_ids) const {
  F2Matrix out(row_ids.size(), col_ids.size());
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    for (std::size_t j = 0; j < col_ids.size(); ++j) {
      if (get(row_ids[i], col_ids[j])) out.set(i, j, true);
    }
  }
  return out;
}

std::size_t F2Matrix::rank() const {
  if (rows_ == 0 || cols_ == 0) return 0;
  std::vector<std::uint64_t> a = bits_;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t pivot = rank;
    while (pivot < rows_ && !(a[pivot * words_ + w] & mask)) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != rank) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * words_),
                       a.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * words_),
                       a.begin() + static_cast<std::ptrdiff_t>(rank * words_));
    }
    const std::uint64_t* prow = &a[rank * words_];
    for (std::size_t r = rank + 1; r < rows_; ++r) {
      std::uint64_t* row = &a[r * words_];
      if (!(row[w] & mask)) continue;
      for (std::size_t k = w; k < words_; ++k) row[k] ^= prow[k];
    }
    ++rank;
  }
  return rank;
}

std::pair<bool, std::vector<std::uint8_t>> F2Matrix::solve(std::span<const std::uint8_t> rhs) const {
  if (rhs.size() != rows_) throw AlgebraError("solve: right-hand side has wrong length");
  // Augmented matrix: one extra column.
  const std::size_t aw = (cols_ + 1 + 63) / 64;
  std::vector<std::uint64_t> a(rows_ * aw, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t w = 0; w < words_; ++w) a[r * aw + w] = bits_[r * words_ + w];
    if (rhs[r] & 1u) a[r * aw + cols_ / 64] |= std::uint64_t{1} << (cols_ % 64);
  }
  auto bit = [&](std::size_t r, std::size_t c) { return (a[r * aw + c / 64] >> (c % 64)) & 1u; };
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows_ && !bit(pivot, c)) ++pivot;
    if (pivot == rows_) continue;
    for (std::size_t k = 0; k < aw; ++k) std::swap(a[pivot * aw + k], a[rank * aw + k]);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == rank || !bit(r, c)) continue;
      for (std::size_t k = 0; k < aw; ++k) a[r * aw + k] ^= a[rank * aw + k];
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows_; ++r) {
    if (bit(r, cols_)) return {false, {}};
  }
  std::vector<std::uint8_t> x(cols_, 0);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = static_cast<std::uint8_t>(bit(i, cols_));
  return {true, std::move(x)};
}

std::vector<std::size_t> f2_homology_ranks(std::span<const F2Matrix> complex) {
  for (std::size_t k = 1; k < complex.size(); ++k) {
    if (complex[k - 1].cols() != complex[k].rows()) {
      throw AlgebraError("differentials d" + std::to_string(k - 1) + " and d" + std::to_string(k) +
                         " are not composable");
    }
    if (!(complex[k - 1] * complex[k]).is_zero()) {
      throw AlgebraError("d" + std::to_string(k - 1) + " * d" + std::to_string(k) + " is nonzero");
    }
  }
  std::vector<std::size_t> ranks(complex.size());
  std::vector<std::size_t> r(complex.size() + 1, 0);
  for (std::size_t k = 0; k < complex.size(); ++k) r[k] = complex[k].rank();
  for (std::size_t k = 0; k < complex.size(); ++k) {
    const std::size_t kernel = complex[k].cols() - r[k];
    ranks[k] = kernel - r[k + 1];
  }
  return ranks;
}

// ---------------------------------------------------------------------------
// ZMatrix and Smith normal form

ZMatrix::ZMatrix(std::size_t rows, std::size_t cols, std::initializer_list<long long> values)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (values.size() != rows * cols) throw AlgebraError("ZMatrix: wrong number of initial values");
  std::size_t i = 0;
  for (long long v : values) data_[i++] = v;
}

ZMatrix ZMatrix::identity(std::size_t n) {
  ZMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ZMatrix ZMatrix::operator*(const ZMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw AlgebraError("matrix product: inner dimensions differ");
  ZMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        if (rhs(k, j) != 0) out(i, j) += a * rhs(k, j);
      }
    }
  }
  return out;
}

std::vector<BigInt> ZMatrix::apply(std::span<const BigInt> v) const {
  if (v.size() != cols_) throw AlgebraError("apply: vector has wrong length");
  std::vector<BigInt> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (v[j] != 0 && (*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
    }
  }
  return out;
}

namespace {

struct SmithWork {
  ZMatrix a, left, right;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < left.cols(); ++c) std::swap(left(i, c), left(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < right.rows(); ++r) std::swap(right(r, i), right(r, j));
  }
  // row_i -= f * row_j
  void sub_row(std::size_t i, std::size_t j, const BigInt& f) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a(j, c) != 0) a(i, c) -= f * a(j, c);
    }
    for (std::size_t c = 0; c < left.cols(); ++c) {
      if (left(j, c) != 0) left(i, c) -= f * left(j, c);
    }
  }
  // col_i -= f * col_j
  void sub_col(std::size_t i, std::size_t j, const BigInt& f) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (a(r, j) != 0) a(r, i) -= f * a(r, j);
    }
    for (std::size_t r = 0; r < right.rows(); ++r) {
      if (right(r, j) != 0) right(r, i) -= f * right(r, j);
    }
  }
  void add_row(std::size_t i, std::size_t j) { sub_row(i, j, BigInt(-1)); }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) = -left(i, c);
  }
};

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SmithForm smith_form(const ZMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithWork w{m, ZMatrix::identity(rows), ZMatrix::identity(cols)};
  const std::size_t diag = std::min(rows, cols);
  std::size_t t = 0;
  for (; t < diag; ++t) {
    while (true) {
      // Pivot: smallest nonzero absolute value in the trailing block.
      bool found = false;
      BigInt best;
      std::size_t pr = t, pc = t;
      for (std::size_t r = t; r < rows; ++r) {
        for (std::size_t c = t; c < cols; ++c) {
          const BigInt& v = w.a(r, c);
          if (v == 0) continue;
          BigInt av = abs(v);
          if (!found || av < best) {
            found = true;
            best = av;
            pr = r;
            pc = c;
          }
        }
      }
      if (!found) break;
      w.swap_rows(t, pr);
      w.swap_cols(t, pc);
      bool clean = true;
      const BigInt pivot = w.a(t, t);
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (w.a(r, t) == 0) continue;
        w.sub_row(r, t, floor_div(w.a(r, t), pivot));
        if (w.a(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (w.a(t, c) == 0) continue;
        w.sub_col(c, t, floor_div(w.a(t, c), pivot));
        if (w.a(t, c) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility of the remaining block by the pivot.
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r) {
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (w.a(r, c) % pivot != 0) {
            w.add_row(t, r);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (w.a(t, t) == 0) break;
    if (w.a(t, t) < 0) w.negate_row(t);
  }
  SmithForm out{std::move(w.left), std::move(w.right), std::vector<BigInt>(diag), t};
  for (std::size_t i = 0; i < t; ++i) out.factors[i] = w.a(i, i);
  return out;
}

std::vector<BigInt> integer_snf(const ZMatrix& m) { return smith_form(m).factors; }

// ---------------------------------------------------------------------------
// F2Poly

F2Poly F2Poly::monomial(unsigned degree) {
  F2Poly p;
  p.words_.assign(degree / 64 + 1, 0);
  p.words_.back() = std::uint64_t{1} << (degree % 64);
  return p;
}

F2Poly F2Poly::from_bits(std::vector<std::uint64_t> words) {
  F2Poly p;
  p.words_ = std::move(words);
  p.trim();
  return p;
}

void F2Poly::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

int F2Poly::degree() const {
  if (words_.empty()) return -1;
  return static_cast<int>(64 * (words_.size() - 1)) + 63 - std::countl_zero(words_.back());
}

bool F2Poly::coeff(unsigned i) const {
  if (i / 64 >= words_.size()) return false;
  return (words_[i / 64] >> (i % 64)) & 1u;
}

F2Poly F2Poly::operator+(const F2Poly& rhs) const {
  F2Poly out = *this;
  out += rhs;
  return out;
}

F2Poly& F2Poly::operator+=(const F2Poly& rhs) {
  if (rhs.words_.size() > words_.size()) words_.resize(rhs.words_.size(), 0);
  for (std::size_t i = 0; i < rhs.words_.size(); ++i) words_[i] ^= rhs.words_[i];
  trim();
  return *this;
}

namespace {

// Carry-less 64x64 -> 128 multiply.
std::pair<std::uint64_t, std::uint64_t> clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t lo = 0, hi = 0;
  while (b) {
    const int i = std::countr_zero(b);
    lo ^= a << i;
    if (i) hi ^= a >> (64 - i);
    b &= b - 1;
  }
  return {lo, hi};
}

}  // namespace

F2Poly F2Poly::operator*(const F2Poly& rhs) const {
  if (is_zero() || rhs.is_zero()) return {};
  std::vector<std::uint64_t> out(words_.size() + rhs.words_.size(), 0);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!words_[i]) continue;
    for (std::size_t j = 0; j < rhs.words_.size(); ++j) {
      auto [lo, hi] = clmul(words_[i], rhs.words_[j]);
      out[i + j] ^= lo;
      out[i + j + 1] ^= hi;
    }
  }
  return from_bits(std::move(out));
}

std::pair<F2Poly, F2Poly> F2Poly::divmod(const F2Poly& divisor) const {
  if (divisor.is_zero()) throw AlgebraError("polynomial division by zero");
  F2Poly rem = *this;
  const int dd = divisor.degree();
  std::vector<std::uint64_t> quot;
  while (!rem.is_zero() && rem.degree() >= dd) {
    const unsigned shift = static_cast<unsigned>(rem.degree() - dd);
    if (quot.size() <= shift / 64) quot.resize(shift / 64 + 1, 0);
    quot[shift / 64] ^= std::uint64_t{1} << (shift % 64);
    rem += divisor * monomial(shift);
  }
  return {from_bits(std::move(quot)), rem};
}

std::string F2Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (!coeff(static_cast<unsigned>(i))) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) os << "1";
    else if (i == 1) os << "q";
    else os << "q^" << i;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// PolyMatrix

PolyMatrix PolyMatrix::operator*(const PolyMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw AlgebraError("matrix product: inner dimensions differ");
  PolyMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const F2Poly& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        if (!rhs(k, j).is_zero()) out(i, j) += a * rhs(k, j);
      }
    }
  }
  return out;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const F2Poly& p) { return p.is_zero(); });
}

std::size_t fq_matrix_rank(const PolyMatrix& m) {
  PolyMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  F2Poly prev = F2Poly::constant(true);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    // Lowest-degree pivot keeps intermediate degrees small.
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (a(r, c).is_zero()) continue;
      if (pivot == rows || a(r, c).degree() < a(pivot, c).degree()) pivot = r;
    }
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(a(pivot, k), a(rank, k));
    }
    const F2Poly p = a(rank, c);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const F2Poly f = a(r, c);
      for (std::size_t k = c + 1; k < cols; ++k) {
        F2Poly v = p * a(r, k) + f * a(rank, k);
        auto [q, rem] = v.divmod(prev);
        if (!rem.is_zero()) throw AlgebraError("fraction-free elimination: inexact division");
        a(r, k) = std::move(q);
      }
      a(r, c) = F2Poly{};
    }
    prev = p;
    ++rank;
  }
  return rank;
}

}  // namespace hfkb
