#pragma once

// Exact linear algebra kernels: GF(2) matrices and homology, integer Smith
// normal form, and matrices over F2[q] with rank over the fraction field.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hfkb {

using BigInt = boost::multiprecision::cpp_int;

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense bit-packed matrix over GF(2). Rows are stored as 64-bit words.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols);

  // Throws AlgebraError on out-of-range or duplicate positions.
  static F2Matrix from_entries(std::size_t rows, std::size_t cols,
                               std::span<const std::pair<std::size_t, std::size_t>> entries);
  static F2Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v);
  void flip(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

  bool is_zero() const;
  std::size_t count_ones() const;
  std::vector<std::pair<std::size_t, std::size_t>> entries() const;

  F2Matrix operator*(const F2Matrix& rhs) const;
  F2Matrix operator+(const F2Matrix& rhs) const;
  bool operator==(const F2Matrix& rhs) const = default;

  F2Matrix transposed() const;
  F2Matrix submatrix(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const;

  // Gaussian elimination, lowest column first, first available row as pivot.
  std::size_t rank() const;

  // Solve A x = b. Free variables are set to zero, so the answer is the
  // unique solution supported on pivot columns. first == false if infeasible.
  std::pair<bool, std::vector<std::uint8_t>> solve(std::span<const std::uint8_t> rhs) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// d[k] maps C_k -> C_{k-1}; homology is reported for every C_k that is the
// domain of some d[k]. Throws AlgebraError on size mismatch or when some
// d[k-1] * d[k] is nonzero.
std::vector<std::size_t> f2_homology_ranks(std::span<const F2Matrix> complex);

class ZMatrix {
 public:
  ZMatrix() = default;
  ZMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  ZMatrix(std::size_t rows, std::size_t cols, std::initializer_list<long long> values);

  static ZMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ZMatrix operator*(const ZMatrix& rhs) const;
  bool operator==(const ZMatrix& rhs) const = default;

  std::vector<BigInt> apply(std::span<const BigInt> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

struct SmithForm {
  // left * m * right == diag(factors) padded with zeros to m's shape.
  ZMatrix left;
  ZMatrix right;
  std::vector<BigInt> factors;  // length min(rows, cols), nonnegative, divisibility chain
  std::size_t rank = 0;
};

SmithForm smith_form(const ZMatrix& m);
std::vector<BigInt> integer_snf(const ZMatrix& m);

// Polynomial over F2, bit i holds the coefficient of q^i. Trailing zero
// words are always trimmed, so equality is structural.
class F2Poly {
 public:
  F2Poly() = default;
  static F2Poly constant(bool one) { return one ? monomial(0) : F2Poly{}; }
  static F2Poly monomial(unsigned degree);
  static F2Poly from_bits(std::vector<std::uint64_t> words);

  bool is_zero() const { return words_.empty(); }
  int degree() const;  // -1 for zero
  bool coeff(unsigned i) const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  F2Poly operator+(const F2Poly& rhs) const;
  F2Poly& operator+=(const F2Poly& rhs);
  F2Poly operator*(const F2Poly& rhs) const;
  bool operator==(const F2Poly& rhs) const = default;

  // Long division; quotient and remainder.
  std::pair<F2Poly, F2Poly> divmod(const F2Poly& divisor) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<std::uint64_t> words_;
};

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F2Poly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F2Poly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  PolyMatrix operator*(const PolyMatrix& rhs) const;
  bool is_zero() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F2Poly> data_;
};

// Rank over F2(q) by fraction-free (Bareiss) elimination over F2[q].
std::size_t fq_matrix_rank(const PolyMatrix& m);

}  // namespace hfkb
