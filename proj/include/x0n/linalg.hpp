#pragma once

// Exact kernels and ranks of integer matrices.
//
// Elimination is fraction-free (Bareiss) Gauss-Jordan with deterministic
// pivoting: columns are scanned left to right and within a column the
// nonzero entry of smallest bit length wins, ties going to the lowest row.
// Kernel bases come out in the canonical reduced-echelon form (one vector
// per free column), scaled to primitive integer vectors whose first
// nonzero entry is positive.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace x0n {

using IntVector = std::vector<mpz_class>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  /// Each rational row is multiplied by the lcm of its denominators.
  static IntMatrix from_rational_rows(const std::vector<std::vector<mpq_class>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const mpz_class& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::span<const mpz_class> row(std::size_t r) const { return {a_.data() + r * cols_, cols_}; }
  std::span<mpz_class> row(std::size_t r) { return {a_.data() + r * cols_, cols_}; }

  /// M v.
  IntVector apply(std::span<const mpz_class> v) const;

  /// The submatrix formed by the given rows, in the given order.
  IntMatrix select_rows(std::span<const std::size_t> rows) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> a_;
};

/// Word-size prime used for modular screening (2^61 - 1).
inline constexpr std::uint64_t kScreenPrime = 2305843009213693951ULL;

/// Dense matrix over Z/p with p < 2^62.
struct ModMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t prime = kScreenPrime;
  std::vector<std::uint64_t> a;

  std::uint64_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

ModMatrix reduce_mod(const IntMatrix& m, std::uint64_t prime = kScreenPrime);

/// Rank over Z/p. A lower bound for the rank over Q of any integer lift.
std::size_t rank_mod(const ModMatrix& m);

/// Greedy maximal set of rows independent mod p, scanning rows in order.
std::vector<std::size_t> independent_rows_mod(const ModMatrix& m);

/// Exact rank over Q.
std::size_t rank(const IntMatrix& m);

struct KernelOptions {
  /// Pick rows independent mod a word prime first and eliminate only those;
  /// the result is verified against every row and recomputed on the full
  /// matrix if the check fails.
  bool screen_rows = true;
};

/// Basis of the right kernel over Q as primitive integer vectors.
std::vector<IntVector> kernel_basis(const IntMatrix& m, const KernelOptions& opts = {});

/// Divides by the content and makes the first nonzero entry positive.
/// The zero vector is returned unchanged.
void make_primitive(IntVector& v);

}  // namespace x0n
