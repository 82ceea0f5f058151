#include "x0n/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "x0n/errors.hpp"

namespace x0n {

IntMatrix IntMatrix::from_rational_rows(const std::vector<std::vector<mpq_class>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("from_rational_rows: ragged rows");
    mpz_class den = 1;
    for (const auto& x : rows[r]) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) {
      m.at(r, c) = rows[r][c].get_num() * (den / rows[r][c].get_den());
    }
  }
  return m;
}

IntVector IntMatrix::apply(std::span<const mpz_class> v) const {
  if (v.size() != cols_) throw std::invalid_argument("IntMatrix::apply: dimension mismatch");
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      mpz_addmul(out[r].get_mpz_t(), at(r, c).get_mpz_t(), v[c].get_mpz_t());
    }
  }
  return out;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> rows) const {
  IntMatrix m(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(row(rows[i]).begin(), row(rows[i]).end(), m.row(i).begin());
  }
  return m;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, b, p);
    b = mul_mod(b, b, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

// Row-reduces `row` against an echelon basis mod p; returns the pivot column
// of the remainder or cols if it vanished. Basis rows are kept monic.
struct ModEchelon {
  std::size_t cols;
  std::uint64_t p;
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<std::size_t> pivots;

  bool insert(std::vector<std::uint64_t> row) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::uint64_t f = row[pivots[b]];
      if (f == 0) continue;
      const std::uint64_t nf = p - f;
      for (std::size_t c = pivots[b]; c < cols; ++c) {
        if (basis[b][c] != 0) row[c] = (row[c] + mul_mod(nf, basis[b][c], p)) % p;
      }
    }
    std::size_t lead = 0;
    while (lead < cols && row[lead] == 0) ++lead;
    if (lead == cols) return false;
    const std::uint64_t inv = inv_mod(row[lead], p);
    for (std::size_t c = lead; c < cols; ++c) row[c] = mul_mod(row[c], inv, p);
    // Keep the basis fully reduced in the new pivot column.
    for (auto& b : basis) {
      const std::uint64_t f = b[lead];
      if (f == 0) continue;
      const std::uint64_t nf = p - f;
      for (std::size_t c = lead; c < cols; ++c) {
        if (row[c] != 0) b[c] = (b[c] + mul_mod(nf, row[c], p)) % p;
      }
    }
    basis.push_back(std::move(row));
    pivots.push_back(lead);
    return true;
  }
};

// Fraction-free Gauss-Jordan on m in place. Returns the pivot columns; on
// return, row i < rank has the common value `det` at pivot_cols[i] and
// zeros in every other pivot column.
struct GaussJordan {
  std::vector<std::size_t> pivot_cols;
  mpz_class det = 1;
};

GaussJordan bareiss_gauss_jordan(IntMatrix& m, bool reduce_above) {
  GaussJordan out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  mpz_class prev = 1;
  mpz_class t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    std::size_t best_bits = 0;
    for (std::size_t i = r; i < rows; ++i) {
      if (sgn(m.at(i, c)) == 0) continue;
      const std::size_t bits = mpz_sizeinbase(m.at(i, c).get_mpz_t(), 2);
      if (best == rows || bits < best_bits) {
        best = i;
        best_bits = bits;
      }
    }
    if (best == rows) continue;
    if (best != r) {
      for (std::size_t j = 0; j < cols; ++j) swap(m.at(best, j), m.at(r, j));
    }
    const mpz_class p = m.at(r, c);
    for (std::size_t i = reduce_above ? 0 : r + 1; i < rows; ++i) {
      if (i == r) continue;
      const mpz_class f = m.at(i, c);
      // Row r vanishes left of c, so columns < c only need rescaling.
      const std::size_t start = i < r ? 0 : c + 1;
      for (std::size_t j = start; j < cols; ++j) {
        if (j == c) continue;
        mpz_class& x = m.at(i, j);
        mpz_mul(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
        if (j > c && sgn(f) != 0) {
          mpz_mul(t.get_mpz_t(), f.get_mpz_t(), m.at(r, j).get_mpz_t());
          mpz_sub(x.get_mpz_t(), x.get_mpz_t(), t.get_mpz_t());
        }
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      m.at(i, c) = 0;
    }
    out.pivot_cols.push_back(c);
    prev = p;
    ++r;
  }
  out.det = prev;
  return out;
}

std::vector<IntVector> kernel_from_reduced(const IntMatrix& m, const GaussJordan& gj) {
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : gj.pivot_cols) is_pivot[c] = true;
  std::vector<IntVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    IntVector v(cols);
    v[f] = gj.det;
    for (std::size_t i = 0; i < gj.pivot_cols.size(); ++i) v[gj.pivot_cols[i]] = -m.at(i, f);
    make_primitive(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool annihilates(const IntMatrix& m, const IntVector& v) {
  const IntVector r = m.apply(v);
  return std::all_of(r.begin(), r.end(), [](const mpz_class& x) { return sgn(x) == 0; });
}

}  // namespace

ModMatrix reduce_mod(const IntMatrix& m, std::uint64_t prime) {
  ModMatrix out{m.rows(), m.cols(), prime, std::vector<std::uint64_t>(m.rows() * m.cols())};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out.at(r, c) = mpz_fdiv_ui(m.at(r, c).get_mpz_t(), prime);
    }
  }
  return out;
}

std::vector<std::size_t> independent_rows_mod(const ModMatrix& m) {
  ModEchelon ech{m.cols, m.prime, {}, {}};
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < m.rows && ech.basis.size() < m.cols; ++r) {
    std::vector<std::uint64_t> row(m.a.begin() + static_cast<std::ptrdiff_t>(r * m.cols),
                                   m.a.begin() + static_cast<std::ptrdiff_t>((r + 1) * m.cols));
    if (ech.insert(std::move(row))) rows.push_back(r);
  }
  return rows;
}

std::size_t rank_mod(const ModMatrix& m) { return independent_rows_mod(m).size(); }

std::size_t rank(const IntMatrix& m) {
  IntMatrix work = m;
  return bareiss_gauss_jordan(work, false).pivot_cols.size();
}

std::vector<IntVector> kernel_basis(const IntMatrix& m, const KernelOptions& opts) {
  if (m.cols() == 0) return {};
  if (opts.screen_rows && m.rows() > 0) {
    const std::vector<std::size_t> rows = independent_rows_mod(reduce_mod(m));
    if (rows.size() == m.cols()) return {};
    IntMatrix sub = m.select_rows(rows);
    const GaussJordan gj = bareiss_gauss_jordan(sub, true);
    if (gj.pivot_cols.size() == rows.size()) {
      std::vector<IntVector> basis = kernel_from_reduced(sub, gj);
      const bool ok = std::all_of(basis.begin(), basis.end(),
                                  [&](const IntVector& v) { return annihilates(m, v); });
      if (ok) return basis;
    }
  }
  IntMatrix work = m;
  const GaussJordan gj = bareiss_gauss_jordan(work, true);
  std::vector<IntVector> basis = kernel_from_reduced(work, gj);
  for (const auto& v : basis) {
    if (!annihilates(m, v)) throw InternalError("kernel_basis: vector fails M v = 0");
  }
  return basis;
}

void make_primitive(IntVector& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (sgn(g) == 0) return;
  const auto first = std::find_if(v.begin(), v.end(), [](const mpz_class& x) { return sgn(x) != 0; });
  if (sgn(*first) < 0) g = -g;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

}  // namespace x0n
