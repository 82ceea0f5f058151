#pragma once

// Truncated Laurent series in q with exact rational coefficients.
//
// A series is stored densely as coefficients of q^val, ..., q^(prec-1),
// with the leading coefficient nonzero. The zero series carries only a
// precision: "O(q^prec)". Every arithmetic operation propagates the
// guaranteed precision, and reading a coefficient at an exponent >= prec
// throws PrecisionError.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace x0n {

class LaurentSeries {
 public:
  using Exponent = std::int64_t;

  /// The zero series O(q^0).
  LaurentSeries() = default;

  /// O(q^prec).
  static LaurentSeries zero(Exponent prec);

  /// c q^e + O(q^prec). Requires prec > e unless c == 0.
  static LaurentSeries monomial(const mpq_class& c, Exponent e, Exponent prec);

  /// sum_i coeffs[i] q^(start+i) + O(q^prec); coefficients at exponents >= prec
  /// are dropped, missing ones are zero.
  static LaurentSeries from_coeffs(Exponent start, std::vector<mpq_class> coeffs, Exponent prec);

  static LaurentSeries from_integers(Exponent start, const std::vector<long>& coeffs,
                                     Exponent prec);

  bool is_zero() const { return coeffs_.empty(); }
  /// Lowest exponent with a nonzero coefficient; equals prec() for zero.
  Exponent valuation() const { return val_; }
  /// Exclusive upper bound on known exponents.
  Exponent precision() const { return prec_; }
  /// Number of known coefficients from the valuation up, prec - val.
  Exponent relative_precision() const { return prec_ - val_; }

  /// Coefficient of q^e. Zero below the valuation; PrecisionError at e >= prec.
  mpq_class coeff(Exponent e) const;
  /// Reference to the coefficient of q^(val + i), 0 <= i < relative_precision().
  const mpq_class& raw(std::size_t i) const { return coeffs_[i]; }
  const std::vector<mpq_class>& raw_coeffs() const { return coeffs_; }

  bool is_integral() const;

  /// Drops everything at exponents >= prec (prec may not exceed precision()).
  LaurentSeries truncated(Exponent prec) const;

  LaurentSeries operator-() const;
  LaurentSeries& operator+=(const LaurentSeries& rhs);
  LaurentSeries& operator-=(const LaurentSeries& rhs);
  LaurentSeries& operator*=(const mpq_class& c);

  /// Exact structural equality: same precision and same coefficients.
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

  /// Equality of the known parts up to min(a.prec, b.prec).
  friend bool agree_to_precision(const LaurentSeries& a, const LaurentSeries& b);

  std::string to_string() const;

 private:
  LaurentSeries(Exponent val, Exponent prec, std::vector<mpq_class> coeffs);
  void normalize();

  Exponent val_ = 0;
  Exponent prec_ = 0;
  std::vector<mpq_class> coeffs_;
};

/// prec = min(a.prec, b.prec).
LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries sub(const LaurentSeries& a, const LaurentSeries& b);

/// Cauchy product: val = a.val + b.val, prec = min(a.prec + b.val, b.prec + a.val).
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b);

/// a / b with val = a.val - b.val and the relative precision of mul.
/// Throws std::domain_error when b is zero to its precision.
LaurentSeries div(const LaurentSeries& a, const LaurentSeries& b);

/// q -> q^factor. val scales by factor, prec becomes factor*(prec-1)+1.
LaurentSeries dilate(const LaurentSeries& a, std::int64_t factor);

/// a^e by repeated squaring. a^0 is 1 to the relative precision of a.
LaurentSeries pow(const LaurentSeries& a, unsigned e);

LaurentSeries scale(const LaurentSeries& a, const mpq_class& c);

inline LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return add(a, b); }
inline LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return sub(a, b); }
inline LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return mul(a, b); }
inline LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return div(a, b); }

/// {"val": v, "prec": p, "coeffs": ["n/d", ...]}; coefficient strings are the
/// canonical GMP form ("n" when the denominator is 1).
nlohmann::json to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const nlohmann::json& j);

}  // namespace x0n
