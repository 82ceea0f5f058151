#include "x0n/qseries.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "x0n/errors.hpp"

namespace x0n {

using Exponent = LaurentSeries::Exponent;

LaurentSeries::LaurentSeries(Exponent val, Exponent prec, std::vector<mpq_class> coeffs)
    : val_(val), prec_(prec), coeffs_(std::move(coeffs)) {
  normalize();
}

void LaurentSeries::normalize() {
  if (static_cast<Exponent>(coeffs_.size()) > prec_ - val_) {
    coeffs_.resize(static_cast<std::size_t>(std::max<Exponent>(prec_ - val_, 0)));
  }
  std::size_t lead = 0;
  while (lead < coeffs_.size() && sgn(coeffs_[lead]) == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    val_ = prec_;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<Exponent>(lead);
  }
  coeffs_.resize(static_cast<std::size_t>(prec_ - val_));
}

LaurentSeries LaurentSeries::zero(Exponent prec) { return LaurentSeries(prec, prec, {}); }

LaurentSeries LaurentSeries::monomial(const mpq_class& c, Exponent e, Exponent prec) {
  if (sgn(c) == 0) return zero(prec);
  if (e >= prec) throw PrecisionError("monomial: exponent beyond precision");
  return LaurentSeries(e, prec, {c});
}

LaurentSeries LaurentSeries::from_coeffs(Exponent start, std::vector<mpq_class> coeffs,
                                         Exponent prec) {
  if (start >= prec) return zero(prec);
  return LaurentSeries(start, prec, std::move(coeffs));
}

LaurentSeries LaurentSeries::from_integers(Exponent start, const std::vector<long>& coeffs,
                                           Exponent prec) {
  std::vector<mpq_class> q(coeffs.begin(), coeffs.end());
  return from_coeffs(start, std::move(q), prec);
}

mpq_class LaurentSeries::coeff(Exponent e) const {
  if (e >= prec_) {
    std::ostringstream os;
    os << "coefficient of q^" << e << " requested from a series known to O(q^" << prec_ << ")";
    throw PrecisionError(os.str());
  }
  if (e < val_) return 0;
  return coeffs_[static_cast<std::size_t>(e - val_)];
}

bool LaurentSeries::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const mpq_class& c) { return c.get_den() == 1; });
}

LaurentSeries LaurentSeries::truncated(Exponent prec) const {
  if (prec > prec_) throw PrecisionError("truncated: cannot raise precision");
  if (prec <= val_) return zero(prec);
  std::vector<mpq_class> c(coeffs_.begin(), coeffs_.begin() + (prec - val_));
  return LaurentSeries(val_, prec, std::move(c));
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& rhs) { return *this = add(*this, rhs); }
LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& rhs) { return *this = sub(*this, rhs); }

LaurentSeries& LaurentSeries::operator*=(const mpq_class& c) {
  if (sgn(c) == 0) return *this = zero(prec_);
  for (auto& x : coeffs_) x *= c;
  return *this;
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
  return a.prec_ == b.prec_ && a.val_ == b.val_ && a.coeffs_ == b.coeffs_;
}

bool agree_to_precision(const LaurentSeries& a, const LaurentSeries& b) {
  const Exponent p = std::min(a.prec_, b.prec_);
  for (Exponent e = std::min(a.val_, b.val_); e < p; ++e) {
    if (a.coeff(e) != b.coeff(e)) return false;
  }
  return true;
}

std::string LaurentSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const mpq_class& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    const Exponent e = val_ + static_cast<Exponent>(i);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const mpq_class a = abs(c);
    if (a != 1 || e == 0) os << a.get_str();
    if (e != 0) {
      if (a != 1) os << "*";
      os << "q";
      if (e != 1) os << "^" << e;
    }
  }
  if (!first) os << " + ";
  os << "O(q^" << prec_ << ")";
  return os.str();
}

namespace {

LaurentSeries add_signed(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
  const Exponent prec = std::min(a.precision(), b.precision());
  const Exponent lo = std::min(a.valuation(), b.valuation());
  if (lo >= prec) return LaurentSeries::zero(prec);
  std::vector<mpq_class> c(static_cast<std::size_t>(prec - lo));
  for (Exponent e = a.valuation(); e < prec; ++e) c[e - lo] = a.raw(e - a.valuation());
  for (Exponent e = b.valuation(); e < prec; ++e) {
    if (subtract) c[e - lo] -= b.raw(e - b.valuation());
    else c[e - lo] += b.raw(e - b.valuation());
  }
  return LaurentSeries::from_coeffs(lo, std::move(c), prec);
}

// c[n] = sum_{i<=n} x[i] y[n-i] for n < len, integral inputs.
std::vector<mpq_class> cauchy_integral(const std::vector<mpq_class>& x,
                                       const std::vector<mpq_class>& y, std::size_t len) {
  std::vector<mpq_class> out(len);
  mpz_class acc;
  for (std::size_t n = 0; n < len; ++n) {
    acc = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      mpz_addmul(acc.get_mpz_t(), mpq_numref(x[i].get_mpq_t()), mpq_numref(y[n - i].get_mpq_t()));
    }
    out[n] = mpq_class(acc);
  }
  return out;
}

std::vector<mpq_class> cauchy_rational(const std::vector<mpq_class>& x,
                                       const std::vector<mpq_class>& y, std::size_t len) {
  std::vector<mpq_class> out(len);
  mpq_class t;
  for (std::size_t n = 0; n < len; ++n) {
    for (std::size_t i = 0; i <= n; ++i) {
      if (sgn(x[i]) == 0) continue;
      mpq_mul(t.get_mpq_t(), x[i].get_mpq_t(), y[n - i].get_mpq_t());
      out[n] += t;
    }
  }
  return out;
}

}  // namespace

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b) { return add_signed(a, b, false); }
LaurentSeries sub(const LaurentSeries& a, const LaurentSeries& b) { return add_signed(a, b, true); }

LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b) {
  const Exponent prec = std::min(a.precision() + b.valuation(), b.precision() + a.valuation());
  if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(prec);
  const Exponent val = a.valuation() + b.valuation();
  const auto len = static_cast<std::size_t>(prec - val);
  std::vector<mpq_class> c = (a.is_integral() && b.is_integral())
                                 ? cauchy_integral(a.raw_coeffs(), b.raw_coeffs(), len)
                                 : cauchy_rational(a.raw_coeffs(), b.raw_coeffs(), len);
  return LaurentSeries::from_coeffs(val, std::move(c), prec);
}

LaurentSeries div(const LaurentSeries& a, const LaurentSeries& b) {
  if (b.is_zero()) {
    throw std::domain_error("div: divisor vanishes to its precision O(q^" +
                            std::to_string(b.precision()) + ")");
  }
  if (a.is_zero()) return LaurentSeries::zero(a.precision() - b.valuation());
  const Exponent val = a.valuation() - b.valuation();
  const auto len = static_cast<std::size_t>(
      std::min(a.relative_precision(), b.relative_precision()));
  const auto& x = a.raw_coeffs();
  const auto& y = b.raw_coeffs();
  std::vector<mpq_class> r(len);
  const bool unit_lead = a.is_integral() && b.is_integral() && abs(y[0]) == 1;
  if (unit_lead) {
    const bool negate = sgn(y[0]) < 0;
    mpz_class acc;
    for (std::size_t n = 0; n < len; ++n) {
      acc = x[n].get_num();
      for (std::size_t i = 1; i <= n; ++i) {
        mpz_submul(acc.get_mpz_t(), mpq_numref(y[i].get_mpq_t()), mpq_numref(r[n - i].get_mpq_t()));
      }
      if (negate) acc = -acc;
      r[n] = mpq_class(acc);
    }
  } else {
    const mpq_class inv = 1 / y[0];
    mpq_class acc, t;
    for (std::size_t n = 0; n < len; ++n) {
      acc = x[n];
      for (std::size_t i = 1; i <= n; ++i) {
        mpq_mul(t.get_mpq_t(), y[i].get_mpq_t(), r[n - i].get_mpq_t());
        acc -= t;
      }
      r[n] = acc * inv;
    }
  }
  return LaurentSeries::from_coeffs(val, std::move(r), val + static_cast<Exponent>(len));
}

LaurentSeries dilate(const LaurentSeries& a, std::int64_t factor) {
  if (factor < 1) throw std::invalid_argument("dilate: factor must be >= 1");
  if (factor == 1) return a;
  const Exponent prec = factor * (a.precision() - 1) + 1;
  if (a.is_zero()) return LaurentSeries::zero(prec);
  const Exponent val = factor * a.valuation();
  std::vector<mpq_class> c(static_cast<std::size_t>(prec - val));
  for (std::size_t i = 0; i < a.raw_coeffs().size(); ++i) {
    c[i * static_cast<std::size_t>(factor)] = a.raw(i);
  }
  return LaurentSeries::from_coeffs(val, std::move(c), prec);
}

LaurentSeries pow(const LaurentSeries& a, unsigned e) {
  if (e == 0) {
    const Exponent rel = a.is_zero() ? 1 : a.relative_precision();
    return LaurentSeries::monomial(1, 0, rel);
  }
  if (e == 1) return a;
  LaurentSeries result;
  LaurentSeries base = a;
  bool have = false;
  while (e > 0) {
    if (e & 1u) {
      result = have ? mul(result, base) : base;
      have = true;
    }
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

LaurentSeries scale(const LaurentSeries& a, const mpq_class& c) {
  LaurentSeries r = a;
  r *= c;
  return r;
}

nlohmann::json to_json(const LaurentSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.raw_coeffs()) coeffs.push_back(c.get_str());
  return {{"val", s.valuation()}, {"prec", s.precision()}, {"coeffs", coeffs}};
}

LaurentSeries series_from_json(const nlohmann::json& j) {
  const auto val = j.at("val").get<Exponent>();
  const auto prec = j.at("prec").get<Exponent>();
  std::vector<mpq_class> c;
  for (const auto& item : j.at("coeffs")) {
    mpq_class q(item.get<std::string>());
    q.canonicalize();
    c.push_back(q);
  }
  return LaurentSeries::from_coeffs(val, std::move(c), prec);
}

}  // namespace x0n
