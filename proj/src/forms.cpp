#include "x0n/forms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "x0n/arith.hpp"
#include "x0n/errors.hpp"

namespace x0n {

namespace {

std::string join_labels(const std::string& a, const std::string& b, const char* op) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + op + b;
}

}  // namespace

ModularForm product(const ModularForm& f, const ModularForm& g) {
  return {mul(f.series, g.series), f.weight + g.weight, std::lcm(f.level, g.level),
          join_labels(f.label, g.label, "*")};
}

ModularForm dilate(const ModularForm& f, std::int64_t factor) {
  std::string label = f.label;
  if (factor != 1) label += "(" + std::to_string(factor) + "z)";
  return {dilate(f.series, factor), f.weight, f.level * factor, label};
}

ModularForm linear_combination(const mpq_class& a, const ModularForm& f, const mpq_class& b,
                               const ModularForm& g, std::string label) {
  if (f.weight != g.weight) {
    throw std::invalid_argument("linear_combination: weights differ (" + std::to_string(f.weight) +
                                " vs " + std::to_string(g.weight) + ")");
  }
  if (label.empty()) {
    label = "(" + a.get_str() + ")*" + f.label + "+(" + b.get_str() + ")*" + g.label;
  }
  return {add(scale(f.series, a), scale(g.series, b)), f.weight, std::lcm(f.level, g.level),
          std::move(label)};
}

ModularForm scale(const ModularForm& f, const mpq_class& c) {
  return {scale(f.series, c), f.weight, f.level, "(" + c.get_str() + ")*" + f.label};
}

std::vector<mpz_class> divisor_sigma_table(int k, std::int64_t limit) {
  std::vector<mpz_class> sigma(static_cast<std::size_t>(std::max<std::int64_t>(limit, 1)));
  mpz_class dk;
  for (std::int64_t d = 1; d < limit; ++d) {
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    for (std::int64_t m = d; m < limit; m += d) sigma[static_cast<std::size_t>(m)] += dk;
  }
  return sigma;
}

namespace {

LaurentSeries eisenstein(int k, long scale_factor, std::int64_t prec) {
  if (prec < 1) throw std::invalid_argument("eisenstein: precision must be >= 1");
  const auto sigma = divisor_sigma_table(k, prec);
  std::vector<mpq_class> c(static_cast<std::size_t>(prec));
  c[0] = 1;
  for (std::int64_t n = 1; n < prec; ++n) {
    c[static_cast<std::size_t>(n)] = mpq_class(sigma[static_cast<std::size_t>(n)] * scale_factor);
  }
  return LaurentSeries::from_coeffs(0, std::move(c), prec);
}

}  // namespace

ModularForm eisenstein_e4(std::int64_t prec) { return {eisenstein(3, 240, prec), 4, 1, "E4"}; }

ModularForm eisenstein_e6(std::int64_t prec) { return {eisenstein(5, -504, prec), 6, 1, "E6"}; }

ModularForm e4_cubed(std::int64_t prec) {
  return {pow(eisenstein(3, 240, prec), 3), 12, 1, "E4^3"};
}

ModularForm delta(std::int64_t prec) {
  if (prec < 2) throw std::invalid_argument("delta: precision must be >= 2");
  const LaurentSeries e4 = eisenstein(3, 240, prec);
  const LaurentSeries e6 = eisenstein(5, -504, prec);
  LaurentSeries d = scale(sub(pow(e4, 3), mul(e6, e6)), mpq_class(1, 1728));
  if (!d.is_integral()) throw InternalError("delta: non-integral coefficient");
  if (d.valuation() != 1 || d.coeff(1) != 1) throw InternalError("delta: expected q + O(q^2)");
  return {std::move(d), 12, 1, "Delta"};
}

ModularForm j_invariant(std::int64_t prec) {
  // j has valuation -1; the quotient keeps the relative precision of Delta,
  // which is two less than its absolute precision.
  const std::int64_t inner = std::max<std::int64_t>(prec + 2, 3);
  LaurentSeries j = div(e4_cubed(inner).series, delta(inner).series);
  return {j.truncated(std::min(prec, j.precision())), 0, 1, "j"};
}

std::vector<CuspRep> cusps(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("cusps: level must be >= 1");
  std::vector<CuspRep> out;
  for (const std::int64_t k : arith::divisors(n)) {
    const std::int64_t g = arith::gcd(k, n / k);
    const std::int64_t width = n / (k * g);
    const std::int64_t count = arith::euler_phi(g);
    // One class per unit u mod g; take the smallest p >= 0 with p = u mod g
    // and gcd(p, k) = 1 (k = 1 gives the cusp 0/1).
    for (std::int64_t u = 0; u < g; ++u) {
      if (arith::gcd(u, g) != 1) continue;
      std::int64_t p = u;
      while (arith::gcd(p, k) != 1) p += g;
      out.push_back({p, k, k, width, count});
    }
  }
  std::sort(out.begin(), out.end(), [](const CuspRep& a, const CuspRep& b) {
    return a.k != b.k ? a.k < b.k : a.p < b.p;
  });
  return out;
}

void DivisorQ::add(const std::string& label, const mpq_class& value, bool aggregate) {
  for (auto& t : terms_) {
    if (t.label == label) {
      if (t.aggregate != aggregate) {
        throw std::invalid_argument("DivisorQ::add: label '" + label +
                                    "' used both as a point and as an aggregate");
      }
      t.value += value;
      t.value.canonicalize();
      return;
    }
  }
  terms_.push_back({label, value, aggregate});
  terms_.back().value.canonicalize();
}

mpq_class DivisorQ::degree() const {
  mpq_class d = 0;
  for (const auto& t : terms_) d += t.value;
  return d;
}

mpq_class DivisorQ::at(const std::string& label) const {
  for (const auto& t : terms_) {
    if (t.label == label) return t.value;
  }
  return 0;
}

bool DivisorQ::contains(const std::string& label) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return t.label == label && sgn(t.value) != 0; });
}

bool DivisorQ::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.value.get_den() == 1; });
}

bool DivisorQ::is_effective() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return sgn(t.value) >= 0; });
}

std::vector<std::string> DivisorQ::support() const {
  std::vector<std::string> out;
  for (const auto& t : terms_) {
    if (sgn(t.value) != 0) out.push_back(t.label);
  }
  return out;
}

DivisorQ operator+(const DivisorQ& a, const DivisorQ& b) {
  DivisorQ r = a;
  for (const auto& t : b.terms_) r.add(t.label, t.value, t.aggregate);
  return r;
}

DivisorQ operator-(const DivisorQ& a, const DivisorQ& b) {
  DivisorQ r = a;
  for (const auto& t : b.terms_) r.add(t.label, -t.value, t.aggregate);
  return r;
}

namespace {

void require_level(std::int64_t n, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": level must be >= 1");
}

}  // namespace

DivisorQ divisor_delta(std::int64_t n) {
  require_level(n, "divisor_delta");
  DivisorQ d;
  for (const auto& c : cusps(n)) {
    const std::int64_t g = arith::gcd(c.k, n / c.k);
    d.add(c.label(), mpq_class(n / c.k / g));
  }
  return d;
}

DivisorQ divisor_delta_dilated(std::int64_t n) {
  require_level(n, "divisor_delta_dilated");
  DivisorQ d;
  for (const auto& c : cusps(n)) {
    const std::int64_t g = arith::gcd(c.k, n / c.k);
    d.add(c.label(), mpq_class(c.k / g));
  }
  return d;
}

DivisorQ divisor_e4_cubed(std::int64_t n) {
  require_level(n, "divisor_e4_cubed");
  DivisorQ d;
  d.add(kRhoOrbitLabel, mpq_class(arith::psi(n)), true);
  return d;
}

DivisorQ divisor_e4_cubed_dilated(std::int64_t n) {
  require_level(n, "divisor_e4_cubed_dilated");
  DivisorQ d;
  d.add(kRhoOrbitDilatedLabel, mpq_class(arith::psi(n)), true);
  return d;
}

mpq_class elliptic_correction(int weight, int order) {
  if (order != 2 && order != 3) throw std::invalid_argument("elliptic_correction: order must be 2 or 3");
  const mpq_class x = mpq_class(weight) / 2 * (1 - mpq_class(1) / order);
  mpz_class floor_x;
  mpz_fdiv_q(floor_x.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - floor_x;
}

DivisorQ c_prime(const DivisorQ& div, int weight) {
  if (weight % 12 != 0) {
    throw std::domain_error("c_prime: only weights divisible by 12 are supported, got " +
                            std::to_string(weight));
  }
  if (elliptic_correction(weight, 2) != 0 || elliptic_correction(weight, 3) != 0) {
    throw std::domain_error("c_prime: nonzero elliptic correction at weight " + std::to_string(weight));
  }
  return div;
}

DivisorQ c_divisor(const DivisorQ& div, int weight, std::int64_t n) {
  DivisorQ c = c_prime(div, weight);
  for (const auto& cusp : cusps(n)) c.add(cusp.label(), -1);
  return c;
}

std::int64_t min_sum_weight24_triple(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("min_sum_weight24_triple: level must be >= 2");
  std::int64_t sum = 0;
  for (const std::int64_t k : arith::divisors(n)) {
    const std::int64_t g = arith::gcd(k, n / k);
    const std::int64_t m = std::min(k, n / k);
    if (m % g != 0) throw InternalError("min_sum_weight24_triple: non-integral term");
    sum += arith::euler_phi(g) * (m / g);
  }
  return sum - arith::nu_inf(n);
}

mpq_class min_sum_weight24_from_divisors(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("min_sum_weight24_from_divisors: level must be >= 2");
  const DivisorQ d = divisor_delta(n);
  const DivisorQ dn = divisor_delta_dilated(n);
  const DivisorQ e = divisor_e4_cubed(n);
  const DivisorQ en = divisor_e4_cubed_dilated(n);
  const DivisorQ c[3] = {c_divisor(dn + d, 24, n), c_divisor(e + dn, 24, n),
                         c_divisor(en + d, 24, n)};

  std::vector<std::pair<std::string, bool>> labels;
  for (const auto& div : c) {
    for (const auto& t : div.terms()) {
      if (!t.aggregate && sgn(t.value) < 0) {
        throw InternalError("min_sum_weight24_from_divisors: c-divisor not effective at " + t.label);
      }
      const bool seen = std::any_of(labels.begin(), labels.end(),
                                    [&](const auto& l) { return l.first == t.label; });
      if (!seen) labels.emplace_back(t.label, t.aggregate);
    }
  }
  mpq_class total = 0;
  for (const auto& [label, aggregate] : labels) {
    if (aggregate) {
      // All c-divisors are effective, so a divisor without mass on the
      // aggregate pins the pointwise minimum there to zero.
      const bool some_absent = std::any_of(std::begin(c), std::end(c),
                                           [&](const DivisorQ& x) { return !x.contains(label); });
      if (!some_absent) {
        throw std::domain_error("min_sum_weight24_from_divisors: unresolved multiplicities on " + label);
      }
      continue;
    }
    mpq_class m = c[0].at(label);
    for (const auto& div : c) m = std::min(m, div.at(label));
    total += m;
  }
  return total;
}

nlohmann::json to_json(const DivisorQ& d) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : d.terms()) {
    nlohmann::json item = {{"label", t.label},
                           {"num", t.value.get_num().get_str()},
                           {"den", t.value.get_den().get_str()}};
    if (t.aggregate) item["aggregate"] = true;
    arr.push_back(std::move(item));
  }
  return arr;
}

nlohmann::json cusp_table_json(std::int64_t n, const DivisorQ& div) {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : cusps(n)) {
    cs.push_back({{"p", c.p}, {"q", c.q}, {"k", c.k}, {"width", c.width}, {"count_class", c.class_size}});
  }
  return {{"N", n}, {"cusps", cs}, {"divisor", to_json(div)}};
}

}  // namespace x0n
