#include "x0n/arith.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "x0n/errors.hpp"

namespace x0n::arith {

namespace {

void require_positive(Int n, const char* what) {
  if (n < 1) {
    throw std::invalid_argument(std::string(what) + ": argument must be >= 1, got " +
                                std::to_string(n));
  }
}

void require_level_at_least_two(Int n, const char* what) {
  if (n < 2) {
    throw std::invalid_argument(std::string(what) + ": level must be >= 2, got " +
                                std::to_string(n));
  }
}

Int exact_div(Int num, Int den, const char* what) {
  if (num % den != 0) {
    throw InternalError(std::string(what) + ": " + std::to_string(num) +
                        " is not divisible by " + std::to_string(den));
  }
  return num / den;
}

}  // namespace

std::vector<PrimePower> factorize(Int n) {
  require_positive(n, "factorize");
  std::vector<PrimePower> out;
  auto strip = [&](Int p) {
    if (n % p != 0) return;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  };
  strip(2);
  strip(3);
  strip(5);
  // Wheel mod 30: offsets of residues coprime to 30 starting at 7.
  static constexpr Int kGaps[] = {4, 2, 4, 2, 4, 6, 2, 6};
  Int p = 7;
  for (std::size_t i = 0; p * p <= n; p += kGaps[i], i = (i + 1) % 8) {
    strip(p);
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<Int> divisors(Int n) {
  require_positive(n, "divisors");
  std::vector<Int> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    Int pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::optional<Int> exact_sqrt(Int n) {
  if (n < 0) return std::nullopt;
  // Integer Newton iteration; no floating point.
  if (n < 2) return n;
  Int x = n;
  Int y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  if (x * x == n) return x;
  return std::nullopt;
}

Int euler_phi(Int n) {
  require_positive(n, "euler_phi");
  Int result = n;
  for (const auto& pe : factorize(n)) result = result / pe.prime * (pe.prime - 1);
  return result;
}

Int psi(Int n) {
  require_positive(n, "psi");
  Int result = n;
  for (const auto& pe : factorize(n)) result = result / pe.prime * (pe.prime + 1);
  return result;
}

int legendre_minus1(Int p) {
  if (p == 2) return 0;
  return p % 4 == 1 ? 1 : -1;
}

int legendre_minus3(Int p) {
  if (p == 3) return 0;
  return p % 3 == 1 ? 1 : -1;
}

Int nu2(Int n) {
  require_positive(n, "nu2");
  if (n % 4 == 0) return 0;
  Int result = 1;
  for (const auto& pe : factorize(n)) result *= 1 + legendre_minus1(pe.prime);
  return result;
}

Int nu3(Int n) {
  require_positive(n, "nu3");
  if (n % 9 == 0) return 0;
  Int result = 1;
  for (const auto& pe : factorize(n)) result *= 1 + legendre_minus3(pe.prime);
  return result;
}

Int nu_inf(Int n) {
  require_positive(n, "nu_inf");
  Int total = 0;
  for (Int d : divisors(n)) total += euler_phi(gcd(d, n / d));
  return total;
}

Int genus(Int n) {
  require_positive(n, "genus");
  // 12 g = 12 + psi - 3 nu2 - 4 nu3 - 6 nu_inf
  const Int twelve_g = 12 + psi(n) - 3 * nu2(n) - 4 * nu3(n) - 6 * nu_inf(n);
  const Int g = exact_div(twelve_g, 12, "genus");
  if (g < 0) throw InternalError("genus: negative genus for N=" + std::to_string(n));
  return g;
}

LevelInvariants level_invariants(Int n) {
  return {n, psi(n), nu2(n), nu3(n), nu_inf(n), genus(n)};
}

Dimensions dim_spaces(Int n, Int weight) {
  require_positive(n, "dim_spaces");
  if (weight < 4 || weight % 2 != 0) {
    throw std::invalid_argument("dim_spaces: weight must be even and >= 4, got " +
                                std::to_string(weight));
  }
  const LevelInvariants inv = level_invariants(n);
  const Int cusp = (weight - 1) * (inv.genus - 1) + (weight / 2 - 1) * inv.nu_inf +
                   (weight / 4) * inv.nu2 + (weight / 3) * inv.nu3;
  if (cusp < 0) throw InternalError("dim_spaces: negative dimension");
  return {cusp, cusp + inv.nu_inf};
}

Int phi_of_sqrt(Int n) {
  const auto r = exact_sqrt(n);
  return r ? euler_phi(*r) : 0;
}

Int diag_degree(Int n) {
  require_level_at_least_two(n, "diag_degree");
  Int sum = 0;
  for (Int k : divisors(n)) {
    if (k * k <= n) continue;
    const Int g = gcd(k, n / k);
    sum += exact_div(k, g, "diag_degree") * euler_phi(g);
  }
  return 2 * sum + phi_of_sqrt(n);
}

Int total_degree_formula(Int n) {
  require_level_at_least_two(n, "total_degree_formula");
  Int sum = 0;
  for (Int k : divisors(n)) {
    if (k * k <= n) continue;
    const Int g = gcd(k, n / k);
    sum += euler_phi(g) * exact_div(n / k, g, "total_degree_formula");
  }
  return 2 * psi(n) - phi_of_sqrt(n) - 2 * sum;
}

Int cusp_width_sum(Int n) {
  require_positive(n, "cusp_width_sum");
  Int sum = 0;
  for (Int k : divisors(n)) {
    const Int g = gcd(k, n / k);
    sum += exact_div(n / k, g, "cusp_width_sum") * euler_phi(g);
  }
  return sum;
}

bool psi_identity_check(Int n) {
  require_level_at_least_two(n, "psi_identity_check");
  return cusp_width_sum(n) == psi(n);
}

const std::vector<Int>& genus_zero_levels() {
  static const std::vector<Int> kLevels = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25};
  return kLevels;
}

namespace {

bool is_genus_zero_level(Int n) {
  const auto& z = genus_zero_levels();
  return std::binary_search(z.begin(), z.end(), n);
}

}  // namespace

Int min_degree_weight4(Int n) {
  require_level_at_least_two(n, "min_degree_weight4");
  if (is_genus_zero_level(n)) {
    throw std::domain_error("min_degree_weight4: X_0(" + std::to_string(n) + ") has genus 0");
  }
  if (n == 11) {
    throw std::domain_error(
        "min_degree_weight4: weight 4 is too small for N=11; the minimal degree 4 is reached "
        "at weight 6");
  }
  const Int third = exact_div(psi(n) - nu3(n), 3, "min_degree_weight4");
  return third - nu_inf(n);
}

std::optional<std::pair<Int, Int>> min_degree_model(Int n) {
  if (n < 2 || is_genus_zero_level(n)) return std::nullopt;
  if (n == 11) {
    const Dimensions d = dim_spaces(11, 6);
    return std::pair<Int, Int>{d.cusp_forms + genus(11) - 1, 6};
  }
  return std::pair<Int, Int>{min_degree_weight4(n), 4};
}

}  // namespace x0n::arith
