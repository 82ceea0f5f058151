#pragma once

// Closed-form arithmetic of the modular curves X_0(N): the index psi(N),
// elliptic point and cusp counts, genus, dimensions of spaces of modular
// forms, and the degree formulas for the classical modular polynomial.
//
// Everything here is exact. Levels are 64-bit integers; every result that
// involves a division is checked for exact divisibility and an
// InternalError is thrown otherwise.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace x0n::arith {

using Int = std::int64_t;

struct PrimePower {
  Int prime;
  int exponent;
};

/// Trial division over a 2,3,5 wheel. Levels in this project stay well
/// below 10^7 so nothing smarter is needed. Requires n >= 1.
std::vector<PrimePower> factorize(Int n);

/// Positive divisors of n in increasing order.
std::vector<Int> divisors(Int n);

Int gcd(Int a, Int b);

/// Returns r with r*r == n, or nullopt when n is not a perfect square.
std::optional<Int> exact_sqrt(Int n);

Int euler_phi(Int n);

/// Dedekind psi: N * prod_{p|N} (1 + 1/p), the index of Gamma_0(N).
Int psi(Int n);

/// Kronecker symbol (-1/p) for a prime p, with (-1/2) = 0.
/// p = 1 mod 4 -> 1, p = 3 mod 4 -> -1.
int legendre_minus1(Int p);

/// Kronecker symbol (-3/p) for a prime p, with (-3/3) = 0.
/// p = 1 mod 3 -> 1, p = 2 mod 3 -> -1 (this covers p = 2).
int legendre_minus3(Int p);

/// Elliptic points of order 2 on X_0(N): 0 if 4|N, else prod (1 + (-1/p)).
Int nu2(Int n);

/// Elliptic points of order 3 on X_0(N): 0 if 9|N, else prod (1 + (-3/p)).
Int nu3(Int n);

/// Inequivalent cusps: sum over d|N of phi(gcd(d, N/d)).
Int nu_inf(Int n);

/// Genus of X_0(N) from 1 + psi/12 - nu2/4 - nu3/3 - nu_inf/2.
Int genus(Int n);

struct LevelInvariants {
  Int level;
  Int index;
  Int nu2;
  Int nu3;
  Int nu_inf;
  Int genus;
};

LevelInvariants level_invariants(Int n);

struct Dimensions {
  Int cusp_forms;     // dim S_m(Gamma_0(N))
  Int modular_forms;  // dim M_m(Gamma_0(N))
};

/// Dimensions for even weight m >= 4:
///   dim S_m = (m-1)(g-1) + (m/2-1) nu_inf + [m/4] nu2 + [m/3] nu3,
///   dim M_m = dim S_m + nu_inf.
Dimensions dim_spaces(Int n, Int weight);

/// phi(sqrt(N)) with the convention that it is 0 when N is not a square.
Int phi_of_sqrt(Int n);

/// Degree of Phi_N(x, x):
///   2 * sum_{k|N, sqrt(N) < k <= N} k/(k,N/k) * phi((k,N/k)) + phi(sqrt N).
Int diag_degree(Int n);

/// Total degree of Phi_N(x, y) as derived from the plane model of X_0(N):
///   2 psi(N) - phi(sqrt N) - 2 * sum_{k|N, sqrt(N) < k <= N}
///       phi((k,N/k)) * (N/k)/(k,N/k).
Int total_degree_formula(Int n);

/// Sum over k|N of (N/k) * phi((k,N/k)) / (k,N/k).
Int cusp_width_sum(Int n);

/// True iff cusp_width_sum(N) == psi(N).
bool psi_identity_check(Int n);

/// Levels N >= 1 with X_0(N) of genus zero.
const std::vector<Int>& genus_zero_levels();

/// Minimal degree of a birational plane model of X_0(N) built from weight-4
/// cusp forms: psi/3 - nu3/3 - nu_inf, i.e. dim S_4 + g - 1.
/// Throws std::domain_error for genus-zero levels and for N = 11, where
/// weight 4 does not suffice (the minimum there is 4, reached at weight 6).
Int min_degree_weight4(Int n);

/// The (degree, weight) of the minimal plane model from cusp forms, or
/// nullopt for genus-zero levels. N = 11 yields (4, 6).
std::optional<std::pair<Int, Int>> min_degree_model(Int n);

}  // namespace x0n::arith
