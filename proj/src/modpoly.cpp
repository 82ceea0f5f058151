#include "x0n/modpoly.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "x0n/arith.hpp"
#include "x0n/errors.hpp"
#include "x0n/forms.hpp"
#include "x0n/linalg.hpp"

namespace x0n {

BivarPoly::BivarPoly(Terms terms) {
  for (auto& [e, c] : terms) {
    if (e.first < 0 || e.second < 0) throw std::invalid_argument("BivarPoly: negative exponent");
    if (sgn(c) != 0) terms_.emplace(e, std::move(c));
  }
}

mpz_class BivarPoly::coeff(int r, int s) const {
  const auto it = terms_.find({r, s});
  return it == terms_.end() ? mpz_class(0) : it->second;
}

int BivarPoly::deg_x() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first);
  return d;
}

int BivarPoly::deg_y() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.second);
  return d;
}

bool BivarPoly::is_symmetric() const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) {
    return coeff(t.first.second, t.first.first) == t.second;
  });
}

std::string BivarPoly::to_text() const {
  std::ostringstream os;
  for (const auto& [e, c] : terms_) os << e.first << ' ' << e.second << ' ' << c.get_str() << '\n';
  return os.str();
}

BivarPoly BivarPoly::from_text(const std::string& text) {
  std::istringstream is(text);
  Terms terms;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int r = 0;
    int s = 0;
    std::string c;
    if (!(ls >> r >> s >> c)) throw std::invalid_argument("BivarPoly::from_text: bad line '" + line + "'");
    terms[{r, s}] = mpz_class(c);
  }
  return BivarPoly(std::move(terms));
}

namespace {

// j and j(N.) each carrying `relative` known coefficients from their
// leading term.
struct JPair {
  LaurentSeries j;
  LaurentSeries jn;
};

JPair j_pair(std::int64_t n, std::int64_t relative) {
  JPair out;
  out.j = j_invariant(relative - 1).series;
  const std::int64_t jn_prec = relative - n;
  const std::int64_t inner = std::max<std::int64_t>((jn_prec - 2 + n) / n + 1, 1);
  out.jn = dilate(j_invariant(inner).series, n);
  out.jn = out.jn.truncated(std::min(out.jn.precision(), jn_prec));
  if (out.jn.precision() < jn_prec) throw InternalError("j_pair: dilated j too short");
  return out;
}

std::vector<LaurentSeries> powers(const LaurentSeries& x, int max_exp) {
  std::vector<LaurentSeries> p;
  p.push_back(LaurentSeries::monomial(1, 0, x.relative_precision()));
  for (int i = 1; i <= max_exp; ++i) p.push_back(mul(p.back(), x));
  return p;
}

}  // namespace

LaurentSeries evaluate_on_j(const BivarPoly& p, std::int64_t n, std::int64_t prec) {
  const int dx = std::max(p.deg_x(), 0);
  const int dy = std::max(p.deg_y(), 0);
  const std::int64_t lowest = -static_cast<std::int64_t>(dx) - n * dy;
  const JPair jp = j_pair(n, prec - lowest);
  const auto jpow = powers(jp.j, dx);
  // Horner in j(N.): sum_s (sum_r c_rs j^r) j(N.)^s.
  LaurentSeries acc;
  for (int s = dy; s >= 0; --s) {
    LaurentSeries a = LaurentSeries::zero(jpow[0].precision());
    for (int r = 0; r <= dx; ++r) {
      const mpz_class c = p.coeff(r, s);
      if (sgn(c) != 0) a += scale(jpow[static_cast<std::size_t>(r)], mpq_class(c));
    }
    acc = s == dy ? a : add(mul(acc, jp.jn), a);
  }
  if (acc.precision() < prec) throw InternalError("evaluate_on_j: precision loss");
  return acc.truncated(prec);
}

PhiResult compute_phi(std::int64_t n, const PhiOptions& opts) {
  if (n < 2 || n > opts.n_max) {
    throw std::invalid_argument("phi: level " + std::to_string(n) + " outside [2, " +
                                std::to_string(opts.n_max) + "]");
  }
  const int psi = static_cast<int>(arith::psi(n));

  // Unknowns c_rs with s <= r; the column for r != s carries both
  // j^r j(N.)^s and j^s j(N.)^r.
  std::vector<std::pair<int, int>> unknowns;
  for (int r = psi; r >= 0; --r) {
    for (int s = r; s >= 0; --s) unknowns.emplace_back(r, s);
  }

  PhiResult result;
  result.unknowns = unknowns.size();
  result.window_start = -(n + 1) * psi;
  const auto unknown_count = static_cast<std::int64_t>(unknowns.size());

  // Extra rows are appended until the kernel is one-dimensional; the
  // residual check below certifies the final answer either way.
  std::vector<IntVector> kernel;
  for (std::int64_t extra = kPrecisionMargin;; extra += unknown_count) {
    result.window_length = unknown_count + extra;
    const std::int64_t hi = result.window_start + result.window_length;

    const JPair jp = j_pair(n, result.window_length);
    const auto jpow = powers(jp.j, psi);
    const auto jnpow = powers(jp.jn, psi);

    IntMatrix m(static_cast<std::size_t>(result.window_length), unknowns.size());
    for (std::size_t c = 0; c < unknowns.size(); ++c) {
      const auto [r, s] = unknowns[c];
      LaurentSeries col = mul(jpow[static_cast<std::size_t>(r)], jnpow[static_cast<std::size_t>(s)]);
      if (r != s) col += mul(jpow[static_cast<std::size_t>(s)], jnpow[static_cast<std::size_t>(r)]);
      if (col.precision() < hi) throw InternalError("phi: column precision below window");
      for (std::int64_t e = std::max(col.valuation(), result.window_start); e < hi; ++e) {
        const mpq_class v = col.coeff(e);
        if (v.get_den() != 1) throw InternalError("phi: non-integral j coefficient");
        m.at(static_cast<std::size_t>(e - result.window_start), c) = v.get_num();
      }
    }

    kernel = kernel_basis(m);
    if (kernel.size() <= 1 || extra > 4 * unknown_count) break;
  }
  if (kernel.size() != 1) {
    throw InternalError("phi: kernel dimension " + std::to_string(kernel.size()) + " for N=" +
                        std::to_string(n));
  }
  IntVector v = kernel.front();
  // Phi_N is monic in x, so the primitive vector has +-1 at (psi, 0).
  const auto lead = static_cast<std::size_t>(
      std::find(unknowns.begin(), unknowns.end(), std::pair<int, int>(psi, 0)) - unknowns.begin());
  if (abs(v[lead]) != 1) {
    throw InternalError("phi: leading coefficient " + v[lead].get_str() + " does not normalize to 1");
  }
  if (sgn(v[lead]) < 0) {
    for (auto& x : v) x = -x;
  }
  BivarPoly::Terms terms;
  for (std::size_t c = 0; c < unknowns.size(); ++c) {
    if (sgn(v[c]) == 0) continue;
    const auto [r, s] = unknowns[c];
    terms[{r, s}] = v[c];
    terms[{s, r}] = v[c];
  }
  result.poly = BivarPoly(std::move(terms));

  const std::int64_t check_to =
      opts.residual_exponent.value_or(2 * static_cast<std::int64_t>(psi) * psi);
  const LaurentSeries residual = evaluate_on_j(result.poly, n, check_to + 1);
  if (!residual.is_zero()) {
    throw InternalError("phi: Phi_N(j, j(N.)) has nonzero coefficient at q^" +
                        std::to_string(residual.valuation()));
  }
  result.residual_prec = residual.precision();
  return result;
}

int total_degree(const BivarPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("total_degree: zero polynomial");
  int d = 0;
  for (const auto& [e, c] : p.terms()) d = std::max(d, e.first + e.second);
  return d;
}

int diagonal_degree(const BivarPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("diagonal_degree: zero polynomial");
  std::map<int, mpz_class> diag;
  for (const auto& [e, c] : p.terms()) diag[e.first + e.second] += c;
  for (auto it = diag.rbegin(); it != diag.rend(); ++it) {
    if (sgn(it->second) != 0) return it->first;
  }
  throw std::domain_error("diagonal_degree: P(x, x) vanishes identically");
}

HomogPoly3 homogenize(const BivarPoly& p) {
  const int d = total_degree(p);
  HomogPoly3::Terms terms;
  for (const auto& [e, c] : p.terms()) terms.emplace(HomogPoly3::Exponents{d - e.first - e.second, e.first, e.second}, c);
  HomogPoly3 h(d, std::move(terms));
  h.normalize();
  return h;
}

bool kronecker_congruence_holds(const BivarPoly& p, std::int64_t prime) {
  const int e = static_cast<int>(prime);
  // (x^p - y)(x - y^p) = x^(p+1) - x^p y^p - x y + y^(p+1)
  const std::map<std::pair<int, int>, int> target = {
      {{e + 1, 0}, 1}, {{e, e}, -1}, {{1, 1}, -1}, {{0, e + 1}, 1}};
  const mpz_class mod = prime;
  auto residue_zero = [&](const mpz_class& x) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    return sgn(r) == 0;
  };
  for (const auto& [ex, c] : p.terms()) {
    const auto it = target.find(ex);
    const mpz_class t = it == target.end() ? 0 : it->second;
    if (!residue_zero(c - t)) return false;
  }
  for (const auto& [ex, t] : target) {
    if (!residue_zero(p.coeff(ex.first, ex.second) - t)) return false;
  }
  return true;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
  return os.str();
}

nlohmann::json phi_summary_json(const BivarPoly& p, std::int64_t n) {
  return {{"schema_version", kJsonSchemaVersion},
          {"N", n},
          {"psi", arith::psi(n)},
          {"total_degree", total_degree(p)},
          {"diag_degree", diagonal_degree(p)},
          {"sha256", sha256_hex(p.to_text())}};
}

}  // namespace x0n
