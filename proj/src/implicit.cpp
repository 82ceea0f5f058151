#include "x0n/implicit.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "x0n/arith.hpp"
#include "x0n/errors.hpp"
#include "x0n/linalg.hpp"
#include "x0n/parallel.hpp"

namespace x0n {

// ---------------------------------------------------------------------------
// HomogPoly3

HomogPoly3::HomogPoly3(int degree, Terms terms) : degree_(degree) {
  for (auto& [e, c] : terms) {
    if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] != degree) {
      throw std::invalid_argument("HomogPoly3: term of wrong degree");
    }
    if (sgn(c) != 0) terms_.emplace(e, std::move(c));
  }
}

mpz_class HomogPoly3::coeff(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void HomogPoly3::normalize() {
  if (terms_.empty()) return;
  mpz_class g = 0;
  for (const auto& [e, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (sgn(terms_.begin()->second) < 0) g = -g;
  for (auto& [e, c] : terms_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

bool HomogPoly3::is_normalized() const {
  if (terms_.empty()) return false;
  mpz_class g = 0;
  for (const auto& [e, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g == 1 && sgn(terms_.begin()->second) > 0;
}

HomogPoly3 HomogPoly3::permuted(const std::array<int, 3>& perm) const {
  Terms out;
  for (const auto& [e, c] : terms_) {
    Exponents f{};
    for (int i = 0; i < 3; ++i) f[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    out.emplace(f, c);
  }
  return HomogPoly3(degree_, std::move(out));
}

namespace {

// Powers x^0..x^max_exp, each to O(q^prec); x must have valuation >= 0.
std::vector<LaurentSeries> power_table(const LaurentSeries& x, int max_exp, std::int64_t prec) {
  std::vector<LaurentSeries> p;
  p.reserve(static_cast<std::size_t>(max_exp) + 1);
  p.push_back(LaurentSeries::monomial(1, 0, prec));
  const LaurentSeries base = x.truncated(prec);
  for (int i = 1; i <= max_exp; ++i) {
    LaurentSeries next = mul(p.back(), base);
    p.push_back(next.precision() > prec ? next.truncated(prec) : std::move(next));
  }
  return p;
}

LaurentSeries clip(LaurentSeries s, std::int64_t prec) {
  return s.precision() > prec ? s.truncated(prec) : s;
}

}  // namespace

LaurentSeries HomogPoly3::evaluate(const LaurentSeries& f, const LaurentSeries& g,
                                   const LaurentSeries& h) const {
  for (const auto* s : {&f, &g, &h}) {
    if (s->valuation() < 0) throw std::invalid_argument("HomogPoly3::evaluate: negative valuation");
  }
  const std::int64_t prec = std::min({f.precision(), g.precision(), h.precision()});
  const auto pf = power_table(f, degree_, prec);
  const auto pg = power_table(g, degree_, prec);
  const auto ph = power_table(h, degree_, prec);
  LaurentSeries sum = LaurentSeries::zero(prec);
  for (const auto& [e, c] : terms_) {
    LaurentSeries term = clip(mul(clip(mul(pf[e[0]], pg[e[1]]), prec), ph[e[2]]), prec);
    term *= mpq_class(c);
    sum += term;
  }
  return sum;
}

std::string HomogPoly3::to_text() const {
  std::ostringstream os;
  for (const auto& [e, c] : terms_) os << e[0] << ' ' << e[1] << ' ' << e[2] << ' ' << c.get_str() << '\n';
  return os.str();
}

std::vector<HomogPoly3::Exponents> monomials_of_degree(int d) {
  std::vector<HomogPoly3::Exponents> out;
  for (int i = d; i >= 0; --i) {
    for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
  }
  return out;
}

std::int64_t required_precision(std::int64_t level, int weight, int degree) {
  if (degree < 1) throw std::invalid_argument("required_precision: degree must be >= 1");
  if (weight < 4 || weight % 2 != 0) {
    throw std::invalid_argument("required_precision: weight must be even and >= 4");
  }
  const std::int64_t monomials = static_cast<std::int64_t>(degree + 1) * (degree + 2) / 2;
  const std::int64_t num = static_cast<std::int64_t>(degree) * weight * arith::psi(level);
  return monomials + (num + 11) / 12 + kPrecisionMargin;
}

// ---------------------------------------------------------------------------
// Linear systems

namespace {

struct TripleShape {
  int weight;
  std::int64_t level;
};

TripleShape check_triple(const ModularForm& f, const ModularForm& g, const ModularForm& h) {
  if (f.weight != g.weight || f.weight != h.weight) {
    throw std::invalid_argument("implicitization: forms must share their weight");
  }
  for (const auto* x : {&f, &g, &h}) {
    if (x->series.valuation() < 0) {
      throw std::invalid_argument("implicitization: form '" + x->label + "' has a pole at infinity");
    }
  }
  return {f.weight, std::lcm(std::lcm(f.level, g.level), h.level)};
}

void require_precision(const ModularForm& f, std::int64_t prec) {
  if (f.series.precision() < prec) {
    throw std::invalid_argument("implicitization: form '" + f.label + "' known to O(q^" +
                                std::to_string(f.series.precision()) + "), need O(q^" +
                                std::to_string(prec) + ")");
  }
}

IntMatrix coefficient_matrix(const std::vector<LaurentSeries>& columns, std::int64_t prec) {
  std::vector<std::vector<mpq_class>> rows(static_cast<std::size_t>(prec),
                                           std::vector<mpq_class>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (std::int64_t e = columns[c].valuation(); e < prec; ++e) {
      rows[static_cast<std::size_t>(e)][c] = columns[c].coeff(e);
    }
  }
  return IntMatrix::from_rational_rows(rows);
}

std::vector<LaurentSeries> monomial_series(const LaurentSeries& f, const LaurentSeries& g,
                                           const LaurentSeries& h, int d, std::int64_t prec) {
  const auto pf = power_table(f, d, prec);
  const auto pg = power_table(g, d, prec);
  const auto ph = power_table(h, d, prec);
  std::vector<LaurentSeries> cols;
  for (const auto& e : monomials_of_degree(d)) {
    cols.push_back(clip(mul(clip(mul(pf[e[0]], pg[e[1]]), prec), ph[e[2]]), prec));
  }
  return cols;
}

// Series mod 2^61 - 1, coefficients of q^0 .. q^(len-1).
using ModSeries = std::vector<std::uint64_t>;
constexpr std::uint64_t kP = kScreenPrime;

std::uint64_t mreduce(unsigned __int128 x) {
  unsigned __int128 s = (x & kP) + (x >> 61);
  s = (s & kP) + (s >> 61);
  auto r = static_cast<std::uint64_t>(s);
  return r >= kP ? r - kP : r;
}

std::uint64_t mpow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mreduce(static_cast<unsigned __int128>(r) * b);
    b = mreduce(static_cast<unsigned __int128>(b) * b);
    e >>= 1;
  }
  return r;
}

std::optional<ModSeries> reduce_series(const LaurentSeries& s, std::int64_t len) {
  ModSeries out(static_cast<std::size_t>(len), 0);
  for (std::int64_t e = s.valuation(); e < len; ++e) {
    const mpq_class c = s.coeff(e);
    const std::uint64_t den = mpz_fdiv_ui(c.get_den_mpz_t(), kP);
    if (den == 0) return std::nullopt;
    const std::uint64_t num = mpz_fdiv_ui(c.get_num_mpz_t(), kP);
    out[static_cast<std::size_t>(e)] =
        den == 1 ? num : mreduce(static_cast<unsigned __int128>(num) * mpow(den, kP - 2));
  }
  return out;
}

ModSeries mod_mul(const ModSeries& a, const ModSeries& b, std::size_t len) {
  ModSeries out(len, 0);
  std::size_t a_lo = 0;
  while (a_lo < a.size() && a[a_lo] == 0) ++a_lo;
  std::size_t b_lo = 0;
  while (b_lo < b.size() && b[b_lo] == 0) ++b_lo;
  for (std::size_t n = a_lo + b_lo; n < len; ++n) {
    unsigned __int128 acc = 0;
    int pending = 0;
    const std::size_t hi = n - b_lo;
    for (std::size_t i = a_lo; i <= hi; ++i) {
      acc += static_cast<unsigned __int128>(a[i]) * b[n - i];
      if (++pending == 32) {
        acc = mreduce(acc);
        pending = 0;
      }
    }
    out[n] = mreduce(acc);
  }
  return out;
}

// Monomials mod p, sharing f^i g^j across degrees.
class ModMonomials {
 public:
  ModMonomials(ModSeries f, ModSeries g, ModSeries h, int max_deg, std::size_t len)
      : len_(len) {
    auto powers = [&](const ModSeries& x) {
      std::vector<ModSeries> p;
      ModSeries one(len, 0);
      one[0] = 1;
      p.push_back(std::move(one));
      for (int i = 1; i <= max_deg; ++i) p.push_back(mod_mul(p.back(), x, len));
      return p;
    };
    pf_ = powers(f);
    pg_ = powers(g);
    ph_ = powers(h);
  }

  ModMatrix matrix(int d, std::size_t rows) {
    const auto mons = monomials_of_degree(d);
    ModMatrix m{rows, mons.size(), kP, std::vector<std::uint64_t>(rows * mons.size())};
    for (std::size_t c = 0; c < mons.size(); ++c) {
      const auto& e = mons[c];
      const ModSeries& fg = fg_power(e[0], e[1]);
      const ModSeries col = e[2] == 0 ? fg : mod_mul(fg, ph_[e[2]], rows);
      for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = col[r];
    }
    return m;
  }

 private:
  const ModSeries& fg_power(int i, int j) {
    auto it = fg_.find({i, j});
    if (it != fg_.end()) return it->second;
    ModSeries v = j == 0 ? pf_[i] : (i == 0 ? pg_[j] : mod_mul(pf_[i], pg_[j], len_));
    return fg_.emplace(std::pair{i, j}, std::move(v)).first->second;
  }

  std::size_t len_;
  std::vector<ModSeries> pf_, pg_, ph_;
  std::map<std::pair<int, int>, ModSeries> fg_;
};

HomogPoly3 to_poly(int d, const IntVector& v) {
  const auto mons = monomials_of_degree(d);
  HomogPoly3::Terms terms;
  for (std::size_t c = 0; c < mons.size(); ++c) {
    if (sgn(v[c]) != 0) terms.emplace(mons[c], v[c]);
  }
  HomogPoly3 p(d, std::move(terms));
  p.normalize();
  return p;
}

}  // namespace

std::vector<HomogPoly3> vanishing_space(const ModularForm& f, const ModularForm& g,
                                        const ModularForm& h, int degree, std::int64_t prec) {
  const TripleShape shape = check_triple(f, g, h);
  if (degree < 1) throw std::invalid_argument("vanishing_space: degree must be >= 1");
  const std::int64_t needed = required_precision(shape.level, shape.weight, degree);
  if (prec < needed) {
    throw std::invalid_argument("vanishing_space: precision " + std::to_string(prec) +
                                " below policy minimum " + std::to_string(needed));
  }
  for (const auto* x : {&f, &g, &h}) require_precision(*x, prec);
  const auto cols = monomial_series(f.series, g.series, h.series, degree, prec);
  const IntMatrix m = coefficient_matrix(cols, prec);
  std::vector<HomogPoly3> out;
  for (const auto& v : kernel_basis(m)) out.push_back(to_poly(degree, v));
  return out;
}

std::int64_t degree_prediction_family(std::int64_t level, ModelFamily family) {
  if (level < 2) throw std::invalid_argument("degree_prediction_family: level must be >= 2");
  switch (family) {
    case ModelFamily::weight12_ab:
      return arith::psi(level);
    case ModelFamily::weight24_j:
      return arith::total_degree_formula(level);
  }
  throw std::invalid_argument("degree_prediction_family: unknown family");
}

ModelReport minimal_model(const ModularForm& f, const ModularForm& g, const ModularForm& h,
                          int d_max, const ModelOptions& opts) {
  const TripleShape shape = check_triple(f, g, h);
  if (d_max < 1) throw std::invalid_argument("minimal_model: d_max must be >= 1");
  const std::int64_t prec_max = required_precision(shape.level, shape.weight, d_max);
  for (const auto* x : {&f, &g, &h}) require_precision(*x, prec_max);

  {
    std::vector<std::vector<mpq_class>> rows(3, std::vector<mpq_class>(static_cast<std::size_t>(prec_max)));
    const ModularForm* forms[3] = {&f, &g, &h};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::int64_t e = 0; e < prec_max; ++e) rows[i][static_cast<std::size_t>(e)] = forms[i]->series.coeff(e);
    }
    if (rank(IntMatrix::from_rational_rows(rows)) != 3) {
      throw std::invalid_argument("minimal_model: forms are linearly dependent");
    }
  }

  std::optional<ModMonomials> screen;
  if (opts.modular_screen) {
    auto rf = reduce_series(f.series, prec_max);
    auto rg = reduce_series(g.series, prec_max);
    auto rh = reduce_series(h.series, prec_max);
    if (rf && rg && rh) {
      screen.emplace(std::move(*rf), std::move(*rg), std::move(*rh), d_max,
                     static_cast<std::size_t>(prec_max));
    }
  }

  ModelReport report;
  report.level = shape.level;
  report.weight = shape.weight;
  report.labels = {f.label, g.label, h.label};
  report.integral = f.series.is_integral() && g.series.is_integral() && h.series.is_integral();
  if (opts.family) {
    report.predicted_degree = degree_prediction_family(shape.level, *opts.family);
  } else {
    const auto dims = arith::dim_spaces(shape.level, shape.weight);
    report.predicted_degree = dims.modular_forms + arith::genus(shape.level) - 1;
  }

  // Degree 0 never vanishes, so the scan starts out certified.
  bool lower_degree_empty = true;
  for (int d = 1; d <= d_max; ++d) {
    const std::int64_t prec = required_precision(shape.level, shape.weight, d);
    if (screen) {
      const ModMatrix mm = screen->matrix(d, static_cast<std::size_t>(prec));
      if (rank_mod(mm) == mm.cols) {
        lower_degree_empty = true;
        continue;
      }
    }
    std::vector<HomogPoly3> space = vanishing_space(f, g, h, d, prec);
    if (space.empty()) {
      lower_degree_empty = true;
      continue;
    }
    report.found_degree = d;
    report.kernel_dim = space.size();
    report.anomalous = space.size() > 1;
    report.equation = std::move(space.front());
    report.minimality_certified = lower_degree_empty;
    const LaurentSeries residual = report.equation.evaluate(
        f.series.truncated(prec), g.series.truncated(prec), h.series.truncated(prec));
    if (!residual.is_zero() || residual.precision() < prec) {
      throw InternalError("minimal_model: equation does not vanish on the parametrization");
    }
    report.residual_prec = residual.precision();
    return report;
  }
  throw std::runtime_error("minimal_model: no relation up to degree " + std::to_string(d_max) +
                           " (upper bound dim M + g - 1 = " +
                           std::to_string(report.predicted_degree) + ")");
}

// ---------------------------------------------------------------------------
// Families

namespace {

// Delta and E4^3 to O(q^prec) together with their N-dilations to O(q^prec).
struct BaseForms {
  ModularForm delta, e4c, delta_n, e4c_n;
};

BaseForms base_forms(std::int64_t level, std::int64_t prec) {
  BaseForms b;
  b.delta = delta(prec);
  b.e4c = e4_cubed(prec);
  const std::int64_t inner = (prec - 1 + level - 1) / level + 1;
  b.delta_n = dilate(delta(std::max<std::int64_t>(inner, 2)), level);
  b.e4c_n = dilate(e4_cubed(inner), level);
  b.delta_n.series = b.delta_n.series.truncated(prec);
  b.e4c_n.series = b.e4c_n.series.truncated(prec);
  return b;
}

std::string ab_label(long alpha, long beta) {
  return std::to_string(alpha) + "*Delta(Nz)+" + std::to_string(beta) + "*E4^3(Nz)";
}

}  // namespace

std::array<ModularForm, 3> weight12_ab_triple(std::int64_t level, long alpha, long beta, int d_max) {
  if (level < 2) throw std::invalid_argument("weight12_ab_triple: level must be >= 2");
  const BaseForms b = base_forms(level, required_precision(level, 12, d_max));
  return {b.delta, b.e4c,
          linear_combination(alpha, b.delta_n, beta, b.e4c_n, ab_label(alpha, beta))};
}

std::array<ModularForm, 3> weight24_j_triple(std::int64_t level, int d_max) {
  if (level < 2) throw std::invalid_argument("weight24_j_triple: level must be >= 2");
  const BaseForms b = base_forms(level, required_precision(level, 24, d_max));
  return {product(b.delta, b.delta_n), product(b.e4c, b.delta_n), product(b.e4c_n, b.delta)};
}

std::vector<std::pair<long, long>> ab_candidates(long bound) {
  std::vector<std::pair<long, long>> out;
  for (long a = -bound; a <= bound; ++a) {
    for (long b = -bound; b <= bound; ++b) {
      if (a != 0 || b != 0) out.emplace_back(a, b);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::max(std::labs(x.first), std::labs(x.second)) <
           std::max(std::labs(y.first), std::labs(y.second));
  });
  return out;
}

SearchResult search_ab(std::int64_t level, long bound, const SearchOptions& opts) {
  if (level < 2) throw std::invalid_argument("search_ab: level must be >= 2");
  if (bound < 1) throw std::invalid_argument("search_ab: bound must be >= 1");
  const int d_max = static_cast<int>(arith::psi(level));
  const BaseForms b = base_forms(level, required_precision(level, 12, d_max));
  const auto candidates = ab_candidates(bound);

  struct Outcome {
    std::optional<ModelReport> report;
    std::string reason;
  };
  std::vector<Outcome> outcomes(candidates.size());
  std::mutex progress_mutex;

  auto run_one = [&](std::size_t i) {
    const auto [alpha, beta] = candidates[i];
    const ModularForm h = linear_combination(alpha, b.delta_n, beta, b.e4c_n, ab_label(alpha, beta));
    Outcome out;
    try {
      ModelReport r = minimal_model(b.delta, b.e4c, h, d_max, {ModelFamily::weight12_ab, true});
      if (r.anomalous) {
        out.reason = "kernel dimension " + std::to_string(r.kernel_dim) + " at degree " +
                     std::to_string(r.found_degree);
      } else if (r.found_degree != d_max) {
        out.reason = "model degree " + std::to_string(r.found_degree) + " != psi(N) = " +
                     std::to_string(d_max);
      }
      out.report = std::move(r);
    } catch (const std::exception& e) {
      out.reason = e.what();
    }
    if (opts.progress) {
      std::lock_guard lock(progress_mutex);
      opts.progress(alpha, beta, out.reason.empty() ? "hit" : out.reason);
    }
    outcomes[i] = std::move(out);
  };

  SearchResult result;
  const std::size_t chunk = opts.max_hits == 0 ? candidates.size() : std::max(1u, opts.jobs);
  for (std::size_t start = 0; start < candidates.size(); start += chunk) {
    const std::size_t n = std::min(chunk, candidates.size() - start);
    parallel_for(n, opts.jobs, [&](std::size_t i) { run_one(start + i); });
    for (std::size_t i = start; i < start + n; ++i) {
      auto& out = outcomes[i];
      const auto [alpha, beta] = candidates[i];
      if (out.reason.empty() && out.report) {
        if (opts.max_hits == 0 || result.hits.size() < opts.max_hits) {
          result.hits.push_back({alpha, beta, std::move(*out.report)});
        }
      } else {
        result.rejected.push_back({alpha, beta, out.reason});
      }
    }
    if (opts.max_hits != 0 && result.hits.size() >= opts.max_hits) break;
  }
  return result;
}

nlohmann::json to_json(const HomogPoly3& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({e[0], e[1], e[2], c.get_str()});
  return {{"degree", p.degree()}, {"terms", terms}};
}

nlohmann::json to_json(const ModelReport& r) {
  return {{"schema_version", kJsonSchemaVersion},
          {"N", r.level},
          {"m", r.weight},
          {"labels", r.labels},
          {"found_degree", r.found_degree},
          {"predicted_degree", r.predicted_degree},
          {"kernel_dim", r.kernel_dim},
          {"residual_prec", r.residual_prec},
          {"integral", r.integral},
          {"minimality_certified", r.minimality_certified},
          {"anomalous", r.anomalous},
          {"equation", to_json(r.equation)}};
}

}  // namespace x0n
