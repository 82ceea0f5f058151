#include "x0n/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "x0n/arith.hpp"
#include "x0n/forms.hpp"
#include "x0n/implicit.hpp"
#include "x0n/modpoly.hpp"
#include "x0n/parallel.hpp"

namespace x0n::cli {

namespace fs = std::filesystem;
using nlohmann::json;

LevelRange parse_range(const std::string& text) {
  auto parse_int = [&](const std::string& s) {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad range '" + text + "'");
    return static_cast<std::int64_t>(v);
  };
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto n = parse_int(text);
      return {n, n};
    }
    return {parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad range '" + text + "', expected A..B");
  }
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LevelRange levels_of(const RunConfig& cfg) {
  if (cfg.range) return *cfg.range;
  if (cfg.level) return {*cfg.level, *cfg.level};
  throw UsageError(cfg.command + ": give --level or --range");
}

std::int64_t level_of(const RunConfig& cfg, std::int64_t min_level) {
  if (!cfg.level) throw UsageError(cfg.command + ": --level is required");
  if (*cfg.level < min_level) {
    throw UsageError(cfg.command + ": level must be >= " + std::to_string(min_level));
  }
  return *cfg.level;
}

void write_file(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << contents;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string header(const std::string& command) {
  return std::string("# x0n ") + kVersion + " " + command + "\n";
}

}  // namespace

int cmd_invariants(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const LevelRange range = levels_of(cfg);
  if (range.first < 1) throw UsageError("invariants: levels must be >= 1");
  json rows = json::array();
  std::ostringstream text;
  text << header("invariants");
  text << "N psi nu2 nu3 nu_inf genus dim_S4 dim_M12 min_degree_weight4\n";
  for (std::int64_t n = range.first; n <= range.last; ++n) {
    const auto inv = arith::level_invariants(n);
    const auto s4 = arith::dim_spaces(n, 4);
    const auto m12 = arith::dim_spaces(n, 12);
    std::optional<std::int64_t> min_deg;
    if (n >= 2) {
      const auto model = arith::min_degree_model(n);
      if (model && model->second == 4) min_deg = model->first;
    }
    text << n << ' ' << inv.index << ' ' << inv.nu2 << ' ' << inv.nu3 << ' ' << inv.nu_inf << ' '
         << inv.genus << ' ' << s4.cusp_forms << ' ' << m12.modular_forms << ' '
         << (min_deg ? std::to_string(*min_deg) : "-") << '\n';
    json row = {{"N", n},          {"psi", inv.index},    {"nu2", inv.nu2},
                {"nu3", inv.nu3},  {"nu_inf", inv.nu_inf}, {"genus", inv.genus},
                {"dim_S4", s4.cusp_forms}, {"dim_M12", m12.modular_forms}};
    row["min_degree_weight4"] = min_deg ? json(*min_deg) : json(nullptr);
    rows.push_back(std::move(row));
  }
  const std::string body =
      cfg.format == Format::json
          ? json{{"schema_version", kJsonSchemaVersion}, {"version", kVersion}, {"rows", rows}}.dump(2) + "\n"
          : text.str();
  if (cfg.out.empty()) out << body;
  else write_file(cfg.out, body);
  return kSuccess;
}

int cmd_cusps(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const std::int64_t n = level_of(cfg, 1);
  const DivisorQ div = divisor_delta(n);
  std::string body;
  if (cfg.format == Format::json) {
    json j = cusp_table_json(n, div);
    j["schema_version"] = kJsonSchemaVersion;
    body = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << header("cusps") << "p q k width count_class div_delta\n";
    for (const auto& c : cusps(n)) {
      os << c.p << ' ' << c.q << ' ' << c.k << ' ' << c.width << ' ' << c.class_size << ' '
         << div.at(c.label()).get_str() << '\n';
    }
    body = os.str();
  }
  if (cfg.out.empty()) out << body;
  else write_file(cfg.out, body);
  return kSuccess;
}

int cmd_modpoly(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::int64_t n = level_of(cfg, 2);
  if (n > cfg.n_max) {
    throw UsageError("modpoly: N=" + std::to_string(n) + " exceeds --nmax " + std::to_string(cfg.n_max));
  }
  if (n > 7) err << "warning: Phi_" << n << " is large; expect long runtimes and heavy memory use\n";
  err << "computing Phi_" << n << "\n";
  PhiOptions opts;
  opts.n_max = cfg.n_max;
  const PhiResult res = compute_phi(n, opts);
  const BivarPoly& p = res.poly;

  const std::int64_t psi = arith::psi(n);
  const int tdeg = total_degree(p);
  const int ddeg = diagonal_degree(p);
  struct Check {
    std::string name;
    bool ok;
  };
  std::vector<Check> checks = {
      {"symmetric", p.is_symmetric()},
      {"monic_in_x", p.coeff(static_cast<int>(psi), 0) == 1},
      {"deg_x_eq_psi", p.deg_x() == psi},
      {"deg_y_eq_psi", p.deg_y() == psi},
      {"total_degree_eq_formula", tdeg == arith::total_degree_formula(n)},
      {"diag_degree_eq_formula", ddeg == arith::diag_degree(n)},
      {"total_degree_eq_diag_degree", tdeg == ddeg},
  };
  const auto factors = arith::factorize(n);
  if (factors.size() == 1 && factors.front().exponent == 1) {
    checks.push_back({"kronecker_congruence", kronecker_congruence_holds(p, n)});
  }

  json summary = phi_summary_json(p, n);
  summary["version"] = kVersion;
  summary["residual_prec"] = res.residual_prec;
  json jchecks = json::object();
  bool all_ok = true;
  for (const auto& c : checks) {
    jchecks[c.name] = c.ok;
    all_ok = all_ok && c.ok;
  }
  summary["checks"] = jchecks;

  if (!cfg.out.empty()) {
    const fs::path dir(cfg.out);
    const std::string stem = "phi_" + std::to_string(n);
    write_file(dir / (stem + ".txt"), p.to_text());
    write_file(dir / (stem + ".json"), summary.dump(2) + "\n");
  }
  if (cfg.format == Format::json) {
    out << summary.dump(2) << "\n";
  } else {
    out << header("modpoly");
    out << "N " << n << "\npsi " << psi << "\ndeg_x " << p.deg_x() << "\ndeg_y " << p.deg_y()
        << "\ntotal_degree " << tdeg << "\ndiag_degree " << ddeg << "\nresidual_prec "
        << res.residual_prec << "\n";
    for (const auto& c : checks) out << "check " << c.name << ' ' << (c.ok ? "pass" : "FAIL") << "\n";
    if (cfg.out.empty()) out << p.to_text();
  }
  return all_ok ? kSuccess : kVerificationFailure;
}

int cmd_model(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::int64_t n = level_of(cfg, 2);
  const fs::path dir(cfg.out);
  json reports = json::array();

  auto emit = [&](const std::string& stem, const ModelReport& r, json extra) {
    json j = to_json(r);
    for (auto& [k, v] : extra.items()) j[k] = v;
    if (!cfg.out.empty()) {
      write_file(dir / (stem + ".json"), j.dump(2) + "\n");
      write_file(dir / (stem + ".txt"), r.equation.to_text());
    }
    reports.push_back(std::move(j));
  };

  if (cfg.weight == 24) {
    const int d_max = static_cast<int>(arith::total_degree_formula(n));
    const auto t = weight24_j_triple(n, d_max);
    err << "weight-24 model for N=" << n << "\n";
    const ModelReport r = minimal_model(t[0], t[1], t[2], d_max, {ModelFamily::weight24_j, true});
    emit("model24_" + std::to_string(n), r, json::object());
  } else if (cfg.weight == 12) {
    if (cfg.bound < 1) throw UsageError("model: --bound must be >= 1");
    SearchOptions opts;
    opts.jobs = cfg.jobs;
    opts.max_hits = cfg.max_hits;
    opts.progress = [&](long a, long b, const std::string& status) {
      err << "N=" << n << " (" << a << "," << b << "): " << status << "\n";
    };
    const SearchResult res = search_ab(n, cfg.bound, opts);
    for (const auto& hit : res.hits) {
      emit("model12_" + std::to_string(n) + "_" + std::to_string(hit.alpha) + "_" + std::to_string(hit.beta),
           hit.report, {{"alpha", hit.alpha}, {"beta", hit.beta}});
    }
    err << res.hits.size() << " accepted, " << res.rejected.size() << " rejected\n";
  } else {
    throw UsageError("model: --weight must be 12 or 24");
  }

  if (cfg.format == Format::json) {
    out << json{{"schema_version", kJsonSchemaVersion}, {"version", kVersion}, {"reports", reports}}.dump(2)
        << "\n";
  } else {
    out << header("model");
    for (const auto& r : reports) {
      out << "N " << r["N"].get<std::int64_t>() << " m " << r["m"].get<int>();
      if (r.contains("alpha")) out << " alpha " << r["alpha"].get<long>() << " beta " << r["beta"].get<long>();
      out << " degree " << r["found_degree"].get<int>() << " predicted "
          << r["predicted_degree"].get<std::int64_t>() << " kernel_dim " << r["kernel_dim"].get<std::size_t>()
          << " residual_prec " << r["residual_prec"].get<std::int64_t>() << "\n";
    }
  }
  return reports.empty() ? kVerificationFailure : kSuccess;
}

std::vector<LevelCheck> verify_level(std::int64_t n) {
  const auto inv = arith::level_invariants(n);
  const auto s24 = arith::dim_spaces(n, 24);
  const auto m12 = arith::dim_spaces(n, 12);
  const auto cs = cusps(n);
  const std::int64_t tdf = arith::total_degree_formula(n);
  return {
      {"psi_identity", arith::psi_identity_check(n)},
      {"total_degree_eq_diag_degree", tdf == arith::diag_degree(n)},
      {"genus_consistency",
       12 * (inv.genus - 1) + 3 * inv.nu2 + 4 * inv.nu3 + 6 * inv.nu_inf == inv.index},
      {"dim_M_minus_dim_S", m12.modular_forms - m12.cusp_forms == inv.nu_inf},
      {"cusp_count", static_cast<std::int64_t>(cs.size()) == inv.nu_inf},
      {"deg_div_delta", divisor_delta(n).degree() == inv.index},
      {"deg_div_delta_dilated", divisor_delta_dilated(n).degree() == inv.index},
      {"min_sum_identity", s24.cusp_forms + inv.genus - 1 - min_sum_weight24_triple(n) == tdf},
  };
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const LevelRange range = levels_of(cfg);
  if (!range.empty() && range.first < 2) throw UsageError("verify: levels must be >= 2");
  const std::size_t count = range.empty() ? 0 : static_cast<std::size_t>(range.last - range.first + 1);
  std::vector<std::vector<LevelCheck>> results(count);
  parallel_for(count, cfg.jobs, [&](std::size_t i) {
    results[i] = verify_level(range.first + static_cast<std::int64_t>(i));
  });
  std::size_t failures = 0;
  std::size_t checks = 0;
  json failed = json::array();
  for (std::size_t i = 0; i < count; ++i) {
    for (const auto& c : results[i]) {
      ++checks;
      if (c.passed) continue;
      ++failures;
      const std::int64_t n = range.first + static_cast<std::int64_t>(i);
      failed.push_back({{"N", n}, {"check", c.name}});
      err << "FAIL N=" << n << " " << c.name << "\n";
    }
  }
  if (cfg.format == Format::json) {
    out << json{{"schema_version", kJsonSchemaVersion},
                {"version", kVersion},
                {"first", range.first},
                {"last", range.last},
                {"levels", count},
                {"checks", checks},
                {"failures", failed}}
               .dump(2)
        << "\n";
  } else {
    out << header("verify") << "levels " << count << "\nchecks " << checks << "\nfailures " << failures
        << "\n" << (failures == 0 ? "PASS" : "FAIL") << "\n";
  }
  return failures == 0 ? kSuccess : kVerificationFailure;
}

int cmd_series(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const std::int64_t prec = cfg.prec.value_or(10);
  if (prec < 2) throw UsageError("series: --prec must be >= 2");
  const std::int64_t factor = cfg.level.value_or(1);
  if (factor < 1) throw UsageError("series: --level must be >= 1");
  ModularForm f;
  if (cfg.form == "delta") f = delta(prec);
  else if (cfg.form == "e4") f = eisenstein_e4(prec);
  else if (cfg.form == "e6") f = eisenstein_e6(prec);
  else if (cfg.form == "e4cubed") f = e4_cubed(prec);
  else if (cfg.form == "j") f = j_invariant(prec);
  else throw UsageError("series: unknown form '" + cfg.form + "' (delta, e4, e6, e4cubed, j)");
  if (factor > 1) f = dilate(f, factor);
  if (cfg.format == Format::json) {
    json j = to_json(f.series);
    j["label"] = f.label;
    j["weight"] = f.weight;
    j["level"] = f.level;
    out << j.dump(2) << "\n";
  } else {
    out << header("series") << f.label << " = " << f.series.to_string() << "\n";
  }
  return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plane models of X_0(N), modular polynomials and their degree formulas", "x0n"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  RunConfig cfg;
  std::string range_text;
  std::string format_text = "text";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-N,--level", cfg.level, "level N");
    sub->add_option("--format", format_text, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", cfg.out, "output file or directory");
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  };
  auto* inv = app.add_subcommand("invariants", "psi, nu2, nu3, nu_inf, genus and dimensions per level");
  add_common(inv);
  inv->add_option("--range", range_text, "level range A..B");
  auto* cu = app.add_subcommand("cusps", "cusp representatives and div(Delta)");
  add_common(cu);
  auto* mp = app.add_subcommand("modpoly", "compute and check the modular polynomial Phi_N");
  add_common(mp);
  mp->add_option("--nmax", cfg.n_max, "largest level allowed");
  auto* mo = app.add_subcommand("model", "search for integral plane models of X_0(N)");
  add_common(mo);
  mo->add_option("--weight", cfg.weight, "12 (alpha/beta search) or 24 (j-map model)");
  mo->add_option("--bound", cfg.bound, "search box [-bound, bound]^2");
  mo->add_option("--max-hits", cfg.max_hits, "stop after this many accepted pairs (0 = all)");
  auto* ve = app.add_subcommand("verify", "arithmetic identity suite over a range of levels");
  add_common(ve);
  ve->add_option("--range", range_text, "level range A..B");
  auto* se = app.add_subcommand("series", "dump a q-expansion");
  add_common(se);
  se->add_option("--form", cfg.form, "delta, e4, e6, e4cubed or j");
  se->add_option("--prec", cfg.prec, "number of coefficients");
  se->add_option("--weight", cfg.weight, "ignored; forms carry their own weight");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    cfg.format = format_text == "json" ? Format::json : Format::text;
    if (!range_text.empty()) cfg.range = parse_range(range_text);
    if (inv->parsed()) return cfg.command = "invariants", cmd_invariants(cfg, out, err);
    if (cu->parsed()) return cfg.command = "cusps", cmd_cusps(cfg, out, err);
    if (mp->parsed()) return cfg.command = "modpoly", cmd_modpoly(cfg, out, err);
    if (mo->parsed()) return cfg.command = "model", cmd_model(cfg, out, err);
    if (ve->parsed()) return cfg.command = "verify", cmd_verify(cfg, out, err);
    if (se->parsed()) return cfg.command = "series", cmd_series(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return kUsageError;
}

}  // namespace x0n::cli
