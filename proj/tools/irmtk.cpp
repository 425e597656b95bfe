// irmtk: exact LRU miss rates and coupon-collection times under the
// independent reference model, cross-validated across independent formulas
// and stochastic oracles.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "irm/ccp.hpp"
#include "irm/exact.hpp"
#include "irm/io.hpp"
#include "irm/lru.hpp"
#include "irm/montecarlo.hpp"
#include "irm/quadrature.hpp"
#include "irm/subsets.hpp"

namespace {

struct RunConfig {
  std::string dist_spec;  // inline JSON or a path to a JSON file
  std::string j_range;    // "3" or "1..5"; empty means the full range
  int j_max = -1;         // verify
  double tolerance = 1e-10;
  std::string format = "csv";
  std::uint64_t seed = 12345;
  bool rational = false;
  std::string out;  // empty = stdout

  std::string mode;  // simulate: lru | ccp
  int capacity = 1;
  std::uint64_t accesses = 1'000'000;
  std::uint64_t trials = 100'000;
  std::uint64_t warmup = irm::auto_warmup;

  int table_depth = -1;  // itable
  int layer = -1;
  std::size_t entry_cap = irm::ITable::default_entry_cap;
};

irm::Popularity load_popularity(const std::string& spec) {
  std::string text = spec;
  if (!spec.empty() && spec.front() != '{') {
    std::ifstream f(spec);
    if (!f) throw std::invalid_argument("cannot read distribution file: " + spec);
    std::ostringstream buf;
    buf << f.rdbuf();
    text = buf.str();
  }
  return irm::popularity_from_json(nlohmann::json::parse(text));
}

std::pair<int, int> parse_range(const std::string& text, int lo_default, int hi_default) {
  if (text.empty()) return {lo_default, hi_default};
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad range \"" + text + "\": expected N or A..B");
  }
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::path path(cfg.out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("IRMTK_OUT_DIR"))
      path = std::filesystem::path(dir) / path;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file: " + path.string());
  f << text;
}

int run_mr(const RunConfig& cfg) {
  const auto pop = load_popularity(cfg.dist_spec);
  const int m = pop.item_count();
  const auto [j_lo, j_hi] = parse_range(cfg.j_range, 0, m);
  if (j_lo < 0 || j_hi > m || j_lo > j_hi)
    throw std::invalid_argument("capacity range must lie within [0, m]");

  irm::MissRateCurve curve;
  curve.m = m;

  if (cfg.rational) {
    const auto exact = irm::ExactPopularity::from_popularity(pop);
    const int depth = std::min(j_hi, m - 1);
    const irm::ExactITable table(exact, std::max(depth, 0));
    for (int j = j_lo; j <= j_hi; ++j) {
      irm::MissRateEntry e;
      e.capacity = j;
      if (j == 0) {
        e.mr_king = e.mr_flajolet = 1.0;
      } else if (j == m) {
        e.mr_king = 0.0;
        e.mr_flajolet = irm::to_double(irm::flajolet_miss_rate_exact(table, j));
      } else {
        const irm::BigRat king = irm::king_miss_rate_exact(table, j);
        const irm::BigRat fla = irm::flajolet_miss_rate_exact(table, j);
        e.mr_king = irm::to_double(king);
        e.mr_flajolet = irm::to_double(fla);
        e.discrepancy = irm::to_double(abs(king - fla));
      }
      curve.entries.push_back(e);
    }
  } else {
    std::optional<irm::ITable> table;
    if (j_hi >= 1) table.emplace(pop, std::min(j_hi, m - 1), cfg.entry_cap);
    for (int j = j_lo; j <= j_hi; ++j) {
      irm::MissRateEntry e;
      e.capacity = j;
      if (j == 0) {
        e.mr_king = e.mr_flajolet = 1.0;
      } else if (j == m) {
        e.mr_king = 0.0;  // full residency
        e.mr_flajolet = irm::flajolet_miss_rate(*table, j);
        e.discrepancy = std::abs(e.mr_king - e.mr_flajolet);
      } else {
        e.mr_king = irm::king_miss_rate(*table, j);
        e.mr_flajolet = irm::flajolet_miss_rate(*table, j);
        e.discrepancy = std::abs(e.mr_king - e.mr_flajolet);
      }
      curve.entries.push_back(e);
    }
  }

  emit(cfg, cfg.format == "json" ? irm::to_json(curve).dump(2) + "\n" : irm::to_csv(curve));
  return 0;
}

int run_ccp(const RunConfig& cfg) {
  const auto pop = load_popularity(cfg.dist_spec);
  const int m = pop.item_count();
  const auto [j_lo, j_hi] = parse_range(cfg.j_range, 0, m);
  if (j_lo < 0 || j_hi > m || j_lo > j_hi)
    throw std::invalid_argument("collection-size range must lie within [0, m]");

  irm::CcpCurve curve;
  if (cfg.rational) {
    const auto exact = irm::ExactPopularity::from_popularity(pop);
    const irm::ExactITable table(exact, std::min(j_hi, m - 1));
    curve.m = m;
    for (int j = j_lo; j <= j_hi; ++j) {
      irm::CcpEntry e;
      e.j = j;
      e.e_layers = irm::to_double(irm::expected_partial_time_exact(table, j));
      if (j >= 1)
        e.e_symmetric = irm::to_double(irm::symmetric_function_form_exact(exact, j));
      if (j >= 1 && j - 1 <= 8) e.e_ferrante = irm::ferrante_form(pop, j);
      if (j <= m - 1)
        e.delta_e = irm::to_double(irm::delta_expected_time_exact(table, j));
      curve.entries.push_back(e);
    }
  } else {
    curve = irm::ccp_curve(pop, j_lo, j_hi);
  }

  emit(cfg, cfg.format == "json" ? irm::to_json(curve).dump(2) + "\n" : irm::to_csv(curve));
  return 0;
}

int run_verify(const RunConfig& cfg) {
  const auto pop = load_popularity(cfg.dist_spec);
  const int m = pop.item_count();
  if (m < 2) throw std::invalid_argument("verify needs at least 2 items");
  const int j_max = cfg.j_max == -1 ? m - 1 : cfg.j_max;
  if (j_max < 1 || j_max > m - 1)
    throw std::invalid_argument("--jmax must lie within [1, m-1]");
  if (!(cfg.tolerance > 0)) throw std::invalid_argument("--tol must be positive");

  std::ostringstream report;
  bool ok = true;

  const auto curve = irm::check_identity(pop, j_max);
  for (const auto& e : curve.entries) {
    const bool pass = e.discrepancy <= cfg.tolerance;
    ok = ok && pass;
    report << "identity j=" << e.capacity << " king=" << irm::fmt17(e.mr_king)
           << " flajolet=" << irm::fmt17(e.mr_flajolet)
           << " |diff|=" << irm::fmt17(e.discrepancy) << (pass ? " ok" : " FAIL") << '\n';
  }

  const irm::ITable table(pop, j_max, cfg.entry_cap);
  for (int j = 1; j <= std::min(j_max, 5); ++j) {
    const double bf = irm::king_miss_rate_bruteforce(pop, j);
    const double subset = irm::king_miss_rate(table, j);
    const double scale = std::max(std::abs(bf), std::abs(subset));
    const double rel = scale == 0 ? 0 : std::abs(bf - subset) / scale;
    const bool pass = rel <= cfg.tolerance;
    ok = ok && pass;
    report << "bruteforce j=" << j << " rel_diff=" << irm::fmt17(rel)
           << (pass ? " ok" : " FAIL") << '\n';
  }

  for (int k = 1; k <= std::min(3, j_max); ++k) {
    const auto layer = irm::subsets_of_size(m, k);
    for (const std::size_t pick : {std::size_t{0}, layer.size() / 2, layer.size() - 1}) {
      const irm::SubsetIndex s = layer[pick];
      try {
        const auto r = irm::i_integral(pop, s, 1e-9);
        const double diff = std::abs(r.value - table.value(s));
        const bool pass = diff <= std::max(1e-6, 10.0 * r.error_estimate);
        ok = ok && pass;
        report << "quadrature mask=" << s.mask << " |diff|=" << irm::fmt17(diff)
               << " est=" << irm::fmt17(r.error_estimate) << (pass ? " ok" : " FAIL")
               << '\n';
      } catch (const irm::tolerance_not_reached& e) {
        ok = false;
        report << "quadrature mask=" << s.mask << " FAIL (" << e.what() << ")\n";
      }
      if (layer.size() == 1) break;
    }
  }

  if (cfg.rational) {
    const auto exact = irm::ExactPopularity::from_popularity(pop);
    const irm::ExactITable etable(exact, j_max);
    for (int j = 1; j <= j_max; ++j) {
      const bool pass = irm::king_miss_rate_exact(etable, j) ==
                        irm::flajolet_miss_rate_exact(etable, j);
      ok = ok && pass;
      report << "rational j=" << j << (pass ? " identical ok" : " differ FAIL") << '\n';
    }
  }

  report << (ok ? "verify: OK" : "verify: FAIL") << " (max identity discrepancy "
         << irm::fmt17(curve.max_discrepancy()) << ", tol " << irm::fmt17(cfg.tolerance)
         << ")\n";
  emit(cfg, report.str());
  return ok ? 0 : 1;
}

int run_simulate(const RunConfig& cfg) {
  const auto pop = load_popularity(cfg.dist_spec);
  const int m = pop.item_count();

  irm::SimEstimate est;
  double exact = 0.0;
  int param = 0;
  if (cfg.mode == "lru") {
    param = cfg.capacity;
    est = irm::simulate_lru(pop, cfg.capacity, cfg.warmup, cfg.accesses, cfg.seed);
    if (cfg.capacity == m) {
      exact = 0.0;
    } else {
      const irm::ITable table(pop, cfg.capacity, cfg.entry_cap);
      exact = irm::king_miss_rate(table, cfg.capacity);
    }
  } else if (cfg.mode == "ccp") {
    const auto [j, j2] = parse_range(cfg.j_range, 1, 1);
    if (j != j2) throw std::invalid_argument("simulate takes a single --j value");
    param = j;
    est = irm::simulate_ccp(pop, j, cfg.trials, cfg.seed);
    const irm::ITable table(pop, std::min(j, m - 1), cfg.entry_cap);
    exact = irm::expected_partial_time(table, j);
  } else {
    throw std::invalid_argument("--mode must be lru or ccp");
  }

  const double abs_error = std::abs(est.mean - exact);
  if (cfg.format == "json") {
    nlohmann::json j = irm::to_json(est);
    j["mode"] = cfg.mode;
    j[cfg.mode == "lru" ? "capacity" : "j"] = param;
    j["exact"] = exact;
    j["abs_error"] = abs_error;
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "mode,param,mean,std_error,samples,seed,exact,abs_error\n"
        << cfg.mode << ',' << param << ',' << irm::fmt17(est.mean) << ','
        << irm::fmt17(est.std_error) << ',' << est.samples << ',' << est.seed << ','
        << irm::fmt17(exact) << ',' << irm::fmt17(abs_error) << '\n';
    emit(cfg, out.str());
  }
  return 0;
}

int run_itable(const RunConfig& cfg) {
  const auto pop = load_popularity(cfg.dist_spec);
  const int m = pop.item_count();
  const int depth = cfg.table_depth == -1 ? m - 1 : cfg.table_depth;
  const int layer = cfg.layer == -1 ? depth : cfg.layer;
  if (layer < 0 || layer > depth)
    throw std::invalid_argument("--layer must lie within [0, the built depth]");

  const irm::ITable table(pop, depth, cfg.entry_cap);
  std::ostringstream out;
  out << "mask,size,q_J,I_J\n";
  std::size_t idx = 0;
  const auto& values = table.layer(layer);
  irm::for_each_subset_of_size(m, layer, [&](irm::SubsetIndex s) {
    out << s.mask << ',' << layer << ',' << irm::fmt17(irm::subset_prob_mass(pop, s))
        << ',' << irm::fmt17(values[idx++]) << '\n';
  });
  emit(cfg, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{
      "exact LRU miss rates and coupon-collection times under the "
      "independent reference model"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dist", cfg.dist_spec,
                    "distribution spec: inline JSON or a path to a JSON file")
        ->required();
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out,
                    "output file (relative paths resolve under $IRMTK_OUT_DIR); "
                    "stdout if omitted");
    sub->add_option("--cap", cfg.entry_cap, "subset-table entry cap");
  };

  CLI::App* mr = app.add_subcommand("mr", "miss-rate curve by both formulas");
  add_common(mr);
  mr->add_option("--j", cfg.j_range, "capacity or range A..B (default 0..m)");
  mr->add_flag("--rational", cfg.rational, "exact rational arithmetic (m <= 12)");

  CLI::App* ccp = app.add_subcommand("ccp", "partial-collection expected times");
  add_common(ccp);
  ccp->add_option("--j", cfg.j_range, "collection size or range A..B (default 0..m)");
  ccp->add_flag("--rational", cfg.rational, "exact rational arithmetic (m <= 12)");

  CLI::App* verify = app.add_subcommand(
      "verify", "cross-check the identity plus brute-force and quadrature oracles");
  add_common(verify);
  verify->add_option("--jmax", cfg.j_max, "largest capacity to check (default m-1)");
  verify->add_option("--tol", cfg.tolerance,
                     "identity/brute-force discrepancy tolerance");
  verify->add_flag("--rational", cfg.rational,
                   "also require bit-exact rational equality (m <= 12)");

  CLI::App* simulate =
      app.add_subcommand("simulate", "stochastic estimate beside the exact value");
  add_common(simulate);
  simulate->add_option("--mode", cfg.mode, "lru or ccp")->required();
  simulate->add_option("--capacity", cfg.capacity, "cache capacity (lru mode)");
  simulate->add_option("--j", cfg.j_range, "collection size (ccp mode)");
  simulate->add_option("--accesses", cfg.accesses, "counted accesses (lru mode)");
  simulate->add_option("--trials", cfg.trials, "trials (ccp mode)");
  simulate->add_option("--warmup", cfg.warmup,
                       "uncounted warmup accesses (default: adaptive)");
  simulate->add_option("--seed", cfg.seed, "RNG seed");

  CLI::App* itable = app.add_subcommand("itable", "dump one layer of the I table");
  add_common(itable);
  itable->add_option("--jmax", cfg.table_depth, "layers to build (default m-1)");
  itable->add_option("--layer", cfg.layer, "layer to dump (default jmax)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*mr) return run_mr(cfg);
    if (*ccp) return run_ccp(cfg);
    if (*verify) return run_verify(cfg);
    if (*simulate) return run_simulate(cfg);
    if (*itable) return run_itable(cfg);
  } catch (const std::exception& e) {
    std::cerr << "irmtk: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
