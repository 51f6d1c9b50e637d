#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvcomp/complementarity.hpp"
#include "cvcomp/gaussian_vm.hpp"
#include "cvcomp/homodyne.hpp"
#include "cvcomp/verify.hpp"
#include "cvcomp/version.hpp"

namespace {

using cvcomp::SweepQuantity;

// 17 significant digits: doubles survive a write/parse round trip.
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

const char* kConventionNote =
    "vacuum variance matrix = identity; V_jk = <{q_j,q_k}> - 2<q_j><q_k>; "
    "ordering (x_a, p_a, x_b, p_b)";

SweepQuantity quantity_from_name(const std::string& name) {
  if (name == "predictability") return SweepQuantity::predictability;
  if (name == "fidelity") return SweepQuantity::fidelity;
  if (name == "iconcurrence") return SweepQuantity::iconcurrence;
  if (name == "vm-discrepancy") return SweepQuantity::vm_discrepancy;
  throw CLI::ValidationError("--quantity", "unknown quantity '" + name + "'");
}

struct SweepConfig {
  std::string quantity = "predictability";
  int figure = 0;
  double r_min = 0.0;
  double r_max = 3.0;
  double r_step = 0.05;
  int t_min = 1;
  int t_max = 50;
  std::vector<int> t_list;
  double xi_min = 0.0;
  double xi_max = 0.99;
  double xi_step = 0.01;
  std::string output;
  std::string format = "csv";
};

struct VerifyConfig {
  cvcomp::VerifyOptions options;
};

struct EstimateConfig {
  std::string state = "tmss";
  double r = 1.0;
  int shots = 100000;
  std::uint64_t seed = 12345;
  bool reduce = false;
};

struct ReduceDemoConfig {
  double r = 1.0;
};

std::string default_output_dir() {
  const char* env = std::getenv("CVCOMP_OUTPUT_DIR");
  return (env != nullptr && *env != '\0') ? std::string(env) : std::string(".");
}

void print_matrix(std::ostream& os, const Eigen::Matrix4d& m,
                  const char* indent) {
  for (int j = 0; j < 4; ++j) {
    os << indent;
    for (int k = 0; k < 4; ++k) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%16.9g", m(j, k));
      os << buf;
    }
    os << "\n";
  }
}

int run_sweep(const SweepConfig& cfg_in, bool quantity_set, bool r_set,
              bool t_range_set, bool t_list_set, bool xi_set) {
  SweepConfig cfg = cfg_in;

  // Figure presets fill in whatever the user did not override.
  if (cfg.figure != 0) {
    if (!quantity_set) {
      switch (cfg.figure) {
        case 1: cfg.quantity = "predictability"; break;
        case 2: cfg.quantity = "fidelity"; break;
        case 3: cfg.quantity = "iconcurrence"; break;
        case 4: cfg.quantity = "vm-discrepancy"; break;
        default:
          std::cerr << "error: --figure must be 1..4\n";
          return 2;
      }
    }
    if (cfg.figure >= 1 && cfg.figure <= 3 && !r_set) {
      cfg.r_min = 0.0;
      cfg.r_max = 3.0;
      cfg.r_step = 0.05;
    }
  }
  const SweepQuantity quantity = quantity_from_name(cfg.quantity);
  if (xi_set && quantity != SweepQuantity::vm_discrepancy) {
    std::cerr << "error: the xi grid applies to vm-discrepancy only\n";
    return 2;
  }

  cvcomp::SweepGrid grid;
  grid.quantity = quantity;
  std::string grid_note;
  if (quantity == SweepQuantity::vm_discrepancy) {
    if (!(cfg.xi_step > 0.0) || !(cfg.xi_min >= 0.0) || cfg.xi_max >= 1.0 ||
        cfg.xi_max < cfg.xi_min) {
      std::cerr << "error: xi grid must satisfy 0 <= xi-min <= xi-max < 1, "
                   "xi-step > 0\n";
      return 2;
    }
    for (int j = 0;; ++j) {
      const double xi = cfg.xi_min + j * cfg.xi_step;
      if (xi > cfg.xi_max + 1e-12) {
        break;
      }
      grid.r_values.push_back(std::atanh(xi));
    }
    if (t_list_set) {
      grid.t_values = cfg.t_list;
    } else if (t_range_set) {
      for (int t = cfg.t_min; t <= cfg.t_max; ++t) grid.t_values.push_back(t);
    } else {
      grid.t_values = {5, 10, 15, 20};
    }
    grid_note = "xi in [" + fmt_short(cfg.xi_min) + ", " +
                fmt_short(cfg.xi_max) + "] step " + fmt_short(cfg.xi_step);
  } else {
    if (!(cfg.r_step > 0.0) || !(cfg.r_min >= 0.0) || cfg.r_max < cfg.r_min) {
      std::cerr
          << "error: r grid must satisfy 0 <= r-min <= r-max, r-step > 0\n";
      return 2;
    }
    for (int j = 0;; ++j) {
      const double r = cfg.r_min + j * cfg.r_step;
      if (r > cfg.r_max + 1e-12) {
        break;
      }
      grid.r_values.push_back(r);
    }
    if (t_list_set) {
      grid.t_values = cfg.t_list;
    } else {
      if (cfg.t_min > cfg.t_max) {
        std::cerr << "error: t-min must not exceed t-max\n";
        return 2;
      }
      for (int t = cfg.t_min; t <= cfg.t_max; ++t) grid.t_values.push_back(t);
    }
    grid_note = "r in [" + fmt_short(cfg.r_min) + ", " + fmt_short(cfg.r_max) +
                "] step " + fmt_short(cfg.r_step);
  }
  {
    std::string ts = "t in {";
    for (std::size_t j = 0; j < grid.t_values.size(); ++j) {
      if (j > 0) ts += ", ";
      ts += std::to_string(grid.t_values[j]);
      if (grid.t_values.size() > 8 && j == 2) {
        ts += ", ..., " + std::to_string(grid.t_values.back());
        break;
      }
    }
    grid_note += "; " + ts + "}";
  }

  std::vector<cvcomp::SweepRow> rows;
  try {
    rows = cvcomp::generate_sweep(grid);
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }

  std::string path = cfg.output;
  if (path.empty()) {
    const std::string base =
        cfg.figure != 0 ? "figure" + std::to_string(cfg.figure) : cfg.quantity;
    path = default_output_dir() + "/" + base +
           (cfg.format == "json" ? ".json" : ".csv");
  }

  const bool two_values = !rows.empty() && rows.front().has_value2;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return 1;
  }

  if (cfg.format == "json") {
    nlohmann::json doc;
    doc["tool"] = "cvcomp";
    doc["version"] = cvcomp::kVersion;
    doc["subcommand"] = "sweep";
    doc["quantity"] = cfg.quantity;
    doc["grid"] = grid_note;
    doc["convention"] = kConventionNote;
    nlohmann::json cols = nlohmann::json::array({"r", "t", "xi", "value"});
    if (two_values) {
      cols.push_back("value2");
    }
    doc["columns"] = cols;
    nlohmann::json data = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json jrow =
          nlohmann::json::array({row.r, row.t, row.xi, row.value});
      if (two_values) {
        jrow.push_back(row.value2);
      }
      data.push_back(std::move(jrow));
    }
    doc["rows"] = std::move(data);
    out << doc.dump(2) << "\n";
  } else {
    out << "# tool: cvcomp " << cvcomp::kVersion << "\n";
    out << "# subcommand: sweep\n";
    out << "# quantity: " << cfg.quantity << "\n";
    out << "# grid: " << grid_note << "\n";
    out << "# convention: " << kConventionNote << "\n";
    if (two_values) {
      out << "# value: V13; value2: sqrt(V11^2 - 1)\n";
    }
    out << (two_values ? "r,t,xi,value,value2" : "r,t,xi,value") << "\n";
    for (const auto& row : rows) {
      out << fmt(row.r) << ',' << row.t << ',' << fmt(row.xi) << ','
          << fmt(row.value);
      if (two_values) {
        out << ',' << fmt(row.value2);
      }
      out << "\n";
    }
  }
  out.flush();
  if (!out.good()) {
    std::cerr << "error: writing '" << path << "' failed\n";
    return 1;
  }
  std::cout << "wrote " << rows.size() << " rows to " << path << "\n";
  return 0;
}

int run_verify(const VerifyConfig& cfg) {
  std::vector<cvcomp::CheckResult> results;
  try {
    results = cvcomp::run_identity_checks(cfg.options);
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  std::cout << "cvcomp " << cvcomp::kVersion << " identity checks\n";
  std::cout << "grid: r in [" << fmt_short(cfg.options.r_min) << ", "
            << fmt_short(cfg.options.r_max) << "] step "
            << fmt_short(cfg.options.r_step) << "; t in ["
            << cfg.options.t_min << ", " << cfg.options.t_max << "]";
  if (cfg.options.inject_v13_fault) {
    std::cout << " (V13 fault injected)";
  }
  std::cout << "\n";
  int passed = 0;
  for (const auto& check : results) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "[%s] %s (max residual %.3e, tol %.1e)",
                  check.pass ? "PASS" : "FAIL", check.name.c_str(),
                  check.max_residual, check.tolerance);
    std::cout << buf << "\n";
    if (check.pass) {
      ++passed;
    }
  }
  std::cout << "result: " << passed << "/" << results.size()
            << " checks passed\n";
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}

int run_estimate(const EstimateConfig& cfg) {
  if (cfg.state != "tmss" && cfg.state != "beamsplitter") {
    std::cerr << "error: --state must be tmss or beamsplitter\n";
    return 2;
  }
  if (cfg.reduce && cfg.state != "beamsplitter") {
    std::cerr << "error: --reduce applies to the beamsplitter state only\n";
    return 2;
  }
  if (cfg.shots < 2) {
    std::cerr << "error: --shots must be >= 2\n";
    return 2;
  }
  if (!(cfg.r >= 0.0)) {
    std::cerr << "error: --r must be >= 0\n";
    return 2;
  }

  cvcomp::VarianceMatrix vm = cfg.state == "tmss"
                                  ? cvcomp::vm_tmss(cfg.r)
                                  : cvcomp::vm_beamsplitter_state(cfg.r);
  std::ostringstream reduce_note;
  if (cfg.reduce) {
    vm = cvcomp::apply_symplectic(vm, cvcomp::local_antisqueeze(cfg.r));
    const cvcomp::VarianceMatrix target = cvcomp::vm_tmss(0.5 * cfg.r);
    const double dev =
        (vm.matrix() - target.matrix()).cwiseAbs().maxCoeff();
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "reduction deviation from TMSS(r/2): %.3e\n", dev);
    reduce_note << buf;
  }

  const cvcomp::SampleBatch batch = cvcomp::sample(vm, cfg.shots, cfg.seed);
  const cvcomp::VmEstimate est = cvcomp::estimate_vm(batch);
  const cvcomp::ComplementarityEstimate ce =
      cvcomp::estimate_complementarity(est);

  const double true_v11 = vm(0, 0);
  const double true_ci = cvcomp::iconcurrence_from_vm(true_v11);

  std::cout << "cvcomp " << cvcomp::kVersion << " homodyne estimate\n";
  std::cout << "state: " << cfg.state << (cfg.reduce ? " (reduced)" : "")
            << ", r = " << fmt_short(cfg.r) << ", shots = " << cfg.shots
            << ", seed = " << cfg.seed << "\n";
  std::cout << "rng: " << cvcomp::kSamplerAlgorithm << "\n";
  std::cout << reduce_note.str();
  std::cout << "true V:\n";
  print_matrix(std::cout, vm.matrix(), "  ");
  std::cout << "estimated V:\n";
  print_matrix(std::cout, est.v_hat, "  ");
  std::cout << "standard errors:\n";
  print_matrix(std::cout, est.standard_errors, "  ");

  const double max_err = (est.v_hat - vm.matrix()).cwiseAbs().maxCoeff();
  char line[200];
  std::snprintf(line, sizeof(line), "max |V_hat - V| = %.3e\n", max_err);
  std::cout << line;
  const double v11_err = std::abs(est.v_hat(0, 0) - true_v11);
  std::snprintf(line, sizeof(line),
                "V11 = %.9g +- %.3e, true %.9g, within 3 sigma: %s\n",
                est.v_hat(0, 0), est.standard_errors(0, 0), true_v11,
                v11_err <= 3.0 * est.standard_errors(0, 0) ? "yes" : "no");
  std::cout << line;
  std::snprintf(line, sizeof(line),
                "C_I^2 = %.9g +- %.3e, true %.9g, within 3 sigma: %s%s\n",
                ce.c_i_sq, ce.ci_halfwidth, true_ci,
                std::abs(ce.c_i_sq - true_ci) <= 3.0 * ce.ci_halfwidth
                    ? "yes"
                    : "no",
                ce.clamped ? " (clamped at the vacuum floor)" : "");
  std::cout << line;
  std::snprintf(line, sizeof(line), "p_context = 2 - C_I^2 = %.9g\n",
                ce.p_context);
  std::cout << line;
  return 0;
}

int run_reduce_demo(const ReduceDemoConfig& cfg) {
  if (!(cfg.r >= 0.0)) {
    std::cerr << "error: --r must be >= 0\n";
    return 2;
  }
  const cvcomp::VarianceMatrix vm = cvcomp::vm_beamsplitter_state(cfg.r);
  const cvcomp::SymplecticTransform s = cvcomp::local_antisqueeze(cfg.r);
  const cvcomp::VarianceMatrix reduced = cvcomp::apply_symplectic(vm, s);
  const cvcomp::VarianceMatrix target = cvcomp::vm_tmss(0.5 * cfg.r);

  std::cout << "cvcomp " << cvcomp::kVersion << " reduction demo, r = "
            << fmt_short(cfg.r) << "\n";
  std::cout << "beam-splitter state V:\n";
  print_matrix(std::cout, vm.matrix(), "  ");
  std::cout << "local anti-squeeze S:\n";
  print_matrix(std::cout, s.matrix(), "  ");
  std::cout << "S V S^T:\n";
  print_matrix(std::cout, reduced.matrix(), "  ");
  std::cout << "TMSS(r/2) V:\n";
  print_matrix(std::cout, target.matrix(), "  ");
  char line[80];
  std::snprintf(line, sizeof(line), "max deviation: %.3e\n",
                (reduced.matrix() - target.matrix()).cwiseAbs().maxCoeff());
  std::cout << line;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cvcomp: complementarity and variance-matrix toolkit for truncated "
      "two-mode squeezed states"};
  app.footer(
      "Sweeps default their output file into $CVCOMP_OUTPUT_DIR (current "
      "directory when unset).");
  app.set_version_flag("--version", std::string("cvcomp ") + cvcomp::kVersion);
  app.require_subcommand(1);

  SweepConfig sweep_cfg;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "write a CSV/JSON table of a quantity over an (r, t) grid");
  auto* opt_quantity =
      sweep->add_option("--quantity", sweep_cfg.quantity,
                        "predictability | fidelity | iconcurrence | "
                        "vm-discrepancy (xi grid applies to the last)");
  sweep->add_option("--figure", sweep_cfg.figure,
                    "preset 1..4: predictability / fidelity / iconcurrence "
                    "over r in [0,3] x t in [1,50]; 4: vm-discrepancy over "
                    "xi in [0,0.99] x t in {5,10,15,20}")
      ->check(CLI::Range(1, 4));
  auto* opt_rmin = sweep->add_option("--r-min", sweep_cfg.r_min, "grid start");
  auto* opt_rmax = sweep->add_option("--r-max", sweep_cfg.r_max, "grid end");
  auto* opt_rstep =
      sweep->add_option("--r-step", sweep_cfg.r_step, "grid step");
  auto* opt_tmin =
      sweep->add_option("--t-min", sweep_cfg.t_min, "smallest Fock cutoff");
  auto* opt_tmax =
      sweep->add_option("--t-max", sweep_cfg.t_max, "largest Fock cutoff");
  auto* opt_tlist = sweep->add_option(
      "--t", sweep_cfg.t_list, "explicit Fock cutoffs (overrides t-min/max)");
  auto* opt_ximin = sweep->add_option("--xi-min", sweep_cfg.xi_min,
                                      "xi grid start (vm-discrepancy)");
  auto* opt_ximax = sweep->add_option("--xi-max", sweep_cfg.xi_max,
                                      "xi grid end, < 1 (vm-discrepancy)");
  auto* opt_xistep = sweep->add_option("--xi-step", sweep_cfg.xi_step,
                                       "xi grid step (vm-discrepancy)");
  sweep->add_option("--output,-o", sweep_cfg.output,
                    "output path (default: <quantity>.csv in "
                    "$CVCOMP_OUTPUT_DIR)");
  sweep->add_option("--format", sweep_cfg.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  VerifyConfig verify_cfg;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the cross-route identity checks; exit 1 on any failure");
  verify->add_option("--r-min", verify_cfg.options.r_min, "grid start");
  verify->add_option("--r-max", verify_cfg.options.r_max, "grid end");
  verify->add_option("--r-step", verify_cfg.options.r_step, "grid step");
  verify->add_option("--t-min", verify_cfg.options.t_min,
                     "smallest Fock cutoff");
  verify->add_option("--t-max", verify_cfg.options.t_max,
                     "largest Fock cutoff");
  verify->add_flag("--inject-fault", verify_cfg.options.inject_v13_fault,
                   "corrupt V13 by 1+1e-3 (negative control; the squeezing "
                   "identity must then fail)");

  EstimateConfig estimate_cfg;
  CLI::App* estimate = app.add_subcommand(
      "estimate",
      "sample homodyne data from a state's VM and report the estimate");
  estimate->add_option("--state", estimate_cfg.state, "tmss | beamsplitter")
      ->check(CLI::IsMember({"tmss", "beamsplitter"}));
  estimate->add_option("--r", estimate_cfg.r, "squeezing parameter");
  estimate->add_option("--shots", estimate_cfg.shots, "number of samples");
  estimate->add_option("--seed", estimate_cfg.seed, "RNG seed");
  estimate->add_flag("--reduce", estimate_cfg.reduce,
                     "apply the local anti-squeeze before sampling "
                     "(beamsplitter only)");

  ReduceDemoConfig reduce_cfg;
  CLI::App* reduce_demo = app.add_subcommand(
      "reduce-demo",
      "show the beam-splitter state reducing to TMSS(r/2) step by step");
  reduce_demo->add_option("--r", reduce_cfg.r, "squeezing parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(sweep)) {
      const bool r_set =
          opt_rmin->count() > 0 || opt_rmax->count() > 0 ||
          opt_rstep->count() > 0;
      const bool t_range_set = opt_tmin->count() > 0 || opt_tmax->count() > 0;
      const bool xi_set = opt_ximin->count() > 0 || opt_ximax->count() > 0 ||
                          opt_xistep->count() > 0;
      return run_sweep(sweep_cfg, opt_quantity->count() > 0, r_set,
                       t_range_set, opt_tlist->count() > 0, xi_set);
    }
    if (app.got_subcommand(verify)) {
      return run_verify(verify_cfg);
    }
    if (app.got_subcommand(estimate)) {
      return run_estimate(estimate_cfg);
    }
    if (app.got_subcommand(reduce_demo)) {
      return run_reduce_demo(reduce_cfg);
    }
  } catch (const CLI::ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 2;
}
