#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "mzi/bounds.hpp"
#include "mzi/fock.hpp"
#include "mzi/optimize.hpp"
#include "mzi/params.hpp"
#include "mzi/sensitivity.hpp"
#include "mzi/sweep.hpp"
#include "mzi/verify.hpp"

namespace {

struct CommonOpts {
  double alpha = 0.0, beta = 0.0, r = 0.0, mu = 1.0, eta = 1.0;
  std::string theta = "pi", gamma = "0", phi = "0";
  std::string scheme = "all", format = "csv", out, config;
};

struct OptionSet {
  CLI::Option *alpha = nullptr, *beta = nullptr, *r = nullptr, *mu = nullptr,
              *eta = nullptr, *theta = nullptr, *gamma = nullptr,
              *phi = nullptr, *scheme = nullptr, *format = nullptr;
};

OptionSet add_common_flags(CLI::App* cmd, CommonOpts& o) {
  OptionSet set;
  set.alpha = cmd->add_option("--alpha", o.alpha, "coherent amplitude |alpha|");
  set.beta = cmd->add_option("--beta", o.beta, "SKS seed amplitude |beta|");
  set.theta = cmd->add_option("--theta", o.theta,
                              "squeeze phase (radians or e.g. 'pi', '7pi/4')");
  set.gamma = cmd->add_option("--gamma", o.gamma, "Kerr coefficient");
  set.r = cmd->add_option("--r", o.r, "squeezing parameter");
  set.phi = cmd->add_option("--phi", o.phi, "interferometer phase");
  set.mu = cmd->add_option("--mu", o.mu, "internal transmissivity");
  set.eta = cmd->add_option("--eta", o.eta, "detector transmissivity");
  set.scheme =
      cmd->add_option("--scheme", o.scheme, "sid, idd, hd or all");
  set.format = cmd->add_option("--format", o.format, "csv or json")
                   ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--config", o.config, "JSON config file");
  return set;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw mzi::range_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

/* Flags given on the command line win over config-file values. */
void apply_config(const CommonOpts& parsed, const OptionSet& set,
                  CommonOpts& o) {
  if (parsed.config.empty()) return;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(slurp(parsed.config));
  } catch (const nlohmann::json::parse_error& e) {
    throw mzi::spec_error(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw mzi::spec_error("config: expected a JSON object");
  auto num = [&](const char* key, double& target, CLI::Option* opt) {
    if (doc.contains(key) && (!opt || opt->count() == 0)) {
      if (!doc[key].is_number())
        throw mzi::spec_error(std::string(key) + ": expected a number");
      target = doc[key].get<double>();
    }
  };
  auto str = [&](const char* key, std::string& target, CLI::Option* opt) {
    if (doc.contains(key) && (!opt || opt->count() == 0)) {
      if (doc[key].is_number())
        target = std::to_string(doc[key].get<double>());
      else if (doc[key].is_string())
        target = doc[key].get<std::string>();
      else
        throw mzi::spec_error(std::string(key) + ": expected number or string");
    }
  };
  num("alpha", o.alpha, set.alpha);
  num("beta", o.beta, set.beta);
  num("r", o.r, set.r);
  num("mu", o.mu, set.mu);
  num("eta", o.eta, set.eta);
  str("theta", o.theta, set.theta);
  str("gamma", o.gamma, set.gamma);
  str("phi", o.phi, set.phi);
  str("scheme", o.scheme, set.scheme);
  str("format", o.format, set.format);
}

mzi::InputParams make_params(const CommonOpts& o) {
  return mzi::InputParams(o.alpha, o.beta, mzi::parse_angle(o.theta),
                          mzi::parse_angle(o.gamma), o.r);
}

std::vector<mzi::Scheme> scheme_list(const std::string& name) {
  if (name == "all")
    return {mzi::Scheme::Sid, mzi::Scheme::Idd, mzi::Scheme::Hd};
  return {mzi::scheme_from_string(name)};
}

void emit_rows(const CommonOpts& o, const std::vector<mzi::SweepRow>& rows) {
  if (!o.out.empty()) {
    mzi::write_rows_atomic(o.out, rows, o.format);
    return;
  }
  if (o.format == "json")
    mzi::write_rows_json(std::cout, rows);
  else
    mzi::write_rows_csv(std::cout, rows);
}

mzi::SweepRow make_row(mzi::Scheme scheme, const CommonOpts& o,
                       const mzi::InputParams& p, const mzi::Bounds& b,
                       double phi, double delta_phi, bool finite) {
  mzi::SweepRow row;
  row.scheme = scheme;
  row.alpha = p.alpha_mag;
  row.beta = p.beta_mag;
  row.theta = p.theta;
  row.gamma = p.gamma;
  row.r = p.r;
  row.phi = phi;
  row.mu = o.mu;
  row.eta = o.eta;
  row.delta_phi = delta_phi;
  row.finite = finite;
  row.snl = b.snl;
  row.ratio_snl = delta_phi / b.snl;
  row.qcrb = b.qcrb;
  row.hl = b.hl;
  row.n_total = b.n_total;
  return row;
}

int run_eval(const CommonOpts& o) {
  const mzi::InputParams p = make_params(o);
  const mzi::LossParams loss(o.mu, o.eta);
  const mzi::Bounds b = mzi::benchmark_limits(p);
  const double phi = mzi::parse_angle(o.phi);
  std::vector<mzi::SweepRow> rows;
  for (mzi::Scheme s : scheme_list(o.scheme)) {
    const mzi::Sensitivity sens = mzi::phase_sensitivity(s, p, phi, loss);
    rows.push_back(make_row(s, o, p, b, phi, sens.delta_phi, sens.finite));
  }
  emit_rows(o, rows);
  return 0;
}

int run_optimize(const CommonOpts& o) {
  const mzi::InputParams p = make_params(o);
  const mzi::LossParams loss(o.mu, o.eta);
  const mzi::Bounds b = mzi::benchmark_limits(p);
  std::vector<mzi::SweepRow> rows;
  for (mzi::Scheme s : scheme_list(o.scheme)) {
    const mzi::PhaseOptimum opt = mzi::optimize_phase(s, p, loss);
    rows.push_back(make_row(s, o, p, b, opt.phi, opt.delta_phi,
                            std::isfinite(opt.delta_phi)));
  }
  emit_rows(o, rows);
  return 0;
}

int run_qfi(const CommonOpts& o) {
  const mzi::InputParams p = make_params(o);
  const mzi::Bounds b = mzi::benchmark_limits(p);
  if (o.format == "json") {
    nlohmann::json obj;
    obj["qfi"] = b.qfi;
    obj["qcrb"] = b.qcrb;
    obj["snl"] = b.snl;
    obj["hl"] = b.hl;
    obj["n_total"] = b.n_total;
    std::cout << obj.dump(2) << '\n';
  } else {
    std::cout << "qfi,qcrb,snl,hl,n_total\n"
              << mzi::format_value(b.qfi) << ',' << mzi::format_value(b.qcrb)
              << ',' << mzi::format_value(b.snl) << ','
              << mzi::format_value(b.hl) << ','
              << mzi::format_value(b.n_total) << '\n';
  }
  return 0;
}

int run_sweep(const CommonOpts& o, const OptionSet& set,
              const std::vector<std::string>& vary, int threads) {
  mzi::SweepSpec spec;
  if (!o.config.empty()) {
    spec = mzi::parse_sweep_spec(slurp(o.config));
  }
  // Scalar flags given on the command line pin fixed values (and win over
  // the config file).
  auto pin = [&spec](CLI::Option* opt, const char* name, double value) {
    if (opt && opt->count() > 0) spec.fixed[name] = value;
  };
  pin(set.alpha, "alpha", o.alpha);
  pin(set.beta, "beta", o.beta);
  pin(set.theta, "theta", mzi::parse_angle(o.theta));
  pin(set.gamma, "gamma", mzi::parse_angle(o.gamma));
  pin(set.r, "r", o.r);
  pin(set.phi, "phi", mzi::parse_angle(o.phi));
  pin(set.mu, "mu", o.mu);
  pin(set.eta, "eta", o.eta);
  for (const std::string& v : vary) {
    std::istringstream ss(v);
    mzi::SweepAxis axis;
    std::string from, to, steps;
    if (!std::getline(ss, axis.name, ':') || !std::getline(ss, from, ':') ||
        !std::getline(ss, to, ':') || !std::getline(ss, steps))
      throw mzi::spec_error("vary: expected name:from:to:steps, got '" + v +
                            "'");
    axis.from = mzi::parse_angle(from);
    axis.to = mzi::parse_angle(to);
    try {
      axis.steps = std::stoi(steps);
    } catch (const std::exception&) {
      throw mzi::spec_error("vary.steps: not an integer in '" + v + "'");
    }
    spec.axes.push_back(axis);
  }
  if (o.scheme != "all" || spec.schemes.empty())
    spec.schemes = scheme_list(o.scheme);
  mzi::validate_spec(spec);
  const auto rows = mzi::run_sweep(spec, threads);
  emit_rows(o, rows);
  return 0;
}

int run_verify(bool full, int threads) {
  const auto grid =
      full ? mzi::full_verify_grid() : mzi::default_verify_grid();
  const mzi::VerifyReport report = mzi::verify(grid, {}, threads);
  for (const auto& pr : report.points)
    if (!pr.pass)
      std::cout << "FAIL alpha=" << pr.params.alpha_mag
                << " beta=" << pr.params.beta_mag
                << " theta=" << pr.params.theta
                << " gamma=" << pr.params.gamma << " r=" << pr.params.r
                << ": " << pr.detail << '\n';
  std::cout << "verify: " << (report.all_pass ? "PASS" : "FAIL") << " ("
            << report.points.size() << " points, worst moment err "
            << report.worst_moment_error << ", worst sensitivity err "
            << report.worst_sensitivity_error << ", worst qfi err "
            << report.worst_qfi_error << ")\n";
  return report.all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mach-Zehnder phase sensitivity with squeezed Kerr inputs"};
  app.require_subcommand(1);

  CommonOpts eval_opts, opt_opts, qfi_opts, sweep_opts;
  std::vector<std::string> vary;
  bool verify_full = false;
  int threads = 0;

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a single point");
  OptionSet eval_set = add_common_flags(eval_cmd, eval_opts);

  CLI::App* opt_cmd =
      app.add_subcommand("optimize", "optimize the working phase");
  OptionSet opt_set = add_common_flags(opt_cmd, opt_opts);

  CLI::App* qfi_cmd = app.add_subcommand("qfi", "quantum bounds for a point");
  OptionSet qfi_set = add_common_flags(qfi_cmd, qfi_opts);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep");
  OptionSet sweep_set = add_common_flags(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--vary", vary,
                        "axis as name:from:to:steps (repeat for a grid)");
  sweep_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "compare against the Fock oracle");
  verify_cmd->add_flag("--full", verify_full, "run the full 1125-point grid");
  verify_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (eval_cmd->parsed()) {
      apply_config(eval_opts, eval_set, eval_opts);
      return run_eval(eval_opts);
    }
    if (opt_cmd->parsed()) {
      apply_config(opt_opts, opt_set, opt_opts);
      return run_optimize(opt_opts);
    }
    if (qfi_cmd->parsed()) {
      apply_config(qfi_opts, qfi_set, qfi_opts);
      return run_qfi(qfi_opts);
    }
    if (sweep_cmd->parsed())
      return run_sweep(sweep_opts, sweep_set, vary, threads);
    if (verify_cmd->parsed()) return run_verify(verify_full, threads);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
