#include "mzi/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "mzi/bounds.hpp"
#include "mzi/optimize.hpp"
#include "mzi/sensitivity.hpp"
#include "parallel.hpp"

namespace mzi {

namespace {

using nlohmann::json;

const std::set<std::string> kParamNames = {"alpha", "beta", "theta", "gamma",
                                           "r",     "phi",  "mu",    "eta"};

std::map<std::string, double> default_values() {
  return {{"alpha", 0.0}, {"beta", 0.0}, {"theta", kPi}, {"gamma", 0.0},
          {"r", 0.0},     {"phi", 0.0},  {"mu", 1.0},    {"eta", 1.0}};
}

double number_or_angle(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_angle(v.get<std::string>());
    } catch (const range_error& e) {
      throw spec_error(field + ": " + e.what());
    }
  }
  throw spec_error(field + ": expected a number or angle string");
}

SweepAxis parse_axis(const json& v, const std::string& field) {
  if (!v.is_object()) throw spec_error(field + ": expected an object");
  SweepAxis axis;
  for (auto it = v.begin(); it != v.end(); ++it) {
    const std::string key = it.key();
    if (key == "name") {
      if (!it->is_string()) throw spec_error(field + ".name: expected a string");
      axis.name = it->get<std::string>();
    } else if (key == "from") {
      axis.from = number_or_angle(*it, field + ".from");
    } else if (key == "to") {
      axis.to = number_or_angle(*it, field + ".to");
    } else if (key == "steps") {
      if (!it->is_number_integer())
        throw spec_error(field + ".steps: expected an integer");
      axis.steps = it->get<int>();
    } else {
      throw spec_error(field + "." + key + ": unknown key");
    }
  }
  return axis;
}

}  // namespace

SweepSpec parse_sweep_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw spec_error(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw spec_error("config: expected a JSON object");

  SweepSpec spec;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string key = it.key();
    if (key == "vary") {
      if (it->is_object()) {
        spec.axes.push_back(parse_axis(*it, "vary"));
      } else if (it->is_array()) {
        int i = 0;
        for (const auto& a : *it)
          spec.axes.push_back(parse_axis(a, "vary[" + std::to_string(i++) + "]"));
      } else {
        throw spec_error("vary: expected an object or array");
      }
    } else if (key == "fixed") {
      if (!it->is_object()) throw spec_error("fixed: expected an object");
      for (auto f = it->begin(); f != it->end(); ++f)
        spec.fixed[f.key()] = number_or_angle(*f, "fixed." + f.key());
    } else if (key == "schemes") {
      if (!it->is_array()) throw spec_error("schemes: expected an array");
      for (const auto& s : *it) {
        if (!s.is_string()) throw spec_error("schemes: expected strings");
        try {
          spec.schemes.push_back(scheme_from_string(s.get<std::string>()));
        } catch (const range_error& e) {
          throw spec_error(std::string("schemes: ") + e.what());
        }
      }
    } else if (key == "optimize_phi") {
      if (!it->is_boolean()) throw spec_error("optimize_phi: expected a boolean");
      spec.optimize_phi = it->get<bool>();
    } else if (key == "outputs") {
      // Output selection is informational; every column is always emitted.
      if (!it->is_array()) throw spec_error("outputs: expected an array");
      const std::set<std::string> known = {"delta_phi", "ratio_snl", "qcrb",
                                          "snl",       "hl",        "n_total"};
      for (const auto& o : *it)
        if (!o.is_string() || !known.count(o.get<std::string>()))
          throw spec_error("outputs: unknown output name");
    } else {
      throw spec_error(key + ": unknown key");
    }
  }
  validate_spec(spec);
  return spec;
}

void validate_spec(const SweepSpec& spec) {
  if (spec.axes.empty()) throw spec_error("vary: at least one axis required");
  if (spec.axes.size() > 2) throw spec_error("vary: at most two axes");
  for (std::size_t i = 0; i < spec.axes.size(); ++i) {
    const auto& ax = spec.axes[i];
    const std::string field = "vary[" + std::to_string(i) + "]";
    if (!kParamNames.count(ax.name))
      throw spec_error(field + ".name: unknown parameter '" + ax.name + "'");
    if (ax.steps < 2 || ax.steps > 1000000)
      throw spec_error(field + ".steps: must lie in [2, 1e6]");
    if (!std::isfinite(ax.from) || !std::isfinite(ax.to))
      throw spec_error(field + ": from/to must be finite");
    if (spec.fixed.count(ax.name))
      throw spec_error(field + ".name: '" + ax.name +
                       "' appears in fixed as well");
  }
  if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name)
    throw spec_error("vary[1].name: duplicate axis parameter");
  for (const auto& [name, value] : spec.fixed) {
    if (!kParamNames.count(name))
      throw spec_error("fixed." + name + ": unknown parameter");
    if (!std::isfinite(value))
      throw spec_error("fixed." + name + ": must be finite");
  }
  if (spec.optimize_phi)
    for (const auto& ax : spec.axes)
      if (ax.name == "phi")
        throw spec_error("vary: cannot vary phi with optimize_phi");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  validate_spec(spec);
  std::vector<Scheme> schemes = spec.schemes;
  if (schemes.empty())
    schemes = {Scheme::Sid, Scheme::Idd, Scheme::Hd};

  const SweepAxis& ax1 = spec.axes[0];
  const bool two_axes = spec.axes.size() == 2;
  const int n1 = ax1.steps;
  const int n2 = two_axes ? spec.axes[1].steps : 1;
  const std::size_t points = std::size_t(n1) * std::size_t(n2);

  std::vector<SweepRow> rows(points * schemes.size());

  detail::parallel_for(points, threads, [&](std::size_t idx) {
    const int i1 = int(idx / n2);
    const int i2 = int(idx % n2);
    auto values = default_values();
    for (const auto& [name, value] : spec.fixed) values[name] = value;
    values[ax1.name] =
        ax1.from + (ax1.to - ax1.from) * double(i1) / double(n1 - 1);
    if (two_axes) {
      const SweepAxis& ax2 = spec.axes[1];
      values[ax2.name] =
          ax2.from + (ax2.to - ax2.from) * double(i2) / double(n2 - 1);
    }

    const InputParams params(values["alpha"], values["beta"], values["theta"],
                             values["gamma"], values["r"]);
    const LossParams loss(values["mu"], values["eta"]);
    const Bounds bounds = benchmark_limits(params);

    for (std::size_t s = 0; s < schemes.size(); ++s) {
      SweepRow& row = rows[idx * schemes.size() + s];
      row.scheme = schemes[s];
      row.alpha = values["alpha"];
      row.beta = values["beta"];
      row.theta = values["theta"];
      row.gamma = values["gamma"];
      row.r = values["r"];
      row.mu = values["mu"];
      row.eta = values["eta"];
      if (spec.optimize_phi) {
        const PhaseOptimum opt = optimize_phase(schemes[s], params, loss);
        row.phi = opt.phi;
        row.delta_phi = opt.delta_phi;
        row.finite = std::isfinite(opt.delta_phi);
      } else {
        row.phi = values["phi"];
        const Sensitivity sens =
            phase_sensitivity(schemes[s], params, values["phi"], loss);
        row.delta_phi = sens.delta_phi;
        row.finite = sens.finite;
      }
      row.snl = bounds.snl;
      row.ratio_snl = row.delta_phi / bounds.snl;
      row.qcrb = bounds.qcrb;
      row.hl = bounds.hl;
      row.n_total = bounds.n_total;
    }
  });

  return rows;
}

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_rows_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "scheme,alpha,beta,theta,gamma,r,phi,mu,eta,delta_phi,snl,ratio_snl,"
        "qcrb,hl,n_total\n";
  for (const auto& row : rows) {
    os << to_string(row.scheme) << ',' << format_value(row.alpha) << ','
       << format_value(row.beta) << ',' << format_value(row.theta) << ','
       << format_value(row.gamma) << ',' << format_value(row.r) << ','
       << format_value(row.phi) << ',' << format_value(row.mu) << ','
       << format_value(row.eta) << ',' << format_value(row.delta_phi) << ','
       << format_value(row.snl) << ',' << format_value(row.ratio_snl) << ','
       << format_value(row.qcrb) << ',' << format_value(row.hl) << ','
       << format_value(row.n_total) << '\n';
  }
}

void write_rows_json(std::ostream& os, const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj;
    obj["scheme"] = to_string(row.scheme);
    obj["alpha"] = row.alpha;
    obj["beta"] = row.beta;
    obj["theta"] = row.theta;
    obj["gamma"] = row.gamma;
    obj["r"] = row.r;
    obj["phi"] = row.phi;
    obj["mu"] = row.mu;
    obj["eta"] = row.eta;
    if (row.finite)
      obj["delta_phi"] = row.delta_phi;
    else
      obj["delta_phi"] = "inf";
    obj["snl"] = row.snl;
    if (row.finite)
      obj["ratio_snl"] = row.ratio_snl;
    else
      obj["ratio_snl"] = "inf";
    obj["qcrb"] = row.qcrb;
    obj["hl"] = row.hl;
    obj["n_total"] = row.n_total;
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

void write_rows_atomic(const std::string& path,
                       const std::vector<SweepRow>& rows,
                       const std::string& format) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open output file " + tmp.string());
    if (format == "json")
      write_rows_json(os, rows);
    else
      write_rows_csv(os, rows);
    os.flush();
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace mzi
