#ifndef MZI_SWEEP_HPP
#define MZI_SWEEP_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mzi/params.hpp"

namespace mzi {

struct SweepAxis {
  std::string name;
  double from = 0.0;
  double to = 0.0;
  int steps = 2;
};

/*
 * One or two varied parameters over fixed remaining values.  Parameter names
 * are alpha, beta, theta, gamma, r, phi, mu, eta; unset fixed values default
 * to alpha=beta=gamma=r=phi=0, theta=pi, mu=eta=1.
 */
struct SweepSpec {
  std::vector<SweepAxis> axes;  // 1 or 2
  std::map<std::string, double> fixed;
  std::vector<Scheme> schemes;  // empty = all three
  bool optimize_phi = false;
};

/* Parse and validate a JSON spec document; spec_error names bad fields. */
SweepSpec parse_sweep_spec(const std::string& json_text);
void validate_spec(const SweepSpec& spec);

struct SweepRow {
  Scheme scheme;
  double alpha, beta, theta, gamma, r, phi, mu, eta;
  double delta_phi;  // +inf when singular
  bool finite;
  double snl, ratio_snl, qcrb, hl, n_total;
};

/* Deterministic row order: axis1-major, axis2-minor, schemes sid < idd < hd. */
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 0);

/* 17 significant digits; infinities rendered as "inf". */
std::string format_value(double v);

void write_rows_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_rows_json(std::ostream& os, const std::vector<SweepRow>& rows);

/* Write to a temp file in the target directory, then rename into place. */
void write_rows_atomic(const std::string& path,
                       const std::vector<SweepRow>& rows,
                       const std::string& format);

}  // namespace mzi

#endif
