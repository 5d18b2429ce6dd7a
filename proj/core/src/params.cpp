#include "mzi/params.hpp"

#include <cctype>
#include <cmath>

namespace mzi {

double wrap_2pi(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  return y;
}

double parse_angle(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw range_error("angle: empty string");

  auto pos = s.find("pi");
  if (pos == std::string::npos) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw range_error("angle: trailing characters in '" + text + "'");
      return v;
    } catch (const std::invalid_argument&) {
      throw range_error("angle: cannot parse '" + text + "'");
    } catch (const std::out_of_range&) {
      throw range_error("angle: out of range '" + text + "'");
    }
  }

  std::string head = s.substr(0, pos);
  std::string tail = s.substr(pos + 2);

  double coeff = 1.0;
  if (head == "-") {
    coeff = -1.0;
  } else if (!head.empty() && head != "+") {
    try {
      std::size_t used = 0;
      coeff = std::stod(head, &used);
      if (used != head.size()) throw range_error("angle: cannot parse '" + text + "'");
    } catch (const std::exception&) {
      throw range_error("angle: cannot parse '" + text + "'");
    }
  }

  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail[0] != '/') throw range_error("angle: cannot parse '" + text + "'");
    try {
      std::size_t used = 0;
      divisor = std::stod(tail.substr(1), &used);
      if (used != tail.size() - 1) throw range_error("angle: cannot parse '" + text + "'");
    } catch (const std::exception&) {
      throw range_error("angle: cannot parse '" + text + "'");
    }
    if (divisor == 0.0) throw range_error("angle: division by zero in '" + text + "'");
  }
  return coeff * kPi / divisor;
}

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Sid: return "sid";
    case Scheme::Idd: return "idd";
    case Scheme::Hd: return "hd";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "sid") return Scheme::Sid;
  if (name == "idd") return Scheme::Idd;
  if (name == "hd") return Scheme::Hd;
  throw range_error("scheme: expected sid, idd or hd, got '" + name + "'");
}

InputParams::InputParams(double alpha_mag_, double beta_mag_, double theta_,
                         double gamma_, double r_)
    : alpha_mag(alpha_mag_),
      beta_mag(beta_mag_),
      theta(theta_),
      gamma(gamma_),
      r(r_) {
  if (!std::isfinite(alpha_mag) || alpha_mag < 0.0 || alpha_mag > 200.0)
    throw range_error("alpha_mag: must lie in [0, 200]");
  if (!std::isfinite(beta_mag) || beta_mag < 0.0 || beta_mag > 200.0)
    throw range_error("beta_mag: must lie in [0, 200]");
  if (!std::isfinite(r) || r < 0.0 || r > 10.0)
    throw range_error("r: must lie in [0, 10]");
  if (!std::isfinite(theta)) throw range_error("theta: must be finite");
  if (!std::isfinite(gamma)) throw range_error("gamma: must be finite");
  theta = wrap_2pi(theta);
  gamma = wrap_2pi(gamma);
}

LossParams::LossParams(double mu_, double eta_) : mu(mu_), eta(eta_) {
  if (!std::isfinite(mu) || mu <= 0.0 || mu > 1.0)
    throw range_error("mu: must lie in (0, 1]");
  if (!std::isfinite(eta) || eta <= 0.0 || eta > 1.0)
    throw range_error("eta: must lie in (0, 1]");
}

}  // namespace mzi
