#include "harvest/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "harvest/error.hpp"

namespace harvest {
namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void CavityGeometry::validate() const {
  if (!positive_finite(length_ratio)) throw ConfigError("length_ratio must be finite and > 0");
  if (!positive_finite(radius_ratio)) throw ConfigError("radius_ratio must be finite and > 0");
  if (!positive_finite(tau)) throw ConfigError("tau must be finite and > 0");
}

void DetectorPair::validate() const {
  if (!std::isfinite(omega_t) || omega_t < 0.0) throw ConfigError("omega_t must be finite and >= 0");
  if (!positive_finite(distance_ratio)) throw ConfigError("distance_ratio must be finite and > 0");
  if (!std::isfinite(delay_ratio)) throw ConfigError("delay_ratio must be finite");
  if (!std::isfinite(tilt) || tilt < 0.0 || tilt > std::numbers::pi + 1e-12) {
    throw ConfigError("tilt must lie in [0, pi]");
  }
  if (!std::isfinite(psi) || !std::isfinite(phi)) throw ConfigError("Euler angles must be finite");
}

std::vector<std::string> DetectorPair::warnings() const {
  std::vector<std::string> out;
  if (distance_ratio < 5.0) {
    std::ostringstream msg;
    msg << "distance_ratio " << distance_ratio << " < 5: wave-function overlap exp(-(D/sigma)^2/4) = "
        << std::exp(-distance_ratio * distance_ratio / 4.0) << " is no longer negligible";
    out.push_back(msg.str());
  }
  if (psi != 0.0 || phi != 0.0) {
    out.emplace_back("Euler angles psi/phi are ignored: on-axis correlations depend on the tilt only");
  }
  return out;
}

std::vector<std::string> validate_placement(const CavityGeometry& geom, const DetectorPair& det) {
  geom.validate();
  det.validate();
  if (det.distance_ratio >= geom.length_ratio) {
    throw ConfigError("detectors do not fit: distance_ratio must be < length_ratio");
  }
  std::vector<std::string> out = det.warnings();
  const double clearance = 0.5 * (geom.length_ratio - det.distance_ratio);
  if (clearance < 3.0) {
    std::ostringstream msg;
    msg << "wall clearance (L-D)/2 = " << clearance << " sigma is below 3 sigma";
    out.push_back(msg.str());
  }
  return out;
}

std::string_view to_string(ParityFilter filter) {
  switch (filter) {
    case ParityFilter::EvenL: return "even";
    case ParityFilter::OddL: return "odd";
    case ParityFilter::All: return "all";
  }
  return "all";
}

ParityFilter parse_parity(std::string_view text) {
  if (text == "all") return ParityFilter::All;
  if (text == "even") return ParityFilter::EvenL;
  if (text == "odd") return ParityFilter::OddL;
  throw ConfigError("unknown parity filter '" + std::string(text) + "' (expected all|even|odd)");
}

std::string_view to_string(Lightcone cone) {
  return cone == Lightcone::Spacelike ? "spacelike" : "timelike";
}

Lightcone classify_lightcone(const CavityGeometry& geom, const DetectorPair& det) {
  return geom.tau * std::abs(det.delay_ratio) < det.distance_ratio ? Lightcone::Spacelike
                                                                   : Lightcone::Timelike;
}

void TruncationPolicy::validate() const {
  if (!(tail_tolerance > 0.0) || !std::isfinite(tail_tolerance)) {
    throw ConfigError("tail_tolerance must be finite and > 0");
  }
  if (hard_cap < 1) throw ConfigError("hard_cap must be >= 1");
  if (max_m && (*max_m < 1 || *max_m > hard_cap)) throw ConfigError("max_m must lie in [1, hard_cap]");
  if (max_l && (*max_l < 0 || *max_l > hard_cap)) throw ConfigError("max_l must lie in [0, hard_cap]");
}

}  // namespace harvest
