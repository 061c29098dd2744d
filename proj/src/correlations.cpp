#include "harvest/correlations.hpp"

#include <algorithm>
#include <cmath>

#include "harvest/error.hpp"

namespace harvest {

cdouble amplitude_E_scaled(double omega_t, double delay_ratio) {
  if (!std::isfinite(omega_t) || !std::isfinite(delay_ratio)) {
    throw DomainError("amplitude_E_scaled: non-finite input");
  }
  return scaled_amplitude(omega_t, delay_ratio);
}

ParityParts parity_parts(const ModeGrid& grid, const DetectorPair& det, int workers) {
  const ModeSums sums = workers > 1 ? mode_sums_parallel(grid, det.omega_t, det.delay_ratio, workers)
                                    : mode_sums_serial(grid, det.omega_t, det.delay_ratio);
  const double scale = 0.5 * std::exp(-0.5 * det.omega_t * det.omega_t);
  ParityParts parts;
  parts.local_even = sums.local[0];
  parts.local_odd = sums.local[1];
  parts.nonlocal_even = scale * sums.nonlocal[0];
  parts.nonlocal_odd = scale * sums.nonlocal[1];
  return parts;
}

CorrelationResult assemble(const ParityParts& parts, const ModeGrid& grid, const DetectorPair& det,
                           ParityFilter filter) {
  CorrelationResult r;
  // Tilt applied per parity before adding, so All == Even + Odd bit for bit.
  const double c = std::cos(det.tilt);
  const cdouble even = c * parts.nonlocal_even;
  const cdouble odd = c * parts.nonlocal_odd;
  switch (filter) {
    case ParityFilter::All:
      r.local = parts.local_even + parts.local_odd;
      r.nonlocal = even + odd;
      break;
    case ParityFilter::EvenL:
      r.local = parts.local_even;
      r.nonlocal = even;
      break;
    case ParityFilter::OddL:
      r.local = parts.local_odd;
      r.nonlocal = odd;
      break;
  }
  r.estimator = std::abs(r.nonlocal) - r.local;
  r.negativity = std::max(0.0, r.estimator);
  r.truncation = grid.report;
  r.lightcone = classify_lightcone(grid.geom, det);
  r.filter = filter;
  return r;
}

CorrelationResult evaluate(const ModeGrid& grid, const DetectorPair& det, ParityFilter filter,
                           int workers) {
  det.validate();
  if (det.distance_ratio != grid.distance_ratio) {
    throw ConfigError("evaluate: detector distance differs from the mode grid");
  }
  return assemble(parity_parts(grid, det, workers), grid, det, filter);
}

CorrelationResult negativity(const CavityGeometry& geom, const DetectorPair& det,
                             ParityFilter filter, const TruncationPolicy& policy, int workers) {
  validate_placement(geom, det);
  const ModeGrid grid = enumerate_modes(geom, det, policy);
  return evaluate(grid, det, filter, workers);
}

double local_term(const CavityGeometry& geom, const DetectorPair& det, ParityFilter filter,
                  const TruncationPolicy& policy) {
  return negativity(geom, det, filter, policy).local;
}

cdouble nonlocal_term(const CavityGeometry& geom, const DetectorPair& det, ParityFilter filter,
                      const TruncationPolicy& policy) {
  return negativity(geom, det, filter, policy).nonlocal;
}

}  // namespace harvest
