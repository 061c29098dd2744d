#pragma once

// Local and non-local correlations and the negativity, all in units of the
// prefactor A (times 1/sigma, since xi is reported as xi*sigma).

#include <complex>

#include "harvest/kernels.hpp"
#include "harvest/model.hpp"
#include "harvest/spectrum.hpp"

namespace harvest {

struct CorrelationResult {
  double local = 0.0;
  cdouble nonlocal;
  double estimator = 0.0;   // |nonlocal| - local
  double negativity = 0.0;  // max(0, estimator)
  TruncationReport truncation;
  Lightcone lightcone = Lightcone::Spacelike;
  ParityFilter filter = ParityFilter::All;
};

/// Same as scaled_amplitude: e^{-(omega T)^2/2} E(omega, t_BA).
cdouble amplitude_E_scaled(double omega_t, double delay_ratio);

double local_term(const CavityGeometry& geom, const DetectorPair& det, ParityFilter filter,
                  const TruncationPolicy& policy);

cdouble nonlocal_term(const CavityGeometry& geom, const DetectorPair& det, ParityFilter filter,
                      const TruncationPolicy& policy);

/// workers > 1 splits the mode sum over threads; the result does not depend
/// on it.
CorrelationResult negativity(const CavityGeometry& geom, const DetectorPair& det,
                             ParityFilter filter, const TruncationPolicy& policy, int workers = 1);

/// Evaluation on a prebuilt grid. det.distance_ratio must match the grid.
CorrelationResult evaluate(const ModeGrid& grid, const DetectorPair& det, ParityFilter filter,
                           int workers = 1);

/// Parity resolved pieces of one evaluation (exact: all = even + odd).
struct ParityParts {
  double local_even = 0.0;
  double local_odd = 0.0;
  cdouble nonlocal_even;
  cdouble nonlocal_odd;
};
ParityParts parity_parts(const ModeGrid& grid, const DetectorPair& det, int workers = 1);

/// Assembles a result from parity parts; shared by evaluate and the sweep
/// parity spot checks.
CorrelationResult assemble(const ParityParts& parts, const ModeGrid& grid, const DetectorPair& det,
                           ParityFilter filter);

}  // namespace harvest
