#pragma once

// TM (n = 0) mode bookkeeping for the closed cylinder: wavenumbers,
// geometric weights xi_j, longitudinal phases and parity weights.

#include <iosfwd>
#include <memory>
#include <vector>

#include "harvest/model.hpp"
#include "harvest/specfun.hpp"

namespace harvest {

struct ModeData {
  ModeIndex index;
  double kappa_m = 0.0;  // chi_m sigma / R
  double kappa_l = 0.0;  // l pi sigma / L
  double kappa = 0.0;    // |k_j| sigma
  double omega_t = 0.0;  // omega_j T = kappa tau
  double xi = 0.0;       // xi_j sigma
  double gamma_minus = 0.0;
  double gamma_plus = 0.0;
  double q_l = 0.0;
  double p_l = 0.0;
  double lambda = 0.0;  // exp(-omega_j T Omega T)
};

struct ParityWeights {
  double q = 0.0;
  double p = 0.0;
};

/// q_l = (1 + (-1)^l cos(k_l D))/2 and p_l = (cos(k_l D) + (-1)^l)/2.
/// Written so that p_l == (-1)^l q_l holds bit for bit. D and L in any
/// common unit; requires 0 < D < L.
ParityWeights parity_weights(int l, double distance, double length);

ModeData mode_data(ModeIndex j, const CavityGeometry& geom, const DetectorPair& det);

/// Truncated mode box [1, max_m] x [0, max_l] stored as per-axis arrays; a
/// mode is formed on the fly from one radial and one longitudinal entry.
struct ModeGrid {
  CavityGeometry geom;
  double distance_ratio = 0.0;
  TruncationReport report;

  // radial axis, index m - 1
  std::vector<double> kappa_m;
  std::vector<double> kappa_m_sq;
  std::vector<double> radial_weight;  // kappa_m^2 exp(-kappa_m^2/2) / J1(chi_m)^2

  // longitudinal axis, index l
  std::vector<double> kappa_l_sq;
  std::vector<double> long_weight;  // exp(-kappa_l^2/2)
  std::vector<double> q;
  std::vector<double> p;

  int max_m() const { return static_cast<int>(kappa_m.size()); }
  int max_l() const { return static_cast<int>(q.size()) - 1; }

  double kappa(int m, int l) const;
  double xi(int m, int l) const;
  ModeData mode(int m, int l, double omega_t) const;
};

/// Builds the mode box. Axes without an explicit cap get the smallest cap for
/// which a rigorous bound on the neglected sum of xi_j sigma is at most
/// policy.tail_tolerance times a lower estimate of the kept sum. Throws
/// TruncationError if that needs more than policy.hard_cap modes on an axis.
ModeGrid enumerate_modes(const CavityGeometry& geom, const DetectorPair& det,
                         const TruncationPolicy& policy);

/// Upper bounds used by enumerate_modes, exposed for tests.
struct TailBounds {
  double xi_outside = 0.0;     // bound on sum of xi sigma outside the box
  double gaussian_outside = 0.0;  // bound on sum of exp(-kappa^2/2) outside the box
};
TailBounds tail_bounds(const CavityGeometry& geom, int max_m, int max_l);

/// 1/((L/sigma)(R/sigma)^2): multiplies a value in units of the prefactor A
/// to give it in the geometry independent unit A (L/sigma)(R/sigma)^2.
double prefactor_ratio(const CavityGeometry& geom);

/// Physical prefactor A in SI units (metres) for user supplied charge,
/// switching time, detector width and cavity dimensions.
struct SiInputs {
  double charge = 1.602176634e-19;  // C
  double switching_time = 0.0;      // s
  double width = 0.0;               // m
  double length = 0.0;              // m
  double radius = 0.0;              // m
};
double si_prefactor(const SiInputs& in);

/// CSV dump of the grid: m,l,kappa,omegaT,xi,gamma_minus,gamma_plus,q_l,p_l,lambda
void write_mode_csv(std::ostream& out, const ModeGrid& grid, const DetectorPair& det);

}  // namespace harvest
