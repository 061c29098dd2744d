// Serial reference vs OpenMP mode sum: wall time and bitwise agreement.
//   bench_mode_sum [preset] [repeats] [workers]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include <omp.h>

#include "harvest/kernels.hpp"
#include "harvest/spectrum.hpp"
#include "harvest/sweep.hpp"

namespace {

bool same_bits(const harvest::ModeSums& a, const harvest::ModeSums& b) {
  return std::memcmp(a.local, b.local, sizeof a.local) == 0 &&
         std::memcmp(a.nonlocal, b.nonlocal, sizeof a.nonlocal) == 0;
}

template <class F>
double seconds(F&& f, int repeats) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string preset_name = argc > 1 ? argv[1] : "optical";
  const int repeats = argc > 2 ? std::stoi(argv[2]) : 3;
  const int workers = argc > 3 ? std::stoi(argv[3]) : omp_get_max_threads();

  const harvest::RegimePreset preset = harvest::regime_preset(harvest::parse_preset(preset_name));
  harvest::CavityGeometry geom;
  geom.length_ratio = preset.length_ratio;
  geom.radius_ratio = preset.radius_ratio;
  harvest::DetectorPair det;
  det.delay_ratio = 3.0;
  const harvest::ModeGrid grid = harvest::enumerate_modes(geom, det, {});

  harvest::ModeSums serial;
  harvest::ModeSums parallel;
  const double ts = seconds([&] { serial = harvest::mode_sums_serial(grid, det.omega_t, det.delay_ratio); }, repeats);
  const double tp = seconds(
      [&] { parallel = harvest::mode_sums_parallel(grid, det.omega_t, det.delay_ratio, workers); }, repeats);

  const bool identical = same_bits(serial, parallel);
  std::printf("preset %s: %d x %d modes (%lld)\n", preset_name.c_str(), grid.max_m(), grid.max_l() + 1,
              grid.report.mode_count);
  std::printf("serial    %.4f s  (%.1f ns/mode)\n", ts, 1e9 * ts / grid.report.mode_count);
  std::printf("openmp %2d %.4f s  (%.1f ns/mode, speedup %.2f)\n", workers, tp,
              1e9 * tp / grid.report.mode_count, ts / tp);
  std::printf("bitwise identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
