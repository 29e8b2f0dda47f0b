#include <doctest.h>

#include <cmath>

#include "primerace/distribution.hpp"

using namespace primerace;

TEST_CASE("mod-4 density against a 10^7-sample histogram") {
  const auto zs = load_zero_file(std::string(PRIMERACE_DATA_DIR) + "/zeros/chi_m4_T2000_mod4race.csv");
  const double m = mean_mS(zs);
  const std::uint64_t n = 10000000;
  const auto s = sample_li(zs, m, 2000.0, n, 2024);
  const auto edges = s.histogram.edges();
  const double w = edges[1] - edges[0];
  std::vector<double> centers(Histogram::kBins);
  for (int i = 0; i < Histogram::kBins; ++i) centers[i] = 0.5 * (edges[i] + edges[i + 1]);
  const double extent = std::max(std::abs(centers.front()), std::abs(centers.back()));
  const auto fp = fourier_hat(zs, m, 2000.0, fourier_grid(fourier_cutoff(zs, 2000.0), extent));
  const auto d = density_by_inversion(fp, centers);
  double l1 = static_cast<double>(s.histogram.underflow + s.histogram.overflow) / n;
  for (int i = 0; i < Histogram::kBins; ++i) {
    const double h = static_cast<double>(s.histogram.counts[i]) / (n * w);
    l1 += std::abs(h - d.phi[i]) * w;
  }
  MESSAGE("L1 distance " << l1);
  CHECK(l1 < 0.02);
}
