#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace acthom {

// Stylized annulus scenario: a circular boundary of radius tau inside a square
// of area domain_area, classes overlapping in the tube of radius w.
struct BoundsScenario {
  double tau = 0.0;
  double w = 0.0;
  double gamma = 0.0;
  double epsilon = 0.0;
  double delta = 0.1;
  double beta = 0.0;
  double p_y1 = 0.0;
  double domain_area = 25.0;

  std::size_t n_cover_quarter = 0;  // N_{gamma/4}
  std::size_t n_cover_tube = 0;     // N_{w+gamma}
  double h = 0.0;                   // h_{w+gamma}
  double rho0 = 0.0;                // rho^0_{gamma/4}
  double rho1 = 0.0;                // rho^1_{gamma/4}
};

struct EpsilonInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const noexcept { return !(lo < hi); }
};

// The admissible gap between the boundary and the tube, (3 - 2 sqrt 2) tau - w.
double gamma_margin(double tau, double w);

// gamma_margin - 1e-5; throws Infeasible when the margin does not exceed 1e-5.
double feasible_gamma(double tau, double w);

bool gamma_admissible(double tau, double w, double gamma);

// Open interval of admissible covering radii; empty when the radicand is negative.
EpsilonInterval epsilon_interval(double tau, double w, double gamma);

// Fewest radius-r balls centred on a circle of radius tau that cover it.
std::size_t covering_number_circle(double tau, double r);

// Area of the intersection of two discs with radii r1, r2 and centre distance d.
double lens_area(double r1, double r2, double d);

struct AnnulusMeasures {
  double h = 0.0;
  double rho0 = 0.0;
  double rho1 = 0.0;
};

// Ball measures at a point of the boundary circle; uses tau, w, gamma, p_y1
// and domain_area from the scenario.
AnnulusMeasures annulus_measures(const BoundsScenario& scenario);

// Fills gamma, epsilon, priors, covering numbers and measures for a given
// (tau, w, delta). Throws Infeasible if gamma cannot be chosen.
BoundsScenario annulus_scenario(double tau, double w, double delta);

double passive_sample_bound(const BoundsScenario& scenario, double confidence_arg);

double active_query_bound(const BoundsScenario& scenario, std::size_t n_unlabeled);

enum class ScanMode { kVaryTau, kVaryW };

struct ScanRow {
  double param = 0.0;
  bool feasible = false;
  BoundsScenario scenario;
  EpsilonInterval epsilon;
  std::size_t n_unlabeled = 0;
  double active_bound = 0.0;
  double passive_bound = 0.0;
  double ratio = 0.0;
};

// One row per grid value; the fixed parameter is `w` for kVaryTau and `tau`
// for kVaryW. Infeasible grid values are flagged, not dropped.
std::vector<ScanRow> complexity_ratio_scan(ScanMode mode, std::span<const double> grid,
                                           double delta, double fixed);

// CSV `param,gamma,N_cover,h,rho0,rho1,active_bound,passive_bound,ratio,feasible`.
std::string format_scan_csv(const std::vector<ScanRow>& rows);

// `lo:hi:count` evenly spaced values, endpoints included.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace acthom
