#include "acthom/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "acthom/datasets.hpp"
#include "acthom/error.hpp"
#include "acthom/io.hpp"

namespace acthom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGammaSlack = 1e-5;

double coefficient() { return 3.0 - 2.0 * std::numbers::sqrt2; }

std::size_t ceil_log2(std::size_t n) {
  return n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
}

void require_probability(double p, const char* name) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter(std::string(name) + " must lie in (0, 1)");
}

}  // namespace

double gamma_margin(double tau, double w) { return coefficient() * tau - w; }

double feasible_gamma(double tau, double w) {
  if (!(tau > 0.0) || !(w >= 0.0)) throw InvalidParameter("need tau > 0 and w >= 0");
  const double margin = gamma_margin(tau, w);
  if (!(margin > kGammaSlack))
    throw Infeasible("no admissible gamma: (3 - 2 sqrt 2) tau - w = " + format_double(margin) +
                     " does not exceed 1e-5");
  return margin - kGammaSlack;
}

bool gamma_admissible(double tau, double w, double gamma) {
  return gamma > 0.0 && gamma < gamma_margin(tau, w);
}

EpsilonInterval epsilon_interval(double tau, double w, double gamma) {
  const double s = w + gamma;
  const double radicand = s * s + tau * tau - 6.0 * tau * s;
  if (radicand < 0.0) return {0.0, 0.0};
  const double root = std::sqrt(radicand);
  return {(s + tau - root) / 2.0, (s + tau + root) / 2.0};
}

std::size_t covering_number_circle(double tau, double r) {
  if (!(tau > 0.0) || !(r > 0.0)) throw InvalidParameter("covering radius and tau must be positive");
  if (r >= 2.0 * tau) return 1;
  const double arcs = kPi / (2.0 * std::asin(r / (2.0 * tau)));
  return static_cast<std::size_t>(std::ceil(arcs - 1e-12));
}

double lens_area(double r1, double r2, double d) {
  if (r1 <= 0.0 || r2 <= 0.0) return 0.0;
  if (d >= r1 + r2) return 0.0;
  if (d <= std::abs(r1 - r2)) {
    const double r = std::min(r1, r2);
    return kPi * r * r;
  }
  const double a1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0));
  const double a2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0));
  const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  return r1 * r1 * a1 + r2 * r2 * a2 - 0.5 * std::sqrt(std::max(k, 0.0));
}

AnnulusMeasures annulus_measures(const BoundsScenario& s) {
  const double half_side = std::sqrt(s.domain_area) / 2.0;
  if (!(s.tau > 0.0) || !(s.w >= 0.0) || !(s.w < s.tau) || !(s.gamma > 0.0))
    throw InvalidGeometry("need tau > 0, 0 <= w < tau and gamma > 0");
  if (s.tau + std::max(s.w, s.w + s.gamma) > half_side)
    throw InvalidGeometry("balls around the boundary leave the square domain");
  require_probability(s.p_y1, "P(y=1)");

  const double area0 = s.domain_area - kPi * (s.tau - s.w) * (s.tau - s.w);
  const double area1 = kPi * (s.tau + s.w) * (s.tau + s.w);
  const double d0 = 1.0 / area0;
  const double d1 = 1.0 / area1;
  // Ball of radius r centred on the boundary, intersected with each class region.
  auto in_x1 = [&](double r) { return lens_area(r, s.tau + s.w, s.tau); };
  auto in_x0 = [&](double r) { return kPi * r * r - lens_area(r, s.tau - s.w, s.tau); };

  AnnulusMeasures m;
  const double q = s.gamma / 4.0;
  m.rho0 = d0 * in_x0(q);
  m.rho1 = d1 * in_x1(q);
  const double big = s.w + s.gamma;
  m.h = (1.0 - s.p_y1) * d0 * in_x0(big) + s.p_y1 * d1 * in_x1(big);
  return m;
}

BoundsScenario annulus_scenario(double tau, double w, double delta) {
  require_probability(delta, "delta");
  BoundsScenario s;
  s.tau = tau;
  s.w = w;
  s.delta = delta;
  s.gamma = feasible_gamma(tau, w);
  const EpsilonInterval eps = epsilon_interval(tau, w, s.gamma);
  if (eps.empty()) throw Infeasible("epsilon interval is empty");
  s.epsilon = (eps.lo + eps.hi) / 2.0;
  s.p_y1 = kPi * tau * tau / s.domain_area;
  s.beta = s.p_y1;
  s.n_cover_quarter = covering_number_circle(tau, s.gamma / 4.0);
  s.n_cover_tube = covering_number_circle(tau, w + s.gamma);
  const AnnulusMeasures m = annulus_measures(s);
  s.h = m.h;
  s.rho0 = m.rho0;
  s.rho1 = m.rho1;
  return s;
}

double passive_sample_bound(const BoundsScenario& s, double confidence_arg) {
  require_probability(confidence_arg, "confidence argument");
  require_probability(s.p_y1, "P(y=1)");
  if (!(s.rho0 > 0.0) || !(s.rho1 > 0.0)) throw InvalidParameter("ball measures must be positive");
  if (s.n_cover_quarter < 1) throw InvalidParameter("covering number must be >= 1");
  const double log_term =
      std::log(2.0 * static_cast<double>(s.n_cover_quarter)) + std::log(1.0 / confidence_arg);
  const double y0 = log_term / ((1.0 - s.p_y1) * s.rho0);
  const double y1 = log_term / (s.p_y1 * s.rho1);
  return std::max(y0, y1);
}

double active_query_bound(const BoundsScenario& s, std::size_t n_unlabeled) {
  require_probability(s.beta, "beta");
  require_probability(s.delta, "delta");
  if (n_unlabeled < 1) throw InvalidParameter("n_unlabeled must be >= 1");
  const double confidence = 1.0 - std::sqrt(1.0 - s.delta);
  const double first = std::log(1.0 / (s.beta * confidence)) / std::log(1.0 / (1.0 - s.beta));
  const double n = static_cast<double>(n_unlabeled);
  const double second = n * static_cast<double>(s.n_cover_tube) * s.h *
                        static_cast<double>(ceil_log2(n_unlabeled) + 1);
  return first + second;
}

std::vector<ScanRow> complexity_ratio_scan(ScanMode mode, std::span<const double> grid,
                                           double delta, double fixed) {
  require_probability(delta, "delta");
  std::vector<ScanRow> rows;
  for (double param : grid) {
    ScanRow row;
    row.param = param;
    const double tau = mode == ScanMode::kVaryTau ? param : fixed;
    const double w = mode == ScanMode::kVaryTau ? fixed : param;
    try {
      row.scenario = annulus_scenario(tau, w, delta);
    } catch (const Infeasible&) {
      rows.push_back(row);
      continue;
    } catch (const InvalidParameter&) {
      rows.push_back(row);
      continue;
    }
    row.feasible = true;
    row.epsilon = epsilon_interval(tau, w, row.scenario.gamma);
    row.passive_bound = passive_sample_bound(row.scenario, 1.0 - std::sqrt(1.0 - delta));
    row.n_unlabeled = static_cast<std::size_t>(std::floor(row.passive_bound)) + 1;
    row.active_bound = active_query_bound(row.scenario, row.n_unlabeled);
    row.ratio = row.active_bound / row.passive_bound;
    rows.push_back(row);
  }
  return rows;
}

std::string format_scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = "param,gamma,N_cover,h,rho0,rho1,active_bound,passive_bound,ratio,feasible\n";
  for (const auto& r : rows) {
    out += format_double(r.param);
    if (!r.feasible) {
      out += ",nan,nan,nan,nan,nan,nan,nan,nan,0\n";
      continue;
    }
    const auto& s = r.scenario;
    for (double v : {s.gamma, static_cast<double>(s.n_cover_quarter), s.h, s.rho0, s.rho1,
                     r.active_bound, r.passive_bound, r.ratio}) {
      out += ',';
      out += format_double(v);
    }
    out += ",1\n";
  }
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string::npos ? first : spec.find(':', first + 1);
  double lo, hi;
  std::size_t count;
  if (second == std::string::npos ||
      !io::parse_double(std::string_view(spec).substr(0, first), lo) ||
      !io::parse_double(std::string_view(spec).substr(first + 1, second - first - 1), hi) ||
      !io::parse_index(std::string_view(spec).substr(second + 1), count))
    throw InvalidParameter("grid must look like lo:hi:count, got `" + spec + "`");
  std::vector<double> grid;
  for (std::size_t i = 0; i < count; ++i) {
    if (count == 1) {
      grid.push_back(lo);
    } else if (i + 1 == count) {
      grid.push_back(hi);
    } else {
      grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
  }
  return grid;
}

}  // namespace acthom
