#include "randers/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace randers {

void validate(const PerturbationSpec& spec) {
  if (!(spec.epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");
  if (spec.K < 1) throw DomainError("K must be at least 1");
  if (spec.count < 1) throw DomainError("count must be at least 1");
}

std::vector<PolarFourierCurve<double>> generate_perturbations(const PerturbationSpec& spec,
                                                              double a) {
  validate(spec);
  if (!(a > 0.0 && a < 1.0)) throw DomainError("circle radius must satisfy 0 < a < 1");
  std::vector<PolarFourierCurve<double>> out;
  out.reserve(spec.count);
  const long max_rejections = 100L * spec.count;
  long rejections = 0;
  for (int i = 0; i < spec.count; ++i) {
    for (std::uint32_t attempt = 0;; ++attempt) {
      std::seed_seq seq{static_cast<std::uint32_t>(spec.seed),
                        static_cast<std::uint32_t>(spec.seed >> 32), static_cast<std::uint32_t>(i),
                        attempt};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      std::vector<double> c(spec.K), s(spec.K);
      for (int k = 0; k < spec.K; ++k) {
        const double scale = spec.epsilon / (k + 1);
        c[k] = scale * unit(rng);
        s[k] = scale * unit(rng);
      }
      PolarFourierCurve<double> curve(a, std::move(c), std::move(s));
      if (check_admissible(curve)) {
        out.push_back(std::move(curve));
        break;
      }
      if (++rejections > max_rejections)
        throw ExhaustionError("too many inadmissible perturbation draws");
    }
  }
  return out;
}

namespace {

// Harmonic part of r and r' on the quadrature nodes. Evaluating the length for a
// new base radius then reuses them; the arithmetic matches length() exactly.
struct HarmonicTable {
  std::vector<double> r, rdot;
};

HarmonicTable tabulate(const PolarFourierCurve<double>& curve, const QuadratureGrid& grid) {
  HarmonicTable tab;
  const PolarFourierCurve<double> zero = curve.with_base_radius(0.0);
  for (double t : grid.nodes()) {
    tab.r.push_back(zero.radius(t));
    tab.rdot.push_back(zero.radius_dot(t));
  }
  return tab;
}

double tabulated_length(const HarmonicTable& tab, double a0, const RandersConfig& cfg,
                        const QuadratureGrid& grid) {
  return periodic_trapezoid(
             [&](double t) {
               const auto i = static_cast<std::size_t>(std::lround(t / grid.weight()));
               const CurveSample<double> s = detail::polar_sample(t, a0 + tab.r[i], tab.rdot[i]);
               return finsler_norm(s.point, s.velocity, cfg);
             },
             grid)
      .value;
}

}  // namespace

PolarFourierCurve<double> match_length(const PolarFourierCurve<double>& curve,
                                       double target_length, const RandersConfig& cfg,
                                       const QuadratureGrid& grid) {
  // r(t) = a0 + p(t); admissible a0 lie in (-min p, 1 - max p).
  double pmin = std::numeric_limits<double>::infinity();
  double pmax = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kDefaultAdmissibilityGrid; ++i) {
    const double t = kTwoPi * i / kDefaultAdmissibilityGrid;
    const double p = curve.radius(t) - curve.a0();
    pmin = std::min(pmin, p);
    pmax = std::max(pmax, p);
  }
  const double margin = 1e-6;
  double lo = -pmin + margin, hi = 1.0 - pmax - margin;
  if (!(lo < hi)) throw BracketingError("no admissible base radius for these harmonics");

  const HarmonicTable tab = tabulate(curve, grid);
  auto excess = [&](double a0) { return tabulated_length(tab, a0, cfg, grid) - target_length; };
  double f_lo = excess(lo), f_hi = excess(hi);
  if (!(f_lo < 0.0 && f_hi > 0.0))
    throw BracketingError("target length is not bracketed by the admissible base radii");
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = excess(mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    (f_mid < 0.0 ? lo : hi) = mid;
  }
  const double a0 = std::abs(excess(lo)) <= std::abs(excess(hi)) ? lo : hi;
  if (!(std::abs(excess(a0)) <= 1e-10))
    throw BracketingError("length matching did not converge");
  return curve.with_base_radius(a0);
}

bool TrialResult::ok() const {
  if (error) return false;
  if (curve.is_circle()) return std::abs(delta_area) <= kStrictMaximumMargin;
  return delta_area < -kStrictMaximumMargin;
}

std::vector<TrialResult> run_trials(double a, const RandersConfig& cfg,
                                    const PerturbationSpec& spec, const QuadratureGrid& grid) {
  validate(cfg);
  const Circle<double> circle(a);
  const double target = length(circle, cfg, grid).value;
  const double base_area = area(circle, cfg, grid).value;
  const auto curves = generate_perturbations(spec, a);

  std::vector<TrialResult> results(curves.size());
  auto work = [&](std::size_t i) {
    TrialResult& r = results[i];
    r.index = static_cast<int>(i);
    r.curve = curves[i];
    try {
      r.curve = match_length(curves[i], target, cfg, grid);
      r.a0_matched = r.curve.a0();
      r.length = length(r.curve, cfg, grid).value;
      r.length_err = r.length - target;
      r.area = area(r.curve, cfg, grid).value;
      r.delta_area = r.area - base_area;
      r.deficit = isoperimetric_deficit(r.curve, cfg, grid);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  };

  // Trials are independent; each thread takes a strided share of the indices.
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                           static_cast<unsigned>(curves.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < curves.size(); ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < curves.size(); i += workers) work(i);
      });
  }
  return results;
}

}  // namespace randers
