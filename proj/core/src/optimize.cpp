#include "blockade/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "blockade/error.hpp"
#include "blockade/lindblad.hpp"
#include "json_support.hpp"
#include "parallel.hpp"

namespace blockade {
namespace {

using ResidualFn = std::function<complex(double, double)>;

struct NewtonOutcome {
  bool converged = false;
  double delta = 0.0;
  double lambda = 0.0;
  double residual = 0.0;
};

NewtonOutcome damped_newton(const ResidualFn& f, double delta, double lambda, double tol,
                            const RootSearchOptions& opts) {
  NewtonOutcome out;
  try {
    complex r = f(delta, lambda);
    double norm = std::abs(r);
    const double h = opts.fd_step;

    for (int it = 0; it < opts.max_iterations; ++it) {
      if (norm <= tol) {
        out = {true, delta, lambda, norm};
        return out;
      }
      const complex d_delta = (f(delta + h, lambda) - f(delta - h, lambda)) / (2.0 * h);
      const complex d_lambda = (f(delta, lambda + h) - f(delta, lambda - h)) / (2.0 * h);

      // [Re dD Re dL; Im dD Im dL] s = -[Re r; Im r]
      const double a = d_delta.real(), b = d_lambda.real();
      const double c = d_delta.imag(), d = d_lambda.imag();
      const double det = a * d - b * c;
      if (!std::isfinite(det) || det == 0.0) return out;
      const double step_delta = (-r.real() * d + r.imag() * b) / det;
      const double step_lambda = (-a * r.imag() + c * r.real()) / det;

      bool accepted = false;
      double t = 1.0;
      for (int k = 0; k <= opts.max_halvings; ++k, t *= 0.5) {
        const double nd = delta + t * step_delta;
        const double nl = lambda + t * step_lambda;
        const complex nr = f(nd, nl);
        const double nn = std::abs(nr);
        if (std::isfinite(nn) && nn < norm) {
          delta = nd, lambda = nl, r = nr, norm = nn;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
    if (norm <= tol) out = {true, delta, lambda, norm};
  } catch (const Error&) {
    // Resonance singularity at a trial point: treat the start as divergent.
  }
  return out;
}

std::vector<OptimalPair> search(const ResidualFn& f, Cavity cavity, const SearchGrid& grid,
                                double tol, const RootSearchOptions& opts) {
  const auto nd = static_cast<std::size_t>(grid.n_delta);
  const auto nl = static_cast<std::size_t>(grid.n_lambda);
  std::vector<NewtonOutcome> outcomes(nd * nl);

  detail::parallel_for(outcomes.size(), detail::worker_count(opts.threads), [&](std::size_t k) {
    const std::size_t i = k / nl, j = k % nl;
    const double delta =
        grid.delta_lo + (grid.delta_hi - grid.delta_lo) * double(i) / double(nd - 1);
    const double lambda =
        grid.lambda_lo + (grid.lambda_hi - grid.lambda_lo) * double(j) / double(nl - 1);
    outcomes[k] = damped_newton(f, delta, lambda, tol, opts);
  });

  std::vector<OptimalPair> roots;
  for (const auto& o : outcomes) {
    if (!o.converged) continue;
    if (o.delta < grid.delta_lo || o.delta > grid.delta_hi) continue;
    if (o.lambda < grid.lambda_lo || o.lambda > grid.lambda_hi) continue;
    roots.push_back({o.delta, o.lambda, o.residual, cavity, std::nullopt, std::nullopt});
  }
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
    return x.delta_opt != y.delta_opt ? x.delta_opt < y.delta_opt : x.lambda_opt < y.lambda_opt;
  });

  std::vector<OptimalPair> unique;
  for (const auto& r : roots) {
    auto dup = std::find_if(unique.begin(), unique.end(), [&](const OptimalPair& u) {
      return std::hypot(u.delta_opt - r.delta_opt, u.lambda_opt - r.lambda_opt) <=
             opts.dedupe_radius;
    });
    if (dup == unique.end()) {
      unique.push_back(r);
    } else if (r.residual < dup->residual) {
      *dup = r;
    }
  }
  return unique;
}

bool has_partner(const OptimalPair& r, const std::vector<OptimalPair>& set, double radius) {
  return std::any_of(set.begin(), set.end(), [&](const OptimalPair& s) {
    return std::hypot(s.delta_opt - r.delta_opt, s.lambda_opt - r.lambda_opt) <= radius;
  });
}

}  // namespace

std::string_view to_string(Mechanism m) noexcept {
  return m == Mechanism::cpb ? "CPB" : "UCPB";
}

void SearchGrid::validate() const {
  for (double v : {delta_lo, delta_hi, lambda_lo, lambda_hi}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_grid, "non-finite grid bound");
  }
  if (!(delta_lo < delta_hi) || !(lambda_lo < lambda_hi)) {
    throw Error(ErrorCode::invalid_grid, "grid ranges need lo < hi");
  }
  if (n_delta < 4 || n_lambda < 4) {
    throw Error(ErrorCode::invalid_grid, "grid start counts must be >= 4");
  }
}

SearchGrid default_grid(Regime r) {
  if (r == Regime::weak) return {-0.01, 0.01, -5e-6, 5e-6};
  return {-0.1, 0.02, -5e-6, 5e-6};
}

complex target_residual(double delta, double lambda, const SystemParams& p, Cavity cavity) {
  if (p.theta != 0.0 || p.phi != 0.0) {
    throw Error(ErrorCode::unsupported_phase, "root search assumes theta = phi = 0");
  }
  SystemParams q = p;
  q.delta = delta;
  q.lambda_gain = lambda;
  const AmplitudeState s = steady_amplitudes(q);
  return cavity == Cavity::first ? s.c20 : s.c02;
}

complex printed_formula_residual(double delta, double lambda, const SystemParams& p,
                                 Cavity cavity) {
  SystemParams q = p;
  q.delta = -delta;
  q.lambda_gain = lambda;
  const AmplitudeState s = analytic_coefficients(q);
  return cavity == Cavity::first ? s.c20 : s.c02;
}

RootSearch find_optimal_pairs(const SystemParams& p, Cavity cavity, const SearchGrid& grid,
                              const RootSearchOptions& opts) {
  p.validate();
  grid.validate();
  if (p.theta != 0.0 || p.phi != 0.0) {
    throw Error(ErrorCode::unsupported_phase, "root search assumes theta = phi = 0");
  }

  RootSearch out;
  // No drive: c20 reduces to the gain term alone and has no interference zero.
  if (!(p.drive_E > 0.0)) return out;

  const double tol = opts.residual_scale * p.drive_E * p.drive_E;
  out.pairs = search(
      [&](double d, double l) { return target_residual(d, l, p, cavity); }, cavity, grid, tol,
      opts);

  if (opts.compare_printed_formula && p.driven == Cavity::first) {
    out.printed_formula_pairs = search(
        [&](double d, double l) { return printed_formula_residual(d, l, p, cavity); }, cavity,
        grid, tol, opts);
    constexpr double kAgreement = 1e-6;
    for (const auto& r : out.pairs) {
      out.printed_formula_differs |= !has_partner(r, out.printed_formula_pairs, kAgreement);
    }
    for (const auto& r : out.printed_formula_pairs) {
      out.printed_formula_differs |= !has_partner(r, out.pairs, kAgreement);
    }
  }

  if (opts.g2_cutoff > 0) {
    detail::parallel_for(out.pairs.size(), detail::worker_count(opts.threads),
                         [&](std::size_t k) {
                           auto& pair = out.pairs[k];
                           SystemParams q = p;
                           q.delta = pair.delta_opt;
                           q.lambda_gain = pair.lambda_opt;
                           const auto me = solve_master_equation(q, opts.g2_cutoff);
                           pair.g2_check = cavity == Cavity::first ? me.g2_1 : me.g2_2;
                         });
  }
  for (auto& pair : out.pairs) pair.mechanism = classify_mechanism(pair, p).mechanism;
  return out;
}

MechanismCall classify_mechanism(const OptimalPair& pair, const SystemParams& p) {
  const auto cpb = cpb_detunings(p);
  const double reach = kCpbProximity * p.kappa;
  // Zero-to-one-photon resonances of H1 sit at delta = -(mu +/- J).
  const bool near_plus = std::abs(pair.delta_opt + cpb.plus) <= reach;
  const bool near_minus = std::abs(pair.delta_opt + cpb.minus) <= reach;
  const bool conventional = regime(p) == Regime::strong && (near_plus || near_minus);
  return {conventional ? Mechanism::cpb : Mechanism::ucpb, near_plus, near_minus};
}

std::string pairs_to_json(const std::vector<OptimalPair>& pairs, bool flip_axis, int indent) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& pr : pairs) {
    nlohmann::json j{
        {"delta_opt", flip_axis ? -pr.delta_opt : pr.delta_opt},
        {"lambda_opt", pr.lambda_opt},
        {"residual", pr.residual},
        {"cavity", index_of(pr.cavity)},
        {"g2_check", nullptr},
        {"mechanism", nullptr},
    };
    if (pr.g2_check) j["g2_check"] = *pr.g2_check;
    if (pr.mechanism) j["mechanism"] = to_string(*pr.mechanism);
    arr.push_back(std::move(j));
  }
  return arr.dump(indent);
}

}  // namespace blockade
