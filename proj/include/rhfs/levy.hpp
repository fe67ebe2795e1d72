#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "decode.hpp"

namespace rhfs {

// Mantegna scale of the numerator normal:
//   σ_u = { Γ(1+β) sin(πβ/2) / [ Γ((1+β)/2) β 2^((β-1)/2) ] }^(1/β)
inline double sigma_u(double beta) {
  if (!(beta > 1.0 && beta <= 2.0)) {
    throw std::invalid_argument("Levy stability index must lie in (1, 2], got " + std::to_string(beta));
  }
  double const num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
  double const den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
  return std::pow(std::max(num / den, 0.0), 1.0 / beta);
}

class LevyParams {
 public:
  explicit LevyParams(double beta = 1.5) : beta_(beta), sigma_u_(rhfs::sigma_u(beta)) {}

  double beta() const { return beta_; }
  double sigma_u() const { return sigma_u_; }
  static constexpr double sigma_v() { return 1.0; }

 private:
  double beta_;
  double sigma_u_;
};

// One Lévy-distributed step u / |v|^(1/β), u ~ N(0, σ_u²), v ~ N(0, 1).
template <class Rng>
double sample_levy(Rng& rng, LevyParams const& params) {
  std::normal_distribution<double> u_dist(0.0, params.sigma_u());
  std::normal_distribution<double> v_dist(0.0, LevyParams::sigma_v());
  double const u = u_dist(rng);
  double v = v_dist(rng);
  while (v == 0.0) v = v_dist(rng);
  return u / std::pow(std::abs(v), 1.0 / params.beta());
}

// x' = x + step_a * levy, drawn independently for every gene and clamped to the gene range.
template <class Rng>
Position levy_scout_step(Position const& position, double step_a, Rng& rng, LevyParams const& params) {
  Position out(position.size());
  for (std::size_t d = 0; d < position.size(); ++d) {
    out[d] = clamp_gene(position[d] + step_a * sample_levy(rng, params));
  }
  return out;
}

}  // namespace rhfs
