#include "gvc/schedule.hpp"

#include <cmath>
#include <string>

#include "gvc/error.hpp"

namespace gvc {

double NoiseSchedule::alpha_bar_at(int t) const {
  if (t == 0) return 1.0;
  check_step(t);
  return alpha_bar[t - 1];
}

void NoiseSchedule::check_step(int t) const {
  if (t < 1 || t > num_steps) {
    throw ValidationError("diffusion step " + std::to_string(t) +
                          " outside [1, " + std::to_string(num_steps) + "]");
  }
}

NoiseSchedule make_schedule(int t_diff, double beta_start, double beta_end) {
  if (t_diff < 1) {
    throw ValidationError("schedule needs at least one step");
  }
  if (!(beta_start > 0.0 && beta_start <= beta_end && beta_end < 1.0)) {
    throw ValidationError("need 0 < beta_start <= beta_end < 1");
  }
  NoiseSchedule s;
  s.num_steps = t_diff;
  s.beta.resize(t_diff);
  s.alpha_bar.resize(t_diff);
  s.beta_tilde.resize(t_diff);
  double abar = 1.0;
  for (int i = 0; i < t_diff; ++i) {
    const double frac = t_diff > 1 ? static_cast<double>(i) / (t_diff - 1) : 0.0;
    const double beta = beta_start + (beta_end - beta_start) * frac;
    const double abar_prev = abar;
    abar *= 1.0 - beta;
    s.beta[i] = beta;
    s.alpha_bar[i] = abar;
    s.beta_tilde[i] = i == 0 ? 0.0 : (1.0 - abar_prev) / (1.0 - abar) * beta;
  }
  return s;
}

std::vector<double> forward_sample(const std::vector<double> &a0, int t,
                                   const std::vector<double> &eps,
                                   const NoiseSchedule &schedule) {
  schedule.check_step(t);
  if (a0.size() != eps.size()) {
    throw DimensionError("signal and noise buffers differ in size");
  }
  const double abar = schedule.alpha_bar_at(t);
  const double cs = std::sqrt(abar);
  const double cn = std::sqrt(1.0 - abar);
  std::vector<double> out(a0.size());
  for (std::size_t i = 0; i < a0.size(); ++i) {
    out[i] = cs * a0[i] + cn * eps[i];
  }
  return out;
}

std::vector<double> posterior_mean(const std::vector<double> &a_t,
                                   const std::vector<double> &a_0, int t,
                                   const NoiseSchedule &schedule) {
  schedule.check_step(t);
  if (a_t.size() != a_0.size()) {
    throw DimensionError("posterior inputs differ in size");
  }
  if (t == 1) {
    return a_0;  // 1-abar_0 = 0 collapses the A_t coefficient
  }
  const double beta = schedule.beta[t - 1];
  const double abar = schedule.alpha_bar_at(t);
  const double abar_prev = schedule.alpha_bar_at(t - 1);
  const double c0 = std::sqrt(abar_prev) * beta / (1.0 - abar);
  const double ct = std::sqrt(1.0 - beta) * (1.0 - abar_prev) / (1.0 - abar);
  std::vector<double> out(a_t.size());
  for (std::size_t i = 0; i < a_t.size(); ++i) {
    out[i] = c0 * a_0[i] + ct * a_t[i];
  }
  return out;
}

}  // namespace gvc
