#ifndef GVC_SCHEDULE_HPP_
#define GVC_SCHEDULE_HPP_

#include <vector>

namespace gvc {

// Variance schedule of the forward diffusion chain. Arrays are indexed
// by step-1 (step t runs 1..num_steps); alpha_bar_at(0) is defined as 1,
// which forces beta_tilde[0] = 0.
struct NoiseSchedule {
  int num_steps = 0;               // T_diff
  std::vector<double> beta;        // beta_t
  std::vector<double> alpha_bar;   // prod_{s<=t} (1 - beta_s)
  std::vector<double> beta_tilde;  // (1-abar_{t-1})/(1-abar_t) * beta_t

  double alpha_bar_at(int t) const;  // t in [0, num_steps]
  void check_step(int t) const;      // t in [1, num_steps]
};

// Linear beta interpolation from beta_start to beta_end over t_diff
// steps (a single step uses beta_start).
NoiseSchedule make_schedule(int t_diff, double beta_start, double beta_end);

// Closed-form forward marginal sqrt(abar_t) * a0 + sqrt(1-abar_t) * eps.
// a0 is expected in the normalized [-1,1] domain.
std::vector<double> forward_sample(const std::vector<double> &a0, int t,
                                   const std::vector<double> &eps,
                                   const NoiseSchedule &schedule);

// Mean of the Gaussian posterior q(A_{t-1} | A_t, A_0):
//   sqrt(abar_{t-1}) beta_t / (1-abar_t) * A_0
//   + sqrt(alpha_t) (1-abar_{t-1}) / (1-abar_t) * A_t.
// At t = 1 the coefficients collapse and the result is exactly A_0.
std::vector<double> posterior_mean(const std::vector<double> &a_t,
                                   const std::vector<double> &a_0, int t,
                                   const NoiseSchedule &schedule);

}  // namespace gvc

#endif  // GVC_SCHEDULE_HPP_
