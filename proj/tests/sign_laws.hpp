#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "lstlp/exit_timing.hpp"
#include "support.hpp"

namespace lstlp::testing {

struct SignLawAudit {
  int evaluations = 0;
  int il_not_negative = 0;
  int st_sign_wrong = 0;
  int m_sign_wrong = 0;
  int fee_not_positive = 0;
  int st_not_dominant = 0;  // c < 0 only

  int violations() const {
    return il_not_negative + st_sign_wrong + m_sign_wrong + fee_not_positive + st_not_dominant;
  }
};

/// Evaluates the sign laws on n_params sampled parameter sets with n_c
/// thresholds each, half drawn from [-5, -0.01] and half from [0.01, 5].
inline SignLawAudit audit_sign_laws(int n_params, int n_c, std::uint64_t seed) {
  ParamSampler sampler(seed);
  std::mt19937_64 rng(seed ^ 0xabcdefULL);
  std::uniform_real_distribution<double> mag(0.01, 5.0);
  SignLawAudit audit;
  for (int i = 0; i < n_params; ++i) {
    const ModelParams p = sampler.draw();
    for (int j = 0; j < n_c; ++j) {
      const double c = (j % 2 == 0 ? -1.0 : 1.0) * mag(rng);
      const auto th = StoppingThreshold::from_scaled(c, p);
      const auto b = expected_payoff(th, p, FeeRegime::NoFees);
      const auto terms = payoff_terms(th, p);
      ++audit.evaluations;
      if (!(b.impermanent_loss < 0.0)) ++audit.il_not_negative;
      if ((b.opportunity > 0.0) != (c < 0.0)) ++audit.st_sign_wrong;
      if ((b.no_fee_total > 0.0) != (c < 0.0)) ++audit.m_sign_wrong;
      if (!(terms.fee_sum() > 0.0)) ++audit.fee_not_positive;
      if (c < 0.0 && !(std::abs(b.opportunity) > std::abs(b.impermanent_loss))) ++audit.st_not_dominant;
    }
  }
  return audit;
}

}  // namespace lstlp::testing
