#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lstlp/exit_timing.hpp"
#include "lstlp/market_model.hpp"

namespace lstlp {

struct SimConfig {
  std::size_t n_paths = 100000;
  double dt = 1e-3;        // grid step for path output; finest step near a barrier
  double horizon = 200.0;  // paths not hit by this time are censored
  std::uint64_t seed = 0x5eed;
  double max_step = 100.0;  // largest step taken far away from a barrier
  /// Steps whose bridge-crossing probability is below this are accepted
  /// without subdivision.
  double bridge_tol = 1e-4;
  unsigned threads = 1;    // 0 selects std::thread::hardware_concurrency()

  /// Throws DomainError unless dt > 0, horizon > 0, n_paths >= 1, max_step >= dt
  /// and 0 <= bridge_tol < 1.
  void validate() const;

  /// Horizon 200 for c < 0 (hitting is almost sure), 2000 / d for c > 0.
  static SimConfig for_threshold(double c, double d, std::size_t n_paths, std::uint64_t seed);
};

/// Scaled log-prices ln(P_t / P0) on the grid t_k = min(k dt, horizon).
struct LogPricePaths {
  std::vector<double> times;
  std::size_t n_paths = 0;
  std::vector<double> values;  // row-major, one row of times.size() values per path

  std::span<const double> path(std::size_t i) const {
    return {values.data() + i * times.size(), times.size()};
  }
};

/// Exact GBM log-increments (g - sigma^2/2) dt + sigma sqrt(dt) Z. Every
/// path draws from its own counter-based stream keyed by (seed, path index),
/// so results do not depend on the thread count.
LogPricePaths simulate_log_price(const ModelParams& params, const SimConfig& config);

struct FirstPassage {
  double time = 0.0;
  bool hit = false;
};

/// First time Y_t = B_t - d t reaches c (c != 0), per path. Steps grow with
/// the distance to the barrier; a step that may have crossed (endpoint past
/// c, or bridge-crossing probability >= bridge_tol) is bisected with exact
/// bridge midpoints down to dt, where the crossing time is interpolated.
std::vector<FirstPassage> sample_first_passage(double c, double d, const SimConfig& config);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_hit = 0;
  double truncation_mass = 0.0;  // fraction of paths censored at the horizon
};

/// Monte Carlo estimate of E[exp(-lam T)]; censored paths contribute 0.
McEstimate estimate_hitting_transform(double c, double d, double lam, const SimConfig& config);

/// Monte Carlo counterpart of expected_payoff. The fee cap is applied to
/// the averaged fee, mirroring the closed form; payoffs use P_T = L exactly.
struct McPayoffEstimate {
  McEstimate fee_uncapped;
  double fee = 0.0;
  McEstimate impermanent_loss;
  McEstimate opportunity;
  McEstimate no_fee_total;
  McEstimate with_fee_total;
};

McPayoffEstimate estimate_exit_payoff(const StoppingThreshold& threshold, const ModelParams& params,
                                      FeeRegime regime, const SimConfig& config);

/// Mean and standard error of samples reduced in index order.
McEstimate summarize(std::span<const double> samples);

}  // namespace lstlp
