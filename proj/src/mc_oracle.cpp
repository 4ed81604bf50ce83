#include "lstlp/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <thread>

#include "lstlp/errors.hpp"

namespace lstlp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based stream: the n-th draw of a path is splitmix64(key + n * gamma),
// so a path's numbers depend only on (seed, path index).
class PathRng {
 public:
  using result_type = std::uint64_t;

  PathRng(std::uint64_t seed, std::size_t path_index)
      : key_(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(path_index)))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return splitmix64(key_ + (counter_++) * 0x9E3779B97F4A7C15ULL); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

unsigned worker_count(const SimConfig& config) {
  unsigned n = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  n = std::max(1u, n);
  return static_cast<unsigned>(std::min<std::size_t>(n, config.n_paths));
}

// Runs body(i) for every path index; each index is touched by exactly one
// worker, so results written by index are independent of the thread count.
void for_each_path(const SimConfig& config, const std::function<void(std::size_t)>& body) {
  const unsigned workers = worker_count(config);
  if (workers == 1) {
    for (std::size_t i = 0; i < config.n_paths; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (config.n_paths + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(config.n_paths, begin + chunk);
    pool.emplace_back([&body, begin, end] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
}

// Far from the barrier the step is (gap / kGapSteps)^2, capped by max_step.
constexpr double kGapSteps = 2.0;

class PassageWalker {
 public:
  PassageWalker(double c, double d, const SimConfig& config, PathRng& rng)
      : c_(c), d_(d), config_(config), rng_(rng) {}

  FirstPassage run() {
    double t = 0.0;
    double y = 0.0;
    while (t < config_.horizon) {
      const double gap = std::abs(y - c_);
      double h = std::clamp((gap / kGapSteps) * (gap / kGapSteps), config_.dt, config_.max_step);
      h = std::min(h, config_.horizon - t);
      const double y_next = y - d_ * h + std::sqrt(h) * normal_(rng_);
      if (auto hit = locate(t, y, h, y_next)) return {*hit, true};
      y = y_next;
      t += h;
    }
    return {config_.horizon, false};
  }

 private:
  bool past(double y) const { return c_ < 0.0 ? y <= c_ : y >= c_; }

  // First crossing inside [t, t + h] given the endpoints. Intervals longer
  // than dt are split at a midpoint drawn from the Brownian bridge; the
  // drift does not enter the bridge law.
  std::optional<double> locate(double t, double y, double h, double y_next) {
    const double p = past(y_next) ? 1.0 : std::exp(-2.0 * (y - c_) * (y_next - c_) / h);
    if (p < config_.bridge_tol) return std::nullopt;
    if (h <= config_.dt) {
      if (past(y_next)) return t + h * (y - c_) / (y - y_next);
      if (uniform_(rng_) < p) return t + 0.5 * h;
      return std::nullopt;
    }
    const double half = 0.5 * h;
    const double y_mid = 0.5 * (y + y_next) + 0.5 * std::sqrt(h) * normal_(rng_);
    if (auto hit = locate(t, y, half, y_mid)) return hit;
    return locate(t + half, y_mid, half, y_next);
  }

  double c_;
  double d_;
  const SimConfig& config_;
  PathRng& rng_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_;
};

}  // namespace

void SimConfig::validate() const {
  if (n_paths < 1) throw DomainError("n_paths must be >= 1");
  if (!(dt > 0.0)) throw DomainError("dt must be > 0");
  if (!(horizon > 0.0)) throw DomainError("horizon must be > 0");
  if (!(max_step >= dt)) throw DomainError("max_step must be >= dt");
  if (!(bridge_tol >= 0.0 && bridge_tol < 1.0)) throw DomainError("bridge_tol must be in [0, 1)");
}

SimConfig SimConfig::for_threshold(double c, double d, std::size_t n_paths, std::uint64_t seed) {
  SimConfig config;
  config.n_paths = n_paths;
  config.seed = seed;
  config.horizon = c < 0.0 ? 200.0 : 2000.0 / (d > 0.0 ? d : 1.0);
  return config;
}

LogPricePaths simulate_log_price(const ModelParams& params, const SimConfig& config) {
  config.validate();
  const auto steps = static_cast<std::size_t>(std::ceil(config.horizon / config.dt - 1e-9));
  LogPricePaths out;
  out.n_paths = config.n_paths;
  out.times.resize(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    out.times[k] = std::min(static_cast<double>(k) * config.dt, config.horizon);
  }
  out.values.assign(config.n_paths * out.times.size(), 0.0);

  const double drift = params.g() - params.sigma_sq() / 2.0;
  const double sigma = params.sigma();
  for_each_path(config, [&](std::size_t i) {
    PathRng rng(config.seed, i);
    std::normal_distribution<double> normal;
    double* row = out.values.data() + i * out.times.size();
    row[0] = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
      const double h = out.times[k] - out.times[k - 1];
      row[k] = row[k - 1] + drift * h + sigma * std::sqrt(h) * normal(rng);
    }
  });
  return out;
}

std::vector<FirstPassage> sample_first_passage(double c, double d, const SimConfig& config) {
  config.validate();
  if (c == 0.0 || !std::isfinite(c)) throw DomainError("barrier c must be finite and non-zero");
  std::vector<FirstPassage> out(config.n_paths);
  for_each_path(config, [&](std::size_t i) {
    PathRng rng(config.seed, i);
    out[i] = PassageWalker(c, d, config, rng).run();
  });
  return out;
}

McEstimate summarize(std::span<const double> samples) {
  McEstimate est;
  if (samples.empty()) return est;
  const auto n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples) sum += x;
  est.mean = sum / n;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - est.mean) * (x - est.mean);
    est.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return est;
}

namespace {

McEstimate with_hits(McEstimate est, const std::vector<FirstPassage>& passages) {
  est.n_hit = static_cast<std::size_t>(
      std::count_if(passages.begin(), passages.end(), [](const FirstPassage& fp) { return fp.hit; }));
  est.truncation_mass =
      static_cast<double>(passages.size() - est.n_hit) / static_cast<double>(passages.size());
  return est;
}

}  // namespace

McEstimate estimate_hitting_transform(double c, double d, double lam, const SimConfig& config) {
  if (d * d + 2.0 * lam < 0.0) throw DomainError("d^2 + 2 lam < 0");
  const auto passages = sample_first_passage(c, d, config);
  std::vector<double> samples(passages.size(), 0.0);
  for (std::size_t i = 0; i < passages.size(); ++i) {
    if (passages[i].hit) samples[i] = std::exp(-lam * passages[i].time);
  }
  return with_hits(summarize(samples), passages);
}

McPayoffEstimate estimate_exit_payoff(const StoppingThreshold& threshold, const ModelParams& params,
                                      FeeRegime regime, const SimConfig& config) {
  const auto passages = sample_first_passage(threshold.c(), threshold.d(), config);
  const std::size_t n = passages.size();
  const double g = params.g(), r = params.r(), m = params.m(), rho = params.rho();
  const double s2 = params.sigma_sq();
  const double barrier_ratio = threshold.l_over_p0();

  std::vector<double> fee(n, 0.0), il(n, 0.0), st(n, 0.0), total(n, 0.0), fee_plus_total(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!passages[i].hit) continue;
    const double t = passages[i].time;
    const double discount = std::exp(-rho * t);
    const double realized = std::exp(-m * t) * barrier_ratio;  // D_T P_T / P0
    fee[i] = 0.5 * std::exp((g - m - rho) * t) * (std::exp(r * t) + 1.0) -
             std::exp((g / 2.0 - s2 / 8.0 - m / 2.0 - rho) * t);
    il[i] = -0.5 * discount * (realized + 1.0 - 2.0 * std::sqrt(realized));
    st[i] = -0.5 * discount * (std::exp(r * t) * realized - 1.0);
    total[i] = il[i] + st[i];
    fee_plus_total[i] = fee[i] + total[i];
  }

  McPayoffEstimate out;
  out.fee_uncapped = with_hits(summarize(fee), passages);
  out.impermanent_loss = with_hits(summarize(il), passages);
  out.opportunity = with_hits(summarize(st), passages);
  out.no_fee_total = with_hits(summarize(total), passages);

  out.with_fee_total = out.no_fee_total;
  if (regime == FeeRegime::WithFees) {
    const double cap = params.fee_cap_k();
    if (out.fee_uncapped.mean < cap) {
      out.fee = out.fee_uncapped.mean;
      out.with_fee_total = with_hits(summarize(fee_plus_total), passages);
    } else {
      out.fee = cap;
      out.with_fee_total.mean = cap + out.no_fee_total.mean;
    }
  }
  return out;
}

}  // namespace lstlp
