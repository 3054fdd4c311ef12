#include "sri/volatility.hpp"

#include <cmath>
#include <string>

#include "sri/errors.hpp"

namespace sri {

TimeSeries realized_vol(const TimeSeries& prices, const RVParams& params) {
  if (params.window < 2) throw ConfigError("realized_vol: window must be >= 2");
  if (!(params.annualization > 0.0))
    throw ConfigError("realized_vol: annualization must be positive");

  const Eigen::Index n = prices.size();
  const Eigen::Index w = params.window;

  // One-day log returns between adjacent present prices; missing otherwise.
  Eigen::VectorXd r = Eigen::VectorXd::Constant(n, kMissing);
  for (Eigen::Index t = 1; t < n; ++t) {
    const double p0 = prices.value(t - 1);
    const double p1 = prices.value(t);
    if (is_missing(p0) || is_missing(p1)) continue;
    if (p0 <= 0.0 || p1 <= 0.0) {
      throw DomainError("realized_vol: non-positive price for " +
                        prices.name() + " at " + prices.date(t).to_string());
    }
    r[t] = std::log(p1 / p0);
  }

  Eigen::VectorXd rv = Eigen::VectorXd::Constant(n, kMissing);
  const double scale = params.annualization / static_cast<double>(w);
  for (Eigen::Index t = w; t < n; ++t) {
    double ss = 0.0;
    bool full = true;
    for (Eigen::Index k = 0; k < w; ++k) {
      const double rk = r[t - k];
      if (is_missing(rk)) {
        full = false;
        break;
      }
      ss += rk * rk;
    }
    if (full) rv[t] = std::sqrt(scale * ss);
  }
  return prices.with_values(std::move(rv), "RV_" + prices.name());
}

OptionChainSlice OptionChainSlice::make(double expiry_fraction,
                                        double risk_free, double forward,
                                        std::vector<double> strikes,
                                        std::vector<double> quotes) {
  if (!(expiry_fraction > 0.0))
    throw DomainError("option chain: expiry fraction must be positive");
  if (!(forward > 0.0))
    throw DomainError("option chain: forward must be positive");
  if (strikes.empty()) throw DomainError("option chain: no strikes");
  if (strikes.size() != quotes.size())
    throw DomainError("option chain: strikes and quotes differ in length");
  for (std::size_t i = 0; i < strikes.size(); ++i) {
    if (!(strikes[i] > 0.0))
      throw DomainError("option chain: non-positive strike");
    if (i > 0 && !(strikes[i] > strikes[i - 1]))
      throw DomainError("option chain: strikes must be strictly increasing");
    if (!(quotes[i] >= 0.0))
      throw DomainError("option chain: negative quote at strike " +
                        std::to_string(strikes[i]));
  }
  if (strikes.front() > forward) {
    throw DegenerateChainError(
        "option chain: no strike at or below the forward level");
  }
  OptionChainSlice s;
  s.expiry_fraction = expiry_fraction;
  s.risk_free = risk_free;
  s.forward = forward;
  s.strikes = std::move(strikes);
  s.quotes = std::move(quotes);
  s.k0 = 0;
  while (s.k0 + 1 < s.strikes.size() && s.strikes[s.k0 + 1] <= s.forward)
    ++s.k0;
  return s;
}

double implied_variance_index(const OptionChainSlice& slice) {
  const double T = slice.expiry_fraction;
  if (!(T > 0.0))
    throw DomainError("implied_variance_index: expiry fraction must be > 0");
  const std::size_t n = slice.strikes.size();
  if (n == 0) throw DomainError("implied_variance_index: empty chain");

  const double disc = std::exp(slice.risk_free * T);
  double strip = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dk = 0.0;  // a single strike has no neighbour: the strip is empty
    if (n > 1) {
      if (i == 0)
        dk = slice.strikes[1] - slice.strikes[0];
      else if (i == n - 1)
        dk = slice.strikes[n - 1] - slice.strikes[n - 2];
      else
        dk = (slice.strikes[i + 1] - slice.strikes[i - 1]) / 2.0;
    }
    const double K = slice.strikes[i];
    strip += dk / (K * K) * disc * slice.quotes[i];
  }

  const double m = slice.forward / slice.strikes[slice.k0] - 1.0;
  const double sigma2 = (2.0 / T) * strip - (1.0 / T) * m * m;
  if (sigma2 < 0.0) {
    throw DegenerateChainError(
        "implied_variance_index: strip gives negative variance (" +
        std::to_string(sigma2) + "); quotes inconsistent with the forward");
  }
  return 100.0 * std::sqrt(sigma2);
}

}  // namespace sri
