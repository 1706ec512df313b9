#include "geocast/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geocast {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

BoundPair range(std::int64_t lower, std::int64_t upper) { return {lower, upper, lower == upper}; }

}  // namespace

std::optional<BoundPair> table1_bounds(const ProtocolConfig& protocol, const Scenario& sc) {
  const std::int64_t n = sc.n;
  const std::int64_t k = sc.k;
  const bool bounded = sc.reach.is_bounded();
  const std::int64_t r = bounded ? sc.reach.radius() : 0;

  if (protocol.is<protocol::Flooding>()) {
    const std::int64_t v = bounded ? 2 * r * k : (n - 2) * k;
    return BoundPair{v, v, true};
  }
  if (const auto* p = std::get_if<protocol::MHeuristic>(&protocol.kind)) {
    const std::int64_t m = p->limit;
    if (!bounded) return BoundPair{m * k, m * k, true};
    if (2 * r <= m) return BoundPair{2 * r * k, 2 * r * k, true};
    // min(M/2, 2r) k, rounded up to ceil(M/2) k when M k / 2 is fractional.
    const std::int64_t half = (m * k) % 2 == 0 ? m * k / 2 : ceil_div(m, 2) * k;
    return range(std::min(half, 2 * r * k), std::min(m, 2 * r) * k);
  }
  if (const auto* p = std::get_if<protocol::THeuristic>(&protocol.kind)) {
    const std::int64_t t = p->threshold;
    if (!bounded) return range(ceil_div(n, 2 * t) * k, ceil_div(n, t) * k);
    return range(ceil_div(r, t) * k, ceil_div(2 * r, t) * k);
  }
  if (protocol.is<protocol::CenterDistance>() || protocol.is<protocol::CenterDistancePriority>()) {
    if (!bounded) return range(k, n * k);
    return range(2 * k, 2 * r * k);
  }
  return std::nullopt;
}

bool table1_conforms(const ProtocolConfig& protocol, const Scenario& sc, std::int64_t lo,
                     std::int64_t hi) {
  const auto b = table1_bounds(protocol, sc);
  if (!b) throw std::invalid_argument("no worst-case bounds for " + protocol.name());
  const bool strict = protocol.is<protocol::Flooding>() ||
                      (protocol.is<protocol::MHeuristic>() && !sc.reach.is_bounded());
  if (strict) return lo == b->lower && hi == b->upper;
  return lo >= b->lower - sc.k && hi <= b->upper + sc.k;
}

std::optional<double> table2_reference(const ProtocolConfig& protocol, const Reach& reach, int n,
                                       int k) {
  const double kd = k;
  const double nd = n;
  if (protocol.is<protocol::CenterDistancePriority>())
    return reach.is_bounded() ? kd : kd * std::log(nd);
  if (protocol.is<protocol::CenterDistance>()) {
    if (reach.is_bounded()) return std::pow(kd, 1.5);
    if (k <= n) {
      const double blocks = static_cast<double>((n + k - 1) / k);
      return kd * kd * std::log(blocks + 1.0);
    }
    return nd * kd;
  }
  return std::nullopt;
}

double chernoff_h(double x) {
  if (x < 0.0) throw std::invalid_argument("H(x) needs x >= 0");
  if (x == 0.0) return 1.0;
  return x * std::log(x) - x + 1.0;
}

double geo_sum_tail_bound(int count, double success, double threshold, TailSide side) {
  if (count < 1) throw std::invalid_argument("geometric sum needs count >= 1");
  if (!(success > 0.0 && success <= 1.0)) throw std::invalid_argument("success must be in (0, 1]");
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  const double mean = count / success;
  if (side == TailSide::Upper && threshold < mean)
    throw std::invalid_argument("upper tail bound needs t >= E[X]");
  if (side == TailSide::Lower && threshold > mean)
    throw std::invalid_argument("lower tail bound needs t <= E[X]");
  return std::exp(-(count * threshold / mean) * chernoff_h(mean / threshold));
}

double binomial_sum_tail_bound(double mean, double threshold) {
  if (!(mean > 0.0)) throw std::invalid_argument("binomial sum needs a positive mean");
  if (threshold < mean) throw std::invalid_argument("upper tail bound needs t >= E[X]");
  return std::exp(-mean * chernoff_h(threshold / mean));
}

double z_tail_bound(int n, double t) {
  if (n < 1) throw std::invalid_argument("z_tail_bound needs n >= 1");
  if (t < 0.0) throw std::invalid_argument("z_tail_bound needs t >= 0");
  return std::min(1.0, n * std::exp2(-t));
}

double delay2_recmess_reference(int n, int k) {
  if (n < 2 || k < 1) throw std::invalid_argument("delay2 reference needs n >= 2, k >= 1");
  const double log_n = std::log2(static_cast<double>(n));
  if (k < log_n) return std::exp2(k);
  return n + n * (k - log_n);
}

}  // namespace geocast
