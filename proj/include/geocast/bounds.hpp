#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "geocast/model.hpp"
#include "geocast/protocols.hpp"

namespace geocast {

// Worst-case RecMess range over all activation orders.
struct BoundPair {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  bool exact = false;

  bool contains(std::int64_t value) const { return lower <= value && value <= upper; }
};

// Worst-case bounds per protocol and reach. nullopt for delay-based
// protocols, which have no closed-form worst case.
std::optional<BoundPair> table1_bounds(const ProtocolConfig& protocol, const Scenario& scenario);

// Whether an observed [lo, hi] RecMess range conforms to the table entry:
// exact where the entry is an equality for flooding or unbounded M, within
// +-k of the bounds otherwise.
bool table1_conforms(const ProtocolConfig& protocol, const Scenario& scenario, std::int64_t lo,
                     std::int64_t hi);

// Asymptotic reference for fair medium access (CD, CD-P only; natural log).
// CD unbounded references the activation count, the others RecMess.
std::optional<double> table2_reference(const ProtocolConfig& protocol, const Reach& reach, int n,
                                       int k);

// Chernoff rate function x ln x - x + 1, with H(0) = 1.
double chernoff_h(double x);

enum class TailSide { Upper, Lower };

// Bound on P(X >= t) (upper) or P(X <= t) (lower) for X a sum of `count`
// i.i.d. geometric(p) variables on {1, 2, ...}. Throws std::invalid_argument
// when t is on the wrong side of E[X] = count / p.
double geo_sum_tail_bound(int count, double success, double threshold, TailSide side);

// Bound on P(X >= t) for a sum of independent binomials with mean `mean`.
double binomial_sum_tail_bound(double mean, double threshold);

// min(1, n 2^-t): tail of the single-message holder chain.
double z_tail_bound(int n, double t);

// Delay-2 (MD = r) RecMess in the unbounded scenario, log base 2:
// 2^k if k < log n, otherwise n + n (k - log n).
double delay2_recmess_reference(int n, int k);

}  // namespace geocast
