// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrisk/race_models.hpp>

#include <dsrisk/error.hpp>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dsrisk {

namespace {

// Beyond this many blocks terms are evaluated in log space.
constexpr std::int64_t kDirectLimit = 50;

// Series tails stop once the geometric remainder bound falls below this
// fraction of the accumulated sum.
constexpr double kTailRelativeTolerance = 1e-17;

constexpr double kClampSlack = 1e-9;

double lgamma_safe(double x)
{
    // boost's lgamma does not touch the global signgam that glibc's does.
    return boost::math::lgamma(x);
}

double log_binomial(std::int64_t top, std::int64_t k)
{
    return lgamma_safe(static_cast<double>(top) + 1.0) - lgamma_safe(static_cast<double>(k) + 1.0)
           - lgamma_safe(static_cast<double>(top - k) + 1.0);
}

// Sums a positive series whose term ratio is non-increasing and already
// below one, given the first term and a callable returning term[k+1]/term[k].
template <typename Ratio>
double sum_decreasing_tail(double first, Ratio ratio_after, double already)
{
    double sum = 0.0;
    double term = first;
    for (std::int64_t k = 0; term > 0.0; ++k) {
        sum += term;
        const double r = ratio_after(k);
        const double remainder_bound = term * r / (1.0 - r);
        if (remainder_bound <= kTailRelativeTolerance * (sum + already)) break;
        term *= r;
    }
    return sum;
}

} // namespace

AttackerPower::AttackerPower(double q) : m_q(q), m_p(1.0 - q)
{
    if (!(q >= 0.0 && q <= 1.0)) {
        throw DomainError("attacker hash power q must lie in [0, 1], got " + std::to_string(q));
    }
}

Probability::Probability(double value) : m_value(value)
{
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DomainError("probability must lie in [0, 1], got " + std::to_string(value));
    }
}

Probability Probability::clamped(double raw)
{
    if (std::isnan(raw) || raw < -kClampSlack || raw > 1.0 + kClampSlack) {
        throw std::logic_error("probability drifted outside [0, 1] before clamping: " + std::to_string(raw));
    }
    return Probability(raw < 0.0 ? 0.0 : (raw > 1.0 ? 1.0 : raw));
}

RaceState RaceState::from_budget(std::int64_t budget, std::int64_t lead)
{
    if (budget < 0 || lead < 0) {
        throw DomainError("budget and lead must be non-negative");
    }
    if (budget > std::numeric_limits<std::int64_t>::max() - lead - 1) {
        throw DomainError("budget + lead overflows");
    }
    RaceState state;
    state.lead = lead;
    state.budget = budget;
    state.fortune = budget;
    state.target = budget + lead + 1;
    return state;
}

void RaceState::validate() const
{
    if (target < 1) throw DomainError("target fortune must be at least 1");
    if (fortune < 0 || fortune > target) throw DomainError("fortune must lie in [0, target]");
    if (budget < 0) throw DomainError("budget must be non-negative");
}

Probability gambler_ruin_probability(std::int64_t fortune, std::int64_t target, AttackerPower power)
{
    if (target < 1 || fortune < 0 || fortune > target) {
        throw DomainError("gambler's ruin requires 0 <= i <= N and N >= 1");
    }
    if (fortune == 0) return Probability(0.0);
    if (fortune == target) return Probability(1.0);

    const double q = power.q();
    const double p = power.p();
    if (q == 0.0) return Probability(0.0);
    if (p == 0.0) return Probability(1.0);
    if (q == p) {
        // Fair game: P_i = i/N, the only solution of the recurrence that
        // honours P_0 = 0 and P_N = 1.
        return Probability::clamped(static_cast<double>(fortune) / static_cast<double>(target));
    }

    const double i = static_cast<double>(fortune);
    const double n = static_cast<double>(target);
    if (p < q) {
        // (1 - r^i) / (1 - r^N) with r = p/q < 1.
        const double log_r = std::log(p / q);
        return Probability::clamped(std::expm1(i * log_r) / std::expm1(n * log_r));
    }
    // r = p/q > 1: multiply through by s^N with s = q/p < 1 to stay finite.
    const double log_s = std::log(q / p);
    const double num = std::exp((n - i) * log_s) - std::exp(n * log_s);
    const double den = -std::expm1(n * log_s);
    return Probability::clamped(num / den);
}

Probability gambler_ruin_probability(const RaceState& state, AttackerPower power)
{
    state.validate();
    return gambler_ruin_probability(state.fortune, state.target, power);
}

Probability finite_resource_success(std::int64_t budget, std::int64_t lead, AttackerPower power)
{
    return gambler_ruin_probability(RaceState::from_budget(budget, lead), power);
}

Probability catch_up_probability(std::int64_t lead, AttackerPower power)
{
    if (lead < 0 || power.is_majority()) return Probability(1.0);
    const double ratio = power.q() / power.p();
    return Probability::clamped(std::pow(ratio, static_cast<double>(lead) + 1.0));
}

double poisson_mean(std::int64_t lead, AttackerPower power)
{
    if (lead < 0) throw DomainError("lead must be non-negative");
    if (power.p() == 0.0) return std::numeric_limits<double>::infinity();
    return (static_cast<double>(lead) + 1.0) * (power.q() / power.p());
}

Probability poisson_success(std::int64_t lead, AttackerPower power)
{
    if (lead < 0) throw DomainError("poisson_success requires lead >= 0");
    if (power.is_majority()) return Probability(1.0);
    if (power.q() == 0.0) return Probability(0.0);

    // P_s = sum_{k<=z} Pois(k) (q/p)^(z-k+1) + P(K > z). Both parts are sums
    // of positive terms, so small probabilities keep full relative precision.
    const double ratio = power.q() / power.p();
    const double lambda = poisson_mean(lead, power);
    const double log_lambda = std::log(lambda);
    const double log_ratio = std::log(ratio);
    const bool log_space = lead + 1 > kDirectLimit;

    double caught = 0.0;
    double pois = std::exp(-lambda);
    for (std::int64_t k = 0; k <= lead; ++k) {
        if (log_space) {
            const double kd = static_cast<double>(k);
            caught += std::exp(kd * log_lambda - lambda - lgamma_safe(kd + 1.0)
                               + static_cast<double>(lead - k + 1) * log_ratio);
        } else {
            caught += pois * std::pow(ratio, static_cast<double>(lead - k + 1));
            pois *= lambda / static_cast<double>(k + 1);
        }
    }

    const double first_k = static_cast<double>(lead + 1);
    const double first_tail = log_space
        ? std::exp(first_k * log_lambda - lambda - lgamma_safe(first_k + 1.0))
        : pois;
    const double ahead = sum_decreasing_tail(
        first_tail, [&](std::int64_t j) { return lambda / (first_k + static_cast<double>(j) + 1.0); }, caught);

    return Probability::clamped(caught + ahead);
}

Probability negbin_block_pmf(std::int64_t attacker_blocks, std::int64_t confirmations, AttackerPower power)
{
    if (confirmations < 1 || attacker_blocks < 0) {
        throw DomainError("negbin_block_pmf requires m >= 0 and n >= 1");
    }
    const double q = power.q();
    const double p = power.p();
    const double n = static_cast<double>(confirmations);
    const double m = static_cast<double>(attacker_blocks);
    if (q == 0.0) return Probability(attacker_blocks == 0 ? 1.0 : 0.0);
    if (p == 0.0) return Probability(0.0);
    const double log_term = log_binomial(attacker_blocks + confirmations - 1, attacker_blocks)
                            + n * std::log(p) + m * std::log(q);
    return Probability::clamped(std::exp(log_term));
}

Probability negbin_success(std::int64_t confirmations, AttackerPower power)
{
    if (confirmations < 0) throw DomainError("negbin_success requires n >= 0");
    if (confirmations == 0 || power.is_majority()) return Probability(1.0);
    if (power.q() == 0.0) return Probability(0.0);

    // 1 - sum_{m<n} C(m+n-1, m)(p^n q^m - p^m q^n) rearranged into
    //   sum_{m<n} C(m+n-1, m) p^m q^n      (attacker behind, catches up)
    // + sum_{m>=n} C(m+n-1, m) p^n q^m     (attacker already ahead)
    // using the negative binomial normalisation.
    const double p = power.p();
    const double q = power.q();
    const std::int64_t n = confirmations;
    const double nd = static_cast<double>(n);
    const bool log_space = n > kDirectLimit;
    const double log_p = std::log(p);
    const double log_q = std::log(q);

    double behind = 0.0;
    double term = std::pow(q, nd);
    for (std::int64_t m = 0; m < n; ++m) {
        const double md = static_cast<double>(m);
        if (log_space) {
            behind += std::exp(log_binomial(m + n - 1, m) + md * log_p + nd * log_q);
        } else {
            behind += term;
            term *= (md + nd) / (md + 1.0) * p;
        }
    }

    const double first_ahead = std::exp(log_binomial(2 * n - 1, n) + nd * log_p + nd * log_q);
    const double ahead = sum_decreasing_tail(
        first_ahead,
        [&](std::int64_t j) {
            const double md = nd + static_cast<double>(j);
            return (md + nd) / (md + 1.0) * q;
        },
        behind);

    return Probability::clamped(behind + ahead);
}

Probability success_probability(SuccessModel model, std::int64_t blocks, AttackerPower power)
{
    switch (model) {
    case SuccessModel::negative_binomial: return negbin_success(blocks, power);
    case SuccessModel::poisson: return poisson_success(blocks, power);
    }
    throw std::logic_error("unknown success model");
}

std::int64_t min_confirmations(AttackerPower power, Probability risk_ceiling)
{
    if (risk_ceiling.value() <= 0.0) {
        throw DomainError("risk ceiling must be strictly positive");
    }
    if (power.q() >= 0.5) {
        throw UnreachableError("attacker with q >= 0.5 always succeeds; no confirmation count suffices");
    }
    for (std::int64_t n = 0; n <= kMaxConfirmationScan; ++n) {
        if (negbin_success(n, power).value() <= risk_ceiling.value()) return n;
    }
    throw UnreachableError("risk ceiling not reached within " + std::to_string(kMaxConfirmationScan)
                           + " confirmations");
}

} // namespace dsrisk
