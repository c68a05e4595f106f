// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRISK_RACE_MODELS_HPP
#define DSRISK_RACE_MODELS_HPP

#include <cstdint>

// Closed-form probability models for the attacker-versus-honest block race.
//
// The race is a biased random walk: each new block is the attacker's with
// probability q and the honest network's with probability p = 1 - q. All
// functions here are pure and safe to call concurrently.

namespace dsrisk {

/// Attacker share of total hash power. p() is always 1 - q().
class AttackerPower
{
public:
    /// Throws DomainError unless 0 <= q <= 1.
    explicit AttackerPower(double q);

    double q() const noexcept { return m_q; }
    double p() const noexcept { return m_p; }

    /// True when the attacker controls at least half of the hash power.
    bool is_majority() const noexcept { return m_q >= m_p; }

private:
    double m_q;
    double m_p;
};

/// A value in [0, 1].
class Probability
{
public:
    /// Throws DomainError outside [0, 1].
    explicit Probability(double value);

    /// Clamps a value produced by floating summation into [0, 1]. The raw
    /// value must lie within 1e-9 of the interval; anything further out is
    /// a numerical bug and raises std::logic_error.
    static Probability clamped(double raw);

    double value() const noexcept { return m_value; }

    friend bool operator==(Probability, Probability) = default;

private:
    double m_value;
};

/// Position in a gambler's-ruin race. `fortune` counts the attacker's
/// progress toward `target`; `lead` is the honest chain's block lead and
/// `budget` how many blocks the attacker can afford to fall further behind.
struct RaceState
{
    std::int64_t lead = 0;
    std::int64_t budget = 0;
    std::int64_t fortune = 0;
    std::int64_t target = 1;

    /// Fortune/target framing of a finite-budget attacker: fortune = budget,
    /// target = budget + lead + 1.
    static RaceState from_budget(std::int64_t budget, std::int64_t lead);

    /// Throws DomainError unless 0 <= fortune <= target, target >= 1 and budget >= 0.
    void validate() const;
};

/// Probability of reaching `target` before 0 from `fortune`, with +1 steps of
/// probability q. P_0 = 0 and P_N = 1 exactly.
Probability gambler_ruin_probability(std::int64_t fortune, std::int64_t target, AttackerPower power);
Probability gambler_ruin_probability(const RaceState& state, AttackerPower power);

/// Success probability of an attacker `lead` blocks behind who gives up after
/// falling a further `budget` blocks behind.
Probability finite_resource_success(std::int64_t budget, std::int64_t lead, AttackerPower power);

/// Probability that an attacker `lead` blocks behind ever overtakes the
/// honest chain with unlimited resources: (q/p)^(lead+1), or 1 when
/// lead < 0 or q >= p.
Probability catch_up_probability(std::int64_t lead, AttackerPower power);

/// Expected attacker progress (lead+1)*(q/p) used by the Poisson model.
double poisson_mean(std::int64_t lead, AttackerPower power);

/// Double-spend success when the attacker's progress during the honest lead
/// is Poisson distributed. Exactly 1 for q >= p.
Probability poisson_success(std::int64_t lead, AttackerPower power);

/// Probability that the attacker mines exactly `attacker_blocks` blocks while
/// the honest network mines `confirmations` (negative binomial pmf).
Probability negbin_block_pmf(std::int64_t attacker_blocks, std::int64_t confirmations, AttackerPower power);

/// Double-spend success against a merchant waiting `confirmations` blocks,
/// with one block pre-mined by the attacker. 1 at zero confirmations and for q >= p.
Probability negbin_success(std::int64_t confirmations, AttackerPower power);

enum class SuccessModel { negative_binomial, poisson };

/// Dispatches to negbin_success or poisson_success (with lead = blocks).
Probability success_probability(SuccessModel model, std::int64_t blocks, AttackerPower power);

/// Smallest number of confirmations whose negbin_success is at or below
/// `risk_ceiling`. Throws UnreachableError when q >= 0.5 or when no n up to
/// kMaxConfirmationScan qualifies.
std::int64_t min_confirmations(AttackerPower power, Probability risk_ceiling);

inline constexpr std::int64_t kMaxConfirmationScan = 10'000;

} // namespace dsrisk

#endif // DSRISK_RACE_MODELS_HPP
