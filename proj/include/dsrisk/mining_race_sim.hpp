// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRISK_MINING_RACE_SIM_HPP
#define DSRISK_MINING_RACE_SIM_HPP

#include <dsrisk/race_models.hpp>

#include <cstdint>
#include <optional>

// Seedable Monte Carlo simulation of the block race.
//
// Reproducibility: trial t draws from its own xoshiro256** stream whose state
// is filled by SplitMix64 starting at mix64(seed) ^ mix64(t + 0x9e3779b97f4a7c15).
// Trials never share random numbers, so the success count is identical no
// matter how trials are spread over threads.

namespace dsrisk {

/// Per-trial random stream (xoshiro256** keyed by seed and trial index).
class TrialRng
{
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial) noexcept;

    std::uint64_t next() noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t m_s[4];
};

/// How the attacker's progress before acceptance is produced.
enum class ProgressModel {
    /// Blocks are drawn one at a time until the honest side has
    /// `n_confirmations` blocks (negative binomial model).
    bernoulli_race,
    /// The honest chain leads by `n_confirmations`; attacker progress is a
    /// Poisson((lead+1) q/p) draw (Poisson model).
    poisson_lead,
};

struct SimConfig
{
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    AttackerPower power{0.1};
    std::int64_t n_confirmations = 0;
    std::int64_t attacker_premine = 1;
    /// Extra blocks the attacker tolerates falling behind once the merchant
    /// has accepted; absent means unlimited.
    std::optional<std::int64_t> budget;
    std::int64_t step_cap = 100'000;
    ProgressModel progress = ProgressModel::bernoulli_race;
    /// A trial is abandoned once its deficit D satisfies (q/p)^(D+1) <=
    /// abandon_mass, bounding the success mass lost to truncation.
    double abandon_mass = 1e-12;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;

    void validate() const;
};

struct CatchUpConfig
{
    std::int64_t lead = 0;
    AttackerPower power{0.1};
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    std::int64_t step_cap = 100'000;
    std::optional<std::int64_t> budget;
    double abandon_mass = 1e-12;
    unsigned threads = 0;

    void validate() const;
};

struct SimResult
{
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double estimate = 0.0;
    double std_error = 0.0;

    static SimResult from_counts(std::uint64_t successes, std::uint64_t trials);
};

/// Simulates the double-spend race. The merchant accepts once the honest
/// chain has `n_confirmations` blocks; the attacker wins if its chain is
/// strictly longer at any point from acceptance on. Trials that hit
/// `step_cap` or the abandonment deficit count as failures.
SimResult simulate_race(const SimConfig& config);

/// Empirical probability that an attacker `lead` blocks behind ever gets
/// strictly ahead.
SimResult simulate_catch_up(const CatchUpConfig& config);

/// Deficit at which a trial is abandoned under `abandon_mass`, or nullopt
/// when the walk does not drift away from the attacker (q >= p).
std::optional<std::int64_t> abandon_deficit(AttackerPower power, double abandon_mass);

} // namespace dsrisk

#endif // DSRISK_MINING_RACE_SIM_HPP
