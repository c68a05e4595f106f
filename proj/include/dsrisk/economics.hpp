// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRISK_ECONOMICS_HPP
#define DSRISK_ECONOMICS_HPP

#include <dsrisk/race_models.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

// Revenue, cost and profit of a double-spend attack, the electricity cost
// chain behind them, and the simple pool payout formulas.
//
// Units: hash rates in TH/s, wattage in kW, electricity in cents per kWh,
// block reward and payments in BTC, coin price in USD per BTC, time in
// minutes. One block is mined every ten minutes.

namespace dsrisk {

inline constexpr double kMinutesPerBlock = 10.0;
inline constexpr double kBlocksPerHour = 6.0;
inline constexpr double kDefaultLifespanHours = 17'520.0; // two years

struct MiningEnvironment
{
    double total_hashrate_ths = 0.0;
    double machine_hashrate_ths = 0.0;
    double machine_wattage_kw = 0.0;
    double electricity_cents_kwh = 0.0;
    double block_reward_btc = 0.0;
    double coin_price_usd = 0.0;
    double machine_lifespan_hours = kDefaultLifespanHours;
    /// Only needed when depreciation is requested.
    std::optional<double> machine_price_usd;

    /// Throws ConfigError unless hash rates, coin price and lifespan are
    /// strictly positive, h <= H, and wattage, electricity price and block
    /// reward are non-negative.
    void validate() const;

    /// Hash rate, price and electricity figures for August 2017 with an
    /// Antminer S9 (14 TH/s, 1.375 kW).
    static MiningEnvironment august_2017();

    /// Parses a flat `key=value` file; `#` starts a comment. Missing
    /// required keys are reported together, by name, in one ConfigError.
    static MiningEnvironment parse(std::string_view text);
    static MiningEnvironment load(const std::filesystem::path& path);
};

struct AttackScenario
{
    double payment_btc = 0.0;
    AttackerPower power{0.0};
    /// Attack duration; must be a multiple of ten minutes.
    double elapsed_minutes = 0.0;
    bool include_depreciation = false;
    SuccessModel model = SuccessModel::negative_binomial;

    /// Throws DomainError on negative values or a duration that is not a
    /// whole number of blocks.
    void validate() const;

    /// Number of blocks T/10.
    std::int64_t blocks() const;
};

struct ProfitPoint
{
    double t_minutes = 0.0;
    double success_probability = 0.0;
    double revenue_btc = 0.0;
    double cost_btc = 0.0;
    double profit_btc = 0.0;
};

/// N = H/h.
double miner_count(const MiningEnvironment& env);

/// c = e_a * w, cents per hour.
double machine_running_cost(const MiningEnvironment& env);

/// E = N * c, cents per hour for the whole network.
double network_running_cost(const MiningEnvironment& env);

/// C = E/6, cents per block for the whole network.
double network_cost_per_block_cents(const MiningEnvironment& env);

/// e_q = H e_a w q / (6 h), cents per block.
double pool_electric_cost_per_block_cents(const MiningEnvironment& env, AttackerPower power);

/// e_q converted to BTC per block at the environment's coin price.
double pool_electric_cost_per_block(const MiningEnvironment& env, AttackerPower power);

/// Straight-line depreciation of the attacker's share of machines over the
/// attack, in BTC. Throws ConfigError without a machine price.
double depreciation_cost(const AttackScenario& scenario, const MiningEnvironment& env);

/// v + P_s (v + R T/10).
double attack_revenue(const AttackScenario& scenario, const MiningEnvironment& env);

/// v + (T/10) e_q, plus depreciation when requested.
double attack_cost(const AttackScenario& scenario, const MiningEnvironment& env);

ProfitPoint attack_profit(const AttackScenario& scenario, const MiningEnvironment& env);

enum class BreakEvenStatus { found, always_profitable, never_within_cap };

struct BreakEven
{
    BreakEvenStatus status = BreakEvenStatus::never_within_cap;
    /// First grid time with profit <= 0; set only when status == found.
    std::optional<double> t_minutes;
};

inline constexpr double kBreakEvenCapMinutes = 10'000.0;

/// Scans T = 0, 10, 20, ... for the first non-positive profit. The
/// scenario's elapsed_minutes is ignored.
BreakEven break_even_time(const AttackScenario& scenario, const MiningEnvironment& env,
                          double cap_minutes = kBreakEvenCapMinutes);

/// ProfitPoint for every T in {0, step, ..., t_max}; step must be a
/// positive multiple of ten.
std::vector<ProfitPoint> profit_curve(const AttackScenario& scenario, const MiningEnvironment& env,
                                      double t_max_minutes, double step_minutes = kMinutesPerBlock);

/// (n/N)(1 - f) B for a proportional pool.
double pool_reward_proportional(double miner_shares, double total_shares, double fee, double block_reward);

/// (1 - f) p B per share for a pay-per-share pool.
double pps_share_value(Probability share_probability, double fee, double block_reward);

} // namespace dsrisk

#endif // DSRISK_ECONOMICS_HPP
