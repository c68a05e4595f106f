// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrisk/economics.hpp>

#include <dsrisk/error.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace dsrisk {

namespace {

constexpr double kCentsPerUsd = 100.0;

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError("environment key '" + std::string(key) + "' has a non-numeric value '" + std::string(text) + "'");
    }
    return value;
}

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError(std::string(name) + " must be strictly positive");
}

void require_non_negative(double value, const char* name)
{
    if (!(value >= 0.0) || !std::isfinite(value)) throw ConfigError(std::string(name) + " must be non-negative");
}

double cents_to_btc(double cents, const MiningEnvironment& env)
{
    return cents / (env.coin_price_usd * kCentsPerUsd);
}

} // namespace

void MiningEnvironment::validate() const
{
    require_positive(total_hashrate_ths, "total_hashrate_ths");
    require_positive(machine_hashrate_ths, "machine_hashrate_ths");
    require_non_negative(machine_wattage_kw, "machine_wattage_kw");
    require_non_negative(electricity_cents_kwh, "electricity_cents_kwh");
    require_non_negative(block_reward_btc, "block_reward_btc");
    require_positive(coin_price_usd, "coin_price_usd");
    require_positive(machine_lifespan_hours, "machine_lifespan_hours");
    if (machine_price_usd) require_non_negative(*machine_price_usd, "machine_price_usd");
    if (machine_hashrate_ths > total_hashrate_ths) {
        throw ConfigError("machine_hashrate_ths exceeds total_hashrate_ths");
    }
}

MiningEnvironment MiningEnvironment::august_2017()
{
    MiningEnvironment env;
    env.total_hashrate_ths = 6'336'174.0;
    env.machine_hashrate_ths = 14.0;
    env.machine_wattage_kw = 1.375;
    env.electricity_cents_kwh = 10.98;
    env.block_reward_btc = 12.5;
    env.coin_price_usd = 4500.0;
    return env;
}

MiningEnvironment MiningEnvironment::parse(std::string_view text)
{
    std::map<std::string, double, std::less<>> values;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("environment line " + std::to_string(line_no) + " is not key=value");
        }
        const auto key = trim(line.substr(0, eq));
        values[std::string(key)] = parse_number(key, trim(line.substr(eq + 1)));
    }

    static constexpr const char* kRequired[] = {
        "total_hashrate_ths", "machine_hashrate_ths", "machine_wattage_kw",
        "electricity_cents_kwh", "block_reward_btc", "coin_price_usd",
    };
    static constexpr const char* kOptional[] = {"machine_lifespan_hours", "machine_price_usd"};

    std::string missing;
    for (const char* key : kRequired) {
        if (!values.contains(key)) missing += (missing.empty() ? "" : ", ") + std::string(key);
    }
    if (!missing.empty()) throw ConfigError("missing environment keys: " + missing);
    for (const auto& [key, value] : values) {
        bool known = false;
        for (const char* k : kRequired) known = known || key == k;
        for (const char* k : kOptional) known = known || key == k;
        if (!known) throw ConfigError("unknown environment key: " + key);
    }

    MiningEnvironment env;
    env.total_hashrate_ths = values.at("total_hashrate_ths");
    env.machine_hashrate_ths = values.at("machine_hashrate_ths");
    env.machine_wattage_kw = values.at("machine_wattage_kw");
    env.electricity_cents_kwh = values.at("electricity_cents_kwh");
    env.block_reward_btc = values.at("block_reward_btc");
    env.coin_price_usd = values.at("coin_price_usd");
    if (auto it = values.find("machine_lifespan_hours"); it != values.end()) env.machine_lifespan_hours = it->second;
    if (auto it = values.find("machine_price_usd"); it != values.end()) env.machine_price_usd = it->second;
    env.validate();
    return env;
}

MiningEnvironment MiningEnvironment::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open environment file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void AttackScenario::validate() const
{
    if (!(payment_btc >= 0.0) || !std::isfinite(payment_btc)) throw DomainError("payment must be non-negative");
    if (!(elapsed_minutes >= 0.0) || !std::isfinite(elapsed_minutes)) throw DomainError("elapsed time must be non-negative");
    if (std::fmod(elapsed_minutes, kMinutesPerBlock) != 0.0) {
        throw DomainError("elapsed time must be a whole number of 10-minute blocks");
    }
}

std::int64_t AttackScenario::blocks() const
{
    validate();
    return static_cast<std::int64_t>(elapsed_minutes / kMinutesPerBlock);
}

double miner_count(const MiningEnvironment& env)
{
    return env.total_hashrate_ths / env.machine_hashrate_ths;
}

double machine_running_cost(const MiningEnvironment& env)
{
    return env.electricity_cents_kwh * env.machine_wattage_kw;
}

double network_running_cost(const MiningEnvironment& env)
{
    return miner_count(env) * machine_running_cost(env);
}

double network_cost_per_block_cents(const MiningEnvironment& env)
{
    return network_running_cost(env) / kBlocksPerHour;
}

double pool_electric_cost_per_block_cents(const MiningEnvironment& env, AttackerPower power)
{
    return env.total_hashrate_ths * env.electricity_cents_kwh * env.machine_wattage_kw * power.q()
           / (kBlocksPerHour * env.machine_hashrate_ths);
}

double pool_electric_cost_per_block(const MiningEnvironment& env, AttackerPower power)
{
    return cents_to_btc(pool_electric_cost_per_block_cents(env, power), env);
}

double depreciation_cost(const AttackScenario& scenario, const MiningEnvironment& env)
{
    if (!env.machine_price_usd) {
        throw ConfigError("depreciation requested but machine_price_usd is not configured");
    }
    const double machines_owned = miner_count(env) * scenario.power.q();
    const double usd_per_hour = machines_owned * *env.machine_price_usd / env.machine_lifespan_hours;
    return usd_per_hour * (scenario.elapsed_minutes / 60.0) / env.coin_price_usd;
}

double attack_revenue(const AttackScenario& scenario, const MiningEnvironment& env)
{
    const std::int64_t blocks = scenario.blocks();
    const double ps = success_probability(scenario.model, blocks, scenario.power).value();
    return scenario.payment_btc
           + ps * (scenario.payment_btc + env.block_reward_btc * static_cast<double>(blocks));
}

double attack_cost(const AttackScenario& scenario, const MiningEnvironment& env)
{
    const std::int64_t blocks = scenario.blocks();
    double cost = scenario.payment_btc + static_cast<double>(blocks) * pool_electric_cost_per_block(env, scenario.power);
    if (scenario.include_depreciation) cost += depreciation_cost(scenario, env);
    return cost;
}

ProfitPoint attack_profit(const AttackScenario& scenario, const MiningEnvironment& env)
{
    ProfitPoint point;
    point.t_minutes = scenario.elapsed_minutes;
    point.success_probability = success_probability(scenario.model, scenario.blocks(), scenario.power).value();
    point.revenue_btc = attack_revenue(scenario, env);
    point.cost_btc = attack_cost(scenario, env);
    point.profit_btc = point.revenue_btc - point.cost_btc;
    return point;
}

BreakEven break_even_time(const AttackScenario& scenario, const MiningEnvironment& env, double cap_minutes)
{
    AttackScenario at = scenario;
    at.elapsed_minutes = 0.0;
    at.validate();

    // With q >= 0.5 success is certain and profit is v + (R - e_q) T/10.
    if (scenario.power.is_majority() && !scenario.include_depreciation
        && env.block_reward_btc > pool_electric_cost_per_block(env, scenario.power)) {
        return {BreakEvenStatus::always_profitable, std::nullopt};
    }

    for (double t = 0.0; t <= cap_minutes; t += kMinutesPerBlock) {
        at.elapsed_minutes = t;
        if (attack_profit(at, env).profit_btc <= 0.0) return {BreakEvenStatus::found, t};
    }
    return {BreakEvenStatus::never_within_cap, std::nullopt};
}

std::vector<ProfitPoint> profit_curve(const AttackScenario& scenario, const MiningEnvironment& env,
                                      double t_max_minutes, double step_minutes)
{
    if (!(step_minutes > 0.0) || std::fmod(step_minutes, kMinutesPerBlock) != 0.0) {
        throw DomainError("profit curve step must be a positive multiple of 10 minutes");
    }
    if (!(t_max_minutes >= 0.0)) throw DomainError("t_max must be non-negative");

    std::vector<ProfitPoint> curve;
    AttackScenario at = scenario;
    for (std::int64_t i = 0;; ++i) {
        const double t = static_cast<double>(i) * step_minutes;
        if (t > t_max_minutes) break;
        at.elapsed_minutes = t;
        curve.push_back(attack_profit(at, env));
    }
    return curve;
}

double pool_reward_proportional(double miner_shares, double total_shares, double fee, double block_reward)
{
    if (!(total_shares > 0.0)) throw DomainError("total shares must be positive");
    if (!(miner_shares >= 0.0 && miner_shares <= total_shares)) throw DomainError("miner shares must lie in [0, N]");
    if (!(fee >= 0.0 && fee <= 1.0)) throw DomainError("fee must lie in [0, 1]");
    if (!(block_reward >= 0.0)) throw DomainError("block reward must be non-negative");
    return miner_shares / total_shares * (1.0 - fee) * block_reward;
}

double pps_share_value(Probability share_probability, double fee, double block_reward)
{
    if (!(fee >= 0.0 && fee <= 1.0)) throw DomainError("fee must lie in [0, 1]");
    if (!(block_reward >= 0.0)) throw DomainError("block reward must be non-negative");
    return (1.0 - fee) * share_probability.value() * block_reward;
}

} // namespace dsrisk
