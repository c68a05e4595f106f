// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "gen.hpp"
#include "oracle/race_oracle.hpp"

#include <dsrisk/economics.hpp>
#include <dsrisk/error.hpp>

#include <doctest.h>

#include <cmath>
#include <string>

using namespace dsrisk;

namespace {

AttackScenario scenario(double q, double v, double t)
{
    AttackScenario s;
    s.power = AttackerPower(q);
    s.payment_btc = v;
    s.elapsed_minutes = t;
    return s;
}

// Pool electricity per block in BTC, written out step by step in 50-digit
// arithmetic: miners, cents per machine-hour, network cents per hour, per
// block, attacker share, then dollars and coins.
double pool_cost_btc_oracle(const MiningEnvironment& env, double q)
{
    using ref::Real;
    const Real miners = Real(env.total_hashrate_ths) / Real(env.machine_hashrate_ths);
    const Real cents_per_machine_hour = Real(env.electricity_cents_kwh) * Real(env.machine_wattage_kw);
    const Real network_cents_per_block = miners * cents_per_machine_hour / 6;
    const Real pool_cents = network_cents_per_block * Real(q);
    return (pool_cents / 100 / Real(env.coin_price_usd)).convert_to<double>();
}

const char* kEnvText = R"(# August 2017, Antminer S9
total_hashrate_ths = 6336174
machine_hashrate_ths = 14
machine_wattage_kw = 1.375
electricity_cents_kwh = 10.98
block_reward_btc = 12.5
coin_price_usd = 4500
)";

} // namespace

TEST_SUITE("economics")
{
TEST_CASE("environment parsing")
{
    const MiningEnvironment env = MiningEnvironment::parse(kEnvText);
    const MiningEnvironment aug = MiningEnvironment::august_2017();
    CHECK(env.total_hashrate_ths == aug.total_hashrate_ths);
    CHECK(env.machine_hashrate_ths == aug.machine_hashrate_ths);
    CHECK(env.machine_wattage_kw == aug.machine_wattage_kw);
    CHECK(env.electricity_cents_kwh == aug.electricity_cents_kwh);
    CHECK(env.block_reward_btc == aug.block_reward_btc);
    CHECK(env.coin_price_usd == aug.coin_price_usd);
    CHECK(env.machine_lifespan_hours == kDefaultLifespanHours);
    CHECK_FALSE(env.machine_price_usd.has_value());

    const auto with_price = MiningEnvironment::parse(std::string(kEnvText) + "machine_price_usd = 1200\n");
    CHECK(*with_price.machine_price_usd == 1200.0);
}

TEST_CASE("environment errors name the offending keys")
{
    try {
        MiningEnvironment::parse("total_hashrate_ths = 10\ncoin_price_usd = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(e.code() == "config_error");
        for (const char* key : {"machine_hashrate_ths", "machine_wattage_kw", "electricity_cents_kwh", "block_reward_btc"}) {
            CHECK(msg.find(key) != std::string::npos);
        }
        CHECK(msg.find("coin_price_usd") == std::string::npos);
    }
    CHECK_THROWS_AS(MiningEnvironment::parse(std::string(kEnvText) + "hashrate = 3\n"), ConfigError);
    CHECK_THROWS_AS(MiningEnvironment::parse(std::string(kEnvText) + "just words\n"), ConfigError);
    CHECK_THROWS_AS(MiningEnvironment::parse(std::string(kEnvText) + "coin_price_usd = cheap\n"), ConfigError);
    CHECK_THROWS_AS(MiningEnvironment::load("/nonexistent/env"), ConfigError);

    MiningEnvironment env = MiningEnvironment::august_2017();
    env.machine_hashrate_ths = 0.0;
    CHECK_THROWS_AS(env.validate(), ConfigError);
    env = MiningEnvironment::august_2017();
    env.machine_hashrate_ths = env.total_hashrate_ths * 2;
    CHECK_THROWS_AS(env.validate(), ConfigError);
    env = MiningEnvironment::august_2017();
    env.electricity_cents_kwh = -1.0;
    CHECK_THROWS_AS(env.validate(), ConfigError);
}

TEST_CASE("scenario validation")
{
    CHECK(scenario(0.1, 5, 30).blocks() == 3);
    CHECK_THROWS_AS(scenario(0.1, 5, 25).validate(), DomainError);
    CHECK_THROWS_AS(scenario(0.1, -1, 10).validate(), DomainError);
    CHECK_THROWS_AS(scenario(0.1, 5, -10).validate(), DomainError);
}

TEST_CASE("miner count and running costs")
{
    MiningEnvironment env = MiningEnvironment::august_2017();
    CHECK(miner_count(env) == doctest::Approx(452583.857).epsilon(1e-9));
    CHECK(machine_running_cost(env) == doctest::Approx(15.0975).epsilon(1e-12));

    env.total_hashrate_ths = 28;
    CHECK(miner_count(env) == 2.0);
    env.total_hashrate_ths = env.machine_hashrate_ths;
    CHECK(miner_count(env) == 1.0);

    env.machine_wattage_kw = 0.0;
    CHECK(machine_running_cost(env) == 0.0);
    env.machine_wattage_kw = 2.0;
    env.electricity_cents_kwh = 10.0;
    CHECK(machine_running_cost(env) == 20.0);
}

TEST_CASE("pool electricity per block")
{
    const MiningEnvironment env = MiningEnvironment::august_2017();
    CHECK(pool_electric_cost_per_block_cents(env, AttackerPower(0.25)) == doctest::Approx(284703.5).epsilon(1e-6));
    CHECK(pool_electric_cost_per_block(env, AttackerPower(0.25)) == doctest::Approx(0.6327).epsilon(1e-4));
    for (double q : {0.0, 0.1, 0.25, 0.5, 1.0}) {
        CHECK(pool_electric_cost_per_block(env, AttackerPower(q)) ==
              doctest::Approx(pool_cost_btc_oracle(env, q)).epsilon(1e-13));
    }
    CHECK(pool_electric_cost_per_block(env, AttackerPower(0.0)) == 0.0);
    CHECK(pool_electric_cost_per_block_cents(env, AttackerPower(1.0)) ==
          doctest::Approx(network_cost_per_block_cents(env)).epsilon(1e-14));

    testgen::Gen gen(3);
    for (int i = 0; i < 500; ++i) {
        const double q1 = gen.real_in(0.0, 0.5);
        const double q2 = gen.real_in(0.0, 0.5);
        const double sum = pool_electric_cost_per_block(env, AttackerPower(q1 + q2));
        const double parts = pool_electric_cost_per_block(env, AttackerPower(q1)) +
                             pool_electric_cost_per_block(env, AttackerPower(q2));
        CHECK(std::abs(sum - parts) <= 1e-12 * std::max(1.0, sum));
    }
}

TEST_CASE("revenue and cost examples")
{
    const MiningEnvironment env = MiningEnvironment::august_2017();
    for (double q : {0.1, 0.3, 0.5}) CHECK(attack_revenue(scenario(q, 5, 0), env) == 10.0);
    CHECK(attack_revenue(scenario(0.2, 0, 0), env) == 0.0);
    CHECK(attack_revenue(scenario(0.5, 5, 60), env) == doctest::Approx(85.0).epsilon(1e-14));

    CHECK(attack_cost(scenario(0.3, 5, 0), env) == 5.0);
    CHECK(attack_cost(scenario(0.3, 0, 0), env) == 0.0);
    CHECK(attack_cost(scenario(0.25, 5, 60), env) == doctest::Approx(8.796).epsilon(1e-4));
    CHECK(attack_cost(scenario(0.25, 5, 60), env) ==
          doctest::Approx(5.0 + 6.0 * pool_cost_btc_oracle(env, 0.25)).epsilon(1e-13));
}

TEST_CASE("profit is revenue minus cost and starts at the payment")
{
    const MiningEnvironment env = MiningEnvironment::august_2017();
    testgen::Gen gen(9);
    for (int i = 0; i < 300; ++i) {
        const double q = gen.real_in(0.0, 1.0);
        const double v = gen.real_in(0.0, 100.0);
        const double t = 10.0 * static_cast<double>(gen.int_in(0, 100));
        const ProfitPoint p = attack_profit(scenario(q, v, t), env);
        CHECK(p.profit_btc == p.revenue_btc - p.cost_btc);
        CHECK(attack_profit(scenario(q, v, 0), env).profit_btc == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("majority attackers profit along a straight line")
{
    const MiningEnvironment env = MiningEnvironment::august_2017();
    const double slope = env.block_reward_btc - pool_electric_cost_per_block(env, AttackerPower(0.5));
    REQUIRE(slope > 0.0);
    const auto curve = profit_curve(scenario(0.5, 5, 0), env, 600);
    for (std::size_t i = 1; i < curve.size(); ++i) {
        CHECK(curve[i].profit_btc - curve[i - 1].profit_btc == doctest::Approx(slope).epsilon(1e-12));
        if (i >= 2) {
            CHECK(std::abs(curve[i].profit_btc - 2 * curve[i - 1].profit_btc + curve[i - 2].profit_btc) <= 1e-9);
        }
    }
}

TEST_CASE("minority attackers eventually lose")
{
    const MiningEnvironment env = MiningEnvironment::august_2017();
    for (double q : {0.05, 0.1, 0.2, 0.3, 0.4, 0.45}) {
        CHECK(attack_profit(scenario(q, 5, 10'000), env).profit_btc < attack_profit(scenario(q, 5, 0), env).profit_btc);
        CHECK(attack_profit(scenario(q, 5, 10'000), env).profit_btc < 0.0);
    }
}

TEST_CASE("cost never falls when electricity gets dearer")
{
    MiningEnvironment env = MiningEnvironment::august_2017();
    for (double q : {0.1, 0.3, 0.5}) {
        double prev = -1.0;
        for (double price = 0.0; price <= 40.0; price += 2.5) {
            env.electricity_cents_kwh = price;
            const double c = attack_cost(scenario(q, 5, 60), env);
            CHECK(c >= prev);
            prev = c;
        }
    }
}

TEST_CASE("break-even time")
{
    const MiningEnvironment env = MiningEnvironment::august_2017();

    const BreakEven tenth = break_even_time(scenario(0.1, 5, 0), env);
    REQUIRE(tenth.status == BreakEvenStatus::found);
    CHECK(*tenth.t_minutes == 30.0);
    CHECK(attack_profit(scenario(0.1, 5, 20), env).profit_btc > 0.0);
    CHECK(attack_profit(scenario(0.1, 5, 30), env).profit_btc <= 0.0);

    CHECK(break_even_time(scenario(0.5, 5, 0), env).status == BreakEvenStatus::always_profitable);
    CHECK(break_even_time(scenario(0.7, 5, 0), env).status == BreakEvenStatus::always_profitable);

    // Nothing to recoup: profit is already zero before any block is mined.
    const BreakEven free = break_even_time(scenario(0.1, 0, 0), env);
    REQUIRE(free.status == BreakEvenStatus::found);
    CHECK(*free.t_minutes <= 10.0);

    // A majority attacker whose electricity outweighs the reward loses money.
    MiningEnvironment dear = env;
    dear.electricity_cents_kwh = 1000.0;
    const BreakEven costly = break_even_time(scenario(0.5, 5, 0), dear);
    CHECK(costly.status == BreakEvenStatus::found);

    MiningEnvironment free_power = env;
    free_power.electricity_cents_kwh = 0.0;
    CHECK(break_even_time(scenario(0.1, 5, 0), free_power, 200).status == BreakEvenStatus::never_within_cap);
}

TEST_CASE("profit curve shape")
{
    const MiningEnvironment env = MiningEnvironment::august_2017();
    for (double q : {0.1, 0.3, 0.5}) CHECK(profit_curve(scenario(q, 5, 0), env, 600).front().profit_btc == 5.0);

    const auto curve = profit_curve(scenario(0.3, 5, 0), env, 600);
    REQUIRE(curve.size() == 61);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (curve[i].profit_btc > curve[peak].profit_btc) peak = i;
    }
    CHECK(peak > 0);
    CHECK(peak + 1 < curve.size());
    for (std::size_t i = 1; i <= peak; ++i) CHECK(curve[i].profit_btc > curve[i - 1].profit_btc);
    for (std::size_t i = peak + 1; i < curve.size(); ++i) CHECK(curve[i].profit_btc < curve[i - 1].profit_btc);

    MiningEnvironment free_power = env;
    free_power.electricity_cents_kwh = 0.0;
    free_power.machine_wattage_kw = 0.0;
    // Free electricity leaves the cost flat at v. Profit then follows
    // P_s (v + R n), which only keeps rising when success is certain.
    for (double q : {0.1, 0.3, 0.5, 0.8}) {
        const auto c = profit_curve(scenario(q, 5, 0), free_power, 600);
        for (const auto& pt : c) CHECK(pt.cost_btc == 5.0);
        if (q >= 0.5) {
            for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i].profit_btc >= c[i - 1].profit_btc);
        }
    }
    CHECK(profit_curve(scenario(0.1, 5, 0), free_power, 20)[1].profit_btc < 5.0);

    CHECK(profit_curve(scenario(0.3, 5, 0), env, 60, 20).size() == 4);
    CHECK_THROWS_AS(profit_curve(scenario(0.3, 5, 0), env, 60, 15), DomainError);
    CHECK_THROWS_AS(profit_curve(scenario(0.3, 5, 0), env, -10), DomainError);
}

TEST_CASE("depreciation")
{
    MiningEnvironment env = MiningEnvironment::august_2017();
    AttackScenario s = scenario(0.1, 5, 60);
    s.include_depreciation = true;
    CHECK_THROWS_AS(attack_cost(s, env), ConfigError);

    env.machine_price_usd = 1000.0;
    const double machines = miner_count(env) * 0.1;
    const double expected = machines * 1000.0 / kDefaultLifespanHours * 1.0 / env.coin_price_usd;
    CHECK(depreciation_cost(s, env) == doctest::Approx(expected).epsilon(1e-12));
    AttackScenario plain = s;
    plain.include_depreciation = false;
    CHECK(attack_cost(s, env) == doctest::Approx(attack_cost(plain, env) + expected).epsilon(1e-12));
    CHECK(break_even_time(scenario(0.5, 5, 0), env).status == BreakEvenStatus::always_profitable);
}

TEST_CASE("poisson model behind the selector")
{
    const MiningEnvironment env = MiningEnvironment::august_2017();
    AttackScenario s = scenario(0.2, 5, 30);
    s.model = SuccessModel::poisson;
    CHECK(attack_profit(s, env).success_probability == poisson_success(3, AttackerPower(0.2)).value());
}

TEST_CASE("pool reward schemes")
{
    CHECK(pool_reward_proportional(1000, 1000, 0.0, 12.5) == 12.5);
    CHECK(pool_reward_proportional(0, 1000, 0.02, 12.5) == 0.0);
    CHECK(pool_reward_proportional(50, 1000, 0.02, 12.5) == doctest::Approx(0.6125).epsilon(1e-14));
    CHECK_THROWS_AS(pool_reward_proportional(5, 0, 0.0, 12.5), DomainError);
    CHECK_THROWS_AS(pool_reward_proportional(5, 4, 0.0, 12.5), DomainError);
    CHECK_THROWS_AS(pool_reward_proportional(1, 4, 1.5, 12.5), DomainError);

    CHECK(pps_share_value(Probability(0.3), 1.0, 12.5) == 0.0);
    CHECK(pps_share_value(Probability(1.0), 0.0, 12.5) == 12.5);
    CHECK(pps_share_value(Probability(1e-9), 0.02, 12.5) == doctest::Approx(1.225e-8).epsilon(1e-12));
    CHECK_THROWS_AS(pps_share_value(Probability(0.5), -0.1, 12.5), DomainError);
}
}
