// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrisk/mining_race_sim.hpp>

#include <dsrisk/error.hpp>

#include <boost/random/binomial_distribution.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

namespace dsrisk {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::int64_t kNoAbandon = std::numeric_limits<std::int64_t>::max();

// Chunks up to this length are sampled from precomputed tables; longer ones
// go through boost's exact binomial sampler. A chunk never exceeds the
// distance to either boundary, so it cannot skip over one.
constexpr int kMaxChunk = 64;

// Poisson draws with a larger mean are split into pieces of at most this size.
constexpr double kPoissonPiece = 30.0;

std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

// 2^64 * probability, saturating at 2^64 - 1.
std::uint64_t scale_to_u64(long double probability)
{
    if (probability <= 0.0L) return 0;
    const long double scaled = probability * 18446744073709551616.0L;
    if (scaled >= 18446744073709551615.0L) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(scaled);
}

// Inverse-CDF tables for Binomial(k, q), k = 1..kMaxChunk, in 64-bit
// fixed point. Sample a is the number of thresholds <= the random word.
class BinomialTables
{
public:
    explicit BinomialTables(double q)
    {
        const long double ql = q;
        const long double pl = 1.0L - ql;
        for (int k = 1; k <= kMaxChunk; ++k) {
            auto& row = m_cdf[k];
            long double cdf = 0.0L;
            for (int a = 0; a < k; ++a) {
                // C(k, a) q^a p^(k-a)
                long double coeff = 1.0L;
                for (int j = 0; j < a; ++j) coeff = coeff * (k - j) / (j + 1);
                cdf += coeff * std::pow(ql, static_cast<long double>(a)) * std::pow(pl, static_cast<long double>(k - a));
                row[a] = scale_to_u64(cdf);
            }
            m_always_max[k] = (q == 1.0);
        }
    }

    // Number of attacker blocks among `k` draws.
    int sample(int k, std::uint64_t word) const noexcept
    {
        if (m_always_max[k]) return k;
        const auto& row = m_cdf[k];
        int a = 0;
        while (a < k && word >= row[a]) ++a;
        return a;
    }

private:
    std::array<std::array<std::uint64_t, kMaxChunk + 1>, kMaxChunk + 1> m_cdf{};
    std::array<bool, kMaxChunk + 1> m_always_max{};
};

struct Bernoulli
{
    std::uint64_t threshold;
    bool always;

    explicit Bernoulli(double q) : threshold(scale_to_u64(q)), always(q == 1.0) {}

    bool operator()(std::uint64_t word) const noexcept { return always || word < threshold; }
};

std::int64_t draw_poisson(TrialRng& rng, double mean)
{
    if (mean <= 0.0) return 0;
    const int pieces = static_cast<int>(std::ceil(mean / kPoissonPiece));
    const double piece_mean = mean / pieces;
    const double start = std::exp(-piece_mean);
    std::int64_t total = 0;
    for (int i = 0; i < pieces; ++i) {
        const double u = rng.uniform();
        std::int64_t k = 0;
        double pmf = start;
        double cdf = pmf;
        while (u >= cdf && pmf > 0.0) {
            ++k;
            pmf *= piece_mean / static_cast<double>(k);
            cdf += pmf;
        }
        total += k;
    }
    return total;
}

struct RngAdapter
{
    using result_type = std::uint64_t;
    TrialRng& rng;

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return rng.next(); }
};

struct Walk
{
    const BinomialTables& tables;
    double q;
    std::int64_t step_cap;

    // Runs the post-acceptance catch-up from honest lead `deficit`.
    bool attacker_overtakes(TrialRng& rng, std::int64_t deficit, std::int64_t abandon_at, std::int64_t steps) const
    {
        for (;;) {
            if (deficit < 0) return true;
            if (deficit >= abandon_at || steps >= step_cap) return false;
            const std::int64_t chunk =
                std::max<std::int64_t>(1, std::min({deficit, abandon_at - deficit, step_cap - steps}));
            std::int64_t attacker_blocks = 0;
            if (chunk <= kMaxChunk) {
                attacker_blocks = tables.sample(static_cast<int>(chunk), rng.next());
            } else {
                RngAdapter urbg{rng};
                attacker_blocks = boost::random::binomial_distribution<std::int64_t, double>(chunk, q)(urbg);
            }
            deficit += chunk - 2 * attacker_blocks;
            steps += chunk;
        }
    }
};

std::int64_t combined_abandon(std::int64_t start_deficit, const std::optional<std::int64_t>& budget,
                              const std::optional<std::int64_t>& mass_deficit)
{
    std::int64_t at = kNoAbandon;
    if (budget && start_deficit >= 0 && *budget <= kNoAbandon - start_deficit) {
        at = start_deficit + *budget;
    }
    if (mass_deficit) at = std::min(at, *mass_deficit);
    return at;
}

template <typename Trial>
std::uint64_t count_successes(std::uint64_t trials, unsigned threads, const Trial& trial)
{
    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));
    if (workers <= 1) {
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < trials; ++t) hits += trial(t) ? 1 : 0;
        return hits;
    }

    std::vector<std::uint64_t> hits(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t per = trials / workers;
    const std::uint64_t extra = trials % workers;
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t end = begin + per + (w < extra ? 1 : 0);
        pool.emplace_back([&, w, begin, end] {
            std::uint64_t local = 0;
            for (std::uint64_t t = begin; t < end; ++t) local += trial(t) ? 1 : 0;
            hits[w] = local;
        });
        begin = end;
    }
    for (auto& th : pool) th.join();
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    return total;
}

void check_abandon_mass(double mass)
{
    if (!(mass > 0.0 && mass < 1.0)) throw ConfigError("abandon_mass must lie in (0, 1)");
}

} // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) noexcept
{
    std::uint64_t sm = mix64(seed) ^ mix64(trial + kGolden);
    for (auto& word : m_s) {
        sm += kGolden;
        word = mix64(sm);
    }
}

std::uint64_t TrialRng::next() noexcept
{
    const std::uint64_t result = rotl(m_s[1] * 5, 7) * 9;
    const std::uint64_t t = m_s[1] << 17;
    m_s[2] ^= m_s[0];
    m_s[3] ^= m_s[1];
    m_s[1] ^= m_s[2];
    m_s[0] ^= m_s[3];
    m_s[2] ^= t;
    m_s[3] = rotl(m_s[3], 45);
    return result;
}

void SimConfig::validate() const
{
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (n_confirmations < 0) throw ConfigError("n_confirmations must be non-negative");
    if (attacker_premine < 0) throw ConfigError("attacker_premine must be non-negative");
    if (budget && *budget < 0) throw ConfigError("budget must be non-negative");
    if (step_cap < n_confirmations) throw ConfigError("step_cap must be at least n_confirmations");
    if (progress == ProgressModel::poisson_lead && power.p() == 0.0) {
        throw ConfigError("the Poisson lead model needs q < 1");
    }
    check_abandon_mass(abandon_mass);
}

void CatchUpConfig::validate() const
{
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (lead < 0) throw ConfigError("lead must be non-negative");
    if (step_cap < 1) throw ConfigError("step_cap must be positive");
    if (budget && *budget < 0) throw ConfigError("budget must be non-negative");
    check_abandon_mass(abandon_mass);
}

SimResult SimResult::from_counts(std::uint64_t successes, std::uint64_t trials)
{
    SimResult r;
    r.successes = successes;
    r.trials = trials;
    r.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(trials));
    return r;
}

std::optional<std::int64_t> abandon_deficit(AttackerPower power, double abandon_mass)
{
    check_abandon_mass(abandon_mass);
    if (power.is_majority()) return std::nullopt;
    if (power.q() == 0.0) return 0;
    // Smallest D with (q/p)^(D+1) <= abandon_mass.
    const double steps = std::log(abandon_mass) / std::log(power.q() / power.p());
    return std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(steps)) - 1);
}

SimResult simulate_race(const SimConfig& config)
{
    config.validate();
    const BinomialTables tables(config.power.q());
    const Bernoulli attacker_block(config.power.q());
    const Walk walk{tables, config.power.q(), config.step_cap};
    const auto mass_deficit = abandon_deficit(config.power, config.abandon_mass);
    const double mean = config.progress == ProgressModel::poisson_lead
        ? poisson_mean(config.n_confirmations, config.power) : 0.0;

    auto trial = [&](std::uint64_t index) {
        TrialRng rng(config.seed, index);
        std::int64_t steps = 0;
        std::int64_t deficit = 0;
        if (config.progress == ProgressModel::bernoulli_race) {
            std::int64_t honest = 0;
            std::int64_t attacker = config.attacker_premine;
            while (honest < config.n_confirmations) {
                if (steps >= config.step_cap) return false;
                if (attacker_block(rng.next())) ++attacker; else ++honest;
                ++steps;
            }
            deficit = honest - attacker;
        } else {
            deficit = config.n_confirmations - config.attacker_premine - draw_poisson(rng, mean);
        }
        return walk.attacker_overtakes(rng, deficit, combined_abandon(deficit, config.budget, mass_deficit), steps);
    };

    return SimResult::from_counts(count_successes(config.trials, config.threads, trial), config.trials);
}

SimResult simulate_catch_up(const CatchUpConfig& config)
{
    config.validate();
    const BinomialTables tables(config.power.q());
    const Walk walk{tables, config.power.q(), config.step_cap};
    const std::int64_t abandon_at =
        combined_abandon(config.lead, config.budget, abandon_deficit(config.power, config.abandon_mass));

    auto trial = [&](std::uint64_t index) {
        TrialRng rng(config.seed, index);
        return walk.attacker_overtakes(rng, config.lead, abandon_at, 0);
    };
    return SimResult::from_counts(count_successes(config.trials, config.threads, trial), config.trials);
}

} // namespace dsrisk
