// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRISK_CLI_HPP
#define DSRISK_CLI_HPP

#include <dsrisk/economics.hpp>
#include <dsrisk/hdwallet.hpp>
#include <dsrisk/merkle.hpp>
#include <dsrisk/mining_race_sim.hpp>
#include <dsrisk/output_table.hpp>
#include <dsrisk/race_models.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dsrisk::cli {

/// Rows (n, q, p_success) for every q, n = 0..n_max.
OutputTable cmd_prob(SuccessModel model, std::span<const double> qs, std::int64_t n_max);

/// Rows (q, t_minutes, success_probability, revenue_btc, cost_btc, profit_btc).
OutputTable cmd_profit(const MiningEnvironment& env, std::span<const double> qs, double payment_btc,
                       double t_max_minutes, double step_minutes = kMinutesPerBlock,
                       bool include_depreciation = false, SuccessModel model = SuccessModel::negative_binomial);

/// Rows (q, status, t_minutes); t_minutes is empty unless status is "found".
OutputTable cmd_breakeven(const MiningEnvironment& env, std::span<const double> qs, double payment_btc,
                          bool include_depreciation = false,
                          SuccessModel model = SuccessModel::negative_binomial);

struct SimulateOptions
{
    double q = 0.1;
    std::int64_t n = 1;
    std::int64_t premine = 1;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    ProgressModel progress = ProgressModel::bernoulli_race;
    unsigned threads = 0;
};

/// One row (estimate, std_error, trials, seed).
OutputTable cmd_simulate(const SimulateOptions& options);

/// Newline-separated 64-character hex digests; blank lines are skipped.
std::vector<Digest32> parse_leaves(std::string_view text);

/// One JSON object per line: {"index": step, "sibling_hex": ..., "side": "left"|"right"}.
std::string format_path(const MerklePath& path);
MerklePath parse_path(std::string_view json_lines);

/// Rows (path, depth, child_index, private_hex, public_hex, chain_code_hex),
/// one for each node from the master down to the end of `path`.
OutputTable cmd_wallet_derive(const Seed& seed, const DerivationPath& path, DerivationMode mode);

/// Parses and runs one command line. Data goes to `out`, failures to `err`
/// as a single JSON line {code, message}. Returns the process exit status:
/// 0 success, 1 a failed check (merkle verify, wallet decrypt), 2 usage or
/// validation error, 3 anything unexpected.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace dsrisk::cli

#endif // DSRISK_CLI_HPP
