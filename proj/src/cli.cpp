// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrisk/cli.hpp>

#include <dsrisk/error.hpp>
#include <dsrisk/hex.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

namespace dsrisk::cli {

namespace {

using nlohmann::json;

std::string read_stream(std::istream& in)
{
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    return read_stream(in);
}

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string status_name(BreakEvenStatus status)
{
    switch (status) {
    case BreakEvenStatus::found: return "found";
    case BreakEvenStatus::always_profitable: return "always_profitable";
    case BreakEvenStatus::never_within_cap: return "never_within_cap";
    }
    return "unknown";
}

void emit(const OutputTable& table, const std::string& format, std::ostream& out)
{
    out << (format == "json" ? table.to_json() : table.to_csv());
}

void emit_error(std::ostream& err, std::string_view code, std::string_view message)
{
    json j;
    j["code"] = code;
    j["message"] = message;
    err << j.dump() << '\n';
}

const std::map<std::string, SuccessModel> kSuccessModels{
    {"negbin", SuccessModel::negative_binomial},
    {"poisson", SuccessModel::poisson},
};

const std::map<std::string, ProgressModel> kProgressModels{
    {"race", ProgressModel::bernoulli_race},
    {"poisson", ProgressModel::poisson_lead},
};

const std::map<std::string, DerivationMode> kDerivationModes{
    {"standard", DerivationMode::standard},
    {"paper", DerivationMode::paper_literal},
};

} // namespace

OutputTable cmd_prob(SuccessModel model, std::span<const double> qs, std::int64_t n_max)
{
    if (n_max < 0) throw DomainError("n-max must be non-negative");
    OutputTable table({{"n", ColumnKind::integer}, {"q", ColumnKind::real}, {"p_success", ColumnKind::real}});
    for (double q : qs) {
        const AttackerPower power(q);
        for (std::int64_t n = 0; n <= n_max; ++n) {
            table.add_row({n, q, success_probability(model, n, power).value()});
        }
    }
    return table;
}

OutputTable cmd_profit(const MiningEnvironment& env, std::span<const double> qs, double payment_btc,
                       double t_max_minutes, double step_minutes, bool include_depreciation, SuccessModel model)
{
    OutputTable table({{"q", ColumnKind::real},
                       {"t_minutes", ColumnKind::real},
                       {"success_probability", ColumnKind::real},
                       {"revenue_btc", ColumnKind::real},
                       {"cost_btc", ColumnKind::real},
                       {"profit_btc", ColumnKind::real}});
    for (double q : qs) {
        AttackScenario scenario{payment_btc, AttackerPower(q), 0.0, include_depreciation, model};
        for (const auto& pt : profit_curve(scenario, env, t_max_minutes, step_minutes)) {
            table.add_row({q, pt.t_minutes, pt.success_probability, pt.revenue_btc, pt.cost_btc, pt.profit_btc});
        }
    }
    return table;
}

OutputTable cmd_breakeven(const MiningEnvironment& env, std::span<const double> qs, double payment_btc,
                          bool include_depreciation, SuccessModel model)
{
    OutputTable table({{"q", ColumnKind::real}, {"status", ColumnKind::text}, {"t_minutes", ColumnKind::text}});
    for (double q : qs) {
        AttackScenario scenario{payment_btc, AttackerPower(q), 0.0, include_depreciation, model};
        const BreakEven be = break_even_time(scenario, env);
        table.add_row({q, status_name(be.status), be.t_minutes ? format_real(*be.t_minutes) : std::string()});
    }
    return table;
}

OutputTable cmd_simulate(const SimulateOptions& options)
{
    SimConfig config;
    config.trials = options.trials;
    config.seed = options.seed;
    config.power = AttackerPower(options.q);
    config.n_confirmations = options.n;
    config.attacker_premine = options.premine;
    config.progress = options.progress;
    config.threads = options.threads;
    const SimResult result = simulate_race(config);

    OutputTable table({{"estimate", ColumnKind::real},
                       {"std_error", ColumnKind::real},
                       {"trials", ColumnKind::integer},
                       {"seed", ColumnKind::text}});
    table.add_row({result.estimate, result.std_error, static_cast<std::int64_t>(result.trials),
                   std::to_string(options.seed)});
    return table;
}

std::vector<Digest32> parse_leaves(std::string_view text)
{
    std::vector<Digest32> leaves;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string hex = trim(line);
        if (hex.empty()) continue;
        try {
            leaves.push_back(Digest32::from_hex(hex));
        } catch (const MalformedInputError& e) {
            throw MalformedInputError("leaf line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return leaves;
}

std::string format_path(const MerklePath& path)
{
    std::string out;
    for (std::size_t i = 0; i < path.siblings.size(); ++i) {
        nlohmann::ordered_json j;
        j["index"] = i;
        j["sibling_hex"] = path.siblings[i].sibling.hex();
        j["side"] = path.siblings[i].side == SiblingSide::left ? "left" : "right";
        out += j.dump();
        out += '\n';
    }
    return out;
}

MerklePath parse_path(std::string_view json_lines)
{
    MerklePath path;
    std::istringstream in{std::string(json_lines)};
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const std::size_t step = path.siblings.size();
        try {
            const json j = json::parse(line);
            if (j.at("index").get<std::size_t>() != step) {
                throw MalformedInputError("path steps out of order at step " + std::to_string(step));
            }
            const std::string side = j.at("side").get<std::string>();
            if (side != "left" && side != "right") throw MalformedInputError("side must be left or right");
            path.siblings.push_back({Digest32::from_hex(j.at("sibling_hex").get<std::string>()),
                                     side == "left" ? SiblingSide::left : SiblingSide::right});
        } catch (const json::exception& e) {
            throw MalformedInputError("path step " + std::to_string(step) + ": " + e.what());
        }
    }
    path.leaf_index = path.index_from_sides();
    return path;
}

OutputTable cmd_wallet_derive(const Seed& seed, const DerivationPath& path, DerivationMode mode)
{
    OutputTable table({{"path", ColumnKind::text},
                       {"depth", ColumnKind::integer},
                       {"child_index", ColumnKind::integer},
                       {"private_hex", ColumnKind::text},
                       {"public_hex", ColumnKind::text},
                       {"chain_code_hex", ColumnKind::text}});
    ExtendedKey key = master_from_seed(seed, mode);
    if (path.public_only) key = key.neuter();
    DerivationPath prefix{path.public_only, {}};
    auto add = [&](const ExtendedKey& k) {
        table.add_row({prefix.to_string(), std::int64_t{k.depth()}, std::int64_t{k.child_index()},
                       k.is_private() ? k.private_key().hex() : std::string(), k.public_key().hex(),
                       to_hex(k.chain_code())});
    };
    add(key);
    for (const auto& element : path.elements) {
        prefix.elements.push_back(element);
        key = derive_path(key, std::span<const PathElement>(&element, 1), mode);
        add(key);
    }
    return table;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Double-spending risk, mining economics, Merkle proofs and HD keys"};
    app.name("dsrisk");
    app.require_subcommand(1);
    app.fallthrough();

    std::string output = "csv";
    std::uint64_t seed = 0;
    std::string env_path;
    app.add_option("--output", output, "Output format")->check(CLI::IsMember({"csv", "json"}));
    auto* seed_opt = app.add_option("--seed", seed, "Simulation seed (required by simulate)");
    app.add_option("--env", env_path, "Mining environment file; defaults to the built-in Aug-2017 figures");

    // prob
    auto* prob = app.add_subcommand("prob", "Attack success probability table");
    std::string prob_model = "negbin";
    std::vector<double> prob_qs;
    std::int64_t n_max = 10;
    prob->add_option("--model", prob_model)->check(CLI::IsMember({"negbin", "poisson"}));
    prob->add_option("--q", prob_qs, "Attacker share (repeatable)")->required();
    prob->add_option("--n-max", n_max);

    // profit / breakeven
    auto* profit = app.add_subcommand("profit", "Attack profit over time");
    auto* breakeven = app.add_subcommand("breakeven", "First time the attack stops paying");
    std::vector<double> econ_qs;
    double payment = 5.0;
    double t_max = 600.0;
    double step = kMinutesPerBlock;
    bool depreciation = false;
    std::string econ_model = "negbin";
    for (auto* sub : {profit, breakeven}) {
        sub->add_option("--q", econ_qs, "Attacker share (repeatable)")->required();
        sub->add_option("--v", payment, "Double-spent amount in BTC");
        sub->add_flag("--depreciation", depreciation, "Include hardware depreciation");
        sub->add_option("--model", econ_model)->check(CLI::IsMember({"negbin", "poisson"}));
    }
    profit->add_option("--t-max", t_max, "Last grid time in minutes");
    profit->add_option("--step", step, "Grid step in minutes");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo race estimate");
    SimulateOptions sim;
    std::optional<std::int64_t> premine;
    std::string sim_model = "race";
    simulate->add_option("--q", sim.q)->required();
    simulate->add_option("--n", sim.n)->required();
    simulate->add_option("--premine", premine, "Attacker head start; default 1 for race, 0 for poisson");
    simulate->add_option("--trials", sim.trials);
    simulate->add_option("--threads", sim.threads);
    simulate->add_option("--model", sim_model)->check(CLI::IsMember({"race", "poisson"}));

    // merkle
    auto* merkle = app.add_subcommand("merkle", "Merkle roots and inclusion proofs");
    merkle->require_subcommand(1);
    auto* m_root = merkle->add_subcommand("root", "Root of newline-separated hex leaves");
    auto* m_prove = merkle->add_subcommand("prove", "Inclusion path as JSON lines");
    auto* m_verify = merkle->add_subcommand("verify", "Check an inclusion path; exit 1 if it fails");
    std::string leaves_path;
    std::size_t prove_index = 0;
    std::string leaf_hex, root_hex, path_file;
    for (auto* sub : {m_root, m_prove}) sub->add_option("--leaves", leaves_path, "Leaf file; stdin if omitted");
    m_prove->add_option("--index", prove_index)->required();
    m_verify->add_option("--leaf", leaf_hex)->required();
    m_verify->add_option("--root", root_hex)->required();
    m_verify->add_option("--path", path_file, "JSON-lines path file; stdin if omitted");

    // wallet
    auto* wallet = app.add_subcommand("wallet", "Hierarchical deterministic keys");
    wallet->require_subcommand(1);
    auto* w_derive = wallet->add_subcommand("derive", "Derive keys along a path");
    auto* w_encrypt = wallet->add_subcommand("encrypt", "Encrypt a private key");
    auto* w_decrypt = wallet->add_subcommand("decrypt", "Decrypt an envelope; exit 1 on a wrong pass phrase");
    std::string seed_hex, mnemonic, path_text = "m", mode = "standard";
    auto* seed_hex_opt = w_derive->add_option("--seed-hex", seed_hex, "Seed bytes in hex");
    auto* mnemonic_opt = w_derive->add_option("--mnemonic", mnemonic, "Seed as English word list");
    seed_hex_opt->excludes(mnemonic_opt);
    w_derive->add_option("--path", path_text);
    w_derive->add_option("--mode", mode)->check(CLI::IsMember({"standard", "paper"}));
    std::string key_hex, pass_phrase, k_hex, envelope_hex;
    int kdf_log2n = KdfParams{}.log2_n;
    w_encrypt->add_option("--key", key_hex, "Private key hex")->required();
    w_encrypt->add_option("--kdf-log2n", kdf_log2n, "scrypt cost exponent")->check(CLI::Range(1, 20));
    w_decrypt->add_option("--envelope", envelope_hex)->required();
    for (auto* sub : {w_encrypt, w_decrypt}) {
        sub->add_option("--passphrase", pass_phrase)->required();
        sub->add_option("--k", k_hex, "Second secret, hex")->required();
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        emit_error(err, "usage_error", e.what());
        return 2;
    }

    auto load_env = [&] { return env_path.empty() ? MiningEnvironment::august_2017() : MiningEnvironment::load(env_path); };

    try {
        if (prob->parsed()) {
            emit(cmd_prob(kSuccessModels.at(prob_model), prob_qs, n_max), output, out);
        } else if (profit->parsed()) {
            emit(cmd_profit(load_env(), econ_qs, payment, t_max, step, depreciation, kSuccessModels.at(econ_model)),
                 output, out);
        } else if (breakeven->parsed()) {
            emit(cmd_breakeven(load_env(), econ_qs, payment, depreciation, kSuccessModels.at(econ_model)), output,
                 out);
        } else if (simulate->parsed()) {
            if (seed_opt->count() == 0) {
                emit_error(err, "usage_error", "simulate requires --seed");
                return 2;
            }
            sim.seed = seed;
            sim.progress = kProgressModels.at(sim_model);
            sim.premine = premine.value_or(sim.progress == ProgressModel::bernoulli_race ? 1 : 0);
            emit(cmd_simulate(sim), output, out);
        } else if (m_root->parsed() || m_prove->parsed()) {
            const auto leaves = parse_leaves(leaves_path.empty() ? read_stream(in) : read_file(leaves_path));
            const MerkleTree tree(leaves);
            if (m_root->parsed()) {
                out << tree.root().hex() << '\n';
            } else {
                out << format_path(prove_inclusion(tree, prove_index));
            }
        } else if (m_verify->parsed()) {
            const MerklePath path = parse_path(path_file.empty() ? read_stream(in) : read_file(path_file));
            if (!verify_inclusion(Digest32::from_hex(leaf_hex), path, Digest32::from_hex(root_hex))) {
                emit_error(err, "verification_failed", "inclusion path does not lead to the given root");
                return 1;
            }
        } else if (w_derive->parsed()) {
            if (seed_hex_opt->count() + mnemonic_opt->count() != 1) {
                emit_error(err, "usage_error", "wallet derive needs --seed-hex or --mnemonic");
                return 2;
            }
            const Seed wallet_seed = seed_hex.empty() ? Seed::from_mnemonic(mnemonic) : Seed::from_hex(seed_hex);
            emit(cmd_wallet_derive(wallet_seed, DerivationPath::parse(path_text), kDerivationModes.at(mode)), output,
                 out);
        } else if (w_encrypt->parsed()) {
            KdfParams params;
            params.log2_n = static_cast<std::uint8_t>(kdf_log2n);
            const Bytes envelope =
                encrypt_private_key(PrivateKey::from_hex(key_hex), pass_phrase, from_hex(k_hex), params);
            out << to_hex(envelope) << '\n';
        } else if (w_decrypt->parsed()) {
            out << decrypt_private_key(from_hex(envelope_hex), pass_phrase, from_hex(k_hex)).hex() << '\n';
        }
    } catch (const AuthenticationError& e) {
        emit_error(err, e.code(), e.what());
        return 1;
    } catch (const Error& e) {
        emit_error(err, e.code(), e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error(err, "internal_error", e.what());
        return 3;
    }
    return 0;
}

} // namespace dsrisk::cli
