// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrisk/mnemonic.hpp>

#include <dsrisk/crypto.hpp>
#include <dsrisk/error.hpp>

#include <algorithm>
#include <vector>

namespace dsrisk {

namespace {

bool bit_at(std::span<const std::uint8_t> bytes, std::size_t i)
{
    return (bytes[i / 8] >> (7 - i % 8)) & 1;
}

} // namespace

std::string entropy_to_mnemonic(std::span<const std::uint8_t> entropy)
{
    if (entropy.size() < 16 || entropy.size() > 32 || entropy.size() % 4 != 0) {
        throw DomainError("mnemonic entropy must be 16-32 bytes in steps of 4");
    }
    const auto checksum = crypto::sha256(entropy);
    const std::size_t entropy_bits = entropy.size() * 8;
    const std::size_t total_bits = entropy_bits + entropy_bits / 32;

    std::string out;
    for (std::size_t word = 0; word < total_bits / 11; ++word) {
        unsigned index = 0;
        for (std::size_t b = 0; b < 11; ++b) {
            const std::size_t pos = word * 11 + b;
            const bool bit = pos < entropy_bits ? bit_at(entropy, pos) : bit_at(checksum, pos - entropy_bits);
            index = (index << 1) | (bit ? 1u : 0u);
        }
        if (!out.empty()) out.push_back(' ');
        out += detail::kBip39English[index];
    }
    return out;
}

Bytes mnemonic_to_entropy(std::string_view mnemonic)
{
    std::vector<unsigned> indices;
    std::size_t pos = 0;
    while (pos < mnemonic.size()) {
        const auto start = mnemonic.find_first_not_of(" \t\n\r", pos);
        if (start == std::string_view::npos) break;
        const auto end = std::min(mnemonic.find_first_of(" \t\n\r", start), mnemonic.size());
        const auto word = mnemonic.substr(start, end - start);
        const auto& list = detail::kBip39English;
        const auto it = std::lower_bound(list.begin(), list.end(), word);
        if (it == list.end() || *it != word) {
            throw MalformedInputError("unknown mnemonic word '" + std::string(word) + "'");
        }
        indices.push_back(static_cast<unsigned>(it - list.begin()));
        pos = end;
    }
    if (indices.size() < 12 || indices.size() > 24 || indices.size() % 3 != 0) {
        throw MalformedInputError("mnemonic must have 12, 15, 18, 21 or 24 words");
    }

    const std::size_t total_bits = indices.size() * 11;
    const std::size_t entropy_bits = total_bits * 32 / 33;
    Bytes entropy(entropy_bits / 8, 0);
    std::vector<bool> checksum_bits;
    for (std::size_t i = 0; i < total_bits; ++i) {
        const bool bit = (indices[i / 11] >> (10 - i % 11)) & 1;
        if (i < entropy_bits) {
            if (bit) entropy[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
        } else {
            checksum_bits.push_back(bit);
        }
    }
    const auto checksum = crypto::sha256(entropy);
    for (std::size_t i = 0; i < checksum_bits.size(); ++i) {
        if (checksum_bits[i] != bit_at(checksum, i)) throw MalformedInputError("mnemonic checksum mismatch");
    }
    return entropy;
}

} // namespace dsrisk
