// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRISK_MNEMONIC_HPP
#define DSRISK_MNEMONIC_HPP

#include <dsrisk/hex.hpp>

#include <array>
#include <span>
#include <string>
#include <string_view>

// BIP39 English word rendering of seed entropy: 11 bits per word with a
// SHA256 checksum of entropy_bits/32 bits appended.

namespace dsrisk {

/// Entropy must be 16, 20, 24, 28 or 32 bytes.
std::string entropy_to_mnemonic(std::span<const std::uint8_t> entropy);

/// Inverse of entropy_to_mnemonic. Throws MalformedInputError on an unknown
/// word, a bad word count or a checksum mismatch.
Bytes mnemonic_to_entropy(std::string_view mnemonic);

namespace detail {
extern const std::array<std::string_view, 2048> kBip39English;
}

} // namespace dsrisk

#endif // DSRISK_MNEMONIC_HPP
