// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRISK_HEX_HPP
#define DSRISK_HEX_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dsrisk {

using Bytes = std::vector<std::uint8_t>;

/// Lowercase hex in natural byte order.
std::string to_hex(std::span<const std::uint8_t> bytes);

/// Accepts upper or lower case; throws MalformedInputError on odd length
/// or non-hex characters.
Bytes from_hex(std::string_view hex);

} // namespace dsrisk

#endif // DSRISK_HEX_HPP
