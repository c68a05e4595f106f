// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRISK_SECP256K1_HPP
#define DSRISK_SECP256K1_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>

// secp256k1 scalar and point arithmetic on 32-byte big-endian encodings,
// backed by libcrypto's EC implementation.

namespace dsrisk::secp256k1 {

using Scalar = std::array<std::uint8_t, 32>;

struct Point
{
    std::array<std::uint8_t, 32> x{};
    std::array<std::uint8_t, 32> y{};

    friend bool operator==(const Point&, const Point&) = default;
};

using CompressedPoint = std::array<std::uint8_t, 33>;

/// Group order n.
const Scalar& order();

/// The generator G.
const Point& generator();

/// s < n.
bool below_order(const Scalar& s);

/// 1 <= s < n.
bool is_valid_private_scalar(const Scalar& s);

/// (a + b) mod n.
Scalar add_mod_order(const Scalar& a, const Scalar& b);

/// s mod n for an arbitrary 256-bit value.
Scalar reduce_mod_order(const Scalar& s);

/// s * G. `s` must be a valid private scalar.
Point multiply_generator(const Scalar& s);

/// t * G + P, or nullopt for the point at infinity.
std::optional<Point> tweak_add(const Point& p, const Scalar& t);

/// y^2 = x^3 + 7 over the field.
bool on_curve(const Point& p);

CompressedPoint compress(const Point& p);

/// Throws MalformedInputError if the encoding is not a curve point.
Point decompress(std::span<const std::uint8_t> encoded);

} // namespace dsrisk::secp256k1

#endif // DSRISK_SECP256K1_HPP
