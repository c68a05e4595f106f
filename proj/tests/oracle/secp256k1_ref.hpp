// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// Affine secp256k1 arithmetic over arbitrary-precision integers plus a
// textbook hierarchical key derivation built on it. Slow, test use only.

#ifndef DSRISK_TEST_SECP256K1_REF_HPP
#define DSRISK_TEST_SECP256K1_REF_HPP

#include "sha2_ref.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ref {

using boost::multiprecision::cpp_int;

inline const cpp_int& field_prime()
{
    static const cpp_int p("0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F");
    return p;
}

inline const cpp_int& curve_order()
{
    static const cpp_int n("0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141");
    return n;
}

struct Point
{
    cpp_int x, y;
    bool infinity = false;

    friend bool operator==(const Point&, const Point&) = default;
};

inline const Point& generator()
{
    static const Point g{cpp_int("0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798"),
                         cpp_int("0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8"), false};
    return g;
}

inline cpp_int mod(const cpp_int& a, const cpp_int& m)
{
    cpp_int r = a % m;
    return r < 0 ? r + m : r;
}

inline cpp_int inverse(const cpp_int& a, const cpp_int& m)
{
    // Extended Euclid.
    cpp_int t = 0, new_t = 1, r = m, new_r = mod(a, m);
    while (new_r != 0) {
        const cpp_int q = r / new_r;
        cpp_int tmp = t - q * new_t; t = new_t; new_t = tmp;
        tmp = r - q * new_r; r = new_r; new_r = tmp;
    }
    return mod(t, m);
}

inline bool on_curve(const Point& pt)
{
    if (pt.infinity) return false;
    const cpp_int& p = field_prime();
    return mod(pt.y * pt.y - pt.x * pt.x * pt.x - 7, p) == 0;
}

inline Point add(const Point& a, const Point& b)
{
    if (a.infinity) return b;
    if (b.infinity) return a;
    const cpp_int& p = field_prime();
    cpp_int lambda;
    if (a.x == b.x) {
        if (mod(a.y + b.y, p) == 0) return Point{0, 0, true};
        lambda = mod(3 * a.x * a.x * inverse(2 * a.y, p), p);
    } else {
        lambda = mod((b.y - a.y) * inverse(b.x - a.x, p), p);
    }
    const cpp_int x = mod(lambda * lambda - a.x - b.x, p);
    const cpp_int y = mod(lambda * (a.x - x) - a.y, p);
    return Point{x, y, false};
}

inline Point multiply(cpp_int k, Point base)
{
    Point acc{0, 0, true};
    while (k > 0) {
        if ((k & 1) != 0) acc = add(acc, base);
        base = add(base, base);
        k >>= 1;
    }
    return acc;
}

inline cpp_int from_bytes(std::span<const std::uint8_t> bytes)
{
    cpp_int v = 0;
    for (auto b : bytes) v = (v << 8) | b;
    return v;
}

inline std::vector<std::uint8_t> to_bytes(cpp_int v, std::size_t len = 32)
{
    std::vector<std::uint8_t> out(len);
    for (std::size_t i = len; i-- > 0;) {
        out[i] = static_cast<std::uint8_t>(static_cast<unsigned>(v & 0xff));
        v >>= 8;
    }
    return out;
}

inline std::vector<std::uint8_t> compress(const Point& pt)
{
    auto out = to_bytes(pt.x);
    out.insert(out.begin(), (pt.y & 1) != 0 ? 0x03 : 0x02);
    return out;
}

inline void append_be32(std::vector<std::uint8_t>& v, std::uint32_t i)
{
    for (int s = 24; s >= 0; s -= 8) v.push_back(static_cast<std::uint8_t>(i >> s));
}

/// Private extended key; `literal` selects the keyless HMAC variant.
struct HdNode
{
    cpp_int key;
    std::vector<std::uint8_t> chain;
};

inline HdNode hd_master(std::span<const std::uint8_t> seed, bool literal)
{
    static const std::string tag = "Bitcoin seed";
    const std::vector<std::uint8_t> key = literal ? std::vector<std::uint8_t>{}
                                                  : std::vector<std::uint8_t>(tag.begin(), tag.end());
    const auto i = hmac_sha512(key, seed);
    return {from_bytes(std::span(i).first(32)), std::vector<std::uint8_t>(i.begin() + 32, i.end())};
}

/// Returns nullopt for the skip-index cases.
inline std::optional<HdNode> hd_child(const HdNode& parent, std::uint32_t index, bool literal)
{
    const bool hardened = index >= 0x80000000u;
    std::vector<std::uint8_t> msg;
    if (hardened) {
        if (!literal) msg.push_back(0);
        const auto k = to_bytes(parent.key);
        msg.insert(msg.end(), k.begin(), k.end());
    } else {
        const auto pub = compress(multiply(parent.key, generator()));
        msg.insert(msg.end(), pub.begin(), pub.end());
    }
    if (literal) msg.insert(msg.end(), parent.chain.begin(), parent.chain.end());
    append_be32(msg, index);
    const auto i = literal ? hmac_sha512({}, msg) : hmac_sha512(parent.chain, msg);
    const cpp_int left = from_bytes(std::span(i).first(32));
    if (left >= curve_order()) return std::nullopt;
    const cpp_int child = (left + parent.key) % curve_order();
    if (child == 0) return std::nullopt;
    return HdNode{child, std::vector<std::uint8_t>(i.begin() + 32, i.end())};
}

/// Type-1 deterministic key: SHA256(seed || be32(i)) mod n.
inline cpp_int type1(std::span<const std::uint8_t> seed, std::uint32_t index)
{
    std::vector<std::uint8_t> msg(seed.begin(), seed.end());
    append_be32(msg, index);
    return from_bytes(sha256(msg)) % curve_order();
}

} // namespace ref

#endif // DSRISK_TEST_SECP256K1_REF_HPP
