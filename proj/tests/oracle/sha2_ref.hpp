// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// Straightforward FIPS 180-4 SHA-256 / SHA-512 and HMAC, used only to check
// the production hashing. Round constants are recomputed from the prime
// square and cube roots instead of being copied from a table.

#ifndef DSRISK_TEST_SHA2_REF_HPP
#define DSRISK_TEST_SHA2_REF_HPP

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ref {

namespace detail {

using Dec = boost::multiprecision::cpp_dec_float_100;

inline std::vector<unsigned> first_primes(std::size_t count)
{
    std::vector<unsigned> primes;
    for (unsigned c = 2; primes.size() < count; ++c) {
        bool prime = true;
        for (unsigned p : primes) {
            if (p * p > c) break;
            if (c % p == 0) { prime = false; break; }
        }
        if (prime) primes.push_back(c);
    }
    return primes;
}

/// First `bits` bits of the fractional part of prime^(1/root).
inline std::uint64_t root_fraction(unsigned prime, int root, int bits)
{
    const Dec x = root == 2 ? boost::multiprecision::sqrt(Dec(prime)) : boost::multiprecision::cbrt(Dec(prime));
    const Dec frac = x - boost::multiprecision::floor(x);
    const Dec scaled = boost::multiprecision::floor(frac * boost::multiprecision::pow(Dec(2), bits));
    return static_cast<std::uint64_t>(static_cast<boost::multiprecision::cpp_int>(scaled));
}

template <typename W>
W rotr(W x, unsigned n) { return (x >> n) | (x << (sizeof(W) * 8 - n)); }

template <typename W, std::size_t Rounds>
struct Params
{
    std::array<W, 8> init{};
    std::array<W, Rounds> k{};

    Params()
    {
        constexpr int bits = sizeof(W) * 8;
        const auto primes = first_primes(Rounds);
        for (std::size_t i = 0; i < 8; ++i) init[i] = static_cast<W>(root_fraction(primes[i], 2, bits));
        for (std::size_t i = 0; i < Rounds; ++i) k[i] = static_cast<W>(root_fraction(primes[i], 3, bits));
    }
};

template <typename W, std::size_t Rounds>
std::vector<std::uint8_t> sha2(std::span<const std::uint8_t> msg)
{
    static const Params<W, Rounds> params;
    constexpr std::size_t wbytes = sizeof(W);
    constexpr std::size_t block = 16 * wbytes;
    constexpr bool big = wbytes == 8;

    std::vector<std::uint8_t> m(msg.begin(), msg.end());
    m.push_back(0x80);
    while (m.size() % block != block - 2 * wbytes) m.push_back(0);
    if (big) m.insert(m.end(), 8, 0); // high half of the 128-bit length field
    const std::uint64_t bit_len = static_cast<std::uint64_t>(msg.size()) * 8;
    for (int i = 7; i >= 0; --i) m.push_back(static_cast<std::uint8_t>(bit_len >> (8 * i)));

    std::array<W, 8> h = params.init;
    for (std::size_t off = 0; off < m.size(); off += block) {
        std::array<W, Rounds> w{};
        for (std::size_t t = 0; t < 16; ++t) {
            W v = 0;
            for (std::size_t b = 0; b < wbytes; ++b) v = static_cast<W>((v << 8) | m[off + t * wbytes + b]);
            w[t] = v;
        }
        for (std::size_t t = 16; t < Rounds; ++t) {
            const W s0 = big ? rotr<W>(w[t - 15], 1) ^ rotr<W>(w[t - 15], 8) ^ (w[t - 15] >> 7)
                             : rotr<W>(w[t - 15], 7) ^ rotr<W>(w[t - 15], 18) ^ (w[t - 15] >> 3);
            const W s1 = big ? rotr<W>(w[t - 2], 19) ^ rotr<W>(w[t - 2], 61) ^ (w[t - 2] >> 6)
                             : rotr<W>(w[t - 2], 17) ^ rotr<W>(w[t - 2], 19) ^ (w[t - 2] >> 10);
            w[t] = static_cast<W>(w[t - 16] + s0 + w[t - 7] + s1);
        }
        W a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6], hh = h[7];
        for (std::size_t t = 0; t < Rounds; ++t) {
            const W S1 = big ? rotr<W>(e, 14) ^ rotr<W>(e, 18) ^ rotr<W>(e, 41)
                             : rotr<W>(e, 6) ^ rotr<W>(e, 11) ^ rotr<W>(e, 25);
            const W ch = (e & f) ^ (~e & g);
            const W t1 = static_cast<W>(hh + S1 + ch + params.k[t] + w[t]);
            const W S0 = big ? rotr<W>(a, 28) ^ rotr<W>(a, 34) ^ rotr<W>(a, 39)
                             : rotr<W>(a, 2) ^ rotr<W>(a, 13) ^ rotr<W>(a, 22);
            const W maj = (a & b) ^ (a & c) ^ (b & c);
            const W t2 = static_cast<W>(S0 + maj);
            hh = g; g = f; f = e; e = static_cast<W>(d + t1);
            d = c; c = b; b = a; a = static_cast<W>(t1 + t2);
        }
        h[0] += a; h[1] += b; h[2] += c; h[3] += d; h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
    }
    std::vector<std::uint8_t> out;
    for (W v : h) {
        for (int b = static_cast<int>(wbytes) - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
    }
    return out;
}

template <auto Hash, std::size_t Block>
std::vector<std::uint8_t> hmac(std::span<const std::uint8_t> key, std::span<const std::uint8_t> msg)
{
    std::vector<std::uint8_t> k(key.begin(), key.end());
    if (k.size() > Block) k = Hash(k);
    k.resize(Block, 0);
    std::vector<std::uint8_t> inner, outer;
    for (auto b : k) inner.push_back(b ^ 0x36);
    for (auto b : k) outer.push_back(b ^ 0x5c);
    inner.insert(inner.end(), msg.begin(), msg.end());
    const auto ih = Hash(inner);
    outer.insert(outer.end(), ih.begin(), ih.end());
    return Hash(outer);
}

} // namespace detail

inline std::string hex(std::span<const std::uint8_t> bytes)
{
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (auto b : bytes) { s += digits[b >> 4]; s += digits[b & 15]; }
    return s;
}

inline std::vector<std::uint8_t> sha256(std::span<const std::uint8_t> msg)
{
    return detail::sha2<std::uint32_t, 64>(msg);
}

inline std::vector<std::uint8_t> sha512(std::span<const std::uint8_t> msg)
{
    return detail::sha2<std::uint64_t, 80>(msg);
}

inline std::vector<std::uint8_t> double_sha256(std::span<const std::uint8_t> msg)
{
    return sha256(sha256(msg));
}

inline std::vector<std::uint8_t> hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> msg)
{
    return detail::hmac<&sha256, 64>(key, msg);
}

inline std::vector<std::uint8_t> hmac_sha512(std::span<const std::uint8_t> key, std::span<const std::uint8_t> msg)
{
    return detail::hmac<&sha512, 128>(key, msg);
}

} // namespace ref

#endif // DSRISK_TEST_SHA2_REF_HPP
