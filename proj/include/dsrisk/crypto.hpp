// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRISK_CRYPTO_HPP
#define DSRISK_CRYPTO_HPP

#include <dsrisk/hex.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

// Thin wrappers over OpenSSL's libcrypto for the primitives the wallet and
// Merkle code need.

namespace dsrisk::crypto {

using Hash256 = std::array<std::uint8_t, 32>;
using Hash512 = std::array<std::uint8_t, 64>;

Hash256 sha256(std::span<const std::uint8_t> data);
Hash256 double_sha256(std::span<const std::uint8_t> data);
Hash256 hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data);
Hash512 hmac_sha512(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data);

/// Fills `out` from the operating system CSPRNG.
void random_bytes(std::span<std::uint8_t> out);

/// scrypt with N = 2^log2_n.
Bytes scrypt(std::string_view pass, std::span<const std::uint8_t> salt, unsigned log2_n, std::uint32_t r,
             std::uint32_t p, std::size_t out_len);

inline constexpr std::size_t kGcmNonceSize = 12;
inline constexpr std::size_t kGcmTagSize = 16;

/// AES-256-GCM. Returns ciphertext followed by the 16-byte tag.
Bytes aes256_gcm_encrypt(std::span<const std::uint8_t, 32> key, std::span<const std::uint8_t, kGcmNonceSize> nonce,
                         std::span<const std::uint8_t> aad, std::span<const std::uint8_t> plaintext);

/// Returns nullopt when the tag does not verify.
std::optional<Bytes> aes256_gcm_decrypt(std::span<const std::uint8_t, 32> key,
                                        std::span<const std::uint8_t, kGcmNonceSize> nonce,
                                        std::span<const std::uint8_t> aad,
                                        std::span<const std::uint8_t> ciphertext_and_tag);

/// Constant-time equality.
bool equal_ct(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

inline std::span<const std::uint8_t> as_bytes(std::string_view s)
{
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

} // namespace dsrisk::crypto

#endif // DSRISK_CRYPTO_HPP
