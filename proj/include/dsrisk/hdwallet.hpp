// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRISK_HDWALLET_HPP
#define DSRISK_HDWALLET_HPP

#include <dsrisk/hex.hpp>
#include <dsrisk/secp256k1.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

// Wallet key management over secp256k1:
//   - Type-0: independent random key pairs.
//   - Type-1: Pr_i = SHA256(seed || i) mod n.
//   - Type-2: hierarchical deterministic keys with normal and hardened
//     child key derivation (CKD).
//   - Pass-phrase encryption of private keys.
//
// Child indices are serialized as 4-byte big-endian; hardened children use
// indices >= 2^31.

namespace dsrisk {

inline constexpr std::uint32_t kHardenedOffset = 0x8000'0000u;

class PublicKey
{
public:
    /// Throws MalformedInputError if the point is not on the curve.
    explicit PublicKey(const secp256k1::Point& point);
    static PublicKey from_compressed(std::span<const std::uint8_t> encoded);

    const secp256k1::Point& point() const noexcept { return m_point; }
    secp256k1::CompressedPoint compressed() const { return secp256k1::compress(m_point); }
    std::string hex() const;

    friend bool operator==(const PublicKey&, const PublicKey&) = default;

private:
    secp256k1::Point m_point;
};

class PrivateKey
{
public:
    /// Throws DomainError unless 1 <= scalar < n.
    explicit PrivateKey(const secp256k1::Scalar& scalar);
    static PrivateKey from_hex(std::string_view hex);

    const secp256k1::Scalar& scalar() const noexcept { return m_scalar; }
    PublicKey public_key() const;
    std::string hex() const;

    friend bool operator==(const PrivateKey&, const PrivateKey&) = default;

private:
    secp256k1::Scalar m_scalar;
};

using ChainCode = std::array<std::uint8_t, 32>;

/// Seed entropy, 16 to 64 bytes.
class Seed
{
public:
    explicit Seed(Bytes entropy);
    static Seed from_hex(std::string_view hex);
    /// Entropy recovered from an English BIP39 word list.
    static Seed from_mnemonic(std::string_view words);

    const Bytes& bytes() const noexcept { return m_entropy; }
    /// Word rendering; only defined for 16-32 byte seeds in steps of 4.
    std::string mnemonic() const;

private:
    Bytes m_entropy;
};

/// HMAC keying convention for master and child derivation.
enum class DerivationMode {
    /// Master: HMAC-SHA512(key = "Bitcoin seed", seed). Child: key = chain
    /// code, message = Pub || i (normal) or 0x00 || Pr || i (hardened). Matches
    /// the published HD test vectors.
    standard,
    /// HMAC-SHA512 with an empty key over seed, Pub || CC || i or Pr || CC || i,
    /// exactly as the formulas are written without a key.
    paper_literal,
};

class ExtendedKey
{
public:
    ExtendedKey(PrivateKey key, const ChainCode& chain_code, std::uint8_t depth, std::uint32_t child_index);
    ExtendedKey(PublicKey key, const ChainCode& chain_code, std::uint8_t depth, std::uint32_t child_index);

    bool is_private() const noexcept { return std::holds_alternative<PrivateKey>(m_key); }
    /// Throws HardenedDerivationError on a public-only key.
    const PrivateKey& private_key() const;
    PublicKey public_key() const;
    const ChainCode& chain_code() const noexcept { return m_chain_code; }
    std::uint8_t depth() const noexcept { return m_depth; }
    std::uint32_t child_index() const noexcept { return m_child_index; }
    bool is_hardened() const noexcept { return m_child_index >= kHardenedOffset; }

    /// Same chain code and position, private key dropped.
    ExtendedKey neuter() const;

    friend bool operator==(const ExtendedKey&, const ExtendedKey&) = default;

private:
    std::variant<PrivateKey, PublicKey> m_key;
    ChainCode m_chain_code;
    std::uint8_t m_depth;
    std::uint32_t m_child_index;
};

/// Fills its argument with cryptographically secure random bytes.
using EntropySource = std::function<void(std::span<std::uint8_t>)>;

/// The operating system CSPRNG.
EntropySource os_entropy();

/// Type-0 key pair. Draws are rejected and redrawn until 1 <= Pr < n.
std::pair<PrivateKey, PublicKey> generate_keypair(const EntropySource& entropy = os_entropy());

/// Type-1 key SHA256(seed || be32(index)) mod n. Throws InvalidChildError in
/// the negligible case that the reduction is zero.
PrivateKey type1_derive(const Seed& seed, std::uint32_t index);

/// Master extended private key, depth 0. Throws ResampleSeedError when the
/// left half of the digest is 0 or >= n.
ExtendedKey master_from_seed(const Seed& seed, DerivationMode mode = DerivationMode::standard);

/// Normal child of a private parent, index < 2^31.
ExtendedKey ckd_private(const ExtendedKey& parent, std::uint32_t index, DerivationMode mode = DerivationMode::standard);

/// Normal child of a public (or neutered) parent, index < 2^31. Hardened
/// indices throw HardenedDerivationError.
ExtendedKey ckd_public(const ExtendedKey& parent, std::uint32_t index, DerivationMode mode = DerivationMode::standard);

/// Hardened child, index >= 2^31. Requires a private parent.
ExtendedKey ckd_hardened(const ExtendedKey& parent, std::uint32_t index, DerivationMode mode = DerivationMode::standard);

/// Picks the right CKD for the parent kind and index.
ExtendedKey derive_child(const ExtendedKey& parent, std::uint32_t index, DerivationMode mode = DerivationMode::standard);

struct PathElement
{
    std::uint32_t index = 0; // below 2^31
    bool hardened = false;

    std::uint32_t full_index() const noexcept { return hardened ? index | kHardenedOffset : index; }
    friend bool operator==(const PathElement&, const PathElement&) = default;
};

struct DerivationPath
{
    /// "M/..." paths derive public keys only.
    bool public_only = false;
    std::vector<PathElement> elements;

    /// Parses m/0'/1/2 (also 0h or 0H for hardened) or M/0/1.
    static DerivationPath parse(std::string_view text);
    std::string to_string() const;
};

/// Left fold of derive_child over `path`. Errors are rethrown with the
/// failing path position in the message.
ExtendedKey derive_path(const ExtendedKey& master, std::span<const PathElement> path,
                        DerivationMode mode = DerivationMode::standard);

/// Derives `path` from `master`, neutering first for public-only paths.
ExtendedKey derive_path(const ExtendedKey& master, const DerivationPath& path,
                        DerivationMode mode = DerivationMode::standard);

/// scrypt cost parameters for pass-phrase encryption, stored in the envelope.
struct KdfParams
{
    std::uint8_t log2_n = 15;
    std::uint8_t r = 8;
    std::uint8_t p = 1;
};

/// Encrypts Pr || pass-phrase tag with AES-256-GCM. The AES key is
/// HMAC-SHA256(k, scrypt(pass_phrase, salt)), so both the pass-phrase and
/// the encryption key k are needed to decrypt. The envelope layout is
///
///   "DSK1" | log2_n | r | p | salt[16] | nonce[12] | ciphertext[48] | tag[16]
///
/// with everything before the ciphertext authenticated as associated data.
Bytes encrypt_private_key(const PrivateKey& key, std::string_view pass_phrase, std::span<const std::uint8_t> k,
                          const KdfParams& params = {}, const EntropySource& entropy = os_entropy());

/// Throws AuthenticationError on a wrong pass-phrase, wrong k or tampering,
/// and MalformedInputError on a structurally invalid envelope.
PrivateKey decrypt_private_key(std::span<const std::uint8_t> envelope, std::string_view pass_phrase,
                               std::span<const std::uint8_t> k);

inline constexpr std::size_t kEnvelopeSize = 4 + 3 + 16 + 12 + 32 + 16 + 16;

} // namespace dsrisk

#endif // DSRISK_HDWALLET_HPP
