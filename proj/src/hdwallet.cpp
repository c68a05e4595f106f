// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrisk/hdwallet.hpp>

#include <dsrisk/crypto.hpp>
#include <dsrisk/error.hpp>
#include <dsrisk/mnemonic.hpp>

#include <openssl/crypto.h>

#include <algorithm>
#include <charconv>
#include <limits>

namespace dsrisk {

namespace {

constexpr std::string_view kMasterHmacKey = "Bitcoin seed";
constexpr std::array<std::uint8_t, 4> kEnvelopeMagic = {'D', 'S', 'K', '1'};
constexpr std::size_t kSaltSize = 16;
constexpr std::size_t kPassTagSize = 16;
constexpr std::size_t kHeaderSize = 4 + 3 + kSaltSize + crypto::kGcmNonceSize;
constexpr std::string_view kPassTagDomain = "dsrisk pass-phrase tag";

// Bounds accepted from an envelope header; keeps hostile envelopes from
// requesting absurd amounts of memory.
constexpr std::uint8_t kMaxLog2N = 20;
constexpr std::uint8_t kMaxR = 16;
constexpr std::uint8_t kMaxP = 4;

void append_be32(Bytes& out, std::uint32_t v)
{
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

template <typename Range>
void append(Bytes& out, const Range& r)
{
    out.insert(out.end(), std::begin(r), std::end(r));
}

struct SplitDigest
{
    secp256k1::Scalar left;
    ChainCode right;
};

SplitDigest split(const crypto::Hash512& digest)
{
    SplitDigest s;
    std::copy_n(digest.begin(), 32, s.left.begin());
    std::copy_n(digest.begin() + 32, 32, s.right.begin());
    return s;
}

std::uint8_t next_depth(const ExtendedKey& parent)
{
    if (parent.depth() == std::numeric_limits<std::uint8_t>::max()) {
        throw DomainError("maximum derivation depth reached");
    }
    return static_cast<std::uint8_t>(parent.depth() + 1);
}

SplitDigest ckd_digest(const ExtendedKey& parent, std::uint32_t index, bool hardened, DerivationMode mode)
{
    Bytes data;
    data.reserve(1 + 33 + 32 + 4);
    if (hardened) {
        if (mode == DerivationMode::standard) data.push_back(0x00);
        append(data, parent.private_key().scalar());
    } else {
        append(data, parent.public_key().compressed());
    }

    crypto::Hash512 digest;
    if (mode == DerivationMode::standard) {
        append_be32(data, index);
        digest = crypto::hmac_sha512(parent.chain_code(), data);
    } else {
        append(data, parent.chain_code());
        append_be32(data, index);
        digest = crypto::hmac_sha512({}, data);
    }
    return split(digest);
}

ExtendedKey private_child(const ExtendedKey& parent, std::uint32_t index, bool hardened, DerivationMode mode)
{
    const SplitDigest d = ckd_digest(parent, index, hardened, mode);
    if (!secp256k1::below_order(d.left)) {
        throw InvalidChildError("child " + std::to_string(index) + ": digest left half >= n; skip to the next index");
    }
    const auto child = secp256k1::add_mod_order(d.left, parent.private_key().scalar());
    if (!secp256k1::is_valid_private_scalar(child)) {
        throw InvalidChildError("child " + std::to_string(index) + ": derived private key is zero; skip to the next index");
    }
    return ExtendedKey(PrivateKey(child), d.right, next_depth(parent), index);
}

crypto::Hash256 pass_tag(std::string_view pass_phrase, std::span<const std::uint8_t> salt)
{
    Bytes msg;
    append(msg, kPassTagDomain);
    append(msg, salt);
    append(msg, pass_phrase);
    return crypto::sha256(msg);
}

std::array<std::uint8_t, 32> envelope_key(std::string_view pass_phrase, std::span<const std::uint8_t> k,
                                          std::span<const std::uint8_t> salt, const KdfParams& params)
{
    Bytes stretched = crypto::scrypt(pass_phrase, salt, params.log2_n, params.r, params.p, 32);
    const auto key = crypto::hmac_sha256(k, stretched);
    OPENSSL_cleanse(stretched.data(), stretched.size());
    return key;
}

template <typename E>
[[noreturn]] void rethrow_at(const E& e, std::size_t position)
{
    throw E("path position " + std::to_string(position) + ": " + e.what());
}

} // namespace

PublicKey::PublicKey(const secp256k1::Point& point) : m_point(point)
{
    if (!secp256k1::on_curve(point)) throw MalformedInputError("public key is not on secp256k1");
}

PublicKey PublicKey::from_compressed(std::span<const std::uint8_t> encoded)
{
    return PublicKey(secp256k1::decompress(encoded));
}

std::string PublicKey::hex() const
{
    return to_hex(compressed());
}

PrivateKey::PrivateKey(const secp256k1::Scalar& scalar) : m_scalar(scalar)
{
    if (!secp256k1::is_valid_private_scalar(scalar)) throw DomainError("private key must lie in [1, n)");
}

PrivateKey PrivateKey::from_hex(std::string_view hex)
{
    const Bytes raw = dsrisk::from_hex(hex);
    if (raw.size() != 32) throw MalformedInputError("private key must be 32 bytes");
    secp256k1::Scalar s{};
    std::copy(raw.begin(), raw.end(), s.begin());
    return PrivateKey(s);
}

PublicKey PrivateKey::public_key() const
{
    return PublicKey(secp256k1::multiply_generator(m_scalar));
}

std::string PrivateKey::hex() const
{
    return to_hex(m_scalar);
}

Seed::Seed(Bytes entropy) : m_entropy(std::move(entropy))
{
    if (m_entropy.size() < 16 || m_entropy.size() > 64) throw DomainError("seed must be 16 to 64 bytes");
}

Seed Seed::from_hex(std::string_view hex)
{
    return Seed(dsrisk::from_hex(hex));
}

Seed Seed::from_mnemonic(std::string_view words)
{
    return Seed(mnemonic_to_entropy(words));
}

std::string Seed::mnemonic() const
{
    return entropy_to_mnemonic(m_entropy);
}

ExtendedKey::ExtendedKey(PrivateKey key, const ChainCode& chain_code, std::uint8_t depth, std::uint32_t child_index)
    : m_key(std::move(key)), m_chain_code(chain_code), m_depth(depth), m_child_index(child_index)
{
}

ExtendedKey::ExtendedKey(PublicKey key, const ChainCode& chain_code, std::uint8_t depth, std::uint32_t child_index)
    : m_key(std::move(key)), m_chain_code(chain_code), m_depth(depth), m_child_index(child_index)
{
}

const PrivateKey& ExtendedKey::private_key() const
{
    if (const auto* pr = std::get_if<PrivateKey>(&m_key)) return *pr;
    throw HardenedDerivationError("extended key holds no private key");
}

PublicKey ExtendedKey::public_key() const
{
    if (const auto* pr = std::get_if<PrivateKey>(&m_key)) return pr->public_key();
    return std::get<PublicKey>(m_key);
}

ExtendedKey ExtendedKey::neuter() const
{
    return ExtendedKey(public_key(), m_chain_code, m_depth, m_child_index);
}

EntropySource os_entropy()
{
    return [](std::span<std::uint8_t> out) { crypto::random_bytes(out); };
}

std::pair<PrivateKey, PublicKey> generate_keypair(const EntropySource& entropy)
{
    secp256k1::Scalar candidate{};
    for (;;) {
        entropy(candidate);
        if (secp256k1::is_valid_private_scalar(candidate)) break;
    }
    PrivateKey pr(candidate);
    OPENSSL_cleanse(candidate.data(), candidate.size());
    PublicKey pub = pr.public_key();
    return {std::move(pr), std::move(pub)};
}

PrivateKey type1_derive(const Seed& seed, std::uint32_t index)
{
    Bytes msg = seed.bytes();
    append_be32(msg, index);
    const auto reduced = secp256k1::reduce_mod_order(crypto::sha256(msg));
    if (!secp256k1::is_valid_private_scalar(reduced)) {
        throw InvalidChildError("type-1 key " + std::to_string(index) + " reduces to zero");
    }
    return PrivateKey(reduced);
}

ExtendedKey master_from_seed(const Seed& seed, DerivationMode mode)
{
    const auto key = mode == DerivationMode::standard ? crypto::as_bytes(kMasterHmacKey)
                                                      : std::span<const std::uint8_t>{};
    const SplitDigest d = split(crypto::hmac_sha512(key, seed.bytes()));
    if (!secp256k1::is_valid_private_scalar(d.left)) {
        throw ResampleSeedError("master key digest is zero or >= n; choose a different seed");
    }
    return ExtendedKey(PrivateKey(d.left), d.right, 0, 0);
}

ExtendedKey ckd_private(const ExtendedKey& parent, std::uint32_t index, DerivationMode mode)
{
    if (index >= kHardenedOffset) throw DomainError("ckd_private takes a normal index below 2^31");
    if (!parent.is_private()) throw DomainError("ckd_private needs a private parent");
    return private_child(parent, index, false, mode);
}

ExtendedKey ckd_public(const ExtendedKey& parent, std::uint32_t index, DerivationMode mode)
{
    if (index >= kHardenedOffset) {
        throw HardenedDerivationError("hardened child " + std::to_string(index - kHardenedOffset)
                                      + "' cannot be derived from an extended public key");
    }
    const SplitDigest d = ckd_digest(parent, index, false, mode);
    if (!secp256k1::below_order(d.left)) {
        throw InvalidChildError("child " + std::to_string(index) + ": digest left half >= n; skip to the next index");
    }
    const auto child = secp256k1::tweak_add(parent.public_key().point(), d.left);
    if (!child) {
        throw InvalidChildError("child " + std::to_string(index) + ": point at infinity; skip to the next index");
    }
    return ExtendedKey(PublicKey(*child), d.right, next_depth(parent), index);
}

ExtendedKey ckd_hardened(const ExtendedKey& parent, std::uint32_t index, DerivationMode mode)
{
    if (index < kHardenedOffset) throw DomainError("ckd_hardened takes an index >= 2^31");
    if (!parent.is_private()) {
        throw HardenedDerivationError("hardened derivation requires the parent private key");
    }
    return private_child(parent, index, true, mode);
}

ExtendedKey derive_child(const ExtendedKey& parent, std::uint32_t index, DerivationMode mode)
{
    if (index >= kHardenedOffset) return ckd_hardened(parent, index, mode);
    return parent.is_private() ? ckd_private(parent, index, mode) : ckd_public(parent, index, mode);
}

DerivationPath DerivationPath::parse(std::string_view text)
{
    DerivationPath path;
    if (text.empty() || (text[0] != 'm' && text[0] != 'M')) {
        throw MalformedInputError("derivation path must start with m or M");
    }
    path.public_only = text[0] == 'M';
    text.remove_prefix(1);
    while (!text.empty()) {
        if (text[0] != '/') throw MalformedInputError("expected '/' in derivation path");
        text.remove_prefix(1);
        const auto end = std::min(text.find('/'), text.size());
        std::string_view part = text.substr(0, end);
        text.remove_prefix(end);

        PathElement element;
        if (!part.empty() && (part.back() == '\'' || part.back() == 'h' || part.back() == 'H')) {
            element.hardened = true;
            part.remove_suffix(1);
        }
        std::uint32_t value = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || value >= kHardenedOffset) {
            throw MalformedInputError("bad derivation path element '" + std::string(part) + "'");
        }
        element.index = value;
        path.elements.push_back(element);
    }
    return path;
}

std::string DerivationPath::to_string() const
{
    std::string out(public_only ? "M" : "m");
    for (const auto& e : elements) {
        out += '/' + std::to_string(e.index);
        if (e.hardened) out += '\'';
    }
    return out;
}

ExtendedKey derive_path(const ExtendedKey& master, std::span<const PathElement> path, DerivationMode mode)
{
    ExtendedKey key = master;
    for (std::size_t i = 0; i < path.size(); ++i) {
        try {
            key = derive_child(key, path[i].full_index(), mode);
        } catch (const InvalidChildError& e) {
            rethrow_at(e, i);
        } catch (const HardenedDerivationError& e) {
            rethrow_at(e, i);
        } catch (const DomainError& e) {
            rethrow_at(e, i);
        }
    }
    return key;
}

ExtendedKey derive_path(const ExtendedKey& master, const DerivationPath& path, DerivationMode mode)
{
    return derive_path(path.public_only ? master.neuter() : master, path.elements, mode);
}

Bytes encrypt_private_key(const PrivateKey& key, std::string_view pass_phrase, std::span<const std::uint8_t> k,
                          const KdfParams& params, const EntropySource& entropy)
{
    if (params.log2_n < 1 || params.log2_n > kMaxLog2N || params.r < 1 || params.r > kMaxR || params.p < 1
        || params.p > kMaxP) {
        throw DomainError("scrypt parameters out of the supported range");
    }
    Bytes envelope;
    envelope.reserve(kEnvelopeSize);
    append(envelope, kEnvelopeMagic);
    envelope.push_back(params.log2_n);
    envelope.push_back(params.r);
    envelope.push_back(params.p);

    std::array<std::uint8_t, kSaltSize + crypto::kGcmNonceSize> fresh{};
    entropy(fresh);
    append(envelope, fresh);
    const std::span<const std::uint8_t> salt(envelope.data() + 7, kSaltSize);
    const std::span<const std::uint8_t, crypto::kGcmNonceSize> nonce(envelope.data() + 7 + kSaltSize,
                                                                     crypto::kGcmNonceSize);

    Bytes plaintext;
    append(plaintext, key.scalar());
    const auto tag = pass_tag(pass_phrase, salt);
    plaintext.insert(plaintext.end(), tag.begin(), tag.begin() + kPassTagSize);

    auto aes_key = envelope_key(pass_phrase, k, salt, params);
    const Bytes sealed = crypto::aes256_gcm_encrypt(aes_key, nonce, envelope, plaintext);
    OPENSSL_cleanse(aes_key.data(), aes_key.size());
    OPENSSL_cleanse(plaintext.data(), plaintext.size());
    append(envelope, sealed);
    return envelope;
}

PrivateKey decrypt_private_key(std::span<const std::uint8_t> envelope, std::string_view pass_phrase,
                               std::span<const std::uint8_t> k)
{
    if (envelope.size() != kEnvelopeSize) {
        throw MalformedInputError("encrypted key envelope must be " + std::to_string(kEnvelopeSize) + " bytes");
    }
    if (!std::equal(kEnvelopeMagic.begin(), kEnvelopeMagic.end(), envelope.begin())) {
        throw MalformedInputError("not an encrypted key envelope (bad magic)");
    }
    KdfParams params{envelope[4], envelope[5], envelope[6]};
    if (params.log2_n < 1 || params.log2_n > kMaxLog2N || params.r < 1 || params.r > kMaxR || params.p < 1
        || params.p > kMaxP) {
        throw MalformedInputError("envelope carries unsupported scrypt parameters");
    }
    const auto header = envelope.first(kHeaderSize);
    const auto salt = envelope.subspan(7, kSaltSize);
    const std::span<const std::uint8_t, crypto::kGcmNonceSize> nonce(envelope.data() + 7 + kSaltSize,
                                                                     crypto::kGcmNonceSize);

    auto aes_key = envelope_key(pass_phrase, k, salt, params);
    auto opened = crypto::aes256_gcm_decrypt(aes_key, nonce, header, envelope.subspan(kHeaderSize));
    OPENSSL_cleanse(aes_key.data(), aes_key.size());
    if (!opened) throw AuthenticationError("wrong pass-phrase or encryption key, or the envelope was modified");

    Bytes plain = std::move(*opened);
    const auto tag = pass_tag(pass_phrase, salt);
    const bool tag_ok = crypto::equal_ct(std::span<const std::uint8_t>(plain).subspan(32, kPassTagSize),
                                         std::span<const std::uint8_t>(tag).first(kPassTagSize));
    secp256k1::Scalar scalar{};
    std::copy_n(plain.begin(), 32, scalar.begin());
    OPENSSL_cleanse(plain.data(), plain.size());
    if (!tag_ok) throw AuthenticationError("pass-phrase tag mismatch");
    if (!secp256k1::is_valid_private_scalar(scalar)) throw MalformedInputError("decrypted scalar is not a valid key");
    return PrivateKey(scalar);
}

} // namespace dsrisk
