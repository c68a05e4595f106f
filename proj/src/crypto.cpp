// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrisk/crypto.hpp>

#include <dsrisk/error.hpp>

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/rand.h>

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace dsrisk::crypto {

namespace {

struct CipherCtxDeleter
{
    void operator()(EVP_CIPHER_CTX* ctx) const noexcept { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

struct MdCtxDeleter
{
    void operator()(EVP_MD_CTX* ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

[[noreturn]] void fail(const char* what)
{
    throw std::runtime_error(std::string("libcrypto failure: ") + what);
}

template <std::size_t N>
std::array<std::uint8_t, N> hmac(const EVP_MD* md, std::span<const std::uint8_t> key, std::span<const std::uint8_t> data)
{
    std::array<std::uint8_t, N> out{};
    unsigned int len = 0;
    // HMAC() treats a null key pointer as "no key"; pass a valid pointer for empty keys.
    static const std::uint8_t empty = 0;
    const std::uint8_t* key_ptr = key.empty() ? &empty : key.data();
    if (HMAC(md, key_ptr, static_cast<int>(key.size()), data.data(), data.size(), out.data(), &len) == nullptr
        || len != N) {
        fail("HMAC");
    }
    return out;
}

CipherCtx gcm_context(std::span<const std::uint8_t, 32> key, std::span<const std::uint8_t, kGcmNonceSize> nonce,
                      bool encrypt)
{
    CipherCtx ctx(EVP_CIPHER_CTX_new());
    if (!ctx) fail("EVP_CIPHER_CTX_new");
    const int enc = encrypt ? 1 : 0;
    if (EVP_CipherInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr, enc) != 1
        || EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(kGcmNonceSize), nullptr) != 1
        || EVP_CipherInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce.data(), enc) != 1) {
        fail("AES-GCM init");
    }
    return ctx;
}

} // namespace

Hash256 sha256(std::span<const std::uint8_t> data)
{
    Hash256 out{};
    unsigned int len = 0;
    MdCtx ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1
        || EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1
        || EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1) {
        fail("SHA256");
    }
    return out;
}

Hash256 double_sha256(std::span<const std::uint8_t> data)
{
    return sha256(sha256(data));
}

Hash256 hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data)
{
    return hmac<32>(EVP_sha256(), key, data);
}

Hash512 hmac_sha512(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data)
{
    return hmac<64>(EVP_sha512(), key, data);
}

void random_bytes(std::span<std::uint8_t> out)
{
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) fail("RAND_bytes");
}

Bytes scrypt(std::string_view pass, std::span<const std::uint8_t> salt, unsigned log2_n, std::uint32_t r,
             std::uint32_t p, std::size_t out_len)
{
    if (log2_n < 1 || log2_n > 24 || r < 1 || p < 1) throw DomainError("scrypt parameters out of range");
    Bytes out(out_len);
    const std::uint64_t n = std::uint64_t{1} << log2_n;
    const std::uint64_t max_mem = 128 * std::uint64_t{r} * (n + p + 2) + (1u << 20);
    if (EVP_PBE_scrypt(pass.data(), pass.size(), salt.data(), salt.size(), n, r, p, max_mem, out.data(), out.size())
        != 1) {
        fail("EVP_PBE_scrypt");
    }
    return out;
}

Bytes aes256_gcm_encrypt(std::span<const std::uint8_t, 32> key, std::span<const std::uint8_t, kGcmNonceSize> nonce,
                         std::span<const std::uint8_t> aad, std::span<const std::uint8_t> plaintext)
{
    CipherCtx ctx = gcm_context(key, nonce, true);
    Bytes out(plaintext.size() + kGcmTagSize);
    int len = 0;
    if (!aad.empty() && EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) != 1) {
        fail("AES-GCM aad");
    }
    if (EVP_EncryptUpdate(ctx.get(), out.data(), &len, plaintext.data(), static_cast<int>(plaintext.size())) != 1) {
        fail("AES-GCM update");
    }
    int tail = 0;
    if (EVP_EncryptFinal_ex(ctx.get(), out.data() + len, &tail) != 1) fail("AES-GCM final");
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, static_cast<int>(kGcmTagSize),
                            out.data() + plaintext.size()) != 1) {
        fail("AES-GCM tag");
    }
    return out;
}

std::optional<Bytes> aes256_gcm_decrypt(std::span<const std::uint8_t, 32> key,
                                        std::span<const std::uint8_t, kGcmNonceSize> nonce,
                                        std::span<const std::uint8_t> aad,
                                        std::span<const std::uint8_t> ciphertext_and_tag)
{
    if (ciphertext_and_tag.size() < kGcmTagSize) return std::nullopt;
    const std::size_t body = ciphertext_and_tag.size() - kGcmTagSize;
    CipherCtx ctx = gcm_context(key, nonce, false);
    Bytes out(body);
    int len = 0;
    if (!aad.empty() && EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) != 1) {
        fail("AES-GCM aad");
    }
    if (EVP_DecryptUpdate(ctx.get(), out.data(), &len, ciphertext_and_tag.data(), static_cast<int>(body)) != 1) {
        fail("AES-GCM update");
    }
    Hash256 tag_copy{};
    std::copy_n(ciphertext_and_tag.data() + body, kGcmTagSize, tag_copy.begin());
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, static_cast<int>(kGcmTagSize), tag_copy.data()) != 1) {
        fail("AES-GCM set tag");
    }
    int tail = 0;
    if (EVP_DecryptFinal_ex(ctx.get(), out.data() + len, &tail) != 1) {
        OPENSSL_cleanse(out.data(), out.size());
        return std::nullopt;
    }
    return out;
}

bool equal_ct(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b)
{
    return a.size() == b.size() && CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

} // namespace dsrisk::crypto
