// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrisk/secp256k1.hpp>

#include <dsrisk/error.hpp>

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>

namespace dsrisk::secp256k1 {

namespace {

struct BnDeleter { void operator()(BIGNUM* p) const noexcept { BN_clear_free(p); } };
struct BnCtxDeleter { void operator()(BN_CTX* p) const noexcept { BN_CTX_free(p); } };
struct GroupDeleter { void operator()(EC_GROUP* p) const noexcept { EC_GROUP_free(p); } };
struct PointDeleter { void operator()(EC_POINT* p) const noexcept { EC_POINT_free(p); } };

using Bn = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtx = std::unique_ptr<BN_CTX, BnCtxDeleter>;
using Group = std::unique_ptr<EC_GROUP, GroupDeleter>;
using EcPoint = std::unique_ptr<EC_POINT, PointDeleter>;

[[noreturn]] void fail(const char* what)
{
    throw std::runtime_error(std::string("secp256k1 backend failure: ") + what);
}

const EC_GROUP* group()
{
    static const Group g = [] {
        Group created(EC_GROUP_new_by_curve_name(NID_secp256k1));
        if (!created) fail("EC_GROUP_new_by_curve_name");
        return created;
    }();
    return g.get();
}

BnCtx new_ctx()
{
    BnCtx ctx(BN_CTX_new());
    if (!ctx) fail("BN_CTX_new");
    return ctx;
}

Bn to_bn(std::span<const std::uint8_t> bytes)
{
    Bn bn(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
    if (!bn) fail("BN_bin2bn");
    return bn;
}

std::array<std::uint8_t, 32> from_bn(const BIGNUM* bn)
{
    std::array<std::uint8_t, 32> out{};
    if (BN_bn2binpad(bn, out.data(), 32) != 32) fail("BN_bn2binpad");
    return out;
}

EcPoint to_ec(const Point& p, BN_CTX* ctx)
{
    EcPoint point(EC_POINT_new(group()));
    if (!point) fail("EC_POINT_new");
    Bn x = to_bn(p.x);
    Bn y = to_bn(p.y);
    if (EC_POINT_set_affine_coordinates(group(), point.get(), x.get(), y.get(), ctx) != 1) {
        throw MalformedInputError("coordinates are not a secp256k1 point");
    }
    return point;
}

Point from_ec(const EC_POINT* point, BN_CTX* ctx)
{
    Bn x(BN_new());
    Bn y(BN_new());
    if (!x || !y || EC_POINT_get_affine_coordinates(group(), point, x.get(), y.get(), ctx) != 1) {
        fail("EC_POINT_get_affine_coordinates");
    }
    return Point{from_bn(x.get()), from_bn(y.get())};
}

} // namespace

const Scalar& order()
{
    static const Scalar n = from_bn(EC_GROUP_get0_order(group()));
    return n;
}

const Point& generator()
{
    static const Point g = [] {
        BnCtx ctx = new_ctx();
        return from_ec(EC_GROUP_get0_generator(group()), ctx.get());
    }();
    return g;
}

bool below_order(const Scalar& s)
{
    return std::lexicographical_compare(s.begin(), s.end(), order().begin(), order().end());
}

bool is_valid_private_scalar(const Scalar& s)
{
    const bool zero = std::all_of(s.begin(), s.end(), [](std::uint8_t b) { return b == 0; });
    return !zero && below_order(s);
}

Scalar add_mod_order(const Scalar& a, const Scalar& b)
{
    BnCtx ctx = new_ctx();
    Bn x = to_bn(a);
    Bn y = to_bn(b);
    Bn r(BN_new());
    if (!r || BN_mod_add(r.get(), x.get(), y.get(), EC_GROUP_get0_order(group()), ctx.get()) != 1) {
        fail("BN_mod_add");
    }
    return from_bn(r.get());
}

Scalar reduce_mod_order(const Scalar& s)
{
    BnCtx ctx = new_ctx();
    Bn x = to_bn(s);
    Bn r(BN_new());
    if (!r || BN_nnmod(r.get(), x.get(), EC_GROUP_get0_order(group()), ctx.get()) != 1) fail("BN_nnmod");
    return from_bn(r.get());
}

Point multiply_generator(const Scalar& s)
{
    if (!is_valid_private_scalar(s)) throw DomainError("scalar must lie in [1, n)");
    BnCtx ctx = new_ctx();
    Bn k = to_bn(s);
    EcPoint r(EC_POINT_new(group()));
    if (!r || EC_POINT_mul(group(), r.get(), k.get(), nullptr, nullptr, ctx.get()) != 1) fail("EC_POINT_mul");
    return from_ec(r.get(), ctx.get());
}

std::optional<Point> tweak_add(const Point& p, const Scalar& t)
{
    BnCtx ctx = new_ctx();
    EcPoint base = to_ec(p, ctx.get());
    Bn k = to_bn(t);
    EcPoint r(EC_POINT_new(group()));
    // r = t*G + 1*P
    Bn one(BN_new());
    if (!one || BN_one(one.get()) != 1) fail("BN_one");
    if (!r || EC_POINT_mul(group(), r.get(), k.get(), base.get(), one.get(), ctx.get()) != 1) fail("EC_POINT_mul");
    if (EC_POINT_is_at_infinity(group(), r.get()) == 1) return std::nullopt;
    return from_ec(r.get(), ctx.get());
}

bool on_curve(const Point& p)
{
    BnCtx ctx = new_ctx();
    try {
        EcPoint point = to_ec(p, ctx.get());
        return EC_POINT_is_on_curve(group(), point.get(), ctx.get()) == 1;
    } catch (const MalformedInputError&) {
        return false;
    }
}

CompressedPoint compress(const Point& p)
{
    CompressedPoint out{};
    out[0] = static_cast<std::uint8_t>(0x02 | (p.y.back() & 1));
    std::copy(p.x.begin(), p.x.end(), out.begin() + 1);
    return out;
}

Point decompress(std::span<const std::uint8_t> encoded)
{
    if (encoded.size() != 33 || (encoded[0] != 0x02 && encoded[0] != 0x03)) {
        throw MalformedInputError("compressed point must be 33 bytes with an 02/03 prefix");
    }
    BnCtx ctx = new_ctx();
    EcPoint point(EC_POINT_new(group()));
    if (!point) fail("EC_POINT_new");
    if (EC_POINT_oct2point(group(), point.get(), encoded.data(), encoded.size(), ctx.get()) != 1) {
        throw MalformedInputError("compressed point is not on secp256k1");
    }
    return from_ec(point.get(), ctx.get());
}

} // namespace dsrisk::secp256k1
