// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrisk/merkle.hpp>

#include <dsrisk/crypto.hpp>
#include <dsrisk/error.hpp>
#include <dsrisk/hex.hpp>

#include <algorithm>

namespace dsrisk {

Digest32 Digest32::from_span(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() != 32) {
        throw MalformedInputError("digest must be 32 bytes, got " + std::to_string(bytes.size()));
    }
    Digest32 d;
    std::copy(bytes.begin(), bytes.end(), d.m_bytes.begin());
    return d;
}

Digest32 Digest32::from_hex(std::string_view hex)
{
    if (hex.size() != 64) throw MalformedInputError("digest hex must be 64 characters");
    return from_span(dsrisk::from_hex(hex));
}

std::string Digest32::hex() const
{
    return to_hex(m_bytes);
}

Digest32 txid(std::span<const std::uint8_t> raw_message)
{
    return Digest32(crypto::double_sha256(raw_message));
}

Digest32 hash_pair(const Digest32& left, const Digest32& right)
{
    std::array<std::uint8_t, 64> buf{};
    std::copy(left.bytes().begin(), left.bytes().end(), buf.begin());
    std::copy(right.bytes().begin(), right.bytes().end(), buf.begin() + 32);
    return Digest32(crypto::double_sha256(buf));
}

std::size_t MerklePath::index_from_sides() const
{
    std::size_t index = 0;
    for (std::size_t j = 0; j < siblings.size() && j < 8 * sizeof(std::size_t); ++j) {
        if (siblings[j].side == SiblingSide::left) index |= std::size_t{1} << j;
    }
    return index;
}

MerkleTree::MerkleTree(std::vector<Digest32> leaves) : m_leaf_count(leaves.size())
{
    if (leaves.empty()) throw DomainError("a Merkle tree needs at least one leaf");

    m_levels.push_back(std::move(leaves));
    while (m_levels.back().size() > 1) {
        auto& row = m_levels.back();
        if (row.size() % 2 != 0) row.push_back(row.back());
        std::vector<Digest32> parents;
        parents.reserve(row.size() / 2);
        for (std::size_t i = 0; i < row.size(); i += 2) parents.push_back(hash_pair(row[i], row[i + 1]));
        m_levels.push_back(std::move(parents));
    }
}

MerklePath prove_inclusion(const MerkleTree& tree, std::size_t leaf_index)
{
    if (leaf_index >= tree.leaf_count()) {
        throw DomainError("leaf index " + std::to_string(leaf_index) + " out of range for "
                          + std::to_string(tree.leaf_count()) + " leaves");
    }
    MerklePath path;
    path.leaf_index = leaf_index;
    std::size_t index = leaf_index;
    const auto& levels = tree.levels();
    for (std::size_t level = 0; level + 1 < levels.size(); ++level) {
        const bool is_right_child = (index & 1) != 0;
        const std::size_t sibling = is_right_child ? index - 1 : index + 1;
        path.siblings.push_back({levels[level][sibling], is_right_child ? SiblingSide::left : SiblingSide::right});
        index >>= 1;
    }
    return path;
}

bool verify_inclusion(const Digest32& leaf, const MerklePath& path, const Digest32& root) noexcept
{
    if (path.siblings.size() >= 8 * sizeof(std::size_t)) return false;
    if ((path.leaf_index >> path.siblings.size()) != 0) return false;
    if (path.index_from_sides() != path.leaf_index) return false;

    try {
        Digest32 node = leaf;
        for (const auto& step : path.siblings) {
            node = step.side == SiblingSide::left ? hash_pair(step.sibling, node) : hash_pair(node, step.sibling);
        }
        return node == root;
    } catch (...) {
        return false;
    }
}

} // namespace dsrisk
