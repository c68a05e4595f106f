// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRISK_MERKLE_HPP
#define DSRISK_MERKLE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Transaction identities and binary Merkle trees over them.
//
// Every internal node is SHA256(SHA256(left || right)). A row with an odd
// number of nodes (other than the root row) is padded by repeating its last
// node, and the padding is stored in the tree. A single leaf is its own root.

namespace dsrisk {

/// Exactly 32 raw bytes, rendered as hex in natural byte order.
class Digest32
{
public:
    Digest32() = default;
    explicit Digest32(const std::array<std::uint8_t, 32>& bytes) : m_bytes(bytes) {}

    /// Throws MalformedInputError unless `bytes` has exactly 32 elements.
    static Digest32 from_span(std::span<const std::uint8_t> bytes);
    /// Throws MalformedInputError unless `hex` is 64 hex characters.
    static Digest32 from_hex(std::string_view hex);

    std::string hex() const;
    const std::array<std::uint8_t, 32>& bytes() const noexcept { return m_bytes; }
    std::array<std::uint8_t, 32>& bytes() noexcept { return m_bytes; }

    friend bool operator==(const Digest32&, const Digest32&) = default;
    friend auto operator<=>(const Digest32&, const Digest32&) = default;

private:
    std::array<std::uint8_t, 32> m_bytes{};
};

/// SHA256(SHA256(message)).
Digest32 txid(std::span<const std::uint8_t> raw_message);

/// SHA256(SHA256(left || right)).
Digest32 hash_pair(const Digest32& left, const Digest32& right);

enum class SiblingSide : std::uint8_t { left, right };

struct PathStep
{
    Digest32 sibling;
    SiblingSide side = SiblingSide::right;

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct MerklePath
{
    std::size_t leaf_index = 0;
    std::vector<PathStep> siblings;

    /// Leaf position implied by the side flags (bit j set when the step-j
    /// sibling is on the left).
    std::size_t index_from_sides() const;

    friend bool operator==(const MerklePath&, const MerklePath&) = default;
};

class MerkleTree
{
public:
    /// Throws DomainError on an empty leaf list.
    explicit MerkleTree(std::vector<Digest32> leaves);

    const Digest32& root() const noexcept { return m_levels.back().front(); }
    std::size_t leaf_count() const noexcept { return m_leaf_count; }

    /// Rows bottom-up, including duplicated padding nodes. levels().front()
    /// holds the (padded) leaves and levels().back() the root alone.
    const std::vector<std::vector<Digest32>>& levels() const noexcept { return m_levels; }

    /// The caller-supplied leaves, without padding.
    std::span<const Digest32> leaves() const noexcept { return {m_levels.front().data(), m_leaf_count}; }

private:
    std::size_t m_leaf_count;
    std::vector<std::vector<Digest32>> m_levels;
};

inline MerkleTree build_tree(std::vector<Digest32> leaves) { return MerkleTree(std::move(leaves)); }

/// Sibling path from leaf `leaf_index` to the root. Throws DomainError when
/// the index is out of range.
MerklePath prove_inclusion(const MerkleTree& tree, std::size_t leaf_index);

/// True iff folding `leaf` through `path` reproduces `root` and the side
/// flags agree with path.leaf_index. Never throws.
bool verify_inclusion(const Digest32& leaf, const MerklePath& path, const Digest32& root) noexcept;

} // namespace dsrisk

#endif // DSRISK_MERKLE_HPP
