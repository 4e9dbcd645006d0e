#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "equilog/arith.hpp"

namespace equilog {

// Weakly decreasing positive parts. Indexes both the irreducible
// representations of S_n and its conjugacy classes (as cycle types).
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p);

    int size() const;  // sum of parts
    int length() const { return static_cast<int>(parts.size()); }
    int part(size_t i) const { return i < parts.size() ? parts[i] : 0; }
    bool empty() const { return parts.empty(); }

    std::string str() const;  // comma-joined, "" for the empty partition
    static Partition parse(const std::string& s);

    bool operator==(const Partition&) const = default;
};

// Canonical order: by size, then reverse-lexicographic within a size, so
// partitions of n iterate [n], ..., [1,...,1].
bool partition_less(const Partition& a, const Partition& b);

struct PartitionLess {
    bool operator()(const Partition& a, const Partition& b) const { return partition_less(a, b); }
};

struct PartitionHash {
    size_t operator()(const Partition& p) const;
};

// All partitions of n in canonical (reverse-lexicographic) order.
std::vector<Partition> partitions(int n);

// z_mu = prod_j j^{m_j} m_j!, the centralizer order of cycle type mu.
Int z_factor(const Partition& mu);

// Number of permutations in S_n with cycle type mu: n!/z_mu.
Int class_size(const Partition& mu);

}  // namespace equilog
