#pragma once

#include "chom/rational.hpp"

#include <vector>

namespace chom {

// Weakly decreasing positive parts.  The norm of a partition of k with
// parts k_1 >= ... >= k_r is  k_1 k^{k-1} + k_2 k^{k-2} + ... + k_r k^{k-r};
// it is injective on partitions of k and orders them totally.
struct Partition {
    std::vector<int> parts;

    int sum() const;
    int length() const { return static_cast<int>(parts.size()); }
    Int norm() const;
    std::string str() const; // "(2+1+1)", "()" for the empty partition

    bool operator==(const Partition& o) const { return parts == o.parts; }
};

// All partitions of k, strictly ordered by norm descending; k = 0 yields
// only the empty partition.
std::vector<Partition> partitions(int k);

} // namespace chom
