#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "padicosc/padic.hpp"

namespace padicosc {

/// Multiset of exact phases k / p^K, k in [0, p^K).
///
/// Character sums are accumulated as integer counts per angle; the only
/// floating-point step is the final sum of counts times e^{2 pi i k/p^K}.
class PhaseMultiset {
public:
    PhaseMultiset(Prime p, unsigned exponent);

    Prime prime() const { return p_; }
    unsigned exponent() const { return exponent_; }
    std::uint64_t modulus() const { return modulus_; }

    void add(std::uint64_t numerator, std::uint64_t count = 1);
    /// Union of two multisets over the same denominator.
    void merge(const PhaseMultiset& other);

    std::uint64_t total() const { return total_; }
    /// Number of occurrences of the angle numerator / p^K.
    std::uint64_t count(std::uint64_t numerator) const;

    /// Sum of e^{2 pi i k/p^K} over the multiset, reduced in increasing angle order.
    Complex sum() const;

private:
    Prime p_;
    unsigned exponent_;
    std::uint64_t modulus_;
    std::uint64_t total_ = 0;
    bool dense_;
    std::vector<std::uint64_t> dense_counts_;
    std::map<std::uint64_t, std::uint64_t> sparse_counts_;
};

}  // namespace padicosc
