#include "padicosc/phase_sum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace padicosc {

namespace {
constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 22;
}

PhaseMultiset::PhaseMultiset(Prime p, unsigned exponent) : p_(p), exponent_(exponent), modulus_(1) {
    for (unsigned i = 0; i < exponent; ++i) {
        if (modulus_ > UINT64_MAX / p) throw std::overflow_error("phase denominator exceeds 64 bits");
        modulus_ *= p;
    }
    dense_ = modulus_ <= kDenseLimit;
    if (dense_) dense_counts_.assign(modulus_, 0);
}

void PhaseMultiset::add(std::uint64_t numerator, std::uint64_t count) {
    numerator %= modulus_;
    total_ += count;
    if (dense_)
        dense_counts_[numerator] += count;
    else
        sparse_counts_[numerator] += count;
}

void PhaseMultiset::merge(const PhaseMultiset& other) {
    if (other.p_ != p_ || other.exponent_ != exponent_)
        throw std::invalid_argument("merging phase multisets with different denominators");
    if (dense_) {
        for (std::uint64_t k = 0; k < modulus_; ++k) dense_counts_[k] += other.dense_counts_[k];
        total_ += other.total_;
    } else {
        for (const auto& [k, c] : other.sparse_counts_) add(k, c);
    }
}

std::uint64_t PhaseMultiset::count(std::uint64_t numerator) const {
    numerator %= modulus_;
    if (dense_) return dense_counts_[numerator];
    auto it = sparse_counts_.find(numerator);
    return it == sparse_counts_.end() ? 0 : it->second;
}

Complex PhaseMultiset::sum() const {
    long double re = 0, im = 0;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    auto accumulate = [&](std::uint64_t k, std::uint64_t c) {
        if (c == 0) return;
        long double a = static_cast<long double>(k) / static_cast<long double>(modulus_);
        if (a > 0.5L) a -= 1.0L;
        re += static_cast<long double>(c) * std::cos(two_pi * a);
        im += static_cast<long double>(c) * std::sin(two_pi * a);
    };
    if (dense_) {
        for (std::uint64_t k = 0; k < modulus_; ++k) accumulate(k, dense_counts_[k]);
    } else {
        for (const auto& [k, c] : sparse_counts_) accumulate(k, c);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace padicosc
