#pragma once

// Correlation accumulation over exact scalars. Entries of both operands are
// promoted once to a shared ring order and stored as sparse (exponent, coeff)
// terms; each correlation then accumulates into a dense coefficient buffer.

#include "ccc/scalar.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ccc::detail {

struct Term {
    std::uint32_t exp;
    BigInt coeff;
};

inline std::size_t common_order(std::span<const Scalar> entries, std::size_t order = 1) {
    for (const auto& e : entries) order = order_lcm(order, e.exact().order());
    return order;
}

/// An exact sequence viewed at ring order `order` with zero terms dropped.
class SparseExact {
public:
    SparseExact(std::span<const Scalar> entries, std::size_t order) : order_(order) {
        offsets_.reserve(entries.size() + 1);
        offsets_.push_back(0);
        for (const auto& e : entries) {
            const CycloNum& c = e.exact();
            if (order % c.order() != 0) throw precondition_error("SparseExact: order is not a common multiple");
            const std::size_t step = order / c.order();
            for (std::size_t j = 0; j < c.order(); ++j) {
                if (c.coeffs()[j] != 0) terms_.push_back({static_cast<std::uint32_t>(j * step), c.coeffs()[j]});
            }
            offsets_.push_back(terms_.size());
        }
    }

    std::size_t size() const noexcept { return offsets_.size() - 1; }
    std::size_t order() const noexcept { return order_; }
    std::span<const Term> at(std::size_t l) const {
        return {terms_.data() + offsets_[l], terms_.data() + offsets_[l + 1]};
    }

private:
    std::size_t order_;
    std::vector<std::size_t> offsets_;
    std::vector<Term> terms_;
};

/// acc += s(l) * conj(t(l + tau)) summed over l, with t read cyclically when
/// `periodic` and zero-padded otherwise. `acc` has one slot per exponent.
inline void accumulate_corr(const SparseExact& s, const SparseExact& t, long long tau, std::vector<BigInt>& acc,
                            bool periodic = false) {
    const auto k = static_cast<std::uint32_t>(s.order());
    const long long ls = static_cast<long long>(s.size());
    const long long lt = static_cast<long long>(t.size());
    long long lo = 0;
    long long hi = ls;
    if (!periodic) {
        lo = std::max(0LL, -tau);
        hi = std::min(ls, lt - tau);
    }
    BigInt prod;
    for (long long l = lo; l < hi; ++l) {
        long long idx = l + tau;
        if (periodic) idx = ((idx % lt) + lt) % lt;
        const auto a = s.at(static_cast<std::size_t>(l));
        if (a.empty()) continue;
        const auto b = t.at(static_cast<std::size_t>(idx));
        for (const Term& x : a) {
            for (const Term& y : b) {
                const std::uint32_t e = (x.exp + k - y.exp) % k;
                prod = x.coeff;
                prod *= y.coeff;
                acc[e] += prod;
            }
        }
    }
}

inline Scalar finish(std::vector<BigInt>& acc, std::size_t order) {
    CycloNum v(order, std::move(acc));
    acc.assign(order, BigInt(0));
    return Scalar(v.normalized());
}

} // namespace ccc::detail
