#pragma once

// Exact arithmetic in the cyclotomic ring Z[zeta_K], zeta_K = exp(-2*pi*i/K).
//
// A CycloNum stores the group-ring coefficients c_0..c_{K-1} of
//     sum_j c_j * zeta_K^j
// without reduction, so multiplication is a cyclic convolution and conjugation
// is the index map j -> (K - j) mod K. The representation is not unique
// (1 + zeta_3 + zeta_3^2 == 0); equality and zero tests reduce modulo the
// cyclotomic polynomial Phi_K first.

#include "ccc/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ccc {

using BigInt = boost::multiprecision::cpp_int;

/// Integer polynomial, coefficient of x^i at index i.
using IntPoly = std::vector<BigInt>;

/// Largest ring order any operand may be promoted to.
inline constexpr std::size_t kMaxOrder = 10000;

inline std::size_t order_lcm(std::size_t a, std::size_t b) {
    const std::size_t l = std::lcm(a, b);
    if (l > kMaxOrder) {
        throw precondition_error("cyclotomic order " + std::to_string(l) + " (lcm of " + std::to_string(a) +
                                 " and " + std::to_string(b) + ") exceeds the limit " +
                                 std::to_string(kMaxOrder));
    }
    return l;
}

namespace detail {

inline void poly_trim(IntPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    IntPoly r(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    poly_trim(r);
    return r;
}

/// Remainder of `p` modulo a monic polynomial, in place. Integer arithmetic
/// stays exact because the divisor is monic.
inline void poly_rem_monic(IntPoly& p, const IntPoly& monic) {
    const std::size_t d = monic.size() - 1;
    for (std::size_t i = p.size(); i-- > d;) {
        if (p[i] == 0) continue;
        const BigInt q = p[i];
        for (std::size_t j = 0; j <= d; ++j) p[i - d + j] -= q * monic[j];
    }
    if (p.size() > d) p.resize(d);
}

/// Exact quotient of `p` by a monic divisor; throws if the division leaves a remainder.
inline IntPoly poly_div_monic_exact(IntPoly p, const IntPoly& monic) {
    const std::size_t d = monic.size() - 1;
    if (p.size() <= d) throw error("poly_div_monic_exact: dividend degree below divisor degree");
    IntPoly q(p.size() - d, BigInt(0));
    for (std::size_t i = p.size(); i-- > d;) {
        const BigInt c = p[i];
        q[i - d] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= d; ++j) p[i - d + j] -= c * monic[j];
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (p[i] != 0) throw error("poly_div_monic_exact: nonzero remainder");
    }
    return q;
}

inline IntPoly compute_cyclotomic(std::size_t k);

inline const IntPoly& cyclotomic_cached(std::size_t k) {
    static std::mutex mu;
    static std::map<std::size_t, IntPoly> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(k); it != cache.end()) return it->second;
    }
    IntPoly p = compute_cyclotomic(k);
    std::lock_guard lock(mu);
    // std::map never invalidates references, so handing out `second` is fine.
    return cache.emplace(k, std::move(p)).first->second;
}

inline IntPoly compute_cyclotomic(std::size_t k) {
    // Phi_k = (x^k - 1) / prod_{d | k, d < k} Phi_d
    IntPoly xk(k + 1, BigInt(0));
    xk[0] = -1;
    xk[k] = 1;
    IntPoly denom{BigInt(1)};
    for (std::size_t d = 1; d < k; ++d) {
        if (k % d == 0) denom = poly_mul(denom, cyclotomic_cached(d));
    }
    return poly_div_monic_exact(std::move(xk), denom);
}

} // namespace detail

/// The K-th cyclotomic polynomial Phi_K, low-to-high coefficients.
inline IntPoly cyclotomic_polynomial(std::size_t k) {
    if (k == 0) throw precondition_error("cyclotomic_polynomial: order must be positive");
    return detail::cyclotomic_cached(k);
}

/// Element of Z[zeta_K] in unreduced group-ring form.
class CycloNum {
public:
    CycloNum() : order_(1), coeffs_{BigInt(0)} {}

    /// Rational integer `value`, order 1.
    explicit CycloNum(BigInt value) : order_(1), coeffs_{std::move(value)} {}

    CycloNum(std::size_t order, std::vector<BigInt> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
        if (order_ == 0) throw precondition_error("CycloNum: order must be positive");
        if (order_ > kMaxOrder) throw precondition_error("CycloNum: order exceeds limit");
        if (coeffs_.size() != order_) {
            throw precondition_error("CycloNum: expected " + std::to_string(order_) + " coefficients, got " +
                                     std::to_string(coeffs_.size()));
        }
    }

    /// coeff * zeta_order^exponent
    static CycloNum root_of_unity(std::size_t order, std::size_t exponent, BigInt coeff = 1) {
        if (order == 0) throw precondition_error("CycloNum: order must be positive");
        std::vector<BigInt> c(order, BigInt(0));
        c[exponent % order] = std::move(coeff);
        return CycloNum(order, std::move(c));
    }

    std::size_t order() const noexcept { return order_; }
    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
    const BigInt& coeff(std::size_t j) const { return coeffs_.at(j); }

    /// Same value viewed in Z[zeta_K'] for a multiple K' of the order.
    CycloNum promote(std::size_t new_order) const {
        if (new_order == order_) return *this;
        if (new_order == 0 || new_order % order_ != 0) {
            throw precondition_error("CycloNum::promote: " + std::to_string(new_order) + " is not a multiple of " +
                                     std::to_string(order_));
        }
        const std::size_t step = new_order / order_;
        std::vector<BigInt> c(new_order, BigInt(0));
        for (std::size_t j = 0; j < order_; ++j) c[j * step] = coeffs_[j];
        return CycloNum(new_order, std::move(c));
    }

    bool raw_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    /// Unique coordinates in the power basis 1, zeta, ..., zeta^{phi(K)-1}.
    std::vector<BigInt> reduced() const {
        std::vector<BigInt> p = coeffs_;
        detail::poly_rem_monic(p, detail::cyclotomic_cached(order_));
        return p;
    }

    bool is_zero() const {
        if (raw_zero()) return true;
        for (const auto& c : reduced())
            if (c != 0) return false;
        return true;
    }

    CycloNum conj() const {
        std::vector<BigInt> c(order_, BigInt(0));
        for (std::size_t j = 0; j < order_; ++j) c[(order_ - j) % order_] = coeffs_[j];
        return CycloNum(order_, std::move(c));
    }

    std::complex<double> to_complex() const {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < order_; ++j) {
            if (coeffs_[j] == 0) continue;
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(order_);
            acc += coeffs_[j].convert_to<double>() * std::polar(1.0, angle);
        }
        return acc;
    }

    /// Same representation at the smallest order it lives in: exponents all
    /// multiples of K/d collapse to order d.
    CycloNum simplified() const {
        std::size_t g = order_;
        for (std::size_t j = 0; j < order_; ++j)
            if (coeffs_[j] != 0) g = std::gcd(g, j);
        if (g == order_) return CycloNum(coeffs_[0]);
        if (g == 1) return *this;
        const std::size_t k = order_ / g;
        std::vector<BigInt> c(k, BigInt(0));
        for (std::size_t j = 0; j < k; ++j) c[j] = coeffs_[j * g];
        return CycloNum(k, std::move(c));
    }

    /// Reduced modulo Phi_K, then simplified. Zero becomes the order-1 zero.
    CycloNum normalized() const {
        std::vector<BigInt> r = reduced();
        r.resize(order_, BigInt(0));
        return CycloNum(order_, std::move(r)).simplified();
    }

    bool is_real() const { return (*this - conj()).is_zero(); }

    CycloNum operator-() const {
        CycloNum r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    CycloNum& operator+=(const CycloNum& rhs) {
        const std::size_t k = order_lcm(order_, rhs.order_);
        if (k != order_) *this = promote(k);
        const std::size_t step = k / rhs.order_;
        for (std::size_t j = 0; j < rhs.order_; ++j) {
            if (rhs.coeffs_[j] != 0) coeffs_[j * step] += rhs.coeffs_[j];
        }
        return *this;
    }

    CycloNum& operator-=(const CycloNum& rhs) {
        const std::size_t k = order_lcm(order_, rhs.order_);
        if (k != order_) *this = promote(k);
        const std::size_t step = k / rhs.order_;
        for (std::size_t j = 0; j < rhs.order_; ++j) {
            if (rhs.coeffs_[j] != 0) coeffs_[j * step] -= rhs.coeffs_[j];
        }
        return *this;
    }

    friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
    friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }

    friend CycloNum operator*(const CycloNum& a, const CycloNum& b) {
        const std::size_t k = order_lcm(a.order_, b.order_);
        const std::size_t sa = k / a.order_;
        const std::size_t sb = k / b.order_;
        std::vector<BigInt> c(k, BigInt(0));
        for (std::size_t i = 0; i < a.order_; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.order_; ++j) {
                if (b.coeffs_[j] == 0) continue;
                c[(i * sa + j * sb) % k] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return CycloNum(k, std::move(c));
    }

    CycloNum& operator*=(const CycloNum& rhs) { return *this = *this * rhs; }

    /// Value equality; representation-independent.
    friend bool operator==(const CycloNum& a, const CycloNum& b) { return (a - b).is_zero(); }

    std::string to_string() const {
        std::ostringstream os;
        os << "{order " << order_ << ": [";
        for (std::size_t j = 0; j < order_; ++j) os << (j ? ", " : "") << coeffs_[j];
        os << "]}";
        return os.str();
    }

private:
    std::size_t order_;
    std::vector<BigInt> coeffs_;
};

inline CycloNum conj(const CycloNum& a) { return a.conj(); }

} // namespace ccc
