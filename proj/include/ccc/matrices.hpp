#pragma once

// Unitary-like matrices: square U with U * U^H == U^H * U == alpha * I, alpha > 0.

#include "ccc/corr.hpp"
#include "ccc/model.hpp"

#include <bit>
#include <string>
#include <vector>

namespace ccc {

enum class MatrixKind { dft, hadamard, identity, custom };

inline const char* to_string(MatrixKind k) {
    switch (k) {
    case MatrixKind::dft: return "dft";
    case MatrixKind::hadamard: return "hadamard";
    case MatrixKind::identity: return "identity";
    case MatrixKind::custom: return "custom";
    }
    return "custom";
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

class UnitaryLike {
public:
    std::size_t dim() const noexcept { return rows_.size(); }
    MatrixKind kind() const noexcept { return kind_; }
    ScalarMode mode() const noexcept { return rows_.front().mode(); }
    const Scalar& alpha() const noexcept { return alpha_; }
    const Scalar& operator()(std::size_t m, std::size_t n) const { return rows_.at(m)[n]; }
    const Sequence& row(std::size_t m) const { return rows_.at(m); }
    const std::vector<Sequence>& rows() const noexcept { return rows_; }

    /// The rows as an (N, 1, {N}) family.
    SequenceFamily rows_as_family() const { return SequenceFamily::column(rows_); }

    std::vector<std::vector<Scalar>> entries() const {
        std::vector<std::vector<Scalar>> out;
        for (const auto& r : rows_) out.emplace_back(r.entries().begin(), r.entries().end());
        return out;
    }

private:
    UnitaryLike(MatrixKind kind, std::vector<Sequence> rows, Scalar alpha)
        : kind_(kind), rows_(std::move(rows)), alpha_(std::move(alpha)) {}

    friend UnitaryLike dft_matrix(std::size_t);
    friend UnitaryLike hadamard_matrix(std::size_t);
    friend UnitaryLike identity_matrix(std::size_t);
    friend UnitaryLike custom_matrix(const std::vector<std::vector<Scalar>>&, ScalarMode, double);

    MatrixKind kind_;
    std::vector<Sequence> rows_;
    Scalar alpha_;
};

/// F_N = [W_N^{mn}], W_N = exp(-2*pi*i/N), entries exact in Z[zeta_N]; alpha = N.
inline UnitaryLike dft_matrix(std::size_t n) {
    if (n == 0) throw precondition_error("dft_matrix: dimension must be positive");
    std::vector<Sequence> rows;
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<Scalar> r;
        for (std::size_t k = 0; k < n; ++k) r.push_back(Scalar::root(n, (m * k) % n));
        rows.emplace_back(std::move(r));
    }
    return UnitaryLike(MatrixKind::dft, std::move(rows), Scalar::integer(static_cast<long long>(n)));
}

/// Sylvester construction H_{2m} = [[H_m, H_m], [H_m, -H_m]], H_1 = [1]; alpha = N.
inline UnitaryLike hadamard_matrix(std::size_t n) {
    if (!is_power_of_two(n)) throw precondition_error("hadamard_matrix: dimension " + std::to_string(n) +
                                                      " is not a power of two");
    std::vector<Sequence> rows;
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<Scalar> r;
        // Entry (m, k) is (-1)^{popcount(m & k)}.
        for (std::size_t k = 0; k < n; ++k) r.push_back(Scalar::integer(std::popcount(m & k) % 2 ? -1 : 1));
        rows.emplace_back(std::move(r));
    }
    return UnitaryLike(MatrixKind::hadamard, std::move(rows), Scalar::integer(static_cast<long long>(n)));
}

inline UnitaryLike identity_matrix(std::size_t n) {
    if (n == 0) throw precondition_error("identity_matrix: dimension must be positive");
    std::vector<Sequence> rows;
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<Scalar> r(n, Scalar::integer(0));
        r[m] = Scalar::integer(1);
        rows.emplace_back(std::move(r));
    }
    return UnitaryLike(MatrixKind::identity, std::move(rows), Scalar::integer(1));
}

/// Validates U * U^H == alpha * I and U^H * U == alpha * I with alpha taken
/// from (U * U^H)(0, 0). Approximate matrices compare within tol * alpha.
inline UnitaryLike custom_matrix(const std::vector<std::vector<Scalar>>& entries, ScalarMode mode,
                                 double tol = kDefaultTolerance) {
    const std::size_t n = entries.size();
    if (n == 0) throw precondition_error("custom_matrix: empty matrix");
    for (std::size_t m = 0; m < n; ++m) {
        if (entries[m].size() != n) {
            throw precondition_error("custom_matrix: row " + std::to_string(m) + " has " +
                                     std::to_string(entries[m].size()) + " entries, expected " + std::to_string(n));
        }
        for (const auto& e : entries[m]) {
            if (e.mode() != mode) {
                throw precondition_error("custom_matrix: row " + std::to_string(m) + " is not in " +
                                         to_string(mode) + " mode");
            }
        }
    }
    std::vector<Sequence> rows;
    std::vector<Sequence> cols;
    for (std::size_t m = 0; m < n; ++m) {
        rows.emplace_back(entries[m]);
        std::vector<Scalar> c;
        for (std::size_t k = 0; k < n; ++k) c.push_back(entries[k][m]);
        cols.emplace_back(std::move(c));
    }

    const Scalar alpha = acorr(rows[0], rows[0], 0);
    if (alpha.is_zero()) throw precondition_error("custom_matrix: row 0 is zero, alpha must be positive");
    const double scale = std::abs(alpha.to_complex());
    auto check = [&](const std::vector<Sequence>& vecs, const char* what) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const Scalar ip = acorr(vecs[i], vecs[j], 0);
                const Scalar expected = (i == j) ? alpha : Scalar::zero(mode);
                if (!ip.equals(expected, tol * scale)) {
                    throw precondition_error(std::string("custom_matrix: ") + what + " (" + std::to_string(i) + ", " +
                                             std::to_string(j) + ") inner product is " + ip.to_string() +
                                             ", expected " + expected.to_string());
                }
            }
        }
    };
    check(rows, "row");
    check(cols, "column");
    return UnitaryLike(MatrixKind::custom, std::move(rows), alpha);
}

/// Hadamard for powers of two, DFT otherwise.
inline UnitaryLike default_matrix(std::size_t n) { return is_power_of_two(n) ? hadamard_matrix(n) : dft_matrix(n); }

} // namespace ccc
