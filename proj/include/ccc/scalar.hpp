#pragma once

#include "ccc/cyclo.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <variant>

namespace ccc {

enum class ScalarMode { exact, approx };

inline const char* to_string(ScalarMode m) { return m == ScalarMode::exact ? "exact" : "approx"; }

/// A sequence entry: an exact cyclotomic integer or a double-precision complex.
/// Arithmetic between the two modes is refused.
class Scalar {
public:
    Scalar() = default; // exact zero
    Scalar(CycloNum v) : value_(std::move(v)) {}
    Scalar(std::complex<double> v) : value_(v) {}

    static Scalar integer(long long v) { return Scalar(CycloNum(BigInt(v))); }
    static Scalar root(std::size_t order, std::size_t exponent) { return Scalar(CycloNum::root_of_unity(order, exponent)); }
    static Scalar zero(ScalarMode m) {
        return m == ScalarMode::exact ? Scalar() : Scalar(std::complex<double>{0.0, 0.0});
    }
    static Scalar one(ScalarMode m) {
        return m == ScalarMode::exact ? integer(1) : Scalar(std::complex<double>{1.0, 0.0});
    }

    ScalarMode mode() const noexcept { return is_exact() ? ScalarMode::exact : ScalarMode::approx; }
    bool is_exact() const noexcept { return std::holds_alternative<CycloNum>(value_); }

    const CycloNum& exact() const {
        if (auto* p = std::get_if<CycloNum>(&value_)) return *p;
        throw precondition_error("Scalar: approximate value has no exact form");
    }
    std::complex<double> approx() const {
        if (auto* p = std::get_if<std::complex<double>>(&value_)) return *p;
        throw precondition_error("Scalar: exact value accessed as approximate");
    }

    std::complex<double> to_complex() const { return is_exact() ? exact().to_complex() : approx(); }

    /// Exact values are tested exactly; approximate ones against |v| <= tol.
    bool is_zero(double tol = 0.0) const {
        if (is_exact()) return exact().is_zero();
        return std::abs(approx()) <= tol;
    }

    Scalar conj() const {
        if (is_exact()) return Scalar(exact().conj());
        return Scalar(std::conj(approx()));
    }

    Scalar operator-() const {
        if (is_exact()) return Scalar(-exact());
        return Scalar(-approx());
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        check_same(a, b);
        if (a.is_exact()) return Scalar(a.exact() + b.exact());
        return Scalar(a.approx() + b.approx());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        check_same(a, b);
        if (a.is_exact()) return Scalar(a.exact() - b.exact());
        return Scalar(a.approx() - b.approx());
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        check_same(a, b);
        if (a.is_exact()) return Scalar(a.exact() * b.exact());
        return Scalar(a.approx() * b.approx());
    }
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    /// Value equality. Approximate values compare within `tol`.
    bool equals(const Scalar& other, double tol = 0.0) const { return (*this - other).is_zero(tol); }

    /// Exact value equality (tolerance zero in approx mode).
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.equals(b); }

    std::string to_string() const {
        if (is_exact()) return exact().to_string();
        const auto v = approx();
        return "(" + std::to_string(v.real()) + (v.imag() < 0 ? "" : "+") + std::to_string(v.imag()) + "i)";
    }

private:
    static void check_same(const Scalar& a, const Scalar& b) {
        if (a.is_exact() != b.is_exact()) throw precondition_error("Scalar: mixing exact and approximate values");
    }

    std::variant<CycloNum, std::complex<double>> value_;
};

inline Scalar conj(const Scalar& s) { return s.conj(); }

} // namespace ccc
