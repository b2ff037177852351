#pragma once

// Aperiodic and periodic correlations, correlation sums, and the defining
// predicates: complementary set, complete complementary code (CCC),
// N-shift cross-orthogonal family (N-CO-SF), and the zone width of a
// Z-connectable CCC.
//
//   R_{s,t}(tau) = sum_l s(l) * conj(t(l + tau)),   t(i) = 0 outside [0, L_t)
//   R_{S,T}(tau) = sum_n R_{s_n, t_n}(tau)          (pairing strictly by index)
//
// Exact families are decided without tolerance. Approximate families treat
// |residual| <= tol * max(1, E) as zero, E being the larger energy involved.

#include "ccc/detail/exact_kernel.hpp"
#include "ccc/model.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace ccc {

inline constexpr double kDefaultTolerance = 1e-9;

/// R_{s,t}(tau) over tau in [-(L_s - 1), L_t - 1]; zero outside that range.
struct CorrelationProfile {
    long long first_shift = 0;
    std::vector<Scalar> values;

    long long last_shift() const { return first_shift + static_cast<long long>(values.size()) - 1; }
    Scalar at(long long tau) const {
        if (tau < first_shift || tau > last_shift()) return Scalar::zero(values.front().mode());
        return values[static_cast<std::size_t>(tau - first_shift)];
    }
};

namespace detail {

inline void check_modes(const Sequence& s, const Sequence& t) {
    if (s.mode() != t.mode()) throw precondition_error("correlation: operands differ in scalar mode");
}

inline Scalar corr_pair(const Sequence& s, const Sequence& t, long long tau, bool periodic) {
    check_modes(s, t);
    if (!s.is_exact()) {
        std::complex<double> acc{0.0, 0.0};
        const auto lt = static_cast<long long>(t.length());
        for (std::size_t l = 0; l < s.length(); ++l) {
            long long i = static_cast<long long>(l) + tau;
            if (periodic) i = ((i % lt) + lt) % lt;
            if (i < 0 || i >= lt) continue;
            acc += s[l].approx() * std::conj(t[static_cast<std::size_t>(i)].approx());
        }
        return Scalar(acc);
    }
    const std::size_t k = common_order(t.entries(), common_order(s.entries()));
    SparseExact a(s.entries(), k);
    SparseExact b(t.entries(), k);
    std::vector<BigInt> acc(k, BigInt(0));
    accumulate_corr(a, b, tau, acc, periodic);
    return finish(acc, k);
}

/// Correlation evaluator over one family. Exact entries are promoted once to
/// the family's ring order; callers add pairwise correlations and take sums.
class CorrEngine {
public:
    explicit CorrEngine(const SequenceFamily& f) : family_(f), exact_(f.is_exact()) {
        if (exact_) {
            order_ = f.ring_order();
            acc_.assign(order_, BigInt(0));
            for (const auto& set : f) {
                std::vector<SparseExact> row;
                for (const auto& seq : set) row.emplace_back(seq.entries(), order_);
                views_.push_back(std::move(row));
            }
        }
        for (const auto& set : f) energies_.push_back(std::abs(family_energy(set).to_complex()));
    }

    void add(std::size_t m, std::size_t n, std::size_t mp, std::size_t np, long long tau) {
        if (exact_) {
            accumulate_corr(views_[m][n], views_[mp][np], tau, acc_);
            return;
        }
        const Sequence& s = family_.at(m, n);
        const Sequence& t = family_.at(mp, np);
        const auto lt = static_cast<long long>(t.length());
        for (std::size_t l = 0; l < s.length(); ++l) {
            const long long i = static_cast<long long>(l) + tau;
            if (i < 0 || i >= lt) continue;
            approx_acc_ += s[l].approx() * std::conj(t[static_cast<std::size_t>(i)].approx());
        }
    }

    Scalar take() {
        if (exact_) return finish(acc_, order_);
        const Scalar r(approx_acc_);
        approx_acc_ = {0.0, 0.0};
        return r;
    }

    Scalar sum(std::size_t m, std::size_t mp, long long tau) {
        for (std::size_t n = 0; n < family_.set_size(); ++n) add(m, n, mp, n, tau);
        return take();
    }

    /// Zero test for a residual involving sets m and mp.
    bool vanishes(const Scalar& v, std::size_t m, std::size_t mp, double tol) const {
        if (v.is_exact()) return v.is_zero();
        return v.is_zero(tol * std::max({1.0, energies_[m], energies_[mp]}));
    }

private:
    const SequenceFamily& family_;
    bool exact_;
    std::size_t order_ = 1;
    std::vector<std::vector<SparseExact>> views_;
    std::vector<BigInt> acc_;
    std::complex<double> approx_acc_{0.0, 0.0};
    std::vector<double> energies_;
};

} // namespace detail

inline Scalar acorr(const Sequence& s, const Sequence& t, long long tau) {
    return detail::corr_pair(s, t, tau, false);
}

/// Periodic correlation; index l + tau is taken modulo L.
inline Scalar pcorr(const Sequence& s, const Sequence& t, long long tau) {
    if (s.length() != t.length()) {
        throw precondition_error("pcorr: lengths differ (" + std::to_string(s.length()) + " vs " +
                                 std::to_string(t.length()) + ")");
    }
    return detail::corr_pair(s, t, tau, true);
}

inline CorrelationProfile acorr_profile(const Sequence& s, const Sequence& t) {
    CorrelationProfile p;
    p.first_shift = -static_cast<long long>(s.length()) + 1;
    for (long long tau = p.first_shift; tau < static_cast<long long>(t.length()); ++tau)
        p.values.push_back(acorr(s, t, tau));
    return p;
}

inline Scalar corr_sum(const SequenceSet& a, const SequenceSet& b, long long tau) {
    if (a.size() != b.size()) {
        throw precondition_error("corr_sum: set sizes differ (" + std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()) + ")");
    }
    Scalar total = Scalar::zero(a.mode());
    for (std::size_t n = 0; n < a.size(); ++n) total += acorr(a[n], b[n], tau);
    return total.is_exact() ? Scalar(total.exact().normalized()) : total;
}

inline CorrelationProfile corr_sum_profile(const SequenceSet& a, const SequenceSet& b) {
    if (a.size() != b.size()) throw precondition_error("corr_sum_profile: set sizes differ");
    const SequenceFamily f{a, b};
    detail::CorrEngine eng(f);
    CorrelationProfile p;
    p.first_shift = -static_cast<long long>(a.length()) + 1;
    for (long long tau = p.first_shift; tau < static_cast<long long>(b.length()); ++tau)
        p.values.push_back(eng.sum(0, 1, tau));
    return p;
}

/// What a family claims to be.
struct FamilyKind {
    enum class Tag { raw, cosf, ccc };
    Tag tag = Tag::raw;
    std::size_t shift = 0; // N of an N-CO-SF

    static FamilyKind raw() { return {}; }
    static FamilyKind ccc() { return {Tag::ccc, 0}; }
    static FamilyKind cosf(std::size_t n) { return {Tag::cosf, n}; }

    /// "raw", "ccc" or "cosf:N".
    static std::optional<FamilyKind> parse(const std::string& s) {
        if (s == "raw") return raw();
        if (s == "ccc") return ccc();
        if (s.rfind("cosf:", 0) == 0) {
            const std::string num = s.substr(5);
            if (num.empty() || num.size() > 9 || num.find_first_not_of("0123456789") != std::string::npos)
                return std::nullopt;
            const auto n = std::stoull(num);
            if (n == 0) return std::nullopt;
            return cosf(n);
        }
        return std::nullopt;
    }

    std::string to_string() const {
        switch (tag) {
        case Tag::raw: return "raw";
        case Tag::ccc: return "ccc";
        case Tag::cosf: return "cosf:" + std::to_string(shift);
        }
        return "raw";
    }

    friend bool operator==(const FamilyKind&, const FamilyKind&) = default;
};

struct ShiftValue {
    long long shift;
    Scalar value;
    bool violation;
};

/// Correlation sum of sets (first, second) at every examined shift.
struct PairProfile {
    std::size_t first;
    std::size_t second;
    std::vector<ShiftValue> values;
};

struct Violation {
    std::size_t first;
    std::size_t second;
    long long shift;
    Scalar residual;
};

/// Outcome of a predicate. Holds every examined residual; the verdict is
/// derived from them and from structural issues.
struct VerificationReport {
    std::string kind;
    std::size_t family_size = 0;
    std::size_t set_size = 0;
    std::set<std::size_t> lengths;
    std::vector<std::string> issues;
    std::vector<PairProfile> profiles;

    std::vector<Violation> violations() const {
        std::vector<Violation> out;
        for (const auto& p : profiles)
            for (const auto& v : p.values)
                if (v.violation) out.push_back({p.first, p.second, v.shift, v.value});
        return out;
    }

    bool passed() const {
        if (!issues.empty()) return false;
        for (const auto& p : profiles)
            for (const auto& v : p.values)
                if (v.violation) return false;
        return true;
    }

    explicit operator bool() const { return passed(); }
};

namespace detail {

inline VerificationReport make_report(std::string kind, const SequenceFamily& f) {
    VerificationReport r;
    r.kind = std::move(kind);
    r.family_size = f.size();
    r.set_size = f.set_size();
    r.lengths = f.length_set();
    return r;
}

/// Sums R_{S^m, S^mp}(tau) for shifts in [-(L_m - 1), L_mp - 1] with tau % step == 0.
/// Every nonzero residual is a violation except the energy term (m == mp, tau == 0).
inline PairProfile scan_pair(CorrEngine& eng, const SequenceFamily& f, std::size_t m, std::size_t mp,
                             long long step, double tol) {
    PairProfile p{m, mp, {}};
    const auto lo = -static_cast<long long>(f[m].length()) + 1;
    const auto hi = static_cast<long long>(f[mp].length()) - 1;
    long long start = lo;
    if (start % step != 0) start += (-start) % step; // first multiple of step >= lo
    for (long long tau = start; tau <= hi; tau += step) {
        Scalar v = eng.sum(m, mp, tau);
        const bool peak = (m == mp && tau == 0);
        const bool bad = !peak && !eng.vanishes(v, m, mp, tol);
        p.values.push_back({tau, std::move(v), bad});
    }
    return p;
}

} // namespace detail

/// Complementary set: R_S(tau) == 0 for every tau != 0.
inline VerificationReport is_complementary_set(const SequenceSet& s, double tol = kDefaultTolerance) {
    const SequenceFamily f{s};
    auto r = detail::make_report("complementary-set", f);
    detail::CorrEngine eng(f);
    r.profiles.push_back(detail::scan_pair(eng, f, 0, 0, 1, tol));
    return r;
}

/// Complete complementary code: every set is a complementary set and every
/// pair of distinct sets has an identically vanishing cross-correlation sum.
/// Pairs are scanned for m <= m'; the rest follow by Hermitian symmetry.
inline VerificationReport is_ccc(const SequenceFamily& c, double tol = kDefaultTolerance) {
    auto r = detail::make_report("ccc", c);
    detail::CorrEngine eng(c);
    for (std::size_t m = 0; m < c.size(); ++m)
        for (std::size_t mp = m; mp < c.size(); ++mp) r.profiles.push_back(detail::scan_pair(eng, c, m, mp, 1, tol));
    if (c.size() > c.set_size()) {
        r.issues.push_back("family size " + std::to_string(c.size()) + " exceeds set size " +
                           std::to_string(c.set_size()));
    }
    return r;
}

/// N-shift cross-orthogonality of a family of single-sequence sets: lengths
/// divisible by N, auto-correlations vanish at nonzero multiples of N, and
/// cross-correlations vanish at every multiple of N including zero.
inline VerificationReport is_n_co_sf(const SequenceFamily& f, std::size_t n, double tol = kDefaultTolerance) {
    if (n == 0) throw precondition_error("is_n_co_sf: shift parameter must be positive");
    if (f.set_size() != 1) {
        throw precondition_error("is_n_co_sf: every set must hold exactly one sequence (found " +
                                 std::to_string(f.set_size()) + ")");
    }
    auto r = detail::make_report("cosf:" + std::to_string(n), f);
    for (std::size_t m = 0; m < f.size(); ++m) {
        if (f[m].length() % n != 0) {
            r.issues.push_back("sequence " + std::to_string(m) + " has length " + std::to_string(f[m].length()) +
                               ", not divisible by " + std::to_string(n));
        }
    }
    if (f.size() > n) {
        r.issues.push_back("family size " + std::to_string(f.size()) + " exceeds " + std::to_string(n));
    }
    detail::CorrEngine eng(f);
    const auto step = static_cast<long long>(n);
    for (std::size_t m = 0; m < f.size(); ++m)
        for (std::size_t mp = m; mp < f.size(); ++mp) r.profiles.push_back(detail::scan_pair(eng, f, m, mp, step, tol));
    return r;
}

inline VerificationReport verify(const SequenceFamily& f, const FamilyKind& kind, double tol = kDefaultTolerance) {
    switch (kind.tag) {
    case FamilyKind::Tag::ccc: return is_ccc(f, tol);
    case FamilyKind::Tag::cosf: return is_n_co_sf(f, kind.shift, tol);
    case FamilyKind::Tag::raw: break;
    }
    throw precondition_error("verify: a raw family has no property to check");
}

/// Family-size bound: M <= N for an N-CO-SF, M <= set size for a CCC.
inline bool check_size_bound(const SequenceFamily& f, const FamilyKind& kind) {
    switch (kind.tag) {
    case FamilyKind::Tag::cosf: return f.size() <= kind.shift;
    case FamilyKind::Tag::ccc: return f.size() <= f.set_size();
    case FamilyKind::Tag::raw: return true;
    }
    return true;
}

/// Widest zone Z such that, for all sets m, m' and 0 < tau <= Z,
///     sum_n R_{c^m_{(n+1) mod N}, c^{m'}_n}(L - tau) == 0.
/// Shifts L - tau <= -L contribute nothing, so the result is capped at 2L - 1.
inline std::size_t zccc_zone(const SequenceFamily& c, double tol = kDefaultTolerance) {
    if (c.length_set().size() != 1) throw precondition_error("zccc_zone: all sequences must share one length");
    if (!is_ccc(c, tol).passed()) throw precondition_error("zccc_zone: input is not a complete complementary code");
    const auto len = static_cast<long long>(c[0].length());
    const std::size_t n_seq = c.set_size();
    detail::CorrEngine eng(c);
    for (long long tau = 1; tau <= 2 * len - 1; ++tau) {
        for (std::size_t m = 0; m < c.size(); ++m) {
            for (std::size_t mp = 0; mp < c.size(); ++mp) {
                for (std::size_t n = 0; n < n_seq; ++n) eng.add(m, (n + 1) % n_seq, mp, n, len - tau);
                if (!eng.vanishes(eng.take(), m, mp, tol)) return static_cast<std::size_t>(tau - 1);
            }
        }
    }
    return static_cast<std::size_t>(2 * len - 1);
}

} // namespace ccc
