#pragma once

// Sequences, sequence sets and sequence families.
//
// A SequenceFamily is an ordered list of M sets of N sequences each; it doubles
// as an M x N matrix whose (m, n) entry is sequence n of set m. Sets within a
// family may have different lengths. Order is meaningful (correlation sums pair
// sequences by index); identification up to indexing is provided separately by
// canonical_form / equal_up_to_indexing.

#include "ccc/detail/exact_kernel.hpp"
#include "ccc/scalar.hpp"

#include <algorithm>
#include <compare>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccc {

/// Address of a cell in a multi-level partition: (p_1, ..., p_q), q >= 1.
class PathVector {
public:
    PathVector(std::initializer_list<std::size_t> parts) : parts_(parts) { check(); }
    explicit PathVector(std::vector<std::size_t> parts) : parts_(std::move(parts)) { check(); }

    std::size_t depth() const noexcept { return parts_.size(); }
    std::size_t operator[](std::size_t i) const { return parts_.at(i); }
    const std::vector<std::size_t>& parts() const noexcept { return parts_; }

    PathVector child(std::size_t p) const {
        auto v = parts_;
        v.push_back(p);
        return PathVector(std::move(v));
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
        return s + ")";
    }

    friend auto operator<=>(const PathVector&, const PathVector&) = default;

private:
    void check() const {
        if (parts_.empty()) throw precondition_error("PathVector: depth must be at least 1");
    }
    std::vector<std::size_t> parts_;
};

class Sequence {
public:
    explicit Sequence(std::vector<Scalar> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw precondition_error("Sequence: length must be at least 1");
        const bool exact = entries_.front().is_exact();
        for (const auto& e : entries_) {
            if (e.is_exact() != exact) throw precondition_error("Sequence: mixed exact and approximate entries");
        }
    }

    /// "+-+-" style literal; '+'/'-' are +1/-1 and '0' is zero. Unicode minus is accepted.
    static Sequence from_signs(std::string_view signs) {
        std::vector<Scalar> v;
        for (std::size_t i = 0; i < signs.size(); ++i) {
            const char c = signs[i];
            if (c == '+') {
                v.push_back(Scalar::integer(1));
            } else if (c == '-') {
                v.push_back(Scalar::integer(-1));
            } else if (c == '0') {
                v.push_back(Scalar::integer(0));
            } else if (signs.substr(i, 3) == "\xE2\x88\x92") { // U+2212
                v.push_back(Scalar::integer(-1));
                i += 2;
            } else if (c != ' ') {
                throw precondition_error(std::string("Sequence::from_signs: unexpected character '") + c + "'");
            }
        }
        return Sequence(std::move(v));
    }

    static Sequence zeros(std::size_t length, ScalarMode mode = ScalarMode::exact) {
        return Sequence(std::vector<Scalar>(length, Scalar::zero(mode)));
    }

    std::size_t length() const noexcept { return entries_.size(); }
    ScalarMode mode() const noexcept { return entries_.front().mode(); }
    bool is_exact() const noexcept { return mode() == ScalarMode::exact; }
    const Scalar& operator[](std::size_t i) const { return entries_[i]; }
    std::span<const Scalar> entries() const noexcept { return entries_; }

    /// s(i) with zero outside [0, L).
    Scalar at_or_zero(long long i) const {
        if (i < 0 || i >= static_cast<long long>(entries_.size())) return Scalar::zero(mode());
        return entries_[static_cast<std::size_t>(i)];
    }

    Sequence scaled(const Scalar& c) const {
        std::vector<Scalar> v;
        v.reserve(entries_.size());
        for (const auto& e : entries_) v.push_back(c * e);
        return Sequence(std::move(v));
    }

    bool is_all_zero(double tol = 0.0) const {
        return std::all_of(entries_.begin(), entries_.end(), [&](const Scalar& s) { return s.is_zero(tol); });
    }

    /// Entry-wise value equality (exact, or within `tol` for approx entries).
    bool equals(const Sequence& o, double tol = 0.0) const {
        if (length() != o.length()) return false;
        for (std::size_t i = 0; i < length(); ++i)
            if (!entries_[i].equals(o.entries_[i], tol)) return false;
        return true;
    }
    friend bool operator==(const Sequence& a, const Sequence& b) { return a.equals(b); }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < entries_.size(); ++i) s += (i ? " " : "") + entries_[i].to_string();
        return s + ")";
    }

private:
    std::vector<Scalar> entries_;
};

/// Concatenation (v_0 v_1 ... v_{K-1}).
inline Sequence concat(std::span<const Sequence> parts) {
    std::vector<Scalar> v;
    for (const auto& p : parts) v.insert(v.end(), p.entries().begin(), p.entries().end());
    return Sequence(std::move(v));
}

/// (N, L) sequence set: N >= 1 sequences of one common length.
class SequenceSet {
public:
    SequenceSet(std::initializer_list<Sequence> seqs) : SequenceSet(std::vector<Sequence>(seqs)) {}
    explicit SequenceSet(std::vector<Sequence> seqs) : seqs_(std::move(seqs)) {
        if (seqs_.empty()) throw precondition_error("SequenceSet: needs at least one sequence");
        for (const auto& s : seqs_) {
            if (s.length() != seqs_.front().length()) {
                throw precondition_error("SequenceSet: member lengths differ (" + std::to_string(s.length()) + " vs " +
                                         std::to_string(seqs_.front().length()) + ")");
            }
            if (s.mode() != seqs_.front().mode()) throw precondition_error("SequenceSet: mixed scalar modes");
        }
    }

    std::size_t size() const noexcept { return seqs_.size(); }
    std::size_t length() const noexcept { return seqs_.front().length(); }
    ScalarMode mode() const noexcept { return seqs_.front().mode(); }
    const Sequence& operator[](std::size_t n) const { return seqs_[n]; }
    const std::vector<Sequence>& sequences() const noexcept { return seqs_; }
    auto begin() const { return seqs_.begin(); }
    auto end() const { return seqs_.end(); }

private:
    std::vector<Sequence> seqs_;
};

/// (M, N, lengthSet) sequence family.
class SequenceFamily {
public:
    SequenceFamily(std::initializer_list<SequenceSet> sets) : SequenceFamily(std::vector<SequenceSet>(sets)) {}
    explicit SequenceFamily(std::vector<SequenceSet> sets) : sets_(std::move(sets)) {
        if (sets_.empty()) throw precondition_error("SequenceFamily: needs at least one set");
        for (const auto& s : sets_) {
            if (s.size() != sets_.front().size()) {
                throw precondition_error("SequenceFamily: set sizes differ (" + std::to_string(s.size()) + " vs " +
                                         std::to_string(sets_.front().size()) + ")");
            }
            if (s.mode() != sets_.front().mode()) throw precondition_error("SequenceFamily: mixed scalar modes");
        }
    }

    /// Family of single-sequence sets, the shape of a shift-orthogonal family.
    static SequenceFamily column(std::vector<Sequence> seqs) {
        std::vector<SequenceSet> sets;
        sets.reserve(seqs.size());
        for (auto& s : seqs) sets.push_back(SequenceSet(std::vector<Sequence>{std::move(s)}));
        return SequenceFamily(std::move(sets));
    }

    /// Family size M.
    std::size_t size() const noexcept { return sets_.size(); }
    /// Sequences per set N.
    std::size_t set_size() const noexcept { return sets_.front().size(); }
    ScalarMode mode() const noexcept { return sets_.front().mode(); }
    bool is_exact() const noexcept { return mode() == ScalarMode::exact; }

    const SequenceSet& operator[](std::size_t m) const { return sets_[m]; }
    const Sequence& at(std::size_t m, std::size_t n) const { return sets_.at(m)[n]; }
    const std::vector<SequenceSet>& sets() const noexcept { return sets_; }
    auto begin() const { return sets_.begin(); }
    auto end() const { return sets_.end(); }

    std::set<std::size_t> length_set() const {
        std::set<std::size_t> out;
        for (const auto& s : sets_) out.insert(s.length());
        return out;
    }

    /// All sequences, set-major.
    std::vector<Sequence> flatten() const {
        std::vector<Sequence> out;
        for (const auto& s : sets_) out.insert(out.end(), s.begin(), s.end());
        return out;
    }

    /// Smallest ring order holding every exact entry.
    std::size_t ring_order() const {
        std::size_t k = 1;
        if (!is_exact()) return k;
        for (const auto& set : sets_)
            for (const auto& seq : set) k = detail::common_order(seq.entries(), k);
        return k;
    }

private:
    std::vector<SequenceSet> sets_;
};

/// R_s(0) = sum_l |s(l)|^2.
inline Scalar energy(const Sequence& s) {
    if (!s.is_exact()) {
        double e = 0.0;
        for (const auto& x : s.entries()) e += std::norm(x.approx());
        return Scalar(std::complex<double>{e, 0.0});
    }
    const std::size_t k = detail::common_order(s.entries());
    detail::SparseExact view(s.entries(), k);
    std::vector<BigInt> acc(k, BigInt(0));
    detail::accumulate_corr(view, view, 0, acc);
    return detail::finish(acc, k);
}

inline Scalar family_energy(const SequenceSet& set) {
    Scalar total = Scalar::zero(set.mode());
    for (const auto& s : set) total += energy(s);
    if (total.is_exact()) return Scalar(total.exact().normalized());
    return total;
}

namespace detail {

/// Total order key of a sequence: length, then entry coordinates. Exact
/// entries use their unique power-basis coordinates at ring order `order`.
struct SeqKey {
    std::size_t length = 0;
    std::vector<BigInt> exact;
    std::vector<double> approx;

    friend bool operator<(const SeqKey& a, const SeqKey& b) {
        if (a.length != b.length) return a.length < b.length;
        if (a.exact != b.exact) return a.exact < b.exact;
        return a.approx < b.approx;
    }
    friend bool operator==(const SeqKey& a, const SeqKey& b) {
        return a.length == b.length && a.exact == b.exact && a.approx == b.approx;
    }
};

inline SeqKey sequence_key(const Sequence& s, std::size_t order) {
    SeqKey key;
    key.length = s.length();
    for (const auto& e : s.entries()) {
        if (e.is_exact()) {
            auto r = e.exact().promote(order).reduced();
            key.exact.insert(key.exact.end(), r.begin(), r.end());
        } else {
            const auto v = e.approx();
            key.approx.push_back(v.real());
            key.approx.push_back(v.imag());
        }
    }
    return key;
}

inline constexpr std::size_t kMaxCanonicalSetSize = 8;

/// Canonical representative of `f` with entry keys taken at ring `order`.
inline SequenceFamily canonical_form_at(const SequenceFamily& f, std::size_t order) {
    const std::size_t rows = f.size();
    const std::size_t cols = f.set_size();
    if (cols > kMaxCanonicalSetSize) {
        throw precondition_error("canonical_form: set size " + std::to_string(cols) + " exceeds the search limit " +
                                 std::to_string(kMaxCanonicalSetSize));
    }

    // Rank every entry by key so the permutation search runs on small integers.
    std::vector<SeqKey> keys;
    keys.reserve(rows * cols);
    for (const auto& set : f)
        for (const auto& seq : set) keys.push_back(sequence_key(seq, order));
    std::vector<std::size_t> idx(keys.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<std::size_t> rank(keys.size());
    std::size_t r = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i > 0 && !(keys[idx[i]] == keys[idx[i - 1]])) ++r;
        rank[idx[i]] = r;
    }

    std::vector<std::size_t> perm(cols);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::size_t>> best;
    std::vector<std::size_t> best_perm;
    std::vector<std::size_t> best_rows;
    std::vector<std::vector<std::size_t>> cand(rows, std::vector<std::size_t>(cols));
    std::vector<std::size_t> order_rows(rows);
    do {
        for (std::size_t m = 0; m < rows; ++m)
            for (std::size_t n = 0; n < cols; ++n) cand[m][n] = rank[m * cols + perm[n]];
        std::iota(order_rows.begin(), order_rows.end(), 0);
        std::stable_sort(order_rows.begin(), order_rows.end(),
                         [&](std::size_t a, std::size_t b) { return cand[a] < cand[b]; });
        std::vector<std::vector<std::size_t>> sorted;
        sorted.reserve(rows);
        for (auto m : order_rows) sorted.push_back(cand[m]);
        if (best.empty() || sorted < best) {
            best = std::move(sorted);
            best_perm = perm;
            best_rows = order_rows;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<SequenceSet> sets;
    sets.reserve(rows);
    for (auto m : best_rows) {
        std::vector<Sequence> seqs;
        seqs.reserve(cols);
        for (auto n : best_perm) seqs.push_back(f.at(m, n));
        sets.push_back(SequenceSet(std::move(seqs)));
    }
    return SequenceFamily(std::move(sets));
}

} // namespace detail

/// Representative of `f` under reordering of sets and one joint reordering of
/// sequence positions: the lexicographically least matrix, found by trying
/// every position permutation (set size <= 8) and sorting sets for each.
inline SequenceFamily canonical_form(const SequenceFamily& f) {
    return detail::canonical_form_at(f, f.ring_order());
}

/// True iff the families coincide up to set indexing and joint sequence indexing.
inline bool equal_up_to_indexing(const SequenceFamily& a, const SequenceFamily& b, double tol = 0.0) {
    if (a.size() != b.size() || a.set_size() != b.set_size()) {
        throw precondition_error("equal_up_to_indexing: families differ in shape");
    }
    if (a.mode() != b.mode()) throw precondition_error("equal_up_to_indexing: families differ in scalar mode");
    const std::size_t k = order_lcm(a.ring_order(), b.ring_order());
    const auto ca = detail::canonical_form_at(a, k);
    const auto cb = detail::canonical_form_at(b, k);
    for (std::size_t m = 0; m < ca.size(); ++m)
        for (std::size_t n = 0; n < ca.set_size(); ++n)
            if (!ca.at(m, n).equals(cb.at(m, n), tol)) return false;
    return true;
}

} // namespace ccc
