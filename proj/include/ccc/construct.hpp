#pragma once

// Construction operators and algorithms.
//
//   connect(v, A)      v (.) A = (v_{k mod N_v} a_{k mod M})_{k < lcm(M, N_v)}, concatenated
//   kron_expand(v, C)  v (x) C = {v_{k mod M} c_{floor(k / M)}}_{k < MN}
//   generate_cosf      one-level partition of the rows of U; each cell A^(p1)
//                      is connected with the rows of its own unitary-like matrix
//   elongate_cosf      two-level partition of an N-CO-SF (by length, then user
//                      cells); each cell A^(p2) is connected with the sequences
//                      of a |A^(p2)|-CO-SF
//   cosf_to_ccc        c_n^m(k) = u^n_{k mod N} s^m(k)
//   ccc_from_unitary   c_n^m = u^m . u^n  (entry-wise)
//   enlarge_ccc        E^{nM+m} = u^{(n),m} (x) C^n
//
// Output order always follows path vectors lexicographically.

#include "ccc/corr.hpp"
#include "ccc/matrices.hpp"
#include "ccc/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace ccc {

struct PartitionCell {
    PathVector path;
    std::vector<std::size_t> members;
    std::size_t source; // position of the cell in the caller's list
};

/// Leaf cells of a one- or two-level partition of {0, ..., universe-1},
/// ordered by path vector.
class Partition {
public:
    /// Arbitrary one-level partition; cell p1 gets path (p1).
    static Partition one_level(std::size_t universe, const std::vector<std::vector<std::size_t>>& cells) {
        check_cover(universe, cells);
        Partition p(universe, 1);
        for (std::size_t i = 0; i < cells.size(); ++i) p.leaves_.push_back({PathVector{i}, cells[i], i});
        return p;
    }

    /// First level groups the family's sequences by length (ascending), the
    /// second level is given by `cells`, each of which must lie inside one
    /// length class. Cells of one class are numbered in the order given.
    static Partition by_length(const SequenceFamily& family, const std::vector<std::vector<std::size_t>>& cells) {
        std::vector<std::size_t> lengths;
        for (const auto& set : family) lengths.push_back(set.length());
        return by_length(lengths, cells);
    }

    /// Same, for items described only by their lengths.
    static Partition by_length(const std::vector<std::size_t>& lengths,
                               const std::vector<std::vector<std::size_t>>& cells) {
        const std::size_t universe = lengths.size();
        check_cover(universe, cells);
        std::map<std::size_t, std::size_t> class_of_length;
        for (auto len : std::set<std::size_t>(lengths.begin(), lengths.end()))
            class_of_length.emplace(len, class_of_length.size());
        std::vector<std::size_t> next_p2(class_of_length.size(), 0);
        Partition p(universe, 2);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const std::size_t len = lengths[cells[i].front()];
            for (auto idx : cells[i]) {
                if (lengths[idx] != len) {
                    throw precondition_error("partition cell " + std::to_string(i) + " mixes lengths " +
                                             std::to_string(len) + " and " + std::to_string(lengths[idx]) +
                                             "; second-level cells must stay within one length class");
                }
            }
            const std::size_t p1 = class_of_length.at(len);
            p.leaves_.push_back({PathVector{p1, next_p2[p1]++}, cells[i], i});
        }
        std::sort(p.leaves_.begin(), p.leaves_.end(),
                  [](const PartitionCell& a, const PartitionCell& b) { return a.path < b.path; });
        return p;
    }

    std::size_t universe() const noexcept { return universe_; }
    std::size_t depth() const noexcept { return depth_; }
    const std::vector<PartitionCell>& leaves() const noexcept { return leaves_; }

private:
    Partition(std::size_t universe, std::size_t depth) : universe_(universe), depth_(depth) {}

    static void check_cover(std::size_t universe, const std::vector<std::vector<std::size_t>>& cells) {
        std::vector<bool> seen(universe, false);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].empty()) throw precondition_error("partition cell " + std::to_string(i) + " is empty");
            for (auto idx : cells[i]) {
                if (idx >= universe) {
                    throw precondition_error("partition cell " + std::to_string(i) + " references index " +
                                             std::to_string(idx) + " outside [0, " + std::to_string(universe) + ")");
                }
                if (seen[idx]) throw precondition_error("partition index " + std::to_string(idx) + " appears twice");
                seen[idx] = true;
            }
        }
        for (std::size_t idx = 0; idx < universe; ++idx) {
            if (!seen[idx]) throw precondition_error("partition does not cover index " + std::to_string(idx));
        }
    }

    std::size_t universe_;
    std::size_t depth_;
    std::vector<PartitionCell> leaves_;
};

/// Connection operator.
inline Sequence connect(const Sequence& v, const SequenceSet& a) {
    const std::size_t k = std::lcm(a.size(), v.length());
    std::vector<Sequence> parts;
    parts.reserve(k);
    for (std::size_t i = 0; i < k; ++i) parts.push_back(a[i % a.size()].scaled(v[i % v.length()]));
    return concat(parts);
}

/// Expansion of an N-sequence set into M*N sequences by the scalar pattern v.
inline SequenceSet kron_expand(const Sequence& v, const SequenceSet& c) {
    const std::size_t m = v.length();
    std::vector<Sequence> out;
    out.reserve(m * c.size());
    for (std::size_t k = 0; k < m * c.size(); ++k) out.push_back(c[k / m].scaled(v[k % m]));
    return SequenceSet(std::move(out));
}

inline Sequence entrywise(const Sequence& u, const Sequence& v) {
    if (u.length() != v.length()) {
        throw precondition_error("entrywise: lengths differ (" + std::to_string(u.length()) + " vs " +
                                 std::to_string(v.length()) + ")");
    }
    std::vector<Scalar> out;
    out.reserve(u.length());
    for (std::size_t i = 0; i < u.length(); ++i) out.push_back(u[i] * v[i]);
    return Sequence(std::move(out));
}

/// Bitwise exclusive-or of the binary representations.
constexpr std::size_t dyadic_sum(std::size_t n, std::size_t m) noexcept { return n ^ m; }

/// Optimal N-CO-SF from the rows of `u`: for each cell A^(p1) of `part` and
/// each row m of subs[p1], the sequence subs[p1].row(m) (.) A^(p1).
inline SequenceFamily generate_cosf(const UnitaryLike& u, const Partition& part, std::span<const UnitaryLike> subs) {
    if (part.universe() != u.dim() || part.depth() != 1) {
        throw precondition_error("generate_cosf: expected a one-level partition of " + std::to_string(u.dim()) +
                                 " rows");
    }
    if (subs.size() != part.leaves().size()) {
        throw precondition_error("generate_cosf: " + std::to_string(part.leaves().size()) + " cells but " +
                                 std::to_string(subs.size()) + " matrices");
    }
    std::vector<Sequence> out;
    for (const auto& cell : part.leaves()) {
        const UnitaryLike& sub = subs[cell.source];
        if (sub.dim() != cell.members.size()) {
            throw precondition_error("generate_cosf: cell " + cell.path.to_string() + " has " +
                                     std::to_string(cell.members.size()) + " rows but its matrix has dimension " +
                                     std::to_string(sub.dim()));
        }
        std::vector<Sequence> rows;
        for (auto i : cell.members) rows.push_back(u.row(i));
        const SequenceSet a(std::move(rows));
        for (std::size_t m = 0; m < sub.dim(); ++m) out.push_back(connect(sub.row(m), a));
    }
    return SequenceFamily::column(std::move(out));
}

inline SequenceFamily generate_cosf(const UnitaryLike& u, const std::vector<std::vector<std::size_t>>& cells,
                                    std::span<const UnitaryLike> subs) {
    return generate_cosf(u, Partition::one_level(u.dim(), cells), subs);
}

/// Elongation of an optimal N-CO-SF `a` (N = a.size()). `cells` are the
/// second-level cells (indices into `a`); subs[i] must be a |cells[i]|-CO-SF of
/// family size |cells[i]|, and all sequences of one cell must share an energy.
inline SequenceFamily elongate_cosf(const SequenceFamily& a, const std::vector<std::vector<std::size_t>>& cells,
                                    std::span<const SequenceFamily> subs, double tol = kDefaultTolerance) {
    if (a.set_size() != 1) throw precondition_error("elongate_cosf: input sets must hold one sequence each");
    const std::size_t n = a.size();
    if (!is_n_co_sf(a, n, tol).passed()) {
        throw precondition_error("elongate_cosf: input is not a " + std::to_string(n) + "-CO-SF");
    }
    if (subs.size() != cells.size()) {
        throw precondition_error("elongate_cosf: " + std::to_string(cells.size()) + " cells but " +
                                 std::to_string(subs.size()) + " sub-families");
    }
    const Partition part = Partition::by_length(a, cells);

    std::vector<Sequence> out;
    for (const auto& cell : part.leaves()) {
        const std::size_t size = cell.members.size();
        const std::string where = "cell " + cell.path.to_string();

        const Scalar e0 = energy(a[cell.members.front()][0]);
        const double scale = std::max(1.0, std::abs(e0.to_complex()));
        for (auto idx : cell.members) {
            const Scalar e = energy(a[idx][0]);
            if (!e.equals(e0, tol * scale)) {
                throw precondition_error("elongate_cosf: " + where + " has unequal energies (" + e0.to_string() +
                                         " vs " + e.to_string() + " at sequence " + std::to_string(idx) + ")");
            }
        }

        const SequenceFamily& sub = subs[cell.source];
        if (sub.size() != size || sub.set_size() != 1) {
            throw precondition_error("elongate_cosf: " + where + " has " + std::to_string(size) +
                                     " sequences but its sub-family is " + std::to_string(sub.size()) + "x" +
                                     std::to_string(sub.set_size()));
        }
        if (!is_n_co_sf(sub, size, tol).passed()) {
            throw precondition_error("elongate_cosf: sub-family of " + where + " is not a " + std::to_string(size) +
                                     "-CO-SF");
        }

        std::vector<Sequence> members;
        for (auto idx : cell.members) members.push_back(a[idx][0]);
        const SequenceSet cell_set(std::move(members));
        for (std::size_t m = 0; m < size; ++m) out.push_back(connect(sub[m][0], cell_set));
    }
    return SequenceFamily::column(std::move(out));
}

/// CCC from an optimal N-CO-SF `s` and an N x N unitary-like matrix:
/// set m holds c_n^m(k) = u(n, k mod N) * s^m(k), n < N.
inline SequenceFamily cosf_to_ccc(const SequenceFamily& s, const UnitaryLike& u, double tol = kDefaultTolerance) {
    const std::size_t n = u.dim();
    if (s.set_size() != 1 || s.size() != n) {
        throw precondition_error("cosf_to_ccc: expected " + std::to_string(n) + " single-sequence sets, got " +
                                 std::to_string(s.size()) + "x" + std::to_string(s.set_size()));
    }
    if (!is_n_co_sf(s, n, tol).passed()) {
        throw precondition_error("cosf_to_ccc: input is not a " + std::to_string(n) + "-CO-SF");
    }
    std::vector<SequenceSet> sets;
    for (std::size_t m = 0; m < n; ++m) {
        const Sequence& seq = s[m][0];
        std::vector<Sequence> row;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Scalar> c;
            c.reserve(seq.length());
            for (std::size_t k = 0; k < seq.length(); ++k) c.push_back(u(j, k % n) * seq[k]);
            row.emplace_back(std::move(c));
        }
        sets.emplace_back(std::move(row));
    }
    return SequenceFamily(std::move(sets));
}

/// (N, N, {N}) CCC with c_n^m = u^m . u^n.
inline SequenceFamily ccc_from_unitary(const UnitaryLike& u) {
    std::vector<SequenceSet> sets;
    for (std::size_t m = 0; m < u.dim(); ++m) {
        std::vector<Sequence> row;
        for (std::size_t n = 0; n < u.dim(); ++n) row.push_back(entrywise(u.row(m), u.row(n)));
        sets.emplace_back(std::move(row));
    }
    return SequenceFamily(std::move(sets));
}

/// Enlarges an N-set CCC with N unitary-like matrices of a common dimension M
/// into an (MN, MN) CCC with the same length set.
inline SequenceFamily enlarge_ccc(const SequenceFamily& c, std::span<const UnitaryLike> us,
                                  double tol = kDefaultTolerance) {
    if (us.size() != c.size()) {
        throw precondition_error("enlarge_ccc: " + std::to_string(c.size()) + " sets need as many matrices, got " +
                                 std::to_string(us.size()));
    }
    const std::size_t m_dim = us.front().dim();
    for (std::size_t i = 0; i < us.size(); ++i) {
        if (us[i].dim() != m_dim) {
            throw precondition_error("enlarge_ccc: matrix " + std::to_string(i) + " has dimension " +
                                     std::to_string(us[i].dim()) + ", expected " + std::to_string(m_dim));
        }
    }
    if (!is_ccc(c, tol).passed()) throw precondition_error("enlarge_ccc: input is not a complete complementary code");
    std::vector<SequenceSet> sets;
    for (std::size_t n = 0; n < c.size(); ++n)
        for (std::size_t m = 0; m < m_dim; ++m) sets.push_back(kron_expand(us[n].row(m), c[n]));
    return SequenceFamily(std::move(sets));
}

} // namespace ccc
