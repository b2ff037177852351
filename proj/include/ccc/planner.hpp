#pragma once

// Length planning and recipe execution.
//
// A target length L is reachable by one-level generation followed by repeated
// elongation iff N | L and L / N factors into integers no greater than N. The
// planner writes L = N * l0 * l1 * ... with l0 >= l1 >= ... > 1, spends a
// generation cell of size l0 on it, and adds one elongation round per further
// factor, each taking l_j of the sequences produced for that target by the
// previous round. Every other sequence passes through a singleton cell.
//
// Cell sizes that are powers of two get Walsh-Hadamard matrices, all others DFT.

#include "ccc/construct.hpp"
#include "ccc/corr.hpp"
#include "ccc/matrices.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace ccc {

/// How to obtain a unitary-like matrix.
struct MatrixSpec {
    MatrixKind kind = MatrixKind::identity;
    std::size_t dim = 1;
    ScalarMode mode = ScalarMode::exact;
    std::vector<std::vector<Scalar>> entries; // custom only

    static MatrixSpec of(MatrixKind k, std::size_t n) { return {k, n, ScalarMode::exact, {}}; }
    static MatrixSpec preferred(std::size_t n) {
        return of(is_power_of_two(n) ? MatrixKind::hadamard : MatrixKind::dft, n);
    }
    static MatrixSpec custom(std::vector<std::vector<Scalar>> e, ScalarMode m) {
        const std::size_t n = e.size();
        return {MatrixKind::custom, n, m, std::move(e)};
    }

    UnitaryLike build(double tol = kDefaultTolerance) const {
        switch (kind) {
        case MatrixKind::dft: return dft_matrix(dim);
        case MatrixKind::hadamard: return hadamard_matrix(dim);
        case MatrixKind::identity: return identity_matrix(dim);
        case MatrixKind::custom: {
            if (entries.size() != dim) throw precondition_error("custom matrix: dim does not match entries");
            return custom_matrix(entries, mode, tol);
        }
        }
        throw precondition_error("unknown matrix kind");
    }

    std::string to_string() const { return std::string(ccc::to_string(kind)) + ":" + std::to_string(dim); }
};

struct Recipe;

/// A k-CO-SF of family size k: the rows of a k x k matrix, or a nested recipe
/// without post-processing.
struct SubFamilySpec {
    std::variant<MatrixSpec, std::shared_ptr<const Recipe>> source;
};

struct BaseStage {
    MatrixSpec matrix;
    std::vector<std::vector<std::size_t>> cells;
    std::vector<MatrixSpec> subs;
};

struct ElongationRound {
    std::vector<std::vector<std::size_t>> cells;
    std::vector<SubFamilySpec> subs;
};

struct PostStage {
    std::optional<MatrixSpec> ccc;    // shift-orthogonal family -> CCC
    std::vector<MatrixSpec> enlarge;  // one matrix per CCC set; empty = none
};

/// Fully determined construction plan.
struct Recipe {
    BaseStage base;
    std::vector<ElongationRound> rounds;
    std::optional<PostStage> post;

    std::size_t shift() const noexcept { return base.matrix.dim; }
};

struct StageLog {
    std::string stage;
    std::size_t family_size;
    std::size_t set_size;
    std::set<std::size_t> lengths;
    std::string kind;
    bool verified;
};

struct Execution {
    SequenceFamily family;
    FamilyKind kind;
    std::vector<StageLog> log;
};

namespace detail {

/// l0 >= l1 >= ... with prod = L / N, each in [2, N]; {1} when L == N.
/// On failure returns the blocking factor through `blocking` (0 if N does not divide L).
inline std::optional<std::vector<std::size_t>> factor_chain(std::size_t n, std::size_t len,
                                                            std::size_t* blocking = nullptr) {
    if (blocking) *blocking = 0;
    if (n == 0 || len == 0 || len % n != 0) return std::nullopt;
    std::size_t k = len / n;
    std::vector<std::size_t> chain;
    while (k > 1) {
        std::size_t d = std::min(n, k);
        while (d >= 2 && k % d != 0) --d;
        if (d < 2) {
            if (blocking) {
                std::size_t p = 2;
                while (k % p != 0) ++p;
                *blocking = p;
            }
            return std::nullopt;
        }
        chain.push_back(d);
        k /= d;
    }
    if (chain.empty()) chain.push_back(1);
    return chain;
}

template <class E>
[[noreturn]] void rethrow_in(const std::string& stage, const E& e) {
    throw E(stage + ": " + e.what());
}

} // namespace detail

/// True iff N | L and L / N is a product of integers in [1, N].
inline bool constructible(std::size_t n, std::size_t len) { return detail::factor_chain(n, len).has_value(); }

/// Plans one family of size N whose length set contains every target.
inline Recipe plan(std::size_t n, const std::set<std::size_t>& targets) {
    if (n == 0) throw precondition_error("plan: N must be positive");
    if (targets.empty()) throw precondition_error("plan: no target lengths");

    struct Target {
        std::size_t length;
        std::vector<std::size_t> chain;
    };
    std::vector<Target> ts;
    for (auto len : targets) {
        std::size_t blocking = 0;
        auto chain = detail::factor_chain(n, len, &blocking);
        if (!chain) {
            if (len == 0 || len % n != 0) {
                throw construction_error("length " + std::to_string(len) + " is unconstructible by this framework: it is not a multiple of N = " +
                                         std::to_string(n));
            }
            throw construction_error("length " + std::to_string(len) + " is unconstructible by this framework: " +
                                     std::to_string(len) + " / " + std::to_string(n) + " has the factor " +
                                     std::to_string(blocking) + " > " + std::to_string(n));
        }
        ts.push_back({len, std::move(*chain)});
    }

    std::size_t rows = 0;
    for (const auto& t : ts) rows += t.chain.front();
    if (rows > n) {
        std::string fits;
        std::size_t used = 0;
        for (const auto& t : ts) {
            if (used + t.chain.front() > n) continue;
            used += t.chain.front();
            fits += (fits.empty() ? "" : ", ") + std::to_string(t.length);
        }
        throw construction_error("targets need " + std::to_string(rows) + " generation rows but N = " +
                                 std::to_string(n) + "; jointly constructible subset: {" + fits + "}");
    }

    Recipe r;
    r.base.matrix = MatrixSpec::preferred(n);
    // owner[i]: index into ts of the target the i-th current sequence is being grown for.
    std::vector<std::optional<std::size_t>> owner;
    std::vector<std::size_t> lengths;
    std::size_t next_row = 0;
    for (std::size_t t = 0; t < ts.size(); ++t) {
        const std::size_t l0 = ts[t].chain.front();
        std::vector<std::size_t> cell(l0);
        for (auto& c : cell) c = next_row++;
        r.base.cells.push_back(std::move(cell));
        r.base.subs.push_back(MatrixSpec::preferred(l0));
        for (std::size_t i = 0; i < l0; ++i) {
            owner.emplace_back(t);
            lengths.push_back(l0 * n);
        }
    }
    while (next_row < n) {
        r.base.cells.push_back({next_row++});
        r.base.subs.push_back(MatrixSpec::preferred(1));
        owner.emplace_back(std::nullopt);
        lengths.push_back(n);
    }

    std::size_t rounds = 0;
    for (const auto& t : ts) rounds = std::max(rounds, t.chain.size() - 1);
    for (std::size_t j = 1; j <= rounds; ++j) {
        ElongationRound round;
        std::vector<bool> used(owner.size(), false);
        std::vector<std::size_t> cell_factor;
        std::vector<std::optional<std::size_t>> cell_owner;
        for (std::size_t t = 0; t < ts.size(); ++t) {
            if (ts[t].chain.size() <= j) continue;
            const std::size_t lj = ts[t].chain[j];
            std::vector<std::size_t> cell;
            for (std::size_t i = 0; i < owner.size() && cell.size() < lj; ++i) {
                if (owner[i] == t) cell.push_back(i);
            }
            for (auto i : cell) used[i] = true;
            round.cells.push_back(std::move(cell));
            round.subs.push_back({MatrixSpec::preferred(lj)});
            cell_factor.push_back(lj);
            cell_owner.emplace_back(t);
        }
        for (std::size_t i = 0; i < owner.size(); ++i) {
            if (used[i]) continue;
            round.cells.push_back({i});
            round.subs.push_back({MatrixSpec::preferred(1)});
            cell_factor.push_back(1);
            cell_owner.emplace_back(std::nullopt);
        }

        // Replay the output order of the elongation to track lengths and owners.
        const Partition part = Partition::by_length(lengths, round.cells);
        std::vector<std::optional<std::size_t>> next_owner;
        std::vector<std::size_t> next_lengths;
        for (const auto& leaf : part.leaves()) {
            const std::size_t f = cell_factor[leaf.source];
            for (std::size_t m = 0; m < leaf.members.size(); ++m) {
                next_owner.push_back(cell_owner[leaf.source]);
                next_lengths.push_back(lengths[leaf.members.front()] * f);
            }
        }
        owner = std::move(next_owner);
        lengths = std::move(next_lengths);
        r.rounds.push_back(std::move(round));
    }
    return r;
}

inline Execution execute(const Recipe& r, double tol = kDefaultTolerance);

namespace detail {

inline SequenceFamily build_sub_family(const SubFamilySpec& spec, double tol) {
    if (const auto* m = std::get_if<MatrixSpec>(&spec.source)) return m->build(tol).rows_as_family();
    const auto& nested = std::get<std::shared_ptr<const Recipe>>(spec.source);
    if (!nested) throw precondition_error("sub-family recipe is empty");
    if (nested->post) throw precondition_error("sub-family recipe must not have a post stage");
    return execute(*nested, tol).family;
}

template <class F>
auto in_stage(const std::string& stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const construction_error& e) {
        rethrow_in(stage, e);
    } catch (const precondition_error& e) {
        rethrow_in(stage, e);
    }
}

inline StageLog log_stage(std::string stage, const SequenceFamily& f, const FamilyKind& kind, double tol) {
    return {std::move(stage), f.size(), f.set_size(), f.length_set(), kind.to_string(), verify(f, kind, tol).passed()};
}

} // namespace detail

/// Runs generation, every elongation round, then the optional CCC and
/// enlargement steps. Each intermediate family is verified and logged.
inline Execution execute(const Recipe& r, double tol) {
    const std::size_t n = r.shift();
    const FamilyKind cosf = FamilyKind::cosf(n);

    SequenceFamily family = detail::in_stage("generation", [&] {
        std::vector<UnitaryLike> subs;
        for (const auto& s : r.base.subs) subs.push_back(s.build(tol));
        return generate_cosf(r.base.matrix.build(tol), r.base.cells, subs);
    });
    std::vector<StageLog> log{detail::log_stage("generation", family, cosf, tol)};

    for (std::size_t i = 0; i < r.rounds.size(); ++i) {
        const std::string stage = "round " + std::to_string(i);
        family = detail::in_stage(stage, [&] {
            std::vector<SequenceFamily> subs;
            for (const auto& s : r.rounds[i].subs) subs.push_back(detail::build_sub_family(s, tol));
            return elongate_cosf(family, r.rounds[i].cells, subs, tol);
        });
        log.push_back(detail::log_stage(stage, family, cosf, tol));
    }

    FamilyKind kind = cosf;
    if (r.post) {
        if (r.post->ccc) {
            family = detail::in_stage("ccc", [&] { return cosf_to_ccc(family, r.post->ccc->build(tol), tol); });
            kind = FamilyKind::ccc();
            log.push_back(detail::log_stage("ccc", family, kind, tol));
        }
        if (!r.post->enlarge.empty()) {
            if (!r.post->ccc) throw precondition_error("enlarge: recipe has no ccc step to enlarge");
            family = detail::in_stage("enlarge", [&] {
                std::vector<UnitaryLike> us;
                for (const auto& s : r.post->enlarge) us.push_back(s.build(tol));
                return enlarge_ccc(family, us, tol);
            });
            log.push_back(detail::log_stage("enlarge", family, kind, tol));
        }
    }
    return {std::move(family), kind, std::move(log)};
}

} // namespace ccc
