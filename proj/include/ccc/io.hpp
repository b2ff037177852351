#pragma once

// JSON documents for families, matrices, recipes and verification reports.
//
// Exact scalars are {"order": K, "coeffs": [c_0, ..., c_{K-1}]} holding the
// group-ring coefficients of sum_j c_j zeta_K^j. Coefficients that do not fit
// in 64 bits are written as decimal strings. On input a scalar may also be an
// integer, or one of the sign shorthands "+", "-", "−", "0".
// Approximate scalars are {"re": x, "im": y}; plain numbers are read as reals.

#include "ccc/corr.hpp"
#include "ccc/planner.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace ccc::io {

using Json = nlohmann::ordered_json;

namespace detail {

/// Field path for diagnostics, e.g. "rounds[0].cells[1]".
class Path {
public:
    Path() = default;
    Path key(const std::string& k) const { return Path(text_.empty() ? k : text_ + "." + k); }
    Path index(std::size_t i) const { return Path(text_ + "[" + std::to_string(i) + "]"); }
    const std::string& str() const noexcept { return text_; }

private:
    explicit Path(std::string t) : text_(std::move(t)) {}
    std::string text_;
};

[[noreturn]] inline void fail(const Path& p, const std::string& what) {
    throw parse_error(p.str().empty() ? "document" : p.str(), what);
}

inline const Json& field(const Json& j, const std::string& k, const Path& p) {
    if (!j.is_object()) fail(p, "expected an object");
    auto it = j.find(k);
    if (it == j.end()) fail(p.key(k), "missing field");
    return *it;
}

inline const Json& array(const Json& j, const Path& p) {
    if (!j.is_array()) fail(p, "expected an array");
    return j;
}

inline std::size_t count(const Json& j, const Path& p) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        fail(p, "expected a non-negative integer");
    return j.get<std::size_t>();
}

inline std::vector<std::size_t> index_list(const Json& j, const Path& p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < array(j, p).size(); ++i) out.push_back(count(j[i], p.index(i)));
    return out;
}

inline BigInt big(const Json& j, const Path& p) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_number_unsigned()) return BigInt(j.get<unsigned long long>());
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        const std::size_t digits = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (s.size() == digits || s.find_first_not_of("0123456789", digits) != std::string::npos)
            fail(p, "expected a decimal integer, got \"" + s + "\"");
        return BigInt(s[0] == '+' ? s.substr(1) : s);
    }
    fail(p, "expected an integer");
}

inline Json big_json(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return v.convert_to<long long>();
    return v.str();
}

template <class F>
auto guarded(const Path& p, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const parse_error&) {
        throw;
    } catch (const error& e) {
        fail(p, e.what());
    }
}

} // namespace detail

inline std::optional<ScalarMode> parse_mode(const std::string& s) {
    if (s == "exact") return ScalarMode::exact;
    if (s == "approx") return ScalarMode::approx;
    return std::nullopt;
}

// ---- scalars ----

inline Json to_json(const Scalar& s) {
    if (!s.is_exact()) return Json{{"re", s.approx().real()}, {"im", s.approx().imag()}};
    Json coeffs = Json::array();
    for (const auto& c : s.exact().coeffs()) coeffs.push_back(detail::big_json(c));
    return Json{{"order", s.exact().order()}, {"coeffs", std::move(coeffs)}};
}

inline Scalar scalar_from_json(const Json& j, ScalarMode mode, const detail::Path& p = {}) {
    using detail::fail;
    if (mode == ScalarMode::approx) {
        if (j.is_number()) return Scalar(std::complex<double>(j.get<double>(), 0.0));
        if (!j.is_object()) fail(p, "expected {\"re\", \"im\"} or a number");
        const auto& re = detail::field(j, "re", p);
        const auto& im = detail::field(j, "im", p);
        if (!re.is_number()) fail(p.key("re"), "expected a number");
        if (!im.is_number()) fail(p.key("im"), "expected a number");
        return Scalar(std::complex<double>(re.get<double>(), im.get<double>()));
    }
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "+") return Scalar::integer(1);
        if (s == "-" || s == "−") return Scalar::integer(-1);
        if (s == "0") return Scalar::integer(0);
        fail(p, "unknown scalar shorthand \"" + s + "\"");
    }
    if (j.is_number_integer()) return Scalar(CycloNum(detail::big(j, p)));
    if (!j.is_object()) fail(p, "expected {\"order\", \"coeffs\"}, an integer or a sign");
    const std::size_t order = detail::count(detail::field(j, "order", p), p.key("order"));
    const auto& cj = detail::array(detail::field(j, "coeffs", p), p.key("coeffs"));
    std::vector<BigInt> coeffs;
    for (std::size_t i = 0; i < cj.size(); ++i) coeffs.push_back(detail::big(cj[i], p.key("coeffs").index(i)));
    return detail::guarded(p, [&] { return Scalar(CycloNum(order, std::move(coeffs))); });
}

inline Sequence sequence_from_json(const Json& j, ScalarMode mode, const detail::Path& p = {}) {
    // A bare sign string such as "++-+" is accepted for +-1 sequences.
    if (j.is_string() && mode == ScalarMode::exact)
        return detail::guarded(p, [&] { return Sequence::from_signs(j.get<std::string>()); });
    const auto& a = detail::array(j, p);
    if (a.empty()) detail::fail(p, "empty sequence");
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < a.size(); ++i) v.push_back(scalar_from_json(a[i], mode, p.index(i)));
    return Sequence(std::move(v));
}

inline Json to_json(const Sequence& s) {
    Json out = Json::array();
    for (const auto& e : s.entries()) out.push_back(to_json(e));
    return out;
}

// ---- families ----

struct FamilyDocument {
    FamilyKind kind;
    SequenceFamily family;
};

inline Json to_json(const SequenceFamily& f, const FamilyKind& kind) {
    Json lengths = Json::array();
    for (auto l : f.length_set()) lengths.push_back(l);
    Json sets = Json::array();
    for (const auto& set : f) {
        Json sj = Json::array();
        for (const auto& s : set) sj.push_back(to_json(s));
        sets.push_back(std::move(sj));
    }
    return Json{{"metadata", {{"kind", kind.to_string()}, {"M", f.size()}, {"N", f.set_size()}, {"lengths", lengths}}},
                {"mode", to_string(f.mode())},
                {"sets", std::move(sets)}};
}

/// Metadata dimensions, when present, must match the data; the kind is only a claim.
inline FamilyDocument family_from_json(const Json& j) {
    using detail::Path;
    const Path root;
    if (!j.is_object()) detail::fail(root, "expected an object");
    ScalarMode mode = ScalarMode::exact;
    if (j.contains("mode")) {
        const auto& mj = j["mode"];
        auto m = mj.is_string() ? parse_mode(mj.get<std::string>()) : std::nullopt;
        if (!m) detail::fail(root.key("mode"), "expected \"exact\" or \"approx\"");
        mode = *m;
    }
    const Path sp = root.key("sets");
    const auto& sj = detail::array(detail::field(j, "sets", root), sp);
    std::vector<SequenceSet> sets;
    for (std::size_t m = 0; m < sj.size(); ++m) {
        const Path mp = sp.index(m);
        std::vector<Sequence> seqs;
        for (std::size_t n = 0; n < detail::array(sj[m], mp).size(); ++n)
            seqs.push_back(sequence_from_json(sj[m][n], mode, mp.index(n)));
        sets.push_back(detail::guarded(mp, [&] { return SequenceSet(std::move(seqs)); }));
    }
    SequenceFamily family = detail::guarded(sp, [&] { return SequenceFamily(std::move(sets)); });

    FamilyKind kind = FamilyKind::raw();
    if (j.contains("metadata")) {
        const Path mp = root.key("metadata");
        const auto& md = j["metadata"];
        if (!md.is_object()) detail::fail(mp, "expected an object");
        if (md.contains("kind")) {
            auto k = md["kind"].is_string() ? FamilyKind::parse(md["kind"].get<std::string>()) : std::nullopt;
            if (!k) detail::fail(mp.key("kind"), "expected \"raw\", \"ccc\" or \"cosf:N\"");
            kind = *k;
        }
        if (md.contains("M") && detail::count(md["M"], mp.key("M")) != family.size())
            detail::fail(mp.key("M"), "does not match the number of sets (" + std::to_string(family.size()) + ")");
        if (md.contains("N") && detail::count(md["N"], mp.key("N")) != family.set_size())
            detail::fail(mp.key("N"), "does not match the set size (" + std::to_string(family.set_size()) + ")");
        if (md.contains("lengths")) {
            const auto ls = detail::index_list(md["lengths"], mp.key("lengths"));
            if (std::set<std::size_t>(ls.begin(), ls.end()) != family.length_set())
                detail::fail(mp.key("lengths"), "does not match the sequence lengths");
        }
    }
    return {kind, std::move(family)};
}

// ---- matrices ----

/// Parses "dft:6", "hadamard:4", "identity:2".
inline MatrixSpec matrix_spec_from_string(const std::string& s, const detail::Path& p = {}) {
    const auto colon = s.find(':');
    const std::string name = s.substr(0, colon);
    MatrixKind kind;
    if (name == "dft") kind = MatrixKind::dft;
    else if (name == "hadamard") kind = MatrixKind::hadamard;
    else if (name == "identity") kind = MatrixKind::identity;
    else detail::fail(p, "unknown matrix \"" + s + "\" (expected dft:N, hadamard:N or identity:N)");
    if (colon == std::string::npos) detail::fail(p, "matrix \"" + s + "\" needs a dimension, e.g. " + name + ":4");
    const std::string dim = s.substr(colon + 1);
    if (dim.empty() || dim.size() > 6 || dim.find_first_not_of("0123456789") != std::string::npos || std::stoul(dim) == 0)
        detail::fail(p, "bad matrix dimension \"" + dim + "\"");
    return MatrixSpec::of(kind, std::stoul(dim));
}

inline MatrixSpec matrix_spec_from_json(const Json& j, const detail::Path& p = {}) {
    if (j.is_string()) return matrix_spec_from_string(j.get<std::string>(), p);
    if (!j.is_object()) detail::fail(p, "expected a matrix name or object");
    const auto& kj = detail::field(j, "kind", p);
    if (!kj.is_string()) detail::fail(p.key("kind"), "expected a string");
    const auto kind = kj.get<std::string>();
    if (kind != "custom") {
        return matrix_spec_from_string(kind + ":" + std::to_string(detail::count(detail::field(j, "dim", p), p.key("dim"))), p);
    }
    ScalarMode mode = ScalarMode::exact;
    if (j.contains("mode")) {
        auto m = j["mode"].is_string() ? parse_mode(j["mode"].get<std::string>()) : std::nullopt;
        if (!m) detail::fail(p.key("mode"), "expected \"exact\" or \"approx\"");
        mode = *m;
    }
    const detail::Path ep = p.key("entries");
    const auto& ej = detail::array(detail::field(j, "entries", p), ep);
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t i = 0; i < ej.size(); ++i) {
        std::vector<Scalar> row;
        for (std::size_t k = 0; k < detail::array(ej[i], ep.index(i)).size(); ++k)
            row.push_back(scalar_from_json(ej[i][k], mode, ep.index(i).index(k)));
        rows.push_back(std::move(row));
    }
    if (j.contains("dim") && detail::count(j["dim"], p.key("dim")) != rows.size())
        detail::fail(p.key("dim"), "does not match the number of rows");
    return MatrixSpec::custom(std::move(rows), mode);
}

inline Json to_json(const MatrixSpec& m) {
    if (m.kind != MatrixKind::custom) return m.to_string();
    Json rows = Json::array();
    for (const auto& r : m.entries) {
        Json rj = Json::array();
        for (const auto& e : r) rj.push_back(to_json(e));
        rows.push_back(std::move(rj));
    }
    return Json{{"kind", "custom"}, {"mode", to_string(m.mode)}, {"dim", m.dim}, {"entries", std::move(rows)}};
}

// ---- recipes ----

inline Json to_json(const Recipe& r);

inline Json to_json(const SubFamilySpec& s) {
    if (const auto* m = std::get_if<MatrixSpec>(&s.source)) return to_json(*m);
    return Json{{"recipe", to_json(*std::get<std::shared_ptr<const Recipe>>(s.source))}};
}

inline Json to_json(const Recipe& r) {
    Json base{{"matrix", to_json(r.base.matrix)}, {"cells", r.base.cells}, {"subs", Json::array()}};
    for (const auto& s : r.base.subs) base["subs"].push_back(to_json(s));
    Json rounds = Json::array();
    for (const auto& round : r.rounds) {
        Json rj{{"cells", round.cells}, {"subs", Json::array()}};
        for (const auto& s : round.subs) rj["subs"].push_back(to_json(s));
        rounds.push_back(std::move(rj));
    }
    Json out{{"N", r.shift()}, {"base", std::move(base)}, {"rounds", std::move(rounds)}};
    if (r.post) {
        Json post = Json::object();
        if (r.post->ccc) post["ccc"] = to_json(*r.post->ccc);
        Json en = Json::array();
        for (const auto& m : r.post->enlarge) en.push_back(to_json(m));
        post["enlarge"] = std::move(en);
        out["post"] = std::move(post);
    }
    return out;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> cells_from_json(const Json& j, const Path& p) {
    std::vector<std::vector<std::size_t>> cells;
    for (std::size_t i = 0; i < array(j, p).size(); ++i) cells.push_back(index_list(j[i], p.index(i)));
    return cells;
}

inline Recipe recipe_from_json(const Json& j, const Path& root) {
    if (!j.is_object()) fail(root, "expected an object");
    Recipe r;
    const Path bp = root.key("base");
    const auto& base = field(j, "base", root);
    r.base.matrix = matrix_spec_from_json(field(base, "matrix", bp), bp.key("matrix"));
    r.base.cells = cells_from_json(field(base, "cells", bp), bp.key("cells"));
    const auto& subs = array(field(base, "subs", bp), bp.key("subs"));
    for (std::size_t i = 0; i < subs.size(); ++i)
        r.base.subs.push_back(matrix_spec_from_json(subs[i], bp.key("subs").index(i)));
    if (r.base.subs.size() != r.base.cells.size())
        fail(bp.key("subs"), "expected one sub-matrix per cell (" + std::to_string(r.base.cells.size()) + ")");
    for (std::size_t i = 0; i < r.base.cells.size(); ++i) {
        if (r.base.subs[i].dim != r.base.cells[i].size())
            fail(bp.key("subs").index(i), "dimension " + std::to_string(r.base.subs[i].dim) + " does not match cell size " +
                                              std::to_string(r.base.cells[i].size()));
    }
    if (j.contains("N") && count(j["N"], root.key("N")) != r.base.matrix.dim)
        fail(root.key("N"), "does not match the base matrix dimension");

    if (j.contains("rounds")) {
        const Path rp = root.key("rounds");
        const auto& rounds = array(j["rounds"], rp);
        for (std::size_t i = 0; i < rounds.size(); ++i) {
            const Path ip = rp.index(i);
            ElongationRound round;
            round.cells = cells_from_json(field(rounds[i], "cells", ip), ip.key("cells"));
            const auto& rs = array(field(rounds[i], "subs", ip), ip.key("subs"));
            for (std::size_t k = 0; k < rs.size(); ++k) {
                const Path sp = ip.key("subs").index(k);
                if (rs[k].is_object() && rs[k].contains("recipe")) {
                    auto nested = std::make_shared<const Recipe>(recipe_from_json(rs[k]["recipe"], sp.key("recipe")));
                    round.subs.push_back({std::move(nested)});
                } else {
                    round.subs.push_back({matrix_spec_from_json(rs[k], sp)});
                }
            }
            if (round.subs.size() != round.cells.size())
                fail(ip.key("subs"), "expected one sub-family per cell (" + std::to_string(round.cells.size()) + ")");
            r.rounds.push_back(std::move(round));
        }
    }

    if (j.contains("post") && !j["post"].is_null()) {
        const Path pp = root.key("post");
        const auto& post = j["post"];
        if (!post.is_object()) fail(pp, "expected an object");
        PostStage ps;
        if (post.contains("ccc") && !post["ccc"].is_null()) ps.ccc = matrix_spec_from_json(post["ccc"], pp.key("ccc"));
        if (post.contains("enlarge")) {
            const auto& en = array(post["enlarge"], pp.key("enlarge"));
            for (std::size_t i = 0; i < en.size(); ++i)
                ps.enlarge.push_back(matrix_spec_from_json(en[i], pp.key("enlarge").index(i)));
        }
        r.post = std::move(ps);
    }
    return r;
}

} // namespace detail

inline Recipe recipe_from_json(const Json& j) { return detail::recipe_from_json(j, {}); }

// ---- reports ----

inline Json to_json(const VerificationReport& r) {
    Json lengths = Json::array();
    for (auto l : r.lengths) lengths.push_back(l);
    Json violations = Json::array();
    for (const auto& v : r.violations()) {
        violations.push_back({{"first", v.first},
                              {"second", v.second},
                              {"shift", v.shift},
                              {"residual", v.residual.to_string()},
                              {"magnitude", std::abs(v.residual.to_complex())}});
    }
    std::size_t examined = 0;
    for (const auto& p : r.profiles) examined += p.values.size();
    return Json{{"kind", r.kind},
                {"passed", r.passed()},
                {"M", r.family_size},
                {"N", r.set_size},
                {"lengths", std::move(lengths)},
                {"shifts_examined", examined},
                {"issues", r.issues},
                {"violations", std::move(violations)}};
}

inline Json to_json(const StageLog& s) {
    return Json{{"stage", s.stage},
                {"M", s.family_size},
                {"N", s.set_size},
                {"lengths", std::vector<std::size_t>(s.lengths.begin(), s.lengths.end())},
                {"kind", s.kind},
                {"verified", s.verified}};
}

// ---- files ----

/// Parses JSON text; syntax errors carry nlohmann's line/column diagnostic.
inline Json parse_text(const std::string& text, const std::string& source = "input") {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(source, e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path + " for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw io_error("error while reading " + path);
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw io_error("error while writing " + path);
}

inline Json read_json(const std::string& path) { return parse_text(read_file(path), path); }

inline void write_json(const std::string& path, const Json& j) { write_file(path, j.dump(2) + "\n"); }

} // namespace ccc::io
