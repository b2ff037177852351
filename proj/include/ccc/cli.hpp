#pragma once

// Subcommands of the `ccc` tool as plain functions returning exit codes:
//   0 verified, 1 verification failure, 2 construction impossible, 3 I/O or parse error.

#include "ccc/io.hpp"

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace ccc::cli {

enum Exit : int { ok = 0, not_verified = 1, unconstructible = 2, bad_input = 3 };

struct Streams {
    std::ostream& out = std::cout;
    std::ostream& err = std::cerr;
};

namespace detail {

/// Runs `body`, mapping library exceptions to exit codes.
template <class F>
int guarded(const Streams& s, F&& body) {
    try {
        return body();
    } catch (const parse_error& e) {
        s.err << "parse error: " << e.what() << "\n";
        return bad_input;
    } catch (const io_error& e) {
        s.err << "i/o error: " << e.what() << "\n";
        return bad_input;
    } catch (const construction_error& e) {
        s.err << "unconstructible: " << e.what() << "\n";
        return unconstructible;
    } catch (const error& e) {
        s.err << "error: " << e.what() << "\n";
        return unconstructible;
    }
}

inline std::string lengths_text(const std::set<std::size_t>& ls) {
    std::string out = "{";
    for (auto l : ls) out += (out.size() > 1 ? "," : "") + std::to_string(l);
    return out + "}";
}

inline std::string shape(const SequenceFamily& f) {
    return "(" + std::to_string(f.size()) + "," + std::to_string(f.set_size()) + "," + lengths_text(f.length_set()) + ")";
}

inline int report_outcome(const Streams& s, const VerificationReport& r) {
    if (r.passed()) {
        s.out << "verified " << r.kind << "\n";
        return ok;
    }
    s.out << "NOT verified " << r.kind << "\n";
    for (const auto& issue : r.issues) s.out << "  " << issue << "\n";
    for (const auto& v : r.violations())
        s.out << "  sets (" << v.first << "," << v.second << ") shift " << v.shift << ": residual " << v.residual.to_string()
              << "\n";
    return not_verified;
}

inline io::FamilyDocument read_family(const std::string& path) { return io::family_from_json(io::read_json(path)); }

inline void write_family(const std::string& path, const SequenceFamily& f, const FamilyKind& kind, bool canonical) {
    io::write_json(path, io::to_json(canonical ? canonical_form(f) : f, kind));
}

} // namespace detail

/// "dft:4", "hadamard", "identity:2" or "@matrix.json". A missing dimension
/// defaults to `default_dim`.
inline MatrixSpec resolve_matrix(const std::string& text, std::size_t default_dim) {
    if (!text.empty() && text[0] == '@') {
        const std::string path = text.substr(1);
        return io::matrix_spec_from_json(io::read_json(path));
    }
    if (text.find(':') == std::string::npos && (text == "dft" || text == "hadamard" || text == "identity"))
        return io::matrix_spec_from_string(text + ":" + std::to_string(default_dim));
    return io::matrix_spec_from_string(text);
}

struct GenOptions {
    std::string recipe;
    std::string out;
    bool canonical = false;
    std::optional<std::string> log{};
    double tol = kDefaultTolerance;
};

inline int cmd_gen(const GenOptions& o, const Streams& s = {}) {
    return detail::guarded(s, [&] {
        const Recipe r = io::recipe_from_json(io::read_json(o.recipe));
        const Execution ex = execute(r, o.tol);
        for (const auto& st : ex.log) {
            s.out << st.stage << ": " << "(" << st.family_size << "," << st.set_size << ","
                  << detail::lengths_text(st.lengths) << ") " << st.kind << (st.verified ? " verified" : " NOT verified")
                  << "\n";
        }
        if (o.log) {
            io::Json log = io::Json::array();
            for (const auto& st : ex.log) log.push_back(io::to_json(st));
            io::write_json(*o.log, log);
        }
        detail::write_family(o.out, ex.family, ex.kind, o.canonical);
        s.out << "wrote " << detail::shape(ex.family) << " family to " << o.out << "\n";
        return detail::report_outcome(s, verify(ex.family, ex.kind, o.tol));
    });
}

struct VerifyOptions {
    std::string family;
    std::optional<std::string> kind{}; // defaults to the document's claim
    double tol = kDefaultTolerance;
    std::optional<std::string> report{};
};

inline int cmd_verify(const VerifyOptions& o, const Streams& s = {}) {
    return detail::guarded(s, [&] {
        const auto doc = detail::read_family(o.family);
        FamilyKind kind = doc.kind;
        if (o.kind) {
            auto k = FamilyKind::parse(*o.kind);
            if (!k || k->tag == FamilyKind::Tag::raw) throw parse_error("--kind", "expected \"ccc\" or \"cosf:N\"");
            kind = *k;
        }
        if (kind.tag == FamilyKind::Tag::raw) throw parse_error("--kind", "family claims no kind; pass --kind");
        s.out << detail::shape(doc.family) << " family, " << to_string(doc.family.mode()) << " mode\n";
        VerificationReport r;
        try {
            r = verify(doc.family, kind, o.tol);
        } catch (const precondition_error& e) {
            r = ccc::detail::make_report(kind.to_string(), doc.family);
            r.issues.push_back(e.what());
        }
        if (o.report) io::write_json(*o.report, io::to_json(r));
        return detail::report_outcome(s, r);
    });
}

struct PlanOptions {
    std::size_t n = 0;
    std::vector<std::size_t> lengths;
    std::optional<std::string> out{}; // stdout when absent
};

inline int cmd_plan(const PlanOptions& o, const Streams& s = {}) {
    return detail::guarded(s, [&] {
        const Recipe r = plan(o.n, std::set<std::size_t>(o.lengths.begin(), o.lengths.end()));
        const auto text = io::to_json(r).dump(2) + "\n";
        if (o.out) {
            io::write_file(*o.out, text);
            s.out << "wrote recipe with " << r.rounds.size() << " elongation round(s) to " << *o.out << "\n";
        } else {
            s.out << text;
        }
        return static_cast<int>(ok);
    });
}

struct CccOptions {
    std::string in;
    std::string matrix;
    std::string out;
    bool canonical = false;
    double tol = kDefaultTolerance;
};

inline int cmd_ccc(const CccOptions& o, const Streams& s = {}) {
    return detail::guarded(s, [&] {
        const auto doc = detail::read_family(o.in);
        const UnitaryLike u = resolve_matrix(o.matrix, doc.family.size()).build(o.tol);
        const SequenceFamily c = cosf_to_ccc(doc.family, u, o.tol);
        detail::write_family(o.out, c, FamilyKind::ccc(), o.canonical);
        s.out << "wrote " << detail::shape(c) << " family to " << o.out << "\n";
        return detail::report_outcome(s, is_ccc(c, o.tol));
    });
}

struct EnlargeOptions {
    std::string in;
    std::vector<std::string> matrices; // one per CCC set, or a single spec applied to all
    std::string out;
    bool canonical = false;
    double tol = kDefaultTolerance;
};

inline int cmd_enlarge(const EnlargeOptions& o, const Streams& s = {}) {
    return detail::guarded(s, [&] {
        const auto doc = detail::read_family(o.in);
        const auto& c = doc.family;
        if (o.matrices.empty()) throw parse_error("matrices", "at least one matrix spec is required");
        if (o.matrices.size() != 1 && o.matrices.size() != c.size()) {
            throw precondition_error("enlarge: got " + std::to_string(o.matrices.size()) + " matrices for " +
                                     std::to_string(c.size()) + " sets");
        }
        std::vector<UnitaryLike> us;
        for (std::size_t i = 0; i < c.size(); ++i)
            us.push_back(resolve_matrix(o.matrices[o.matrices.size() == 1 ? 0 : i], c.size()).build(o.tol));
        const SequenceFamily e = enlarge_ccc(c, us, o.tol);
        detail::write_family(o.out, e, FamilyKind::ccc(), o.canonical);
        s.out << "wrote " << detail::shape(e) << " family to " << o.out << "\n";
        return detail::report_outcome(s, is_ccc(e, o.tol));
    });
}

struct ZoneOptions {
    std::string in;
    double tol = kDefaultTolerance;
};

inline int cmd_zone(const ZoneOptions& o, const Streams& s = {}) {
    return detail::guarded(s, [&] {
        const auto doc = detail::read_family(o.in);
        std::size_t z = 0;
        try {
            z = zccc_zone(doc.family, o.tol);
        } catch (const precondition_error& e) {
            s.err << "not verified: " << e.what() << "\n";
            return static_cast<int>(not_verified);
        }
        s.out << z << "\n";
        return static_cast<int>(ok);
    });
}

} // namespace ccc::cli
