// ccc: generate, verify and transform complementary sequence families.

#include "ccc/cli.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
    using namespace ccc::cli;

    CLI::App app{"Build and check complete complementary codes and shift-orthogonal sequence families."};
    app.require_subcommand(1);
    double tol = ccc::kDefaultTolerance;
    app.add_option("--tol", tol, "Tolerance for approximate (floating-point) families")->capture_default_str();

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Execute a recipe and write the resulting family");
    g->add_option("recipe", gen.recipe, "Recipe JSON")->required();
    g->add_option("out", gen.out, "Output family JSON")->required();
    g->add_flag("--canonical", gen.canonical, "Write the canonical form of the family");
    g->add_option("--log", gen.log, "Write the per-stage provenance log here");

    VerifyOptions ver;
    auto* v = app.add_subcommand("verify", "Check a family for the claimed or requested property");
    v->add_option("family", ver.family, "Family JSON")->required();
    v->add_option("--kind", ver.kind, "ccc or cosf:N (default: the document's claim)");
    v->add_option("--report", ver.report, "Write a JSON report listing every violation");

    PlanOptions pl;
    auto* p = app.add_subcommand("plan", "Plan a recipe whose family contains the given lengths");
    p->add_option("N", pl.n, "Family size / shift parameter")->required()->check(CLI::PositiveNumber);
    p->add_option("lengths", pl.lengths, "Target lengths")->required()->check(CLI::PositiveNumber);
    p->add_option("-o,--out", pl.out, "Recipe JSON (default: stdout)");

    CccOptions cc;
    auto* c = app.add_subcommand("ccc", "Turn an N-shift-orthogonal family into a complete complementary code");
    c->add_option("in", cc.in, "Input family JSON")->required();
    c->add_option("matrix", cc.matrix, "dft[:N], hadamard[:N], identity[:N] or @matrix.json")->required();
    c->add_option("out", cc.out, "Output family JSON")->required();
    c->add_flag("--canonical", cc.canonical, "Write the canonical form of the family");

    EnlargeOptions en;
    auto* e = app.add_subcommand("enlarge", "Enlarge a complete complementary code with one matrix per set");
    e->add_option("in", en.in, "Input CCC JSON")->required();
    e->add_option("matrices", en.matrices, "One matrix spec per set, or one for all")->required();
    e->add_option("-o,--out", en.out, "Output family JSON")->required();
    e->add_flag("--canonical", en.canonical, "Write the canonical form of the family");

    ZoneOptions zo;
    auto* z = app.add_subcommand("zone", "Print the zero-correlation zone width of a CCC");
    z->add_option("in", zo.in, "Input CCC JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::CallForAllHelp& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return bad_input;
    }

    gen.tol = ver.tol = cc.tol = en.tol = zo.tol = tol;
    if (*g) return cmd_gen(gen);
    if (*v) return cmd_verify(ver);
    if (*p) return cmd_plan(pl);
    if (*c) return cmd_ccc(cc);
    if (*e) return cmd_enlarge(en);
    return cmd_zone(zo);
}
