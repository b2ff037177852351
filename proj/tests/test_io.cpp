#include "ccc/io.hpp"
#include "golden.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace ccc;
using io::Json;

namespace {

std::string recipe_path(const std::string& name) { return std::string(CCC_RECIPE_DIR) + "/" + name; }

std::string parse_failure(const std::function<void()>& f) {
    try {
        f();
    } catch (const parse_error& e) {
        return e.what();
    }
    return "<no parse_error>";
}

} // namespace

TEST(IoScalar, ExactRoundTripKeepsCoefficients) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long long> c(-1000, 1000);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t order = 1 + trial % 12;
        std::vector<BigInt> coeffs(order);
        for (auto& x : coeffs) x = c(rng);
        if (trial % 5 == 0) coeffs[0] = (BigInt(1) << (64 + trial)) * (trial % 2 ? -1 : 1);
        const Scalar s(CycloNum(order, coeffs));
        const auto back = io::scalar_from_json(Json::parse(io::to_json(s).dump()), ScalarMode::exact);
        EXPECT_EQ(back.exact().order(), order);
        EXPECT_EQ(back.exact().coeffs(), coeffs);
    }
}

TEST(IoScalar, LargeCoefficientsAreDecimalStrings) {
    const BigInt big = BigInt(1) << 100;
    const auto j = io::to_json(Scalar(CycloNum(2, {big, BigInt(-3)})));
    EXPECT_TRUE(j["coeffs"][0].is_string());
    EXPECT_EQ(j["coeffs"][0].get<std::string>(), big.str());
    EXPECT_EQ(j["coeffs"][1].get<long long>(), -3);
}

TEST(IoScalar, ApproxRoundTripIsExactInDoubles) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> d(-10, 10);
    for (int trial = 0; trial < 100; ++trial) {
        const Scalar s(std::complex<double>(d(rng), d(rng)));
        const auto back = io::scalar_from_json(Json::parse(io::to_json(s).dump()), ScalarMode::approx);
        EXPECT_EQ(back.approx(), s.approx());
    }
}

TEST(IoScalar, Shorthands) {
    EXPECT_EQ(io::scalar_from_json("+", ScalarMode::exact), Scalar::integer(1));
    EXPECT_EQ(io::scalar_from_json("-", ScalarMode::exact), Scalar::integer(-1));
    EXPECT_EQ(io::scalar_from_json("−", ScalarMode::exact), Scalar::integer(-1));
    EXPECT_EQ(io::scalar_from_json(7, ScalarMode::exact), Scalar::integer(7));
    EXPECT_EQ(io::scalar_from_json(Json::parse(R"({"order":4,"coeffs":[0,"1",0,0]})"), ScalarMode::exact),
              Scalar::root(4, 1));
    EXPECT_EQ(io::scalar_from_json(2.5, ScalarMode::approx).approx(), std::complex<double>(2.5, 0));
}

TEST(IoScalar, ErrorsNameTheField) {
    EXPECT_NE(parse_failure([] { io::scalar_from_json("x", ScalarMode::exact); }).find("unknown scalar shorthand"),
              std::string::npos);
    const auto msg = parse_failure(
        [] { io::scalar_from_json(Json::parse(R"({"order":3,"coeffs":[1,"1.5",0]})"), ScalarMode::exact); });
    EXPECT_NE(msg.find("coeffs[1]"), std::string::npos) << msg;
    EXPECT_NE(parse_failure([] { io::scalar_from_json(Json::parse(R"({"order":3,"coeffs":[1]})"), ScalarMode::exact); })
                  .find("expected 3 coefficients"),
              std::string::npos);
}

TEST(IoFamily, RoundTripIsBitExact) {
    const auto f = cosf_to_ccc(golden::dft6_cosf(), dft_matrix(6));
    const auto doc = io::family_from_json(Json::parse(io::to_json(f, FamilyKind::ccc()).dump(2)));
    EXPECT_EQ(doc.kind, FamilyKind::ccc());
    ASSERT_EQ(doc.family.size(), f.size());
    for (std::size_t m = 0; m < f.size(); ++m)
        for (std::size_t n = 0; n < f.set_size(); ++n)
            for (std::size_t k = 0; k < f.at(m, n).length(); ++k) {
                const auto& a = f.at(m, n)[k].exact();
                const auto& b = doc.family.at(m, n)[k].exact();
                ASSERT_EQ(a.order(), b.order());
                ASSERT_EQ(a.coeffs(), b.coeffs());
            }
}

TEST(IoFamily, MetadataDescribesShape) {
    const auto j = io::to_json(golden::dft6_cosf(), FamilyKind::cosf(6));
    EXPECT_EQ(j["metadata"]["kind"], "cosf:6");
    EXPECT_EQ(j["metadata"]["M"], 6);
    EXPECT_EQ(j["metadata"]["N"], 1);
    EXPECT_EQ(j["metadata"]["lengths"], Json::parse("[12, 24]"));
    EXPECT_EQ(j["mode"], "exact");
}

TEST(IoFamily, SignStringsAndSampleFiles) {
    const auto doc = io::family_from_json(io::read_json(recipe_path("ccc_2x2.json")));
    EXPECT_EQ(doc.kind, FamilyKind::ccc());
    for (std::size_t m = 0; m < 2; ++m)
        for (std::size_t n = 0; n < 2; ++n) EXPECT_EQ(doc.family.at(m, n), golden::ccc_2x2().at(m, n));
    const auto h2 = io::family_from_json(io::read_json(recipe_path("h2_cosf.json")));
    EXPECT_EQ(h2.kind, FamilyKind::cosf(2));
    EXPECT_EQ(h2.family[1][0], golden::h2_cosf()[1][0]);
}

TEST(IoFamily, MetadataMustMatchData) {
    const auto bad_m = R"({"metadata":{"kind":"ccc","M":3},"sets":[["++"]]})";
    EXPECT_NE(parse_failure([&] { io::family_from_json(Json::parse(bad_m)); }).find("metadata.M"), std::string::npos);
    const auto bad_len = R"({"metadata":{"lengths":[3]},"sets":[["++"]]})";
    EXPECT_NE(parse_failure([&] { io::family_from_json(Json::parse(bad_len)); }).find("metadata.lengths"),
              std::string::npos);
    const auto bad_kind = R"({"metadata":{"kind":"cosf:x"},"sets":[["++"]]})";
    EXPECT_NE(parse_failure([&] { io::family_from_json(Json::parse(bad_kind)); }).find("metadata.kind"),
              std::string::npos);
    const auto ragged = R"({"sets":[["++","+"]]})";
    EXPECT_NE(parse_failure([&] { io::family_from_json(Json::parse(ragged)); }).find("sets[0]"), std::string::npos);
    const auto bad_entry = R"({"sets":[[["+", "q"]]]})";
    EXPECT_NE(parse_failure([&] { io::family_from_json(Json::parse(bad_entry)); }).find("sets[0][0][1]"),
              std::string::npos);
}

TEST(IoText, SyntaxErrorsReportPosition) {
    const auto msg = parse_failure([] { io::parse_text("{\n  \"N\": 2,\n  \"base\": [\n}", "r.json"); });
    EXPECT_NE(msg.find("r.json"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
}

TEST(IoText, MissingFileIsIoError) { EXPECT_THROW(io::read_file("/nonexistent/x.json"), io_error); }

TEST(IoMatrix, Specs) {
    EXPECT_EQ(io::matrix_spec_from_string("dft:6").kind, MatrixKind::dft);
    EXPECT_EQ(io::matrix_spec_from_string("hadamard:4").dim, 4u);
    EXPECT_THROW(io::matrix_spec_from_string("hadamard"), parse_error);
    EXPECT_THROW(io::matrix_spec_from_string("fourier:4"), parse_error);
    EXPECT_THROW(io::matrix_spec_from_string("dft:0"), parse_error);
    EXPECT_THROW(io::matrix_spec_from_string("dft:-1"), parse_error);
    const auto w3 = MatrixSpec::custom(golden::w3_matrix(), ScalarMode::exact);
    const auto back = io::matrix_spec_from_json(Json::parse(io::to_json(w3).dump()));
    EXPECT_EQ(back.kind, MatrixKind::custom);
    EXPECT_EQ(back.build().alpha(), Scalar::integer(3));
}

TEST(IoRecipe, RoundTripExecutesToSameFamily) {
    for (const auto& r : {plan(2, {8}), plan(6, {12, 96}), plan(4, {4, 108}), plan(6, {54, 162})}) {
        const auto back = io::recipe_from_json(Json::parse(io::to_json(r).dump()));
        EXPECT_EQ(io::to_json(back), io::to_json(r));
        EXPECT_TRUE(equal_up_to_indexing(execute(back).family, execute(r).family));
    }
}

TEST(IoRecipe, SampleFilesReproduceGoldenFamilies) {
    const auto two = execute(io::recipe_from_json(io::read_json(recipe_path("dft6_two_cells.json")))).family;
    const auto elong = execute(io::recipe_from_json(io::read_json(recipe_path("dft6_elongated.json")))).family;
    const auto w3 = execute(io::recipe_from_json(io::read_json(recipe_path("dft6_elongated_w3.json")))).family;
    for (std::size_t m = 0; m < 6; ++m) {
        EXPECT_EQ(two[m][0], golden::dft6_cosf()[m][0]);
        EXPECT_EQ(elong[m][0], golden::dft6_elongated()[m][0]);
        EXPECT_EQ(w3[m][0], golden::dft6_elongated_w3()[m][0]);
    }
    const auto nested = io::recipe_from_json(io::read_json(recipe_path("dft6_elongated.json")));
    const auto again = io::recipe_from_json(Json::parse(io::to_json(nested).dump()));
    EXPECT_EQ(io::to_json(again), io::to_json(nested));
}

TEST(IoRecipe, ErrorsNameTheField) {
    auto j = io::to_json(plan(2, {8}));
    j["rounds"][0]["cells"][0][1] = "one";
    EXPECT_NE(parse_failure([&] { io::recipe_from_json(j); }).find("rounds[0].cells[0][1]"), std::string::npos);

    j = io::to_json(plan(6, {12, 24}));
    j["base"]["subs"][1] = "hadamard:2";
    const auto msg = parse_failure([&] { io::recipe_from_json(j); });
    EXPECT_NE(msg.find("base.subs[1]"), std::string::npos) << msg;
    EXPECT_NE(msg.find("cell size 4"), std::string::npos) << msg;

    j = io::to_json(plan(2, {8}));
    j.erase("base");
    EXPECT_NE(parse_failure([&] { io::recipe_from_json(j); }).find("base: missing field"), std::string::npos);

    j = io::to_json(plan(2, {8}));
    j["N"] = 3;
    EXPECT_NE(parse_failure([&] { io::recipe_from_json(j); }).find("N: does not match"), std::string::npos);
}

TEST(IoReport, ListsViolations) {
    const SequenceFamily bad{{Sequence::from_signs("+++-"), Sequence::from_signs("+-++")},
                             {Sequence::from_signs("++-+"), Sequence::from_signs("+--+")}};
    const auto j = io::to_json(is_ccc(bad));
    EXPECT_FALSE(j["passed"].get<bool>());
    EXPECT_FALSE(j["violations"].empty());
    EXPECT_TRUE(j["violations"][0].contains("shift"));
    EXPECT_GT(j["shifts_examined"].get<std::size_t>(), 0u);
}
