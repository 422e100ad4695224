#include "help2p/blocks.hpp"
#include "help2p/table_io.hpp"

#include "perm_group.hpp"

#include <gtest/gtest.h>

using namespace help2p;
using nlohmann::json;

namespace {

const std::filesystem::path kFixtures = HELP2P_FIXTURE_DIR;

std::vector<Integer> member_degrees(const CharacterTable& t, const BlockShape& b) {
    std::vector<Integer> out;
    for (auto m : b.members) out.push_back(t.degree(m));
    return out;
}

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

TableErrc ingest_error(const json& doc) {
    try {
        table_from_json(doc);
    } catch (const TableError& e) {
        return e.code();
    }
    ADD_FAILURE() << "document was accepted";
    return TableErrc::Schema;
}

const std::int64_t kCovered[] = {5, 11, 13, 19, 27, 29};

}  // namespace

TEST(PrincipalBlock, PslElevenHasHeightZeroMembers) {
    const auto& t = psl2_table(11);
    const auto b = principal_2block(t);
    EXPECT_EQ(member_degrees(t, b), ints({1, 5, 5, 11}));
    EXPECT_EQ(b.decomposition, (std::vector<std::vector<std::int64_t>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}));
    EXPECT_EQ(b.defect, 2);
    EXPECT_EQ(b.defect_group_kind, DefectGroupKind::KleinFour);
    for (auto m : b.members) EXPECT_EQ(character_height(t, m, b), 0);
}

TEST(PrincipalBlock, PslFive) {
    const auto& t = psl2_table(5);
    const auto b = principal_2block(t);
    EXPECT_EQ(member_degrees(t, b), ints({1, 3, 3, 5}));
    EXPECT_EQ(b.decomposition, (std::vector<std::vector<std::int64_t>>{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}}));
}

TEST(PrincipalBlock, PglFiveThirdRowHasHeightOne) {
    const auto& t = pgl2_table(5);
    const auto b = principal_2block(t);
    ASSERT_EQ(b.members.size(), 5u);
    EXPECT_EQ(member_degrees(t, b), ints({1, 1, 6, 5, 5}));
    EXPECT_EQ(b.defect, 3);
    EXPECT_EQ(character_height(t, b.members[2], b), 1);
    EXPECT_EQ(b.decomposition[2], (std::vector<std::int64_t>{2, 1}));
    EXPECT_EQ(principal_2block(pgl2_table(11)).decomposition[2], (std::vector<std::int64_t>{0, 1}));
    EXPECT_EQ(principal_2block(pgl2_table(13)).decomposition[2], (std::vector<std::int64_t>{2, 1}));
}

TEST(PrincipalBlock, CoveredBuiltins) {
    for (std::int64_t q : kCovered) {
        for (const CharacterTable* t : {&psl2_table(q), &pgl2_table(q)}) {
            const auto b = principal_2block(*t);
            EXPECT_EQ(b.defect, valuation(t->group_order(), 2));
            EXPECT_EQ(b.members[b.trivial_row], 0u);
            int height_one = 0;
            for (auto m : b.members) height_one += character_height(*t, m, b);
            EXPECT_EQ(height_one, t->builtin()->family == Family::PGL ? 1 : 0) << t->descriptor();
            // Members are 2-rational on 2-singular classes.
            for (auto m : b.members)
                for (std::size_t c = 0; c < t->size(); ++c)
                    if (t->element_order(c) % 2 == 0) {
                        EXPECT_TRUE(t->value(m, c).is_rational()) << t->descriptor();
                        EXPECT_EQ(t->value(m, c).compressed().conductor() % 2, 1);
                    }
        }
    }
}

TEST(PrincipalBlock, UncoveredQIsRejected) {
    for (std::int64_t q : {7, 9, 17, 23, 25}) {
        EXPECT_THROW(principal_2block(psl2_table(q)), UnsupportedInput) << q;
        EXPECT_THROW(principal_2block(pgl2_table(q)), UnsupportedInput) << q;
    }
}

TEST(PrincipalBlock, MembershipMatchesBlockSizeForOtherQ) {
    // q = +-1 mod 8 is outside the covered kinds, but the membership test still runs.
    const auto& t = psl2_table(7);
    const auto members = principal_block_members(t);
    EXPECT_EQ(members.front(), 0u);
    EXPECT_LT(members.size(), t.size());
}

TEST(TableIo, RoundTripBuiltins) {
    for (std::int64_t q : {5, 7, 9, 11, 13, 25, 27}) {
        for (const CharacterTable* t : {&psl2_table(q), &pgl2_table(q)}) {
            const auto back = ingest_table(export_table(*t));
            EXPECT_TRUE(back == *t) << t->descriptor();
            EXPECT_EQ(back.declared_block().has_value(), sylow2_kind(*t) != DefectGroupKind::Other);
            if (back.declared_block()) EXPECT_EQ(principal_2block(back), principal_2block(*t));
        }
    }
}

TEST(TableIo, FixturesMatchBruteForce) {
    using namespace help2p::testing;
    const std::pair<const char*, BruteGroup> cases[] = {
        {"trivial.json", trivial_group()},          {"c3.json", cyclic_group(3)},
        {"s3.json", symmetric_group(3)},            {"a4.json", alternating_group(4)},
        {"s4.json", symmetric_group(4)},            {"a5.json", alternating_group(5)},
    };
    for (const auto& [file, group] : cases) {
        const auto t = load_table_file(kFixtures / file);
        EXPECT_TRUE(t == *group.table) << file;
        EXPECT_NO_THROW(t.verify_column_orthogonality());
        ASSERT_TRUE(t.declared_block()) << file;
    }
    const auto a5 = load_table_file(kFixtures / "a5.json");
    EXPECT_EQ(member_degrees(a5, principal_2block(a5)), ints({1, 3, 3, 5}));
    EXPECT_EQ(involution_class_count(load_table_file(kFixtures / "c3.json")), 0u);
    EXPECT_EQ(load_table_file(kFixtures / "trivial.json").exponent(), 1);
    EXPECT_EQ(load_table_file(kFixtures / "s4.json").exponent(), 12);
}

TEST(TableIo, DistinctDiagnostics) {
    const json good = json::parse(export_table(psl2_table(5)));
    ASSERT_NO_THROW(table_from_json(good));

    auto dup = good;
    dup["characters"][2] = dup["characters"][1];
    dup.erase("block");
    EXPECT_EQ(ingest_error(dup), TableErrc::Orthogonality);

    auto short_rows = good;
    short_rows["characters"].erase(4);
    EXPECT_EQ(ingest_error(short_rows), TableErrc::NotSquare);

    auto bad_map = good;
    bad_map["classes"][2]["power_maps"]["5"] = "3a";
    EXPECT_EQ(ingest_error(bad_map), TableErrc::PowerMaps);

    auto bad_value = good;
    bad_value["characters"][1][1]["terms"] = json::array({json::array({"0", "x", "1"})});
    EXPECT_EQ(ingest_error(bad_value), TableErrc::MalformedValue);

    auto zero_den = good;
    zero_den["characters"][1][1]["terms"] = json::array({json::array({"0", "1", "0"})});
    EXPECT_EQ(ingest_error(zero_den), TableErrc::MalformedValue);

    auto sizes = good;
    sizes["classes"][1]["class_size"] = "16";
    EXPECT_EQ(ingest_error(sizes), TableErrc::ClassSizes);

    auto missing = good;
    missing.erase("classes");
    EXPECT_EQ(ingest_error(missing), TableErrc::Schema);
    EXPECT_THROW(ingest_table("{not json"), TableError);
}

TEST(TableIo, BlockValidation) {
    const json good = json::parse(export_table(pgl2_table(11)));
    ASSERT_NO_THROW(table_from_json(good));

    auto defect = good;
    defect["block"]["defect"] = 2;
    EXPECT_EQ(ingest_error(defect), TableErrc::Block);

    auto rows = good;
    rows["block"]["members"].erase(4);
    rows["block"]["decomposition_matrix"].erase(4);
    EXPECT_EQ(ingest_error(rows), TableErrc::Block);

    auto wrong_member = good;
    wrong_member["block"]["members"][2] = 4;
    EXPECT_EQ(ingest_error(wrong_member), TableErrc::Block);

    auto inconsistent = good;
    inconsistent["block"]["decomposition_matrix"][2] = json::array({1, 1});
    EXPECT_EQ(ingest_error(inconsistent), TableErrc::Block);

    auto no_block = good;
    no_block.erase("block");
    const auto t = table_from_json(no_block);
    EXPECT_THROW(principal_2block(t), TableError);
}

TEST(Heights, NegativeHeightIsADataError) {
    const auto& t = pgl2_table(5);
    auto b = principal_2block(t);
    b.defect = 0;
    EXPECT_THROW(character_height(t, b.members[0], b), DataError);
}

TEST(Cyclotomic, SerializationRoundTrip) {
    const auto x = gauss_sqrt(13, 1) * CyclotomicNumber::root_of_unity(4, 1) + CyclotomicNumber(make_rational(3, 7));
    EXPECT_EQ(cyclotomic_from_json(cyclotomic_to_json(x)), x);
    const auto j = cyclotomic_to_json(x);
    for (std::size_t i = 1; i < j["terms"].size(); ++i)
        EXPECT_LT(std::stol(j["terms"][i - 1][0].get<std::string>()), std::stol(j["terms"][i][0].get<std::string>()));
}
