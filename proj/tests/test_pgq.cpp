#include "help2p/pgq.hpp"

#include <gtest/gtest.h>

using namespace help2p;

namespace {

const std::int64_t kBuiltins[] = {5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29};

bool positive(VerdictStatus s) { return s == VerdictStatus::ElementExists || s == VerdictStatus::Positive; }

}  // namespace

TEST(Spectrum, Examples) {
    EXPECT_EQ(spectrum(Family::PSL, 27), (std::set<std::int64_t>{1, 2, 3, 7, 13, 14}));
    EXPECT_EQ(spectrum(Family::PSL, 5), (std::set<std::int64_t>{1, 2, 3, 5}));
    EXPECT_EQ(spectrum(Family::PGL, 5), (std::set<std::int64_t>{1, 2, 3, 4, 5, 6}));
    EXPECT_THROW(spectrum(Family::PSL, 8), UnsupportedInput);
    EXPECT_THROW(spectrum(Family::PSL, 15), UnsupportedInput);
}

TEST(Spectrum, MatchesTablesAndIsDivisorClosed) {
    for (auto q : kBuiltins)
        for (auto family : {Family::PSL, Family::PGL}) {
            const auto& t = builtin_table(family, q);
            std::set<std::int64_t> orders;
            Integer total = 0;
            for (const auto& c : t.classes()) {
                orders.insert(c.element_order);
                total += c.class_size;
            }
            const auto s = spectrum(family, q);
            EXPECT_EQ(orders, s) << t.descriptor();
            EXPECT_EQ(total, group_order(family, q)) << t.descriptor();
            EXPECT_TRUE(s.count(1) && s.count(2));
            for (auto o : s)
                for (auto d : divisors(o)) EXPECT_TRUE(s.count(d));
        }
}

TEST(Order2p, Verdicts) {
    EXPECT_THROW(order2p_verdict(17, Family::PSL), UnsupportedInput);
    const auto pgl = order2p_verdict(13, Family::PGL);
    EXPECT_EQ(pgl.verdict.status, VerdictStatus::NoUnitsProven);
    EXPECT_EQ(pgl.verdict.justification.at(0).data.at("providers"), nlohmann::json::array({provenance::dihedral8}));
    EXPECT_FALSE(pgl.overgroup);

    const auto psl5 = order2p_verdict(5, Family::PSL);
    EXPECT_EQ(psl5.verdict.status, VerdictStatus::NoUnitsProven);
    ASSERT_TRUE(psl5.overgroup);
    EXPECT_EQ(psl5.verdict.justification.at(1).rule, "overgroup");
    EXPECT_TRUE(psl5.overgroup->survivors.empty());

    const auto psl11 = order2p_verdict(11, Family::PSL);
    EXPECT_EQ(psl11.verdict.status, VerdictStatus::NoUnitsProven);
    EXPECT_FALSE(psl11.overgroup);
}

TEST(Order2p, AblationAttachesReverifiedFindings) {
    VerdictOptions plain;
    plain.use_mod4 = false;
    const auto r = order2p_verdict(27, Family::PSL, plain);
    EXPECT_EQ(r.verdict.status, VerdictStatus::Open);
    EXPECT_EQ(r.verdict.findings.size(), r.direct.survivors.size());
    EXPECT_EQ(r.verdict.findings.size(), 12u);
    for (const auto& f : r.verdict.findings) EXPECT_TRUE(f.at("reverified").get<bool>());
    const auto json = to_json(r.verdict);
    EXPECT_EQ(json.at("status"), "Open");
    EXPECT_FALSE(json.at("subject").at("mod4").get<bool>());
    EXPECT_NE(to_markdown(r.verdict).find("Findings"), std::string::npos);
}

TEST(Pgq, Psl27) {
    const auto v = pgq_verdict(27);
    EXPECT_EQ(v.status, VerdictStatus::Positive);
    std::map<std::pair<std::int64_t, std::int64_t>, std::string> rule;
    for (const auto& p : v.pairs) rule[{p.r, p.s}] = p.step.rule;
    const std::map<std::pair<std::int64_t, std::int64_t>, std::string> expected{
        {{2, 3}, "R3"}, {{2, 7}, "R1"}, {{2, 13}, "R2"}, {{3, 7}, "R2"}, {{3, 13}, "R2"}, {{7, 13}, "R2"}};
    EXPECT_EQ(rule, expected);
}

TEST(Pgq, StatusesForSmallQ) {
    for (auto q : {11, 13, 25}) EXPECT_EQ(pgq_verdict(q).status, VerdictStatus::Positive) << q;
    const auto v81 = pgq_verdict(81);
    EXPECT_EQ(v81.status, VerdictStatus::Open);
    EXPECT_EQ(v81.unresolved(), (std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 3}}));
    for (const auto& p : pgq_verdict(25).pairs)
        if (p.r == 2 && p.s == 5) EXPECT_EQ(p.step.rule, "R4");
    EXPECT_EQ(pgq_verdict(13, Family::PGL).status, VerdictStatus::Positive);
}

TEST(Pgq, ReplayReproducesEveryStep) {
    for (auto q : {11, 13, 25, 27, 81}) {
        const auto v = pgq_verdict(q);
        for (const auto& p : v.pairs) EXPECT_TRUE(replay(p, Family::PSL, q)) << q << " " << p.r << "," << p.s;
    }
    auto tampered = pgq_verdict(11).pairs.at(1);
    ASSERT_EQ(tampered.step.rule, "R2");
    tampered.step.data["prime"] = 2;
    EXPECT_FALSE(replay(tampered, Family::PSL, 11));
}

TEST(Pgq, DisablingRulesOnlyMovesTowardOpen) {
    const std::vector<std::string> names{"R1", "R2", "R3", "R4"};
    for (auto q : {11, 25, 27, 81}) {
        const auto base = pgq_verdict(q);
        for (unsigned mask = 1; mask < 16; ++mask) {
            PgqOptions options;
            for (unsigned i = 0; i < 4; ++i)
                if (mask & (1u << i)) options.disabled_rules.insert(names[i]);
            const auto v = pgq_verdict(q, Family::PSL, options);
            ASSERT_EQ(v.pairs.size(), base.pairs.size());
            for (std::size_t i = 0; i < v.pairs.size(); ++i) {
                if (positive(v.pairs[i].status)) EXPECT_TRUE(positive(base.pairs[i].status));
                EXPECT_FALSE(options.disabled_rules.count(v.pairs[i].step.rule));
                EXPECT_TRUE(replay(v.pairs[i], Family::PSL, q, options));
            }
            if (v.status == VerdictStatus::Positive) EXPECT_EQ(base.status, VerdictStatus::Positive);
        }
    }
    PgqOptions bad;
    bad.disabled_rules.insert("R5");
    EXPECT_THROW(pgq_verdict(11, Family::PSL, bad), UnsupportedInput);
}

TEST(Pgq, Reports) {
    const auto v = pgq_verdict(81);
    const auto json = to_json(v);
    EXPECT_EQ(json.at("status"), "Open");
    EXPECT_EQ(json.at("unresolved"), nlohmann::json::parse("[[2,3]]"));
    EXPECT_EQ(json.at("subject").at("group_order"), "265680");
    EXPECT_NE(to_markdown(v).find("| {2,3} | Open | R5 |"), std::string::npos);
}

TEST(Conditions, Factorizations) {
    const auto c27 = pgq_conditions(27);
    EXPECT_FALSE(c27.is_prime);
    EXPECT_TRUE(c27.odd_part_square_free);
    EXPECT_EQ(c27.odd_part, 91);
    EXPECT_EQ(c27.mod8_class, 3);
    EXPECT_TRUE(c27.f_coprime);

    const auto c17 = pgq_conditions(17);
    EXPECT_TRUE(c17.is_prime);
    EXPECT_FALSE(c17.odd_part_square_free);
    EXPECT_EQ(c17.mod8_class, 1);

    const auto c11 = pgq_conditions(11);
    EXPECT_TRUE(c11.is_prime && c11.odd_part_square_free);
    EXPECT_EQ(c11.mod8_class, 3);

    // 80 * 82 = 2^5 * 5 * 41: square-free odd part, yet f = 4 shares the factor 2.
    const auto c81 = pgq_conditions(81);
    EXPECT_EQ(c81.odd_part, 205);
    EXPECT_TRUE(c81.odd_part_square_free);
    EXPECT_FALSE(c81.f_coprime);
    EXPECT_FALSE(c81.implication_holds);
    EXPECT_THROW(pgq_conditions(16), UnsupportedInput);
}
