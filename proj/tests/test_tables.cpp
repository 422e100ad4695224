#include "help2p/character_table.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace help2p;

namespace {

std::vector<Integer> sorted_degrees(const CharacterTable& t) {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < t.size(); ++i) out.push_back(t.degree(i));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

const std::int64_t kSmallQ[] = {5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29};

}  // namespace

TEST(BuiltinTables, PslFiveMatchesAlternatingGroup) {
    const auto& t = psl2_table(5);
    EXPECT_EQ(t.size(), 5u);
    EXPECT_EQ(sorted_degrees(t), ints({1, 3, 3, 4, 5}));
    EXPECT_EQ(t.group_order(), 60);
    EXPECT_EQ(t.exponent(), 30);
    EXPECT_EQ(involution_class_count(t), 1u);
}

TEST(BuiltinTables, PglFiveMatchesSymmetricGroup) {
    const auto& t = pgl2_table(5);
    EXPECT_EQ(t.size(), 7u);
    EXPECT_EQ(sorted_degrees(t), ints({1, 1, 4, 4, 5, 5, 6}));
    EXPECT_EQ(t.group_order(), 120);
    EXPECT_EQ(t.exponent(), 60);
    EXPECT_EQ(involution_class_count(t), 2u);
}

TEST(BuiltinTables, ClassCounts) {
    EXPECT_EQ(psl2_table(11).size(), 8u);
    EXPECT_EQ(pgl2_table(7).size(), 9u);
    for (std::int64_t q : kSmallQ) {
        EXPECT_EQ(psl2_table(q).size(), static_cast<std::size_t>((q + 5) / 2)) << q;
        EXPECT_EQ(pgl2_table(q).size(), static_cast<std::size_t>(q + 2)) << q;
    }
}

TEST(BuiltinTables, GroupOrdersAndTwoParts) {
    for (std::int64_t q : kSmallQ) {
        const Integer qq = q;
        EXPECT_EQ(psl2_table(q).group_order(), (qq - 1) * qq * (qq + 1) / 2);
        EXPECT_EQ(pgl2_table(q).group_order(), (qq - 1) * qq * (qq + 1));
        if (mod(q, 8) == 3 || mod(q, 8) == 5) {
            EXPECT_EQ(valuation(psl2_table(q).group_order(), 2), 2);
            EXPECT_EQ(valuation(pgl2_table(q).group_order(), 2), 3);
        }
    }
}

TEST(BuiltinTables, HalfDegreeCharacters) {
    for (std::int64_t q : kSmallQ) {
        const auto& t = psl2_table(q);
        const std::int64_t delta = mod(q, 4) == 1 ? 1 : -1;
        EXPECT_EQ(t.degree(2), (q + delta) / 2) << q;
        EXPECT_EQ(t.degree(3), (q + delta) / 2) << q;
        EXPECT_EQ(t.degree(1), q);
        EXPECT_EQ(t.character_name(1), "St");
    }
}

TEST(BuiltinTables, ColumnOrthogonality) {
    for (std::int64_t q : kSmallQ) {
        EXPECT_NO_THROW(psl2_table(q).verify_column_orthogonality()) << q;
        EXPECT_NO_THROW(pgl2_table(q).verify_column_orthogonality()) << q;
    }
}

TEST(BuiltinTables, ClassOrderingIsDeterministic) {
    const auto& t = psl2_table(11);
    std::vector<std::string> labels;
    for (const auto& c : t.classes()) labels.push_back(c.label);
    EXPECT_EQ(labels, (std::vector<std::string>{"1a", "2a", "11a", "11b", "5a", "5b", "6a", "3a"}));
}

TEST(BuiltinTables, PowerMapsCompose) {
    for (std::int64_t q : kSmallQ) {
        for (const CharacterTable* t : {&psl2_table(q), &pgl2_table(q)}) {
            const auto primes = prime_divisors(t->exponent());
            for (std::size_t c = 0; c < t->size(); ++c) {
                for (std::int64_t r : primes) {
                    for (std::int64_t s : primes) {
                        if (t->exponent() % (r * s) != 0) continue;
                        const auto step = t->class_index(t->classes()[c].power_maps.at(r));
                        const auto twice = t->class_index(t->classes()[step].power_maps.at(s));
                        EXPECT_EQ(twice, t->power_class(c, r * s));
                    }
                }
            }
        }
    }
}

TEST(BuiltinTables, PowerClassMatchesGaloisAction) {
    const auto& t = pgl2_table(13);
    for (std::size_t c = 0; c < t.size(); ++c) {
        const std::int64_t o = t.element_order(c);
        for (std::int64_t e = -o; e <= 2 * o; ++e) {
            const auto img = t.power_class(c, e);
            const std::int64_t r = mod(e, o);
            EXPECT_EQ(t.element_order(img), r == 0 ? 1 : o / std::gcd(o, r));
            if (std::gcd(r, o) != 1) continue;
            for (std::size_t chi = 0; chi < t.size(); ++chi) {
                const auto x = t.value(chi, c).lifted(std::lcm(t.value(chi, c).conductor(), o));
                std::int64_t j = r;
                while (std::gcd(j, x.conductor()) != 1) j += o;
                EXPECT_EQ(t.value(chi, img), x.galois(j));
            }
        }
    }
}

TEST(BuiltinTables, UnipotentClassesSwapUnderNonResidues) {
    // In PSL(2,11) the two classes of order 11 are swapped by squaring (2 is a non-residue).
    const auto& t = psl2_table(11);
    EXPECT_EQ(t.power_class(t.class_index("11a"), 2), t.class_index("11b"));
    EXPECT_EQ(t.power_class(t.class_index("11a"), 3), t.class_index("11a"));
}

TEST(BuiltinTables, RejectsUnsupportedQ) {
    for (std::int64_t q : {2, 3, 4, 8, 15, 21, 1, 0, -5}) {
        EXPECT_THROW(psl2_table(q), UnsupportedInput) << q;
        EXPECT_THROW(pgl2_table(q), UnsupportedInput) << q;
    }
}

TEST(BuiltinTables, EqualityIgnoresCachingIdentity) {
    EXPECT_EQ(&psl2_table(7), &psl2_table(7));
    EXPECT_FALSE(psl2_table(7) == psl2_table(9));
}

TEST(CharacterTable, RejectsBrokenInput) {
    // Cyclic group of order 2.
    std::vector<ClassData> classes{{"1a", 1, 1, {{2, "1a"}}}, {"2a", 2, 1, {{2, "1a"}}}};
    std::vector<std::vector<CyclotomicNumber>> rows{{1L, 1L}, {1L, -1L}};
    EXPECT_NO_THROW(CharacterTable(2, "C2", classes, rows));

    auto expect_code = [](TableErrc code, auto&& build) {
        try {
            build();
            ADD_FAILURE() << "no error";
        } catch (const TableError& e) {
            EXPECT_EQ(e.code(), code) << e.what();
        }
    };
    expect_code(TableErrc::Orthogonality, [&] { CharacterTable(2, "C2", classes, {{1L, 1L}, {1L, 1L}}); });
    expect_code(TableErrc::NotSquare, [&] { CharacterTable(2, "C2", classes, {{1L, 1L}}); });
    expect_code(TableErrc::ClassSizes, [&] { CharacterTable(3, "C2", classes, rows); });
    auto bad_map = classes;
    bad_map[1].power_maps[2] = "2a";
    expect_code(TableErrc::PowerMaps, [&] { CharacterTable(2, "C2", bad_map, rows); });
    auto swapped = classes;
    std::swap(swapped[0], swapped[1]);
    expect_code(TableErrc::Identity, [&] { CharacterTable(2, "C2", swapped, rows); });
    expect_code(TableErrc::MalformedValue, [&] {
        CharacterTable(2, "C2", classes, {{1L, 1L}, {1L, CyclotomicNumber(make_rational(-1, 2))}});
    });
}
