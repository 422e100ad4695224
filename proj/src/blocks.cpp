#include "help2p/blocks.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace help2p {
namespace {

// Reduction of an algebraic integer of Q(zeta_n) modulo the radical of 2:
// zeta_n maps to zeta_{n'}^w with n' the odd part of n and 2^a w = 1 mod n'.
bool vanishes_mod_two(const CyclotomicNumber& x) {
    if (!x.is_integral()) throw DataError("central character value is not an algebraic integer");
    std::int64_t odd = x.conductor(), two_power = 1;
    while (odd % 2 == 0) {
        odd /= 2;
        two_power *= 2;
    }
    std::int64_t w = 0;
    while (w < odd && mod(two_power * w, odd) != mod(1, odd)) ++w;
    std::vector<std::uint8_t> bits(odd, 0);
    for (const auto& [e, c] : x.terms())
        if (mpz_odd_p(c.get_num_mpz_t())) bits[mod(e * w, odd)] ^= 1;
    const auto& poly = cyclotomic_polynomial(odd);
    const std::int64_t phi = static_cast<std::int64_t>(poly.size()) - 1;
    for (std::int64_t deg = odd - 1; deg >= phi; --deg) {
        if (!bits[deg]) continue;
        for (std::int64_t j = 0; j <= phi; ++j)
            if (poly[j] % 2 != 0) bits[deg - phi + j] ^= 1;
    }
    return std::none_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; });
}

bool is_trivial_row(const CharacterTable& t, std::size_t chi) {
    const CyclotomicNumber one(1L);
    return std::all_of(t.characters()[chi].begin(), t.characters()[chi].end(),
                       [&](const CyclotomicNumber& v) { return v == one; });
}

// Basis of {y : y D = 0} over Q.
std::vector<std::vector<Rational>> left_kernel(const std::vector<std::vector<std::int64_t>>& d, std::size_t& rank) {
    const std::size_t rows = d.size(), cols = rows ? d[0].size() : 0;
    // Row-reduce D^T (cols x rows); its null space is the left kernel of D.
    std::vector<std::vector<Rational>> a(cols, std::vector<Rational>(rows));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[j][i] = d[i][j];
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < rows && r < cols; ++c) {
        std::size_t p = r;
        while (p < cols && a[p][c] == 0) ++p;
        if (p == cols) continue;
        std::swap(a[p], a[r]);
        const Rational inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (std::size_t i = 0; i < cols; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t k = 0; k < rows; ++k) a[i][k] -= f * a[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    rank = r;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < rows; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        std::vector<Rational> y(rows, 0);
        y[free] = 1;
        for (std::size_t i = 0; i < r; ++i) y[pivots[i]] = -a[i][free];
        basis.push_back(std::move(y));
    }
    return basis;
}

void block_check(bool ok, const std::string& what) {
    if (!ok) throw TableError(TableErrc::Block, what);
}

// Restrictions of the members to 2-regular classes must be integer combinations
// of the columns of D, which in particular kills them under the left kernel.
void check_decomposition(const CharacterTable& t, const BlockShape& b) {
    std::size_t rank = 0;
    const auto kernel = left_kernel(b.decomposition, rank);
    block_check(rank == b.decomposition[0].size(), "decomposition matrix does not have full column rank");
    for (std::size_t cls : two_regular_classes(t)) {
        for (const auto& y : kernel) {
            CyclotomicNumber sum;
            for (std::size_t i = 0; i < b.members.size(); ++i)
                if (y[i] != 0) sum += t.value(b.members[i], cls) * y[i];
            block_check(sum.is_zero(), "decomposition matrix is inconsistent with the values on class " +
                                           t.classes()[cls].label);
        }
    }
}

int two_adic_defect(const CharacterTable& t) { return valuation(t.group_order(), 2); }

BlockShape builtin_block(const CharacterTable& t) {
    const auto& info = *t.builtin();
    const std::int64_t r = mod(info.q, 8);
    if (r != 3 && r != 5)
        throw UnsupportedInput("principal 2-block is only covered for q = +-3 mod 8, got q = " + std::to_string(info.q));
    const auto members = principal_block_members(t);
    const std::set<std::size_t> found(members.begin(), members.end());
    auto by_name = [&](const std::string& name) {
        for (std::size_t i = 0; i < info.character_names.size(); ++i)
            if (info.character_names[i] == name) return i;
        throw DataError("built-in table lacks character " + name);
    };

    BlockShape b;
    b.defect = two_adic_defect(t);
    b.trivial_row = 0;
    if (info.family == Family::PSL) {
        b.defect_group_kind = DefectGroupKind::KleinFour;
        b.members = {by_name("1"), by_name("eta+"), by_name("eta-"), by_name("St")};
        if (r == 3)
            b.decomposition = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
        else
            b.decomposition = {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}};
    } else {
        b.defect_group_kind = DefectGroupKind::Dihedral8;
        std::vector<std::size_t> height_one;
        for (std::size_t chi : members)
            if (valuation(t.degree(chi), 2) == 1) height_one.push_back(chi);
        if (height_one.size() != 1)
            throw DataError("principal block of " + t.descriptor() + " has " + std::to_string(height_one.size()) +
                            " members of degree 2-part 2; expected exactly one");
        b.members = {by_name("1"), by_name("sgn"), height_one[0], by_name("St"), by_name("St.sgn")};
        const std::int64_t d = r == 3 ? 0 : 2;
        b.decomposition = {{1, 0}, {1, 0}, {d, 1}, {1, 1}, {1, 1}};
    }
    if (std::set<std::size_t>(b.members.begin(), b.members.end()) != found)
        throw DataError("central characters of " + t.descriptor() + " disagree with the generic block description");
    check_decomposition(t, b);
    return b;
}

}  // namespace

std::vector<std::size_t> principal_block_members(const CharacterTable& table) {
    std::vector<std::size_t> out;
    for (std::size_t chi = 0; chi < table.size(); ++chi) {
        const Rational deg(table.degree(chi));
        bool member = true;
        for (std::size_t cls = 1; cls < table.size() && member; ++cls) {
            const Rational size(table.classes()[cls].class_size);
            const CyclotomicNumber omega = table.value(chi, cls) * Rational(size / deg);
            member = vanishes_mod_two(omega - CyclotomicNumber(size));
        }
        if (member) out.push_back(chi);
    }
    return out;
}

std::vector<std::size_t> two_regular_classes(const CharacterTable& table) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < table.size(); ++c)
        if (table.element_order(c) % 2 != 0) out.push_back(c);
    return out;
}

BlockShape principal_2block(const CharacterTable& table) {
    if (table.declared_block()) return table.declared_block()->shape;
    if (table.builtin()) return builtin_block(table);
    throw TableError(TableErrc::Block, "table " + table.descriptor() + " carries no block data");
}

DefectGroupKind sylow2_kind(const CharacterTable& table) {
    if (table.declared_block()) return table.declared_block()->sylow2_kind;
    if (table.builtin()) {
        const std::int64_t r = mod(table.builtin()->q, 8);
        if (r != 3 && r != 5) return DefectGroupKind::Other;
        return table.builtin()->family == Family::PSL ? DefectGroupKind::KleinFour : DefectGroupKind::Dihedral8;
    }
    return DefectGroupKind::Other;
}

int character_height(const CharacterTable& table, std::size_t chi, const BlockShape& block) {
    const int h = valuation(table.degree(chi), 2) - two_adic_defect(table) + block.defect;
    if (h < 0)
        throw DataError("character " + table.character_name(chi) + " would have negative height " + std::to_string(h));
    return h;
}

void validate_block(const CharacterTable& table, const DeclaredBlock& declared) {
    const BlockShape& b = declared.shape;
    block_check(!b.members.empty(), "block has no members");
    block_check(b.decomposition.size() == b.members.size(), "decomposition matrix needs one row per member");
    const std::size_t width = b.decomposition[0].size();
    block_check(width > 0, "decomposition matrix has no columns");
    for (const auto& row : b.decomposition) {
        block_check(row.size() == width, "decomposition matrix rows differ in length");
        for (auto v : row) block_check(v >= 0, "decomposition matrix has a negative entry");
    }
    std::set<std::size_t> seen;
    for (auto m : b.members) {
        block_check(m < table.size(), "block member index out of range");
        block_check(seen.insert(m).second, "block member listed twice");
    }
    block_check(b.trivial_row < b.members.size() && is_trivial_row(table, b.members[b.trivial_row]),
                "trivial_row does not point at the trivial character");
    block_check(b.defect == two_adic_defect(table), "principal block defect must equal v2(|G|) = " +
                                                         std::to_string(two_adic_defect(table)));
    if (b.defect_group_kind == DefectGroupKind::KleinFour) block_check(b.members.size() == 4, "KleinFour block needs 4 members");
    if (b.defect_group_kind == DefectGroupKind::Dihedral8) block_check(b.members.size() == 5, "Dihedral8 block needs 5 members");
    block_check(b.defect_group_kind == declared.sylow2_kind, "principal block defect group must be the Sylow 2-subgroup");
    if (declared.sylow2_kind == DefectGroupKind::KleinFour) block_check(b.defect == 2, "KleinFour Sylow needs v2(|G|) = 2");
    if (declared.sylow2_kind == DefectGroupKind::Dihedral8) block_check(b.defect == 3, "Dihedral8 Sylow needs v2(|G|) = 3");
    for (auto m : b.members) {
        try {
            character_height(table, m, b);
        } catch (const DataError& e) {
            throw TableError(TableErrc::Block, e.what());
        }
    }
    const auto members = principal_block_members(table);
    block_check(std::set<std::size_t>(members.begin(), members.end()) == seen,
                "declared members differ from the characters of the principal block");
    check_decomposition(table, b);
}

}  // namespace help2p
