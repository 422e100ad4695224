#pragma once

#include "help2p/blocks.hpp"
#include "help2p/help.hpp"

#include <optional>
#include <vector>

namespace help2p {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// A relabelling of a block's decomposition matrix onto one of the two templates.
struct TemplateMatch {
    DefectGroupKind kind = DefectGroupKind::Other;
    std::vector<std::size_t> row_order;     // template row -> block row
    std::vector<std::size_t> column_order;  // template column -> block column
    std::vector<std::size_t> characters;    // template row -> table character
    std::int64_t d = 0;                     // dihedral template parameter

    // Block matrix with the recorded permutations applied.
    IntMatrix permuted(const BlockShape& block) const;
};

IntMatrix klein_four_template();
IntMatrix dihedral8_template(std::int64_t d);

// Every row/column relabelling of `block` onto `target`, in lexicographic order of row_order.
std::vector<TemplateMatch> template_matches(const BlockShape& block, const IntMatrix& target);

// Rows 1, chi1, chi2, chi3 with the trivial character on the first row.
std::optional<TemplateMatch> match_v4_template(const BlockShape& block, const CharacterTable& table);
// Rows (1,0),(1,0),(d,1),(1,1),(1,1): height-one member on the third row, trivial character first.
std::optional<TemplateMatch> match_d8_template(const BlockShape& block, const CharacterTable& table);

// mu(z, chi1) + mu(z, chi2) = mu(z, chi3) for every primitive p-th root z = zeta_n^(2k), n = 2p.
std::shared_ptr<const ConstraintProvider> v4_constraint(const TemplateMatch& match, std::int64_t p);
// mu(z, row 3) = mu(z, row 4) for the same roots.
std::shared_ptr<const ConstraintProvider> d8_constraint(const TemplateMatch& match, std::int64_t p);
// The same equality, enforced only on chains with mu(z, psi) = mu(-z, psi) = 0 for
// psi the character on the first template row.
std::shared_ptr<const ConstraintProvider> general_proposition_constraint(const TemplateMatch& match, std::int64_t p);

// Exponents e such that zeta_n^e is a primitive (n/2)-th root, for n = 2p with p odd.
std::vector<std::int64_t> odd_part_roots(std::int64_t n);

// Principal-block providers for units of order n (empty unless n = 2p, p odd, and
// the principal block matches a template).
ProviderList applicable_providers(const CharacterTable& table, std::int64_t n);

}  // namespace help2p
