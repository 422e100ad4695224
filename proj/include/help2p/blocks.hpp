#pragma once

#include "help2p/character_table.hpp"

#include <cstddef>
#include <vector>

namespace help2p {

// Characters whose central characters agree with the trivial one modulo every
// prime above 2, in table order.
std::vector<std::size_t> principal_block_members(const CharacterTable& table);

// Classes of odd element order.
std::vector<std::size_t> two_regular_classes(const CharacterTable& table);

// Built-ins: computed for q = +-3 mod 8. Ingested tables: the declared block.
BlockShape principal_2block(const CharacterTable& table);

// Sylow 2-subgroup kind of a built-in table, or the declared one.
DefectGroupKind sylow2_kind(const CharacterTable& table);

// h with v2(chi(1)) = v2(|G|) - defect + h; throws DataError if h < 0.
int character_height(const CharacterTable& table, std::size_t chi, const BlockShape& block);

// Structural checks for externally supplied principal-block data; throws TableError(Block).
void validate_block(const CharacterTable& table, const DeclaredBlock& block);

}  // namespace help2p
