#pragma once

#include "help2p/character_table.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace help2p {

nlohmann::json cyclotomic_to_json(const CyclotomicNumber& x);
CyclotomicNumber cyclotomic_from_json(const nlohmann::json& j);

// Built-ins export their principal 2-block when it is covered.
nlohmann::json table_to_json(const CharacterTable& table);
// Every failure is a TableError whose code names the violated invariant.
CharacterTable table_from_json(const nlohmann::json& doc);

std::string export_table(const CharacterTable& table);
CharacterTable ingest_table(std::string_view document);
CharacterTable load_table_file(const std::filesystem::path& path);

}  // namespace help2p
