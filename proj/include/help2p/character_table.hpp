#pragma once

#include "help2p/arith.hpp"
#include "help2p/cyclotomic.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace help2p {

enum class Family { PSL, PGL };

enum class DefectGroupKind { KleinFour, Dihedral8, Other };

std::string to_string(Family f);
std::string to_string(DefectGroupKind k);
DefectGroupKind defect_group_kind_from_string(std::string_view s);

struct ClassData {
    std::string label;
    std::int64_t element_order = 1;
    Integer class_size = 1;
    std::map<std::int64_t, std::string> power_maps;  // prime -> label of g^prime

    friend bool operator==(const ClassData&, const ClassData&) = default;
};

struct BlockShape {
    std::vector<std::size_t> members;                  // character indices, one per row
    std::vector<std::vector<std::int64_t>> decomposition;  // rows follow `members`
    int defect = 0;
    DefectGroupKind defect_group_kind = DefectGroupKind::Other;
    std::size_t trivial_row = 0;

    friend bool operator==(const BlockShape&, const BlockShape&) = default;
};

struct DeclaredBlock {
    BlockShape shape;
    DefectGroupKind sylow2_kind = DefectGroupKind::Other;
};

// Where a class sits in the generic description of PSL(2,q) / PGL(2,q).
enum class ClassKind { Identity, Unipotent, Split, Nonsplit };

struct GenericClass {
    ClassKind kind = ClassKind::Identity;
    std::int64_t param = 0;  // +-1 for unipotent classes, torus exponent otherwise
};

struct BuiltinInfo {
    Family family = Family::PSL;
    std::int64_t q = 0;
    std::int64_t p = 0;
    int f = 0;
    std::vector<GenericClass> generic_classes;
    std::vector<std::string> character_names;
};

enum class TableErrc {
    Schema,
    NotSquare,
    ClassSizes,
    Identity,
    PowerMaps,
    MalformedValue,
    Orthogonality,
    Block,
};

std::string to_string(TableErrc code);

class TableError : public DataError {
public:
    TableError(TableErrc code, const std::string& what) : DataError(to_string(code) + ": " + what), code_(code) {}
    TableErrc code() const { return code_; }

private:
    TableErrc code_;
};

class CharacterTable {
public:
    // Validates every structural invariant, including exact row orthogonality.
    CharacterTable(Integer group_order, std::string descriptor, std::vector<ClassData> classes,
                   std::vector<std::vector<CyclotomicNumber>> characters,
                   std::optional<DeclaredBlock> block = std::nullopt, std::optional<BuiltinInfo> builtin = std::nullopt,
                   std::optional<std::int64_t> conductor = std::nullopt);

    const Integer& group_order() const { return group_order_; }
    const std::string& descriptor() const { return descriptor_; }
    const std::vector<ClassData>& classes() const { return classes_; }
    const std::vector<std::vector<CyclotomicNumber>>& characters() const { return characters_; }
    std::size_t size() const { return classes_.size(); }
    std::int64_t conductor() const { return conductor_; }
    std::int64_t exponent() const { return exponent_; }

    const CyclotomicNumber& value(std::size_t chi, std::size_t cls) const { return characters_.at(chi).at(cls); }
    Integer degree(std::size_t chi) const;
    Integer centralizer_order(std::size_t cls) const { return group_order_ / classes_.at(cls).class_size; }
    std::int64_t element_order(std::size_t cls) const { return classes_.at(cls).element_order; }
    std::size_t class_index(std::string_view label) const;
    // Class of g^e for g in class `cls`, for any integer e.
    std::size_t power_class(std::size_t cls, std::int64_t e) const;
    std::string character_name(std::size_t chi) const;

    const std::optional<DeclaredBlock>& declared_block() const { return block_; }
    const std::optional<BuiltinInfo>& builtin() const { return builtin_; }

    // Exact column orthogonality; throws TableError on failure.
    void verify_column_orthogonality() const;

    friend bool operator==(const CharacterTable& a, const CharacterTable& b);

private:
    void validate_classes() const;
    void validate_power_maps() const;
    void validate_rows() const;
    std::size_t galois_image(std::size_t cls, std::int64_t j) const;

    Integer group_order_;
    std::string descriptor_;
    std::vector<ClassData> classes_;
    std::vector<std::vector<CyclotomicNumber>> characters_;
    std::optional<DeclaredBlock> block_;
    std::optional<BuiltinInfo> builtin_;
    std::int64_t conductor_ = 1;
    std::int64_t exponent_ = 1;
    std::map<std::string, std::size_t, std::less<>> label_index_;
};

// Sum over classes of weight(cls) * values, compared exactly against a rational.
bool class_sum_equals(const std::vector<CyclotomicNumber>& terms, const Rational& expected);

std::size_t involution_class_count(const CharacterTable& table);

const CharacterTable& psl2_table(std::int64_t q);
const CharacterTable& pgl2_table(std::int64_t q);
const CharacterTable& builtin_table(Family family, std::int64_t q);

}  // namespace help2p
