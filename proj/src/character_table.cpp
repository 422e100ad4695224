#include "help2p/character_table.hpp"

#include <numeric>
#include <set>

namespace help2p {

std::string to_string(Family f) { return f == Family::PSL ? "PSL" : "PGL"; }

std::string to_string(DefectGroupKind k) {
    switch (k) {
        case DefectGroupKind::KleinFour: return "KleinFour";
        case DefectGroupKind::Dihedral8: return "Dihedral8";
        case DefectGroupKind::Other: return "Other";
    }
    return "Other";
}

DefectGroupKind defect_group_kind_from_string(std::string_view s) {
    if (s == "KleinFour") return DefectGroupKind::KleinFour;
    if (s == "Dihedral8") return DefectGroupKind::Dihedral8;
    if (s == "Other") return DefectGroupKind::Other;
    throw TableError(TableErrc::Schema, "unknown defect group kind '" + std::string(s) + "'");
}

std::string to_string(TableErrc code) {
    switch (code) {
        case TableErrc::Schema: return "schema";
        case TableErrc::NotSquare: return "not-square";
        case TableErrc::ClassSizes: return "class-sizes";
        case TableErrc::Identity: return "identity-class";
        case TableErrc::PowerMaps: return "power-maps";
        case TableErrc::MalformedValue: return "malformed-value";
        case TableErrc::Orthogonality: return "orthogonality";
        case TableErrc::Block: return "block";
    }
    return "unknown";
}

bool class_sum_equals(const std::vector<CyclotomicNumber>& terms, const Rational& expected) {
    // Terms sharing a conductor are summed in place; only irrational leftovers
    // need the common conductor.
    std::map<std::int64_t, CyclotomicNumber> buckets;
    for (const auto& t : terms) {
        auto [it, fresh] = buckets.try_emplace(t.conductor(), t);
        if (!fresh) it->second += t;
    }
    Rational rational_part = 0;
    CyclotomicNumber rest;
    for (const auto& [n, v] : buckets) {
        if (v.is_rational())
            rational_part += v.rational_value();
        else
            rest += v;
    }
    if (rest.is_zero()) return rational_part == expected;
    return rest + CyclotomicNumber(rational_part) == CyclotomicNumber(expected);
}

CharacterTable::CharacterTable(Integer group_order, std::string descriptor, std::vector<ClassData> classes,
                               std::vector<std::vector<CyclotomicNumber>> characters,
                               std::optional<DeclaredBlock> block, std::optional<BuiltinInfo> builtin,
                               std::optional<std::int64_t> conductor)
    : group_order_(std::move(group_order)),
      descriptor_(std::move(descriptor)),
      classes_(std::move(classes)),
      characters_(std::move(characters)),
      block_(std::move(block)),
      builtin_(std::move(builtin)) {
    validate_classes();
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        if (classes_[i].label.empty() || !label_index_.emplace(classes_[i].label, i).second)
            throw TableError(TableErrc::Schema, "class labels must be unique and non-empty");
        exponent_ = std::lcm(exponent_, classes_[i].element_order);
    }
    validate_power_maps();
    std::int64_t lcm_conductor = 1;
    for (const auto& row : characters_)
        for (const auto& v : row) lcm_conductor = std::lcm(lcm_conductor, v.conductor());
    if (conductor) {
        if (*conductor < 1 || *conductor % lcm_conductor != 0)
            throw TableError(TableErrc::MalformedValue, "declared conductor does not cover the values");
        conductor_ = *conductor;
    } else {
        conductor_ = lcm_conductor;
    }
    validate_rows();
}

void CharacterTable::validate_classes() const {
    if (group_order_ < 1) throw TableError(TableErrc::ClassSizes, "group order must be positive");
    if (classes_.empty()) throw TableError(TableErrc::Identity, "no classes");
    if (classes_[0].element_order != 1 || classes_[0].class_size != 1)
        throw TableError(TableErrc::Identity, "first class must be the identity");
    Integer total = 0;
    for (const auto& c : classes_) {
        if (c.element_order < 1) throw TableError(TableErrc::ClassSizes, "class " + c.label + ": bad element order");
        if (c.class_size < 1 || group_order_ % c.class_size != 0)
            throw TableError(TableErrc::ClassSizes, "class " + c.label + ": size does not divide the group order");
        total += c.class_size;
    }
    if (total != group_order_) throw TableError(TableErrc::ClassSizes, "class sizes do not sum to the group order");
}

void CharacterTable::validate_power_maps() const {
    const auto primes = prime_divisors(exponent_);
    for (const auto& c : classes_) {
        if (c.power_maps.size() != primes.size())
            throw TableError(TableErrc::PowerMaps, "class " + c.label + ": need one power map per prime of the exponent");
        for (std::int64_t r : primes) {
            const auto it = c.power_maps.find(r);
            if (it == c.power_maps.end())
                throw TableError(TableErrc::PowerMaps, "class " + c.label + ": missing power map " + std::to_string(r));
            const auto target = label_index_.find(it->second);
            if (target == label_index_.end())
                throw TableError(TableErrc::PowerMaps, "class " + c.label + ": unknown image " + it->second);
            const std::int64_t expected = c.element_order / std::gcd(c.element_order, r);
            if (classes_[target->second].element_order != expected)
                throw TableError(TableErrc::PowerMaps, "class " + c.label + ": image of power " + std::to_string(r) +
                                                           " has the wrong order");
        }
    }
}

void CharacterTable::validate_rows() const {
    const std::size_t k = classes_.size();
    if (characters_.size() != k) throw TableError(TableErrc::NotSquare, "number of characters differs from classes");
    for (const auto& row : characters_)
        if (row.size() != k) throw TableError(TableErrc::NotSquare, "character row of wrong length");
    for (std::size_t i = 0; i < characters_.size(); ++i) {
        for (const auto& v : characters_[i])
            if (!v.is_integral()) throw TableError(TableErrc::MalformedValue, "value is not an algebraic integer");
        const auto& d = characters_[i][0];
        if (!d.is_rational() || d.rational_value() <= 0)
            throw TableError(TableErrc::MalformedValue, "degree of character " + std::to_string(i) + " is not positive");
    }
    std::vector<std::vector<CyclotomicNumber>> conj(characters_.size());
    for (std::size_t i = 0; i < characters_.size(); ++i)
        for (const auto& v : characters_[i]) conj[i].push_back(v.conjugate());
    std::vector<CyclotomicNumber> terms(k);
    for (std::size_t i = 0; i < characters_.size(); ++i) {
        for (std::size_t j = i; j < characters_.size(); ++j) {
            for (std::size_t c = 0; c < k; ++c)
                terms[c] = characters_[i][c] * conj[j][c] * Rational(classes_[c].class_size);
            if (!class_sum_equals(terms, i == j ? Rational(group_order_) : Rational(0)))
                throw TableError(TableErrc::Orthogonality,
                                 "rows " + std::to_string(i) + " and " + std::to_string(j) + " are not orthogonal");
        }
    }
}

void CharacterTable::verify_column_orthogonality() const {
    const std::size_t k = classes_.size();
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b) {
            std::vector<CyclotomicNumber> terms;
            for (const auto& row : characters_) terms.push_back(row[a] * row[b].conjugate());
            const Rational expected = a == b ? Rational(centralizer_order(a)) : Rational(0);
            if (!class_sum_equals(terms, expected))
                throw TableError(TableErrc::Orthogonality,
                                 "columns " + classes_[a].label + " and " + classes_[b].label + " are not orthogonal");
        }
    }
}

Integer CharacterTable::degree(std::size_t chi) const {
    const Rational d = characters_.at(chi).at(0).rational_value();
    return d.get_num();
}

std::size_t CharacterTable::class_index(std::string_view label) const {
    const auto it = label_index_.find(label);
    if (it != label_index_.end()) return it->second;
    throw DataError("unknown class label '" + std::string(label) + "'");
}

std::string CharacterTable::character_name(std::size_t chi) const {
    if (builtin_ && chi < builtin_->character_names.size()) return builtin_->character_names[chi];
    return "X" + std::to_string(chi + 1);
}

std::size_t CharacterTable::galois_image(std::size_t cls, std::int64_t j) const {
    const std::int64_t o = classes_[cls].element_order;
    std::int64_t n = 1;
    for (const auto& row : characters_) n = std::lcm(n, row[cls].conductor());
    std::int64_t jj = mod(j, o);
    while (std::gcd(jj, n) != 1) jj += o;
    std::vector<CyclotomicNumber> image;
    for (const auto& row : characters_) image.push_back(row[cls].galois(jj));
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        if (classes_[c].element_order != o) continue;
        bool same = true;
        for (std::size_t i = 0; i < characters_.size() && same; ++i) same = characters_[i][c] == image[i];
        if (same) return c;
    }
    throw TableError(TableErrc::PowerMaps, "no class matches the Galois image of " + classes_[cls].label);
}

std::size_t CharacterTable::power_class(std::size_t cls, std::int64_t e) const {
    std::int64_t o = classes_.at(cls).element_order;
    e = mod(e, o);
    if (e == 0) return 0;
    std::size_t cur = cls;
    std::int64_t coprime = e;
    for (std::int64_t r : prime_divisors(o)) {
        while (coprime % r == 0) {
            coprime /= r;
            cur = class_index(classes_[cur].power_maps.at(r));
        }
    }
    if (mod(coprime, classes_[cur].element_order) == 1) return cur;
    return galois_image(cur, coprime);
}

bool operator==(const CharacterTable& a, const CharacterTable& b) {
    return a.group_order_ == b.group_order_ && a.descriptor_ == b.descriptor_ && a.conductor_ == b.conductor_ &&
           a.classes_ == b.classes_ && a.characters_ == b.characters_;
}

std::size_t involution_class_count(const CharacterTable& table) {
    std::size_t count = 0;
    for (const auto& c : table.classes())
        if (c.element_order == 2) ++count;
    return count;
}

}  // namespace help2p
