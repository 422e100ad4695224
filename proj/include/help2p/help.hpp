#pragma once

#include "help2p/character_table.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace help2p {

// Partial augmentations of a torsion unit: class index -> epsilon.
struct AugmentationVector {
    std::int64_t unit_order = 1;
    std::map<std::size_t, std::int64_t> entries;

    friend auto operator<=>(const AugmentationVector&, const AugmentationVector&) = default;
};

// Throws DataError unless entries sum to 1, avoid the identity class and only
// sit on classes whose element order divides unit_order.
void check_augmentation(const CharacterTable& table, const AugmentationVector& v);
AugmentationVector class_indicator(std::size_t cls, std::int64_t unit_order);

// Augmentation vectors of u^(n/m) for every divisor m > 1 of n = unit_order.
struct CandidateChain {
    std::int64_t unit_order = 1;
    std::map<std::int64_t, AugmentationVector> levels;

    const AugmentationVector& top() const { return levels.at(unit_order); }
    // Drops the top level.
    CandidateChain lower() const;

    friend auto operator<=>(const CandidateChain&, const CandidateChain&) = default;
};

// The chain of a group element: class indicators of its powers.
CandidateChain element_chain(const CharacterTable& table, std::size_t cls);
// Chain of u^j for j coprime to the unit order.
CandidateChain adams_transform(const CandidateChain& chain, const CharacterTable& table, std::int64_t j);

using ClassFunction = std::vector<CyclotomicNumber>;
ClassFunction character_function(const CharacterTable& table, std::size_t chi);

CyclotomicNumber char_value(const CharacterTable& table, std::size_t chi, const AugmentationVector& v);
CyclotomicNumber char_value(const ClassFunction& fn, const AugmentationVector& v);

// Multiplicity of zeta_n^k as an eigenvalue of u under chi, n the unit order.
Rational lp_multiplicity(const CharacterTable& table, const CandidateChain& chain, std::size_t chi, std::int64_t k);
Rational lp_multiplicity(const CharacterTable& table, const CandidateChain& chain, const ClassFunction& fn,
                         std::int64_t k);

// Affine form in the top-level partial augmentations of a unit of order n.
struct LinearForm {
    std::map<std::size_t, Rational> coefficients;
    Rational constant;

    Rational evaluate(const AugmentationVector& v) const;
    LinearForm& operator-=(const LinearForm& other);
    LinearForm& operator+=(const LinearForm& other);
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

// The multiplicity of zeta_n^k under fn as a form in the top-level unknowns,
// with the lower levels fixed by `lower`.
LinearForm lp_multiplicity_form(const CharacterTable& table, const CandidateChain& lower, std::int64_t n,
                                const ClassFunction& fn, std::int64_t k);

struct Constraint {
    enum class Kind { Equality, NonNegativity, Congruence };
    Kind kind = Kind::Equality;
    LinearForm form;
    Integer modulus = 0;  // congruences only
    std::string provenance;

    bool holds(const AugmentationVector& v) const;
};
std::string to_string(Constraint::Kind kind);

namespace provenance {
inline constexpr const char* augmentation = "augmentation";
inline constexpr const char* order_support = "order-support";
inline constexpr const char* order_congruence = "order-congruence";
inline constexpr const char* multiplicity = "luthar-passi";
inline constexpr const char* exponent = "cohn-livingstone";
inline constexpr const char* klein_four = "klein-four-principal-block";
inline constexpr const char* dihedral8 = "dihedral8-principal-block";
inline constexpr const char* klein_four_conditional = "klein-four-conditional";
inline constexpr const char* dihedral8_conditional = "dihedral8-conditional";
}  // namespace provenance

struct BaseSystem {
    bool order_divides_exponent = true;
    std::vector<std::size_t> unknowns;  // classes of order dividing n, identity excluded
    std::vector<Constraint> constraints;
};

BaseSystem base_constraints(const CharacterTable& table, std::int64_t n);

// Extra constraints on units of a given order.
class ConstraintProvider {
public:
    virtual ~ConstraintProvider() = default;
    virtual std::string provenance() const = 0;
    virtual bool applies(std::int64_t n) const = 0;
    // Linear equalities in the top-level unknowns, given the lower levels.
    virtual std::vector<Constraint> equalities(const CharacterTable& table, const CandidateChain& lower,
                                               std::int64_t n) const = 0;
    // Final filter on a complete chain (guarded constraints).
    virtual bool accepts(const CharacterTable&, const CandidateChain&) const { return true; }
};

using ProviderList = std::vector<std::shared_ptr<const ConstraintProvider>>;

struct SolveOptions {
    // Lower levels fixed instead of enumerated.
    std::optional<CandidateChain> pinned_lower;
    unsigned jobs = 1;
    // Search nodes per level and lower chain; 0 = unlimited. Hitting it marks the result incomplete.
    std::uint64_t node_budget = 0;
    // Widens the derived box; used to confirm that the box is not a cap.
    std::int64_t box_margin = 0;
    // Combined lower chains per level; exceeding it throws UnsupportedInput (pin the lower levels instead).
    std::size_t lower_chain_limit = 200000;
};

struct LevelCertificate {
    std::int64_t order = 0;
    std::vector<std::size_t> unknowns;
    std::vector<std::pair<std::int64_t, std::int64_t>> box;  // per unknown
    std::size_t lower_chains = 0;
    std::size_t survivors = 0;
    std::size_t forms = 0;
    std::size_t lattice_rank = 0;
    std::uint64_t nodes = 0;
    bool complete = true;
};

struct ConstraintSummary {
    std::string kind;
    std::string provenance;
    std::size_t count = 0;
};

struct SolutionSet {
    std::int64_t unit_order = 0;
    std::vector<CandidateChain> survivors;  // sorted
    std::vector<LevelCertificate> certificate;
    std::vector<ConstraintSummary> constraints;
    std::optional<std::string> early_verdict;
    bool complete = true;
};

// All chains of units of order n compatible with the constraints, level by level.
SolutionSet solve(const CharacterTable& table, std::int64_t n, const ProviderList& providers = {},
                  const SolveOptions& options = {});

// Every constraint on the top level of a chain with the given lower levels.
std::vector<Constraint> level_constraints(const CharacterTable& table, const CandidateChain& lower, std::int64_t n,
                                          const ProviderList& providers = {});

// Exact re-verification of a complete chain (all levels; providers on the top level).
bool chain_satisfies(const CharacterTable& table, const CandidateChain& chain, const ProviderList& providers = {});

// Difference of the multiplicity formulas for two characters that agree on all
// q-regular classes, for a unit of order p*q with q prime.
struct DifferenceIdentityReport {
    bool hypothesis_holds = false;
    std::vector<std::size_t> violating_classes;
    Rational lhs, rhs;           // the two sides with the common terms cancelled
    Rational multiplicity_gap;   // mu(chi) - mu(psi)
    bool equivalence_verified = false;
};

DifferenceIdentityReport difference_identity_check(const CharacterTable& table, const ClassFunction& chi,
                                                   const ClassFunction& psi, std::int64_t p, std::int64_t q,
                                                   const CandidateChain& chain, std::int64_t k);

// With a single class y of order q, equal multiplicities force chi(y) = psi(y)
// provided 1 + eps_y r never vanishes for eps_y = 0 mod q.
struct SingleClassDeduction {
    bool hypothesis_holds = false;
    bool single_class = false;
    std::vector<std::size_t> violating_classes;
    Rational ratio;                   // r
    bool denominator_unit_mod_q = false;
    bool factor_nonzero = false;      // checked for |eps_y| <= 100
    bool valid() const { return hypothesis_holds && single_class && denominator_unit_mod_q && factor_nonzero; }
};

SingleClassDeduction single_class_deduction(const CharacterTable& table, const ClassFunction& chi,
                                            const ClassFunction& psi, std::int64_t p, std::int64_t q, std::int64_t k);

}  // namespace help2p
