#pragma once

#include "help2p/help.hpp"

#include "json.hpp"

#include <set>
#include <string>
#include <vector>

namespace help2p {

enum class VerdictStatus { ElementExists, NoUnitsProven, Positive, Open };
std::string to_string(VerdictStatus s);

// Element orders of PSL(2,q) or PGL(2,q), q an odd prime power >= 5.
std::set<std::int64_t> spectrum(Family family, std::int64_t q);
Integer group_order(Family family, std::int64_t q);

// One step of a verdict: the rule that fired and the exact data it used.
struct RuleApplication {
    std::string rule;
    std::string provenance;
    nlohmann::json data;
};

struct Verdict {
    nlohmann::json subject;
    VerdictStatus status = VerdictStatus::Open;
    std::vector<RuleApplication> justification;
    nlohmann::json findings = nlohmann::json::array();
};

nlohmann::json to_json(const Verdict& v);
std::string to_markdown(const Verdict& v);

struct VerdictOptions {
    bool use_mod4 = true;
    SolveOptions solve;
};

struct Order2pResult {
    Verdict verdict;
    SolutionSet direct;
    std::optional<SolutionSet> overgroup;  // PGL(2,q) for PSL with q = 5 mod 8
};

// Units of order 2p, q = p^f = +-3 mod 8. NoUnitsProven iff some route leaves no survivor;
// survivors are attached as findings together with their re-verification.
Order2pResult order2p_verdict(std::int64_t q, Family family, const VerdictOptions& options = {});

namespace rules {
inline constexpr const char* element_exists = "R1";
inline constexpr const char* prime_order_sylow = "R2";
inline constexpr const char* order_2p = "R3";
inline constexpr const char* small_exponent = "R4";
inline constexpr const char* open = "R5";
}  // namespace rules

struct PgqOptions {
    VerdictOptions order2p;
    std::set<std::string> disabled_rules;  // R5 cannot be disabled
};

struct PairVerdict {
    std::int64_t r = 0, s = 0;
    VerdictStatus status = VerdictStatus::Open;
    RuleApplication step;
    nlohmann::json findings = nlohmann::json::array();
};

struct PgqVerdict {
    Family family = Family::PSL;
    std::int64_t q = 0;
    std::vector<PairVerdict> pairs;  // sorted by (r, s)
    VerdictStatus status = VerdictStatus::Open;  // Positive iff every pair resolves positively

    std::vector<std::pair<std::int64_t, std::int64_t>> unresolved() const;
};

// Rules are tried in the order R1..R5 for every pair of primes dividing |G|.
PgqVerdict pgq_verdict(std::int64_t q, Family family = Family::PSL, const PgqOptions& options = {});
// Re-executes the recorded rule on its data; true iff it reaches the same status.
bool replay(const PairVerdict& pair, Family family, std::int64_t q, const PgqOptions& options = {});

nlohmann::json to_json(const PgqVerdict& v);
std::string to_markdown(const PgqVerdict& v);

struct PgqConditions {
    std::int64_t q = 0, p = 0;
    int f = 0;
    bool is_prime = false;
    std::vector<std::pair<Integer, int>> factorization;  // of (q-1)(q+1)
    Integer odd_part;
    bool odd_part_square_free = false;
    std::int64_t mod8_class = 0;
    bool f_coprime = false;  // gcd(f, (q-1)(q+1)) = 1
    // Square-free odd part for non-prime q should force f coprime; false flags a q where it does not.
    bool implication_holds = true;
};

PgqConditions pgq_conditions(std::int64_t q, std::uint64_t trial_bound = 10'000'000);
nlohmann::json to_json(const PgqConditions& c);

nlohmann::json to_json(const CandidateChain& chain, const CharacterTable& table);
nlohmann::json to_json(const SolutionSet& s, const CharacterTable& table);

}  // namespace help2p
