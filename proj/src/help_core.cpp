#include "help2p/help.hpp"

#include <numeric>
#include <set>

namespace help2p {

void check_augmentation(const CharacterTable& table, const AugmentationVector& v) {
    std::int64_t total = 0;
    for (const auto& [cls, eps] : v.entries) {
        if (cls >= table.size()) throw DataError("unknown class index " + std::to_string(cls));
        const auto order = table.element_order(cls);
        if (order == 1) throw DataError("partial augmentation on the identity class");
        if (v.unit_order % order != 0)
            throw DataError("class " + table.classes()[cls].label + " has order not dividing " +
                            std::to_string(v.unit_order));
        total += eps;
    }
    if (total != 1) throw DataError("partial augmentations sum to " + std::to_string(total));
}

AugmentationVector class_indicator(std::size_t cls, std::int64_t unit_order) { return {unit_order, {{cls, 1}}}; }

CandidateChain CandidateChain::lower() const {
    CandidateChain out = *this;
    out.levels.erase(unit_order);
    return out;
}

CandidateChain element_chain(const CharacterTable& table, std::size_t cls) {
    const std::int64_t n = table.element_order(cls);
    CandidateChain chain{n, {}};
    for (auto m : divisors(n))
        if (m > 1) chain.levels[m] = class_indicator(table.power_class(cls, n / m), m);
    return chain;
}

CandidateChain adams_transform(const CandidateChain& chain, const CharacterTable& table, std::int64_t j) {
    if (std::gcd(j, chain.unit_order) != 1) throw UnsupportedInput("Adams exponent must be coprime to the unit order");
    CandidateChain out{chain.unit_order, {}};
    for (const auto& [m, v] : chain.levels) {
        AugmentationVector w{m, {}};
        for (const auto& [cls, eps] : v.entries) w.entries[table.power_class(cls, mod(j, m))] += eps;
        std::erase_if(w.entries, [](const auto& e) { return e.second == 0; });
        out.levels[m] = std::move(w);
    }
    return out;
}

ClassFunction character_function(const CharacterTable& table, std::size_t chi) { return table.characters().at(chi); }

CyclotomicNumber char_value(const ClassFunction& fn, const AugmentationVector& v) {
    CyclotomicNumber sum;
    for (const auto& [cls, eps] : v.entries) {
        if (cls >= fn.size()) throw DataError("unknown class index " + std::to_string(cls));
        sum += fn[cls] * Rational(eps);
    }
    return sum;
}

CyclotomicNumber char_value(const CharacterTable& table, std::size_t chi, const AugmentationVector& v) {
    return char_value(table.characters().at(chi), v);
}

Rational lp_multiplicity(const CharacterTable& table, const CandidateChain& chain, std::size_t chi, std::int64_t k) {
    return lp_multiplicity(table, chain, table.characters().at(chi), k);
}

Rational lp_multiplicity(const CharacterTable&, const CandidateChain& chain, const ClassFunction& fn, std::int64_t k) {
    const std::int64_t n = chain.unit_order;
    Rational sum = fn.at(0).rational_value();
    for (auto m : divisors(n)) {
        if (m == 1) continue;
        const auto it = chain.levels.find(m);
        if (it == chain.levels.end()) throw DataError("chain lacks level " + std::to_string(m));
        sum += trace_over(char_value(fn, it->second), m, -k);
    }
    return sum / n;
}

Rational LinearForm::evaluate(const AugmentationVector& v) const {
    Rational sum = constant;
    for (const auto& [cls, c] : coefficients)
        if (const auto it = v.entries.find(cls); it != v.entries.end()) sum += c * it->second;
    return sum;
}

LinearForm& LinearForm::operator+=(const LinearForm& other) {
    for (const auto& [cls, c] : other.coefficients)
        if ((coefficients[cls] += c) == 0) coefficients.erase(cls);
    constant += other.constant;
    return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& other) {
    for (const auto& [cls, c] : other.coefficients)
        if ((coefficients[cls] -= c) == 0) coefficients.erase(cls);
    constant -= other.constant;
    return *this;
}

LinearForm lp_multiplicity_form(const CharacterTable& table, const CandidateChain& lower, std::int64_t n,
                                const ClassFunction& fn, std::int64_t k) {
    LinearForm form;
    form.constant = fn.at(0).rational_value();
    for (auto m : divisors(n)) {
        if (m == 1 || m == n) continue;
        const auto it = lower.levels.find(m);
        if (it == lower.levels.end()) throw DataError("chain lacks level " + std::to_string(m));
        form.constant += trace_over(char_value(fn, it->second), m, -k);
    }
    for (std::size_t c = 1; c < table.size(); ++c) {
        const auto order = table.element_order(c);
        if (order == 1 || n % order != 0) continue;
        const Rational coeff = trace_over(fn.at(c), n, -k);
        if (coeff != 0) form.coefficients[c] = coeff / n;
    }
    form.constant /= n;
    return form;
}

bool Constraint::holds(const AugmentationVector& v) const {
    const Rational value = form.evaluate(v);
    switch (kind) {
        case Kind::Equality:
            return value == 0;
        case Kind::NonNegativity:
            return value >= 0;
        case Kind::Congruence:
            return value.get_den() == 1 && value.get_num() % modulus == 0;
    }
    return false;
}

std::string to_string(Constraint::Kind kind) {
    switch (kind) {
        case Constraint::Kind::Equality:
            return "equality";
        case Constraint::Kind::NonNegativity:
            return "nonnegativity";
        case Constraint::Kind::Congruence:
            return "congruence";
    }
    return "?";
}

BaseSystem base_constraints(const CharacterTable& table, std::int64_t n) {
    BaseSystem sys;
    sys.order_divides_exponent = table.exponent() % n == 0;
    for (std::size_t c = 0; c < table.size(); ++c) {
        const auto order = table.element_order(c);
        if (order > 1 && n % order == 0) sys.unknowns.push_back(c);
    }
    Constraint sum{Constraint::Kind::Equality, {}, 0, provenance::augmentation};
    for (auto c : sys.unknowns) sum.form.coefficients[c] = 1;
    sum.form.constant = -1;
    sys.constraints.push_back(std::move(sum));
    for (auto r : prime_divisors(n)) {
        if (r == n) continue;
        Constraint cong{Constraint::Kind::Congruence, {}, r, provenance::order_congruence};
        for (auto c : sys.unknowns)
            if (table.element_order(c) == r) cong.form.coefficients[c] = 1;
        if (!cong.form.coefficients.empty()) sys.constraints.push_back(std::move(cong));
    }
    return sys;
}

std::vector<Constraint> level_constraints(const CharacterTable& table, const CandidateChain& lower, std::int64_t n,
                                          const ProviderList& providers) {
    auto out = base_constraints(table, n).constraints;
    std::set<std::pair<std::vector<std::pair<std::size_t, Rational>>, Rational>> seen;
    for (std::size_t chi = 0; chi < table.characters().size(); ++chi) {
        for (std::int64_t k = 0; k < n; ++k) {
            LinearForm scaled = lp_multiplicity_form(table, lower, n, table.characters()[chi], k);
            for (auto& [cls, c] : scaled.coefficients) c *= n;
            scaled.constant *= n;
            const std::vector<std::pair<std::size_t, Rational>> key(scaled.coefficients.begin(),
                                                                    scaled.coefficients.end());
            if (!seen.emplace(key, scaled.constant).second) continue;
            out.push_back({Constraint::Kind::Congruence, scaled, n, provenance::multiplicity});
            out.push_back({Constraint::Kind::NonNegativity, std::move(scaled), 0, provenance::multiplicity});
        }
    }
    for (const auto& p : providers)
        if (p->applies(n))
            for (auto& c : p->equalities(table, lower, n)) out.push_back(std::move(c));
    return out;
}

bool chain_satisfies(const CharacterTable& table, const CandidateChain& chain, const ProviderList& providers) {
    const std::int64_t n = chain.unit_order;
    for (auto m : divisors(n)) {
        if (m == 1) continue;
        const auto it = chain.levels.find(m);
        if (it == chain.levels.end() || it->second.unit_order != m) return false;
        try {
            check_augmentation(table, it->second);
        } catch (const DataError&) {
            return false;
        }
        CandidateChain lower{m, {}};
        for (auto d : divisors(m))
            if (d > 1 && d < m) lower.levels[d] = chain.levels.at(d);
        const ProviderList none;
        for (const auto& c : level_constraints(table, lower, m, m == n ? providers : none))
            if (!c.holds(it->second)) return false;
    }
    if (chain.levels.size() + 1 != divisors(n).size()) return false;
    for (const auto& p : providers)
        if (p->applies(n) && !p->accepts(table, chain)) return false;
    return true;
}

namespace {

std::vector<std::size_t> regular_violations(const CharacterTable& table, const ClassFunction& chi,
                                            const ClassFunction& psi, std::int64_t q) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < table.size(); ++c)
        if (table.element_order(c) % q != 0 && !(chi.at(c) == psi.at(c))) out.push_back(c);
    return out;
}

void require_prime_split(std::int64_t p, std::int64_t q) {
    if (!is_prime(p) || !is_prime(q) || p == q) throw UnsupportedInput("p and q must be distinct primes");
}

}  // namespace

DifferenceIdentityReport difference_identity_check(const CharacterTable& table, const ClassFunction& chi,
                                                   const ClassFunction& psi, std::int64_t p, std::int64_t q,
                                                   const CandidateChain& chain, std::int64_t k) {
    require_prime_split(p, q);
    const std::int64_t n = p * q;
    if (chain.unit_order != n) throw UnsupportedInput("chain order must be p*q");
    DifferenceIdentityReport report;
    report.violating_classes = regular_violations(table, chi, psi, q);
    report.hypothesis_holds = report.violating_classes.empty();
    if (!report.hypothesis_holds) return report;

    auto side = [&](const ClassFunction& fn) {
        Rational s = trace_over(char_value(fn, chain.levels.at(q)), q, -k);
        for (const auto& [cls, eps] : chain.top().entries)
            if (table.element_order(cls) % q == 0) s += eps * trace_over(fn.at(cls), n, -k);
        return s;
    };
    report.lhs = side(chi);
    report.rhs = side(psi);
    report.multiplicity_gap = lp_multiplicity(table, chain, chi, k) - lp_multiplicity(table, chain, psi, k);
    report.equivalence_verified = report.multiplicity_gap == (report.lhs - report.rhs) / n;
    return report;
}

SingleClassDeduction single_class_deduction(const CharacterTable& table, const ClassFunction& chi,
                                            const ClassFunction& psi, std::int64_t p, std::int64_t q,
                                            std::int64_t k) {
    require_prime_split(p, q);
    SingleClassDeduction out;
    out.violating_classes = regular_violations(table, chi, psi, q);
    out.hypothesis_holds = out.violating_classes.empty();
    std::size_t classes_of_order_q = 0;
    for (std::size_t c = 0; c < table.size(); ++c) classes_of_order_q += table.element_order(c) == q;
    out.single_class = classes_of_order_q == 1;
    const Rational numerator = root_trace(p * q, -k);
    const Rational denominator = root_trace(q, -k);
    if (denominator == 0) return out;
    out.ratio = numerator / denominator;
    out.denominator_unit_mod_q = denominator.get_den() == 1 && mod(to_int64(denominator.get_num()) + 1, q) == 0;
    out.factor_nonzero = true;
    for (std::int64_t eps = -100; eps <= 100; eps += 1)
        if (eps % q == 0 && 1 + eps * out.ratio == 0) out.factor_nonzero = false;
    return out;
}

}  // namespace help2p
