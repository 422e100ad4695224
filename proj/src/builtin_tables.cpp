#include "help2p/character_table.hpp"

#include <memory>
#include <mutex>
#include <numeric>

namespace help2p {
namespace {

struct GenericGroup {
    Family family;
    std::int64_t q, p;
    int f;
    int delta;
    std::int64_t split_order, nonsplit_order;  // orders of the two tori
};

GenericGroup describe(Family family, std::int64_t q) {
    const auto pp = as_prime_power(q);
    if (q < 5 || q % 2 == 0 || !pp) throw UnsupportedInput("q must be an odd prime power >= 5, got " + std::to_string(q));
    const int delta = mod(q, 4) == 1 ? 1 : -1;
    const std::int64_t k = family == Family::PSL ? 2 : 1;
    return {family, q, pp->p, pp->f, delta, (q - 1) / k, (q + 1) / k};
}

std::int64_t generic_order(const GenericGroup& g, const GenericClass& c) {
    switch (c.kind) {
        case ClassKind::Identity: return 1;
        case ClassKind::Unipotent: return g.p;
        case ClassKind::Split: return g.split_order / std::gcd(c.param, g.split_order);
        case ClassKind::Nonsplit: return g.nonsplit_order / std::gcd(c.param, g.nonsplit_order);
    }
    return 1;
}

GenericClass fold(ClassKind kind, std::int64_t t, std::int64_t torus) {
    t = mod(t, torus);
    t = std::min(t, torus - t);
    if (t == 0) return {ClassKind::Identity, 0};
    return {kind, t};
}

GenericClass generic_power(const GenericGroup& g, const GenericClass& c, std::int64_t r) {
    switch (c.kind) {
        case ClassKind::Identity: return c;
        case ClassKind::Unipotent: {
            if (r % g.p == 0) return {ClassKind::Identity, 0};
            const bool square = g.f % 2 == 0 || legendre(r, g.p) == 1;
            if (g.family == Family::PGL || square) return c;
            return {ClassKind::Unipotent, -c.param};
        }
        case ClassKind::Split: return fold(ClassKind::Split, c.param * r, g.split_order);
        case ClassKind::Nonsplit: return fold(ClassKind::Nonsplit, c.param * r, g.nonsplit_order);
    }
    return c;
}

std::vector<std::pair<GenericClass, Integer>> generic_classes(const GenericGroup& g) {
    const Integer q = g.q;
    std::vector<std::pair<GenericClass, Integer>> out;
    out.push_back({{ClassKind::Identity, 0}, Integer(1)});
    const bool split_involution = g.split_order % 2 == 0;
    const bool nonsplit_involution = g.nonsplit_order % 2 == 0 && (g.family == Family::PGL || !split_involution);
    if (split_involution) out.push_back({{ClassKind::Split, g.split_order / 2}, Integer(q * (q + 1) / 2)});
    if (nonsplit_involution) out.push_back({{ClassKind::Nonsplit, g.nonsplit_order / 2}, Integer(q * (q - 1) / 2)});
    if (g.family == Family::PSL) {
        out.push_back({{ClassKind::Unipotent, 1}, Integer((q * q - 1) / 2)});
        out.push_back({{ClassKind::Unipotent, -1}, Integer((q * q - 1) / 2)});
    } else {
        out.push_back({{ClassKind::Unipotent, 1}, Integer(q * q - 1)});
    }
    for (std::int64_t l = 1; 2 * l < g.split_order; ++l) out.push_back({{ClassKind::Split, l}, Integer(q * (q + 1))});
    for (std::int64_t m = 1; 2 * m < g.nonsplit_order; ++m)
        out.push_back({{ClassKind::Nonsplit, m}, Integer(q * (q - 1))});
    return out;
}

std::string order_label(std::int64_t order, int index) {
    std::string suffix;
    do {
        suffix.insert(suffix.begin(), static_cast<char>('a' + index % 26));
        index = index / 26 - 1;
    } while (index >= 0);
    return std::to_string(order) + suffix;
}

CyclotomicNumber torus_value(std::int64_t n, std::int64_t e) {
    return CyclotomicNumber::root_of_unity(n, e) + CyclotomicNumber::root_of_unity(n, -e);
}

int sign_of(std::int64_t t) { return t % 2 == 0 ? 1 : -1; }

using Row = std::vector<CyclotomicNumber>;

// One row per character, in the documented order; names in parallel.
void generic_characters(const GenericGroup& g, const std::vector<GenericClass>& cls, std::vector<Row>& rows,
                        std::vector<std::string>& names) {
    const std::int64_t q = g.q;
    auto make = [&](const std::string& name, auto&& value) {
        Row row;
        for (const auto& c : cls) row.push_back(value(c));
        rows.push_back(std::move(row));
        names.push_back(name);
    };
    auto steinberg = [&](const GenericClass& c) -> CyclotomicNumber {
        switch (c.kind) {
            case ClassKind::Identity: return q;
            case ClassKind::Unipotent: return 0L;
            case ClassKind::Split: return 1L;
            case ClassKind::Nonsplit: return -1L;
        }
        return 0L;
    };
    auto sgn = [&](const GenericClass& c) -> long {
        return c.kind == ClassKind::Split || c.kind == ClassKind::Nonsplit ? sign_of(c.param) : 1;
    };
    make("1", [](const GenericClass&) { return CyclotomicNumber(1L); });
    if (g.family == Family::PGL) make("sgn", [&](const GenericClass& c) { return CyclotomicNumber(sgn(c)); });
    make("St", steinberg);
    if (g.family == Family::PGL) {
        make("St.sgn", [&](const GenericClass& c) { return steinberg(c) * Rational(sgn(c)); });
    } else {
        const CyclotomicNumber root = gauss_sqrt(q, g.delta);
        for (int s : {1, -1}) {
            make(s > 0 ? "eta+" : "eta-", [&](const GenericClass& c) -> CyclotomicNumber {
                switch (c.kind) {
                    case ClassKind::Identity: return make_rational(q + g.delta, 2);
                    case ClassKind::Unipotent:
                        return (CyclotomicNumber(g.delta) + root * Rational(s * c.param)) * make_rational(1, 2);
                    case ClassKind::Split: return g.delta > 0 ? sign_of(c.param) : 0L;
                    case ClassKind::Nonsplit: return g.delta < 0 ? -sign_of(c.param) : 0L;
                }
                return 0L;
            });
        }
    }
    for (std::int64_t i = 1; 2 * i < g.split_order; ++i) {
        make("chi" + std::to_string(i), [&](const GenericClass& c) -> CyclotomicNumber {
            switch (c.kind) {
                case ClassKind::Identity: return q + 1;
                case ClassKind::Unipotent: return 1L;
                case ClassKind::Split: return torus_value(g.split_order, i * c.param);
                case ClassKind::Nonsplit: return 0L;
            }
            return 0L;
        });
    }
    for (std::int64_t j = 1; 2 * j < g.nonsplit_order; ++j) {
        make("theta" + std::to_string(j), [&](const GenericClass& c) -> CyclotomicNumber {
            switch (c.kind) {
                case ClassKind::Identity: return q - 1;
                case ClassKind::Unipotent: return -1L;
                case ClassKind::Split: return 0L;
                case ClassKind::Nonsplit: return -torus_value(g.nonsplit_order, j * c.param);
            }
            return 0L;
        });
    }
}

CharacterTable build(Family family, std::int64_t q) {
    const GenericGroup g = describe(family, q);
    const auto generic = generic_classes(g);

    BuiltinInfo info{family, q, g.p, g.f, {}, {}};
    std::map<std::int64_t, int> per_order;
    std::vector<ClassData> classes;
    std::int64_t exponent = 1;
    for (const auto& [c, size] : generic) {
        const std::int64_t o = generic_order(g, c);
        exponent = std::lcm(exponent, o);
        classes.push_back({order_label(o, per_order[o]++), o, size, {}});
        info.generic_classes.push_back(c);
    }
    auto locate = [&](const GenericClass& c) {
        for (std::size_t i = 0; i < generic.size(); ++i)
            if (generic[i].first.kind == c.kind && generic[i].first.param == c.param) return i;
        throw DataError("power map leaves the class list");
    };
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::int64_t r : prime_divisors(exponent))
            classes[i].power_maps[r] = classes[locate(generic_power(g, generic[i].first, r))].label;

    std::vector<Row> rows;
    generic_characters(g, info.generic_classes, rows, info.character_names);

    const Integer order = family == Family::PSL ? Integer(Integer(q) * (q * q - 1) / 2) : Integer(Integer(q) * (q * q - 1));
    const std::string name = to_string(family) + "(2," + std::to_string(q) + ")";
    return CharacterTable(order, name, std::move(classes), std::move(rows), std::nullopt, std::move(info));
}

}  // namespace

const CharacterTable& builtin_table(Family family, std::int64_t q) {
    static std::mutex lock;
    static std::map<std::pair<Family, std::int64_t>, std::unique_ptr<const CharacterTable>> cache;
    std::lock_guard guard(lock);
    auto& slot = cache[{family, q}];
    if (!slot) slot = std::make_unique<const CharacterTable>(build(family, q));
    return *slot;
}

const CharacterTable& psl2_table(std::int64_t q) { return builtin_table(Family::PSL, q); }

const CharacterTable& pgl2_table(std::int64_t q) { return builtin_table(Family::PGL, q); }

}  // namespace help2p
