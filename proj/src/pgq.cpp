#include "help2p/pgq.hpp"

#include "help2p/mod4.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace help2p {

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::ElementExists: return "ElementExists";
        case VerdictStatus::NoUnitsProven: return "NoUnitsProven";
        case VerdictStatus::Positive: return "Positive";
        case VerdictStatus::Open: return "Open";
    }
    return "?";
}

namespace {

PrimePower odd_prime_power(std::int64_t q) {
    const auto pp = as_prime_power(q);
    if (!pp || pp->p == 2 || q < 5) throw UnsupportedInput("q must be an odd prime power >= 5, got " + std::to_string(q));
    return *pp;
}

bool plus_minus_three_mod_eight(std::int64_t q) { return mod(q, 8) == 3 || mod(q, 8) == 5; }

nlohmann::json subject_of(Family family, std::int64_t q) {
    const auto pp = odd_prime_power(q);
    return {{"family", to_string(family)}, {"q", q}, {"p", pp.p}, {"f", pp.f}};
}

std::vector<std::string> provider_ids(const ProviderList& providers) {
    std::vector<std::string> out;
    for (const auto& p : providers) out.push_back(p->provenance());
    return out;
}

}  // namespace

std::set<std::int64_t> spectrum(Family family, std::int64_t q) {
    const auto pp = odd_prime_power(q);
    std::set<std::int64_t> out{1, pp.p};
    const std::int64_t div = family == Family::PSL ? 2 : 1;
    for (auto d : divisors((q - 1) / div)) out.insert(d);
    for (auto d : divisors((q + 1) / div)) out.insert(d);
    return out;
}

Integer group_order(Family family, std::int64_t q) {
    odd_prime_power(q);
    const Integer n = Integer(q - 1) * q * (q + 1);
    return family == Family::PSL ? Integer(n / 2) : n;
}

// ---------------------------------------------------------------------------
// Serialisation

nlohmann::json to_json(const CandidateChain& chain, const CharacterTable& table) {
    nlohmann::json levels = nlohmann::json::object();
    for (const auto& [m, v] : chain.levels) {
        nlohmann::json entries = nlohmann::json::object();
        for (const auto& [c, e] : v.entries) entries[table.classes().at(c).label] = e;
        levels[std::to_string(m)] = entries;
    }
    return {{"unit_order", chain.unit_order}, {"levels", levels}};
}

nlohmann::json to_json(const SolutionSet& s, const CharacterTable& table) {
    nlohmann::json survivors = nlohmann::json::array();
    for (const auto& c : s.survivors) survivors.push_back(to_json(c, table));
    nlohmann::json constraints = nlohmann::json::array();
    for (const auto& c : s.constraints)
        constraints.push_back({{"kind", c.kind}, {"provenance", c.provenance}, {"count", c.count}});
    nlohmann::json certificate = nlohmann::json::array();
    for (const auto& level : s.certificate) {
        nlohmann::json unknowns = nlohmann::json::array(), box = nlohmann::json::array();
        for (auto c : level.unknowns) unknowns.push_back(table.classes().at(c).label);
        for (const auto& [lo, hi] : level.box) box.push_back({lo, hi});
        certificate.push_back({{"order", level.order},
                               {"unknowns", unknowns},
                               {"box", box},
                               {"lower_chains", level.lower_chains},
                               {"forms", level.forms},
                               {"lattice_rank", level.lattice_rank},
                               {"nodes", level.nodes},
                               {"survivors", level.survivors},
                               {"complete", level.complete}});
    }
    nlohmann::json out{{"group", table.descriptor()},
                       {"unit_order", s.unit_order},
                       {"survivor_count", s.survivors.size()},
                       {"survivors", survivors},
                       {"constraints", constraints},
                       {"certificate", certificate},
                       {"complete", s.complete}};
    out["early_verdict"] = s.early_verdict ? nlohmann::json(*s.early_verdict) : nlohmann::json(nullptr);
    return out;
}

nlohmann::json to_json(const Verdict& v) {
    nlohmann::json rules = nlohmann::json::array();
    for (const auto& r : v.justification) rules.push_back({{"name", r.rule}, {"provenance", r.provenance}, {"data", r.data}});
    return {{"subject", v.subject}, {"status", to_string(v.status)}, {"rules", rules}, {"findings", v.findings}};
}

std::string to_markdown(const Verdict& v) {
    std::ostringstream out;
    out << "## " << v.subject.value("family", "") << "(2," << v.subject.value("q", 0) << ")";
    if (v.subject.contains("order")) out << ", units of order " << v.subject["order"].get<std::int64_t>();
    out << "\n\nStatus: **" << to_string(v.status) << "**\n\n| step | provenance | data |\n|---|---|---|\n";
    for (const auto& r : v.justification) out << "| " << r.rule << " | " << r.provenance << " | `" << r.data.dump() << "` |\n";
    if (!v.findings.empty()) {
        out << "\n### Findings\n\n";
        for (const auto& f : v.findings) out << "- `" << f.dump() << "`\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Units of order 2p

namespace {

RuleApplication help_step(const CharacterTable& table, std::int64_t n, const ProviderList& providers,
                          const SolutionSet& s, const std::string& route) {
    nlohmann::json constraints = nlohmann::json::array();
    for (const auto& c : s.constraints) constraints.push_back({{"kind", c.kind}, {"provenance", c.provenance}, {"count", c.count}});
    return {route,
            provenance::multiplicity,
            {{"group", table.descriptor()},
             {"order", n},
             {"providers", provider_ids(providers)},
             {"constraints", constraints},
             {"survivors", s.survivors.size()},
             {"complete", s.complete}}};
}

void attach_findings(Verdict& v, const std::string& route, const CharacterTable& table, const SolutionSet& s,
                     const ProviderList& providers) {
    for (const auto& chain : s.survivors)
        v.findings.push_back({{"route", route},
                              {"chain", to_json(chain, table)},
                              {"reverified", chain_satisfies(table, chain, providers)}});
}

bool proves_absence(const SolutionSet& s) { return s.complete && s.survivors.empty(); }

}  // namespace

Order2pResult order2p_verdict(std::int64_t q, Family family, const VerdictOptions& options) {
    const auto pp = odd_prime_power(q);
    if (!plus_minus_three_mod_eight(q))
        throw UnsupportedInput("q = " + std::to_string(q) + " is " + std::to_string(mod(q, 8)) +
                               " mod 8; the order-2p result needs q = +-3 (mod 8)");
    const std::int64_t n = 2 * pp.p;
    const auto& table = builtin_table(family, q);
    const auto providers = options.use_mod4 ? applicable_providers(table, n) : ProviderList{};

    Order2pResult result{{}, solve(table, n, providers, options.solve), std::nullopt};
    Verdict& v = result.verdict;
    v.subject = subject_of(family, q);
    v.subject["order"] = n;
    v.subject["mod4"] = options.use_mod4;
    v.justification.push_back(help_step(table, n, providers, result.direct, "direct"));
    bool absent = proves_absence(result.direct);

    if (family == Family::PSL && mod(q, 8) == 5) {
        const auto& over = pgl2_table(q);
        const auto over_providers = options.use_mod4 ? applicable_providers(over, n) : ProviderList{};
        result.overgroup = solve(over, n, over_providers, options.solve);
        auto step = help_step(over, n, over_providers, *result.overgroup, "overgroup");
        step.data["implies"] = table.descriptor();
        v.justification.push_back(std::move(step));
        absent = absent || proves_absence(*result.overgroup);
        if (!absent) attach_findings(v, "overgroup", over, *result.overgroup, over_providers);
    }
    if (!absent) attach_findings(v, "direct", table, result.direct, providers);
    v.status = absent ? VerdictStatus::NoUnitsProven : VerdictStatus::Open;
    return result;
}

// ---------------------------------------------------------------------------
// Prime graph question

namespace {

struct PairContext {
    Family family;
    std::int64_t q;
    PrimePower pp;
    Integer order;
    std::set<std::int64_t> orders;
    const PgqOptions& options;
    std::optional<Order2pResult> order2p;  // computed on first use
};

bool enabled(const PgqOptions& o, const char* rule) { return !o.disabled_rules.count(rule); }

PairVerdict evaluate_pair(PairContext& ctx, std::int64_t r, std::int64_t s) {
    PairVerdict out{r, s, VerdictStatus::Open, {}, nlohmann::json::array()};
    if (enabled(ctx.options, rules::element_exists) && ctx.orders.count(r * s)) {
        out.status = VerdictStatus::ElementExists;
        out.step = {rules::element_exists, "spectrum", {{"product", r * s}}};
        return out;
    }
    if (enabled(ctx.options, rules::prime_order_sylow)) {
        for (auto prime : {r, s}) {
            if (valuation(ctx.order, static_cast<unsigned long>(prime)) == 1) {
                out.status = VerdictStatus::Positive;
                out.step = {rules::prime_order_sylow, "prime-order-sylow",
                            {{"prime", prime}, {"sylow_order", prime}, {"group_order", to_string(ctx.order)}}};
                return out;
            }
        }
    }
    if (enabled(ctx.options, rules::order_2p) && r == 2 && s == ctx.pp.p && plus_minus_three_mod_eight(ctx.q)) {
        if (!ctx.order2p) ctx.order2p = order2p_verdict(ctx.q, ctx.family, ctx.options.order2p);
        const auto& v = ctx.order2p->verdict;
        if (v.status == VerdictStatus::NoUnitsProven) {
            out.status = VerdictStatus::Positive;
            out.step = {rules::order_2p, "order-2p-help", to_json(v)};
            return out;
        }
        out.findings = v.findings;
    }
    if (enabled(ctx.options, rules::small_exponent) && ctx.pp.f <= 2) {
        out.status = VerdictStatus::Positive;
        out.step = {rules::small_exponent, "psl2-small-exponent", {{"f", ctx.pp.f}}};
        return out;
    }
    out.step = {rules::open, "none", {{"pair", {r, s}}}};
    return out;
}

PairContext make_context(std::int64_t q, Family family, const PgqOptions& options) {
    const auto pp = odd_prime_power(q);
    return {family, q, pp, group_order(family, q), spectrum(family, q), options, std::nullopt};
}

bool positive(VerdictStatus s) { return s == VerdictStatus::ElementExists || s == VerdictStatus::Positive; }

}  // namespace

std::vector<std::pair<std::int64_t, std::int64_t>> PgqVerdict::unresolved() const {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto& p : pairs)
        if (!positive(p.status)) out.emplace_back(p.r, p.s);
    return out;
}

PgqVerdict pgq_verdict(std::int64_t q, Family family, const PgqOptions& options) {
    if (options.disabled_rules.count(rules::open)) throw UnsupportedInput("R5 cannot be disabled");
    auto ctx = make_context(q, family, options);
    PgqVerdict v{family, q, {}, VerdictStatus::Positive};
    std::vector<std::int64_t> primes;
    for (const auto& [prime, e] : factor(ctx.order)) primes.push_back(to_int64(prime));
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size(); ++j) v.pairs.push_back(evaluate_pair(ctx, primes[i], primes[j]));
    for (const auto& p : v.pairs)
        if (!positive(p.status)) v.status = VerdictStatus::Open;
    return v;
}

bool replay(const PairVerdict& pair, Family family, std::int64_t q, const PgqOptions& options) {
    auto ctx = make_context(q, family, options);
    const auto& rule = pair.step.rule;
    const auto& data = pair.step.data;
    if (rule == rules::element_exists)
        return pair.status == VerdictStatus::ElementExists && data.at("product") == pair.r * pair.s &&
               spectrum(family, q).count(pair.r * pair.s);
    if (rule == rules::prime_order_sylow) {
        const auto prime = data.at("prime").get<std::int64_t>();
        return pair.status == VerdictStatus::Positive && (prime == pair.r || prime == pair.s) &&
               valuation(group_order(family, q), static_cast<unsigned long>(prime)) == 1;
    }
    if (rule == rules::order_2p)
        return pair.status == VerdictStatus::Positive &&
               order2p_verdict(q, family, options.order2p).verdict.status == VerdictStatus::NoUnitsProven;
    if (rule == rules::small_exponent)
        return pair.status == VerdictStatus::Positive && data.at("f").get<int>() == ctx.pp.f && ctx.pp.f <= 2;
    if (rule == rules::open) return pair.status == VerdictStatus::Open && evaluate_pair(ctx, pair.r, pair.s).status == VerdictStatus::Open;
    return false;
}

nlohmann::json to_json(const PgqVerdict& v) {
    nlohmann::json subject = subject_of(v.family, v.q);
    subject["group_order"] = to_string(group_order(v.family, v.q));
    nlohmann::json pairs = nlohmann::json::array(), open = nlohmann::json::array();
    for (const auto& p : v.pairs)
        pairs.push_back({{"pair", {p.r, p.s}},
                         {"status", to_string(p.status)},
                         {"rule", {{"name", p.step.rule}, {"provenance", p.step.provenance}, {"data", p.step.data}}},
                         {"findings", p.findings}});
    for (const auto& [r, s] : v.unresolved()) open.push_back({r, s});
    return {{"subject", subject}, {"status", to_string(v.status)}, {"pairs", pairs}, {"unresolved", open}};
}

std::string to_markdown(const PgqVerdict& v) {
    std::ostringstream out;
    out << "## Prime graph question for " << to_string(v.family) << "(2," << v.q << ")\n\nStatus: **"
        << to_string(v.status) << "**\n\n| pair | status | rule | provenance |\n|---|---|---|---|\n";
    for (const auto& p : v.pairs)
        out << "| {" << p.r << "," << p.s << "} | " << to_string(p.status) << " | " << p.step.rule << " | "
            << p.step.provenance << " |\n";
    return out.str();
}

// ---------------------------------------------------------------------------

PgqConditions pgq_conditions(std::int64_t q, std::uint64_t trial_bound) {
    const auto pp = as_prime_power(q);
    if (!pp || pp->p == 2) throw UnsupportedInput("q must be an odd prime power, got " + std::to_string(q));
    PgqConditions c;
    c.q = q;
    c.p = pp->p;
    c.f = pp->f;
    c.is_prime = pp->f == 1;
    const Integer n = Integer(q - 1) * (q + 1);
    c.factorization = factor(n, trial_bound);
    c.odd_part = 1;
    c.odd_part_square_free = true;
    for (const auto& [prime, e] : c.factorization) {
        if (prime == 2) continue;
        for (int i = 0; i < e; ++i) c.odd_part *= prime;
        if (e > 1) c.odd_part_square_free = false;
    }
    c.mod8_class = mod(q, 8);
    c.f_coprime = std::gcd<std::int64_t>(c.f, to_int64(n % c.f)) == 1;
    c.implication_holds = c.is_prime || !c.odd_part_square_free || c.f_coprime;
    return c;
}

nlohmann::json to_json(const PgqConditions& c) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& [prime, e] : c.factorization) factors.push_back({to_string(prime), e});
    return {{"q", c.q},
            {"p", c.p},
            {"f", c.f},
            {"is_prime", c.is_prime},
            {"factorization", factors},
            {"odd_part", to_string(c.odd_part)},
            {"odd_part_square_free", c.odd_part_square_free},
            {"mod8_class", c.mod8_class},
            {"f_coprime", c.f_coprime},
            {"implication_holds", c.implication_holds}};
}

}  // namespace help2p
