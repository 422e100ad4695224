#include "help2p/mod4.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace help2p {

IntMatrix TemplateMatch::permuted(const BlockShape& block) const {
    IntMatrix out(row_order.size(), std::vector<std::int64_t>(column_order.size()));
    for (std::size_t i = 0; i < row_order.size(); ++i)
        for (std::size_t j = 0; j < column_order.size(); ++j)
            out[i][j] = block.decomposition.at(row_order[i]).at(column_order[j]);
    return out;
}

IntMatrix klein_four_template() { return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}; }

IntMatrix dihedral8_template(std::int64_t d) { return {{1, 0}, {1, 0}, {d, 1}, {1, 1}, {1, 1}}; }

std::vector<TemplateMatch> template_matches(const BlockShape& block, const IntMatrix& target) {
    std::vector<TemplateMatch> out;
    const auto& m = block.decomposition;
    if (m.size() != target.size() || m.empty() || target.empty()) return out;
    const std::size_t cols = target[0].size();
    for (const auto& row : m)
        if (row.size() != cols) return out;
    std::vector<std::size_t> rows(m.size()), columns(cols);
    std::iota(rows.begin(), rows.end(), 0);
    do {
        std::iota(columns.begin(), columns.end(), 0);
        do {
            bool ok = true;
            for (std::size_t i = 0; i < rows.size() && ok; ++i)
                for (std::size_t j = 0; j < cols && ok; ++j) ok = m[rows[i]][columns[j]] == target[i][j];
            if (!ok) continue;
            TemplateMatch match;
            match.row_order = rows;
            match.column_order = columns;
            for (auto r : rows) match.characters.push_back(block.members.at(r));
            out.push_back(std::move(match));
        } while (std::next_permutation(columns.begin(), columns.end()));
    } while (std::next_permutation(rows.begin(), rows.end()));
    return out;
}

std::optional<TemplateMatch> match_v4_template(const BlockShape& block, const CharacterTable&) {
    for (auto& match : template_matches(block, klein_four_template())) {
        if (match.characters[0] != 0) continue;
        match.kind = DefectGroupKind::KleinFour;
        return match;
    }
    return std::nullopt;
}

std::optional<TemplateMatch> match_d8_template(const BlockShape& block, const CharacterTable& table) {
    for (std::int64_t d : {0, 2}) {
        for (auto& match : template_matches(block, dihedral8_template(d))) {
            if (match.characters[0] != 0) continue;
            if (character_height(table, match.characters[2], block) != 1) continue;
            match.kind = DefectGroupKind::Dihedral8;
            match.d = d;
            return match;
        }
    }
    return std::nullopt;
}

std::vector<std::int64_t> odd_part_roots(std::int64_t n) {
    if (n % 2 != 0 || (n / 2) % 2 == 0 || n / 2 < 3) throw UnsupportedInput("unit order must be 2p with p odd, p >= 3");
    const std::int64_t p = n / 2;
    std::vector<std::int64_t> out;
    for (std::int64_t k = 0; k < p; ++k)
        if (std::gcd(k, p) == 1) out.push_back(mod(2 * k, n));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

class BlockEquality : public ConstraintProvider {
public:
    BlockEquality(TemplateMatch match, std::int64_t p, bool guarded)
        : match_(std::move(match)), p_(p), guarded_(guarded) {
        if (p < 3 || p % 2 == 0) throw UnsupportedInput("p must be odd and at least 3");
        if (match_.kind == DefectGroupKind::KleinFour) {
            plus_ = {match_.characters[1], match_.characters[2]};
            minus_ = {match_.characters[3]};
        } else if (match_.kind == DefectGroupKind::Dihedral8) {
            plus_ = {match_.characters[2]};
            minus_ = {match_.characters[3]};
        } else {
            throw UnsupportedInput("template match has no defect group kind");
        }
    }

    std::string provenance() const override {
        const bool v4 = match_.kind == DefectGroupKind::KleinFour;
        if (guarded_) return v4 ? provenance::klein_four_conditional : provenance::dihedral8_conditional;
        return v4 ? provenance::klein_four : provenance::dihedral8;
    }

    bool applies(std::int64_t n) const override { return n == 2 * p_; }

    std::vector<Constraint> equalities(const CharacterTable& table, const CandidateChain& lower,
                                       std::int64_t n) const override {
        require_order(n);
        if (guarded_) return {};
        std::vector<Constraint> out;
        std::set<std::pair<std::vector<std::pair<std::size_t, Rational>>, Rational>> seen;
        for (auto e : odd_part_roots(n)) {
            LinearForm form;
            for (auto chi : plus_) form += lp_multiplicity_form(table, lower, n, table.characters().at(chi), e);
            for (auto chi : minus_) form -= lp_multiplicity_form(table, lower, n, table.characters().at(chi), e);
            const std::vector<std::pair<std::size_t, Rational>> key(form.coefficients.begin(), form.coefficients.end());
            if (!seen.emplace(key, form.constant).second) continue;
            out.push_back({Constraint::Kind::Equality, std::move(form), 0, provenance()});
        }
        return out;
    }

    bool accepts(const CharacterTable& table, const CandidateChain& chain) const override {
        if (!applies(chain.unit_order)) return true;
        const std::int64_t n = chain.unit_order;
        for (auto e : odd_part_roots(n)) {
            if (guarded_) {
                const auto& psi = table.characters().at(match_.characters[0]);
                if (lp_multiplicity(table, chain, psi, e) != 0 || lp_multiplicity(table, chain, psi, e + p_) != 0)
                    continue;
            }
            Rational gap = 0;
            for (auto chi : plus_) gap += lp_multiplicity(table, chain, chi, e);
            for (auto chi : minus_) gap -= lp_multiplicity(table, chain, chi, e);
            if (gap != 0) return false;
        }
        return true;
    }

private:
    void require_order(std::int64_t n) const {
        if (!applies(n)) throw UnsupportedInput("provider is for units of order " + std::to_string(2 * p_));
    }

    TemplateMatch match_;
    std::int64_t p_;
    bool guarded_;
    std::vector<std::size_t> plus_, minus_;
};

}  // namespace

std::shared_ptr<const ConstraintProvider> v4_constraint(const TemplateMatch& match, std::int64_t p) {
    if (match.kind != DefectGroupKind::KleinFour) throw UnsupportedInput("not a Klein-four template match");
    return std::make_shared<BlockEquality>(match, p, false);
}

std::shared_ptr<const ConstraintProvider> d8_constraint(const TemplateMatch& match, std::int64_t p) {
    if (match.kind != DefectGroupKind::Dihedral8) throw UnsupportedInput("not a dihedral template match");
    return std::make_shared<BlockEquality>(match, p, false);
}

std::shared_ptr<const ConstraintProvider> general_proposition_constraint(const TemplateMatch& match, std::int64_t p) {
    return std::make_shared<BlockEquality>(match, p, true);
}

ProviderList applicable_providers(const CharacterTable& table, std::int64_t n) {
    if (n % 2 != 0 || (n / 2) % 2 == 0 || n / 2 < 3) return {};
    BlockShape block;
    try {
        block = principal_2block(table);
    } catch (const UnsupportedInput&) {
        return {};
    } catch (const TableError&) {
        return {};
    }
    if (block.defect_group_kind == DefectGroupKind::KleinFour)
        if (auto m = match_v4_template(block, table)) return {v4_constraint(*m, n / 2)};
    if (block.defect_group_kind == DefectGroupKind::Dihedral8)
        if (auto m = match_d8_template(block, table)) return {d8_constraint(*m, n / 2)};
    return {};
}

}  // namespace help2p
