// Regenerates tests/fixtures/*.json from the permutation-group brute force.
// Usage: make_fixtures <output-dir>
#include "perm_group.hpp"

#include "help2p/blocks.hpp"
#include "help2p/table_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace help2p;
using namespace help2p::testing;

namespace {

struct BlockTemplate {
    DefectGroupKind kind;
    std::vector<std::vector<std::int64_t>> rows;
};

// First assignment of principal-block members to template rows that passes validation.
DeclaredBlock fit_block(const CharacterTable& t, const BlockTemplate& tmpl) {
    auto members = principal_block_members(t);
    std::sort(members.begin(), members.end());
    do {
        DeclaredBlock b;
        b.sylow2_kind = tmpl.kind;
        b.shape.members = members;
        b.shape.decomposition = tmpl.rows;
        b.shape.defect = valuation(t.group_order(), 2);
        b.shape.defect_group_kind = tmpl.kind;
        b.shape.trivial_row = static_cast<std::size_t>(std::find(members.begin(), members.end(), 0) - members.begin());
        try {
            validate_block(t, b);
            return b;
        } catch (const TableError&) {
        }
    } while (std::next_permutation(members.begin(), members.end()));
    throw DataError("no block assignment fits " + t.descriptor());
}

void write(const std::filesystem::path& dir, const std::string& file, const BruteGroup& g, const BlockTemplate& tmpl) {
    const auto& t = *g.table;
    const CharacterTable with_block(t.group_order(), t.descriptor(), t.classes(), t.characters(), fit_block(t, tmpl));
    std::ofstream(dir / file) << export_table(with_block) << '\n';
    std::cout << "wrote " << (dir / file).string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <output-dir>\n";
        return 2;
    }
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);
    using K = DefectGroupKind;
    write(dir, "trivial.json", trivial_group(), {K::Other, {{1}}});
    write(dir, "c3.json", cyclic_group(3), {K::Other, {{1}}});
    write(dir, "s3.json", symmetric_group(3), {K::Other, {{1}, {1}}});
    write(dir, "a4.json", alternating_group(4), {K::KleinFour, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}});
    write(dir, "s4.json", symmetric_group(4), {K::Dihedral8, {{1, 0}, {1, 0}, {0, 1}, {1, 1}, {1, 1}}});
    write(dir, "a5.json", alternating_group(5), {K::KleinFour, {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}}});
    return 0;
}
