#include "help2p/table_io.hpp"

#include "help2p/blocks.hpp"

#include <fstream>
#include <sstream>

namespace help2p {
namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& what) { throw TableError(TableErrc::Schema, what); }

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) schema(std::string("missing field '") + key + "'");
    return obj.at(key);
}

Integer parse_integer(const json& j, TableErrc code, const std::string& what) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (!j.is_string()) throw TableError(code, what + ": expected a decimal string");
    const auto s = j.get<std::string>();
    Integer v;
    if (s.empty() || v.set_str(s, 10) != 0) throw TableError(code, what + ": '" + s + "' is not an integer");
    return v;
}

std::int64_t parse_small(const json& j, TableErrc code, const std::string& what) {
    const Integer v = parse_integer(j, code, what);
    if (!v.fits_slong_p()) throw TableError(code, what + ": value out of range");
    return v.get_si();
}

json decimal(const Integer& v) { return to_string(v); }

json block_to_json(const DeclaredBlock& b) {
    return {{"members", b.shape.members},
            {"decomposition_matrix", b.shape.decomposition},
            {"defect", b.shape.defect},
            {"defect_group_kind", to_string(b.shape.defect_group_kind)},
            {"sylow2_kind", to_string(b.sylow2_kind)},
            {"trivial_row", b.shape.trivial_row}};
}

DeclaredBlock block_from_json(const json& j) {
    DeclaredBlock b;
    try {
        b.shape.members = field(j, "members").get<std::vector<std::size_t>>();
        b.shape.decomposition = field(j, "decomposition_matrix").get<std::vector<std::vector<std::int64_t>>>();
        b.shape.defect = field(j, "defect").get<int>();
        b.shape.defect_group_kind = defect_group_kind_from_string(field(j, "defect_group_kind").get<std::string>());
        b.sylow2_kind = defect_group_kind_from_string(field(j, "sylow2_kind").get<std::string>());
        b.shape.trivial_row = j.value("trivial_row", std::size_t{0});
    } catch (const json::exception& e) {
        throw TableError(TableErrc::Schema, std::string("block: ") + e.what());
    }
    return b;
}

}  // namespace

json cyclotomic_to_json(const CyclotomicNumber& x) {
    json terms = json::array();
    for (const auto& [e, c] : x.terms())
        terms.push_back({std::to_string(e), to_string(Integer(c.get_num())), to_string(Integer(c.get_den()))});
    return {{"conductor", std::to_string(x.conductor())}, {"terms", terms}};
}

CyclotomicNumber cyclotomic_from_json(const json& j) {
    constexpr auto code = TableErrc::MalformedValue;
    if (!j.is_object() || !j.contains("conductor") || !j.contains("terms") || !j.at("terms").is_array())
        throw TableError(code, "cyclotomic value needs {conductor, terms}");
    const std::int64_t n = parse_small(j.at("conductor"), code, "conductor");
    if (n < 1) throw TableError(code, "conductor must be positive");
    std::vector<CyclotomicNumber::Term> raw;
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 3) throw TableError(code, "term must be [exponent, numerator, denominator]");
        const std::int64_t e = parse_small(t[0], code, "exponent");
        const Integer num = parse_integer(t[1], code, "numerator");
        const Integer den = parse_integer(t[2], code, "denominator");
        if (den <= 0) throw TableError(code, "denominator must be positive");
        raw.emplace_back(e, make_rational(num, den));
    }
    return CyclotomicNumber::from_terms(n, raw);
}

json table_to_json(const CharacterTable& table) {
    json classes = json::array();
    for (const auto& c : table.classes()) {
        json maps = json::object();
        for (const auto& [r, label] : c.power_maps) maps[std::to_string(r)] = label;
        classes.push_back({{"label", c.label},
                           {"element_order", std::to_string(c.element_order)},
                           {"class_size", decimal(c.class_size)},
                           {"power_maps", maps}});
    }
    json characters = json::array();
    for (const auto& row : table.characters()) {
        json values = json::array();
        for (const auto& v : row) values.push_back(cyclotomic_to_json(v));
        characters.push_back(std::move(values));
    }
    json doc = {{"format", 1},
                {"group_order", decimal(table.group_order())},
                {"descriptor", table.descriptor()},
                {"conductor", std::to_string(table.conductor())},
                {"classes", classes},
                {"characters", characters}};
    if (table.declared_block()) {
        doc["block"] = block_to_json(*table.declared_block());
    } else if (table.builtin() && sylow2_kind(table) != DefectGroupKind::Other) {
        doc["block"] = block_to_json({principal_2block(table), sylow2_kind(table)});
    }
    return doc;
}

CharacterTable table_from_json(const json& doc) {
    if (!doc.is_object()) schema("document must be a JSON object");
    if (field(doc, "format") != 1) schema("unsupported format version");
    const Integer order = parse_integer(field(doc, "group_order"), TableErrc::Schema, "group_order");
    const auto& descriptor = field(doc, "descriptor");
    if (!descriptor.is_string()) schema("descriptor must be a string");

    std::vector<ClassData> classes;
    const auto& jc = field(doc, "classes");
    if (!jc.is_array()) schema("classes must be an array");
    for (const auto& c : jc) {
        ClassData data;
        if (!field(c, "label").is_string()) schema("class label must be a string");
        data.label = c.at("label").get<std::string>();
        data.element_order = parse_small(field(c, "element_order"), TableErrc::Schema, "element_order");
        data.class_size = parse_integer(field(c, "class_size"), TableErrc::Schema, "class_size");
        const auto& maps = field(c, "power_maps");
        if (!maps.is_object()) schema("power_maps must be an object");
        for (const auto& [key, value] : maps.items()) {
            if (!value.is_string()) throw TableError(TableErrc::PowerMaps, "power map image must be a label");
            data.power_maps[parse_small(json(key), TableErrc::PowerMaps, "power map prime")] = value.get<std::string>();
        }
        classes.push_back(std::move(data));
    }

    std::vector<std::vector<CyclotomicNumber>> rows;
    const auto& jr = field(doc, "characters");
    if (!jr.is_array()) schema("characters must be an array");
    for (const auto& row : jr) {
        if (!row.is_array()) schema("character row must be an array");
        std::vector<CyclotomicNumber> values;
        for (const auto& v : row) values.push_back(cyclotomic_from_json(v));
        rows.push_back(std::move(values));
    }

    std::optional<std::int64_t> conductor;
    if (doc.contains("conductor")) conductor = parse_small(doc.at("conductor"), TableErrc::MalformedValue, "conductor");
    std::optional<DeclaredBlock> block;
    if (doc.contains("block") && !doc.at("block").is_null()) block = block_from_json(doc.at("block"));

    CharacterTable table(order, descriptor.get<std::string>(), std::move(classes), std::move(rows), block, std::nullopt,
                         conductor);
    if (block) validate_block(table, *block);
    return table;
}

std::string export_table(const CharacterTable& table) { return table_to_json(table).dump(1); }

CharacterTable ingest_table(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw TableError(TableErrc::Schema, std::string("invalid JSON: ") + e.what());
    }
    return table_from_json(doc);
}

CharacterTable load_table_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return ingest_table(buf.str());
}

}  // namespace help2p
