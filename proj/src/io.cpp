#include "mmlogic/io.hpp"

#include <fstream>
#include <sstream>

#include "mmlogic/error.hpp"

namespace mmlogic {

using nlohmann::json;

namespace {

int relation_key(const std::string& key) {
    if (key.size() < 2 || key[0] != 'R' || key.find_first_not_of("0123456789", 1) != std::string::npos)
        throw ModelError("relation key '" + key + "' must look like R<i>");
    const int i = std::stoi(key.substr(1));
    if (i < 1) throw ModelError("relation index must be >= 1");
    return i;
}

std::pair<std::string, std::string> string_pair(const json& p, const char* what) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
        throw ModelError(std::string(what) + " entries must be [\"a\",\"b\"] pairs");
    return {p[0].get<std::string>(), p[1].get<std::string>()};
}

}  // namespace

KripkeStructure structure_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("worlds")) throw ModelError("structure needs a \"worlds\" array");
        const auto worlds = j.at("worlds").get<std::vector<std::string>>();
        int k = 0;
        if (j.contains("relations")) {
            for (const auto& [key, _] : j.at("relations").items()) k = std::max(k, relation_key(key));
        }
        KripkeStructure m(worlds, k);
        if (j.contains("relations")) {
            for (const auto& [key, pairs] : j.at("relations").items()) {
                const int i = relation_key(key);
                for (const auto& p : pairs) {
                    auto [a, b] = string_pair(p, "relation");
                    m.add_edge(i, a, b);
                }
            }
        }
        if (j.contains("valuation")) {
            for (const auto& [world, props] : j.at("valuation").items()) {
                const WorldId w = m.world(world);
                for (const auto& p : props) m.add_label(w, p.get<std::string>());
            }
        }
        return m;
    } catch (const json::exception& e) {
        throw ModelError(std::string("malformed structure: ") + e.what());
    }
}

json structure_to_json(const KripkeStructure& m) {
    json j;
    j["worlds"] = m.worlds();
    json rels = json::object();
    for (int i = 1; i <= m.relation_count(); ++i) {
        json pairs = json::array();
        for (auto [a, b] : m.relation(i).pairs()) pairs.push_back({m.world_name(a), m.world_name(b)});
        rels["R" + std::to_string(i)] = std::move(pairs);
    }
    j["relations"] = std::move(rels);
    json val = json::object();
    for (WorldId w = 0; w < m.world_count(); ++w)
        if (!m.label(w).empty()) val[m.world_name(w)] = m.label(w);
    j["valuation"] = std::move(val);
    return j;
}

DominoSystem domino_from_json(const json& j) {
    try {
        std::vector<std::pair<std::string, std::string>> h, v;
        if (j.contains("H"))
            for (const auto& p : j.at("H")) h.push_back(string_pair(p, "H"));
        if (j.contains("V"))
            for (const auto& p : j.at("V")) v.push_back(string_pair(p, "V"));
        return DominoSystem::from_names(j.at("tiles").get<std::vector<std::string>>(), h, v);
    } catch (const json::exception& e) {
        throw Error(std::string("malformed domino file: ") + e.what());
    }
}

json domino_to_json(const DominoSystem& d) {
    json j;
    j["tiles"] = d.tiles;
    json h = json::array(), v = json::array();
    for (auto [a, b] : d.horizontal) h.push_back({d.tiles[a], d.tiles[b]});
    for (auto [a, b] : d.vertical) v.push_back({d.tiles[a], d.tiles[b]});
    j["H"] = std::move(h);
    j["V"] = std::move(v);
    return j;
}

json verdict_to_json(const SolveResult& r) {
    json j;
    j["status"] = std::string(to_string(r.status));
    j["worlds_explored"] = r.worlds_explored;
    j["size"] = r.size;
    j["nodes"] = r.nodes;
    if (r.model) j["witness"] = r.witness;
    return j;
}

std::string structure_to_dot(const KripkeStructure& m) {
    std::ostringstream out;
    out << "digraph kripke {\n";
    for (WorldId w = 0; w < m.world_count(); ++w) {
        out << "  \"" << m.world_name(w) << "\"";
        if (!m.label(w).empty()) {
            out << " [label=\"" << m.world_name(w) << "\\n";
            bool first = true;
            for (const auto& p : m.label(w)) {
                out << (first ? "" : ",") << p;
                first = false;
            }
            out << "\"]";
        }
        out << ";\n";
    }
    for (int i = 1; i <= m.relation_count(); ++i)
        for (auto [a, b] : m.relation(i).pairs())
            out << "  \"" << m.world_name(a) << "\" -> \"" << m.world_name(b) << "\" [label=\"R" << i << "\""
                << (i == 1 ? ", style=bold" : i == 2 ? ", style=dashed" : "") << "];\n";
    out << "}\n";
    return out.str();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
}

}  // namespace mmlogic
