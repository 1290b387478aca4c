#include "staybusy/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace staybusy {

using ordered_json = nlohmann::ordered_json;

std::string instance_to_json(const DagInstance& instance) {
    ordered_json doc;
    doc["name"] = instance.name;
    if (instance.family) {
        ordered_json family;
        family["family"] = instance.family->family;
        ordered_json params = ordered_json::object();
        for (const auto& [k, v] : instance.family->params) params[k] = v;
        family["params"] = params;
        if (instance.family->seed) family["seed"] = *instance.family->seed;
        doc["family"] = family;
    }
    auto vertices = instance.vertices;
    std::sort(vertices.begin(), vertices.end(),
              [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
    ordered_json vs = ordered_json::array();
    for (const auto& v : vertices) {
        ordered_json item;
        item["id"] = v.id;
        item["w"] = v.weight;
        vs.push_back(item);
    }
    doc["vertices"] = vs;
    auto edges = instance.edges;
    std::sort(edges.begin(), edges.end());
    ordered_json es = ordered_json::array();
    for (const auto& e : edges) es.push_back(ordered_json::array({e.parent, e.child}));
    doc["edges"] = es;
    return doc.dump(2) + "\n";
}

DagInstance instance_from_json(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance JSON: ") + e.what());
    }
    try {
        DagInstance instance;
        instance.name = doc.value("name", std::string{});
        if (doc.contains("family")) {
            const auto& f = doc.at("family");
            FamilyTag tag;
            tag.family = f.at("family").get<std::string>();
            if (f.contains("params")) {
                for (const auto& [k, v] : f.at("params").items()) {
                    tag.params.emplace_back(k, v.get<std::int64_t>());
                }
            }
            if (f.contains("seed")) tag.seed = f.at("seed").get<std::uint64_t>();
            instance.family = std::move(tag);
        }
        for (const auto& v : doc.at("vertices")) {
            const auto id = v.at("id").get<std::int64_t>();
            if (id < 0) throw ParseError("instance JSON: negative vertex id");
            instance.vertices.push_back({static_cast<VertexId>(id), v.at("w").get<Work>()});
        }
        std::sort(instance.vertices.begin(), instance.vertices.end(),
                  [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw ParseError("instance JSON: edge must be [parent, child]");
            const auto p = e.at(0).get<std::int64_t>();
            const auto c = e.at(1).get<std::int64_t>();
            if (p < 0 || c < 0) throw ParseError("instance JSON: negative vertex id in edge");
            instance.edges.push_back({static_cast<VertexId>(p), static_cast<VertexId>(c)});
        }
        std::sort(instance.edges.begin(), instance.edges.end());
        return instance;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance JSON: ") + e.what());
    }
}

std::string work_table_to_csv(const WorkTable& table) {
    std::ostringstream out;
    out << "vertex,slot,processor\n";
    for (std::size_t v = 0; v < table.slots.size(); ++v) {
        auto slots = table.slots[v];
        std::sort(slots.begin(), slots.end());
        for (const auto& s : slots) out << v << ',' << s.time << ',' << s.processor << '\n';
    }
    return out.str();
}

namespace {

std::int64_t parse_int(std::string_view field, std::size_t line) {
    std::int64_t value = 0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("work table CSV line " + std::to_string(line) + ": bad integer '" +
                         std::string(field) + "'");
    }
    return value;
}

}  // namespace

WorkTable work_table_from_csv(std::string_view text, std::size_t vertex_count,
                              ProcessorId min_processors) {
    WorkTable table(vertex_count, min_processors);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "vertex,slot,processor") {
                throw ParseError("work table CSV: expected header 'vertex,slot,processor'");
            }
            header_seen = true;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
            throw ParseError("work table CSV line " + std::to_string(line_no) +
                             ": expected 3 fields");
        }
        const auto v = parse_int(line.substr(0, c1), line_no);
        const auto t = parse_int(line.substr(c1 + 1, c2 - c1 - 1), line_no);
        const auto p = parse_int(line.substr(c2 + 1), line_no);
        if (v < 0 || static_cast<std::size_t>(v) >= vertex_count) {
            throw ParseError("work table CSV line " + std::to_string(line_no) +
                             ": vertex " + std::to_string(v) + " not in instance");
        }
        table.slots[static_cast<std::size_t>(v)].push_back({t, static_cast<ProcessorId>(p)});
        table.processors = std::max<ProcessorId>(table.processors, static_cast<ProcessorId>(p));
    }
    if (!header_seen) throw ParseError("work table CSV: empty file");
    table.normalize();
    table.horizon = completion_time(table);
    return table;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace staybusy
