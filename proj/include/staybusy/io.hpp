#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "staybusy/instance.hpp"
#include "staybusy/work_table.hpp"

namespace staybusy {

/// Malformed input file. Carries a human-readable diagnostic.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Instance JSON:
//   {"name": str, "family": {...}?, "vertices": [{"id": int, "w": int}, ...],
//    "edges": [[parent, child], ...]}
// Vertices sorted by id, edges lexicographic, two-space indentation.
std::string instance_to_json(const DagInstance& instance);
DagInstance instance_from_json(std::string_view text);

// Work table CSV: header "vertex,slot,processor", rows sorted by (vertex, slot).
// The horizon of a parsed table is its completion time; processors is the
// larger of the largest processor index seen and `min_processors`.
std::string work_table_to_csv(const WorkTable& table);
WorkTable work_table_from_csv(std::string_view text, std::size_t vertex_count,
                              ProcessorId min_processors = 1);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace staybusy
