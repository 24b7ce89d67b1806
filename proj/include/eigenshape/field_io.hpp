#pragma once

#include "eigenshape/mesh.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace eigenshape {

enum class FieldLocation { Vertex, Element };

struct Field {
    std::string name;
    FieldLocation location = FieldLocation::Vertex;
    std::vector<double> values;

    bool operator==(const Field&) const = default;
};

struct FieldFile {
    Mesh mesh;
    std::vector<Field> fields;
};

/// Plain-text mesh/field format:
///
///     dim nv ne
///     x [y]                      (nv lines)
///     i j [k]                    (ne lines, 0-based)
///     field <name> vertex|element
///     value                      (nv or ne lines)
///     ...                        (more field blocks)
///
/// Reals are written in shortest round-trip form, so write/read/write is
/// byte-identical and values are recovered exactly.
void write_field_file(std::ostream& os, const Mesh& mesh, const std::vector<Field>& fields = {});
void write_field_file(const std::string& path, const Mesh& mesh, const std::vector<Field>& fields = {});

FieldFile read_field_file(std::istream& is);
FieldFile read_field_file(const std::string& path);

/// Shortest decimal representation that parses back to the same double.
std::string format_real(double v);

} // namespace eigenshape
