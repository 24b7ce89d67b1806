#include "eigenshape/field_io.hpp"

#include "eigenshape/errors.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace eigenshape {

std::string format_real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_real(const std::string& token) {
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size())
        throw InvalidArgument("field file: bad real '" + token + "'");
    return v;
}

std::string next_line(std::istream& is, const char* what) {
    std::string line;
    if (!std::getline(is, line)) throw InvalidArgument(std::string("field file: truncated while reading ") + what);
    return line;
}

} // namespace

void write_field_file(std::ostream& os, const Mesh& mesh, const std::vector<Field>& fields) {
    os << mesh.dim << ' ' << mesh.num_vertices() << ' ' << mesh.num_elements() << '\n';
    for (const auto& v : mesh.vertices) {
        os << format_real(v[0]);
        if (mesh.dim == 2) os << ' ' << format_real(v[1]);
        os << '\n';
    }
    for (const auto& el : mesh.elements) {
        os << el[0] << ' ' << el[1];
        if (mesh.dim == 2) os << ' ' << el[2];
        os << '\n';
    }
    for (const auto& f : fields) {
        const bool vertex = f.location == FieldLocation::Vertex;
        const std::size_t expected = vertex ? mesh.vertices.size() : mesh.elements.size();
        if (f.values.size() != expected) throw InvalidArgument("field '" + f.name + "' has wrong length");
        if (f.name.empty() || f.name.find_first_of(" \t\n") != std::string::npos)
            throw InvalidArgument("field name must be a nonempty token");
        os << "field " << f.name << ' ' << (vertex ? "vertex" : "element") << '\n';
        for (double v : f.values) os << format_real(v) << '\n';
    }
}

void write_field_file(const std::string& path, const Mesh& mesh, const std::vector<Field>& fields) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidArgument("cannot open '" + path + "' for writing");
    write_field_file(os, mesh, fields);
}

FieldFile read_field_file(std::istream& is) {
    FieldFile out;
    Mesh& mesh = out.mesh;
    int nv = 0, ne = 0;
    {
        std::istringstream hdr(next_line(is, "header"));
        if (!(hdr >> mesh.dim >> nv >> ne) || (mesh.dim != 1 && mesh.dim != 2) || nv <= 0 || ne <= 0)
            throw InvalidArgument("field file: bad header");
    }
    mesh.vertices.resize(nv);
    for (int v = 0; v < nv; ++v) {
        std::istringstream ls(next_line(is, "vertices"));
        std::string x, y;
        ls >> x;
        mesh.vertices[v][0] = parse_real(x);
        if (mesh.dim == 2) {
            ls >> y;
            mesh.vertices[v][1] = parse_real(y);
        }
    }
    mesh.elements.resize(ne);
    for (int e = 0; e < ne; ++e) {
        std::istringstream ls(next_line(is, "elements"));
        auto& el = mesh.elements[e];
        el = {-1, -1, -1};
        for (int k = 0; k < mesh.dim + 1; ++k)
            if (!(ls >> el[k])) throw InvalidArgument("field file: bad element line");
    }
    finalize_mesh(mesh);

    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag, name, loc;
        if (!(ls >> tag >> name >> loc) || tag != "field") throw InvalidArgument("field file: expected field block");
        Field f;
        f.name = name;
        if (loc == "vertex")
            f.location = FieldLocation::Vertex;
        else if (loc == "element")
            f.location = FieldLocation::Element;
        else
            throw InvalidArgument("field file: unknown location '" + loc + "'");
        const int count = f.location == FieldLocation::Vertex ? nv : ne;
        f.values.resize(count);
        for (int i = 0; i < count; ++i) f.values[i] = parse_real(next_line(is, "field values"));
        out.fields.push_back(std::move(f));
    }
    return out;
}

FieldFile read_field_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InvalidArgument("cannot open '" + path + "'");
    return read_field_file(is);
}

} // namespace eigenshape
