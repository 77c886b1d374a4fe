#include "fnls/snapshot.hpp"

#include <cstring>
#include <fstream>

#include "fnls/errors.hpp"

namespace fnls {

namespace {

void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

double read_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

void write_header(std::ostream& os, const Grid& g, const PhysicsParams& p) {
    os.write("FNLS", 4);
    write_u32(os, kSnapshotVersion);
    write_u32(os, static_cast<std::uint32_t>(g.dim()));
    write_u32(os, static_cast<std::uint32_t>(g.n()));
    write_f64(os, g.half_length());
    write_f64(os, p.s);
    write_f64(os, p.alpha);
}

}  // namespace

void save_snapshot(const std::string& path, const Field& field,
                   const PhysicsParams& params) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw StructuralError("save_snapshot: cannot open " + path);
    write_header(os, field.grid(), params);
    for (const auto& c : field.values()) {
        write_f64(os, c.real());
        write_f64(os, c.imag());
    }
    if (!os) throw StructuralError("save_snapshot: write failed for " + path);
}

void save_snapshot_real(const std::string& path, GridPtr grid,
                        const std::vector<double>& data, const PhysicsParams& params) {
    if (data.size() != grid->size())
        throw StructuralError("save_snapshot_real: size mismatch");
    std::vector<cplx> v(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) v[i] = data[i];
    save_snapshot(path, Field(std::move(grid), std::move(v)), params);
}

Snapshot load_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw StructuralError("load_snapshot: cannot open " + path);
    char magic[4] = {};
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "FNLS", 4) != 0)
        throw StructuralError("load_snapshot: bad magic in " + path);
    const std::uint32_t version = read_u32(is);
    if (version != kSnapshotVersion)
        throw StructuralError("load_snapshot: unsupported version " +
                              std::to_string(version));
    const std::uint32_t d = read_u32(is);
    const std::uint32_t n = read_u32(is);
    const double L = read_f64(is);
    const double s = read_f64(is);
    const double alpha = read_f64(is);
    if (!is) throw StructuralError("load_snapshot: truncated header in " + path);

    PhysicsParams params(static_cast<int>(d), s, alpha);
    GridPtr grid = make_grid(static_cast<int>(d), static_cast<int>(n), L);
    std::vector<cplx> values(grid->size());
    for (auto& c : values) {
        const double re = read_f64(is);
        const double im = read_f64(is);
        c = {re, im};
    }
    if (!is) throw StructuralError("load_snapshot: truncated payload in " + path);
    return Snapshot{Field(std::move(grid), std::move(values)), params};
}

}  // namespace fnls
