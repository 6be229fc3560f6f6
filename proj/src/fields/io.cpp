/// @file io.cpp
/// @brief CBF1 reader and writer.
///
/// Doubles are written via memcpy of the host representation; the format
/// targets little-endian IEEE-754 hosts (asserted at compile time).

#include "cbf/fields/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace cbf::fields {

static_assert(std::endian::native == std::endian::little,
              "CBF1 io assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'C', 'B', 'F', '1'};

void write_header(std::ofstream& out, int dim, int kind, int n) {
    out.write(kMagic, 4);
    const unsigned char d = static_cast<unsigned char>(dim);
    const unsigned char k = static_cast<unsigned char>(kind);
    out.write(reinterpret_cast<const char*>(&d), 1);
    out.write(reinterpret_cast<const char*>(&k), 1);
    const std::uint32_t nn = static_cast<std::uint32_t>(n);
    out.write(reinterpret_cast<const char*>(&nn), 4);
}

void write_block(std::ofstream& out, const std::vector<double>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

struct Header {
    int dim;
    int kind;
    int n;
};

Header read_header(std::ifstream& in, const std::string& path) {
    char magic[4];
    unsigned char dim, kind;
    std::uint32_t n;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&dim), 1);
    in.read(reinterpret_cast<char*>(&kind), 1);
    in.read(reinterpret_cast<char*>(&n), 4);
    if (!in) throw io_error(path + ": truncated CBF1 header");
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw io_error(path + ": bad magic, not a CBF1 file");
    if (dim != 2 && dim != 3) throw io_error(path + ": bad dim byte");
    if (kind != 0 && kind != 1) throw io_error(path + ": bad kind byte");
    if (n < 8 || n > (1u << 24)) throw io_error(path + ": implausible n");
    return {static_cast<int>(dim), static_cast<int>(kind), static_cast<int>(n)};
}

void read_block(std::ifstream& in, std::vector<double>& v, const std::string& path) {
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!in) throw io_error(path + ": truncated CBF1 payload");
}

}  // namespace

void write_field(const std::string& path, const ScalarField& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error(path + ": cannot open for writing");
    write_header(out, s.grid().dim(), 0, s.grid().n());
    write_block(out, s.data());
    if (!out) throw io_error(path + ": write failed");
}

void write_field(const std::string& path, const VectorField& u) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error(path + ": cannot open for writing");
    write_header(out, u.grid().dim(), 1, u.grid().n());
    for (int a = 0; a < u.grid().dim(); ++a) write_block(out, u.comp(a));
    if (!out) throw io_error(path + ": write failed");
}

ScalarField read_scalar(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error(path + ": cannot open");
    const Header h = read_header(in, path);
    if (h.kind != 0) throw io_error(path + ": expected a scalar field, found kind 1");
    ScalarField s(Grid(h.dim, h.n));
    read_block(in, s.data(), path);
    in.peek();
    if (!in.eof()) throw io_error(path + ": trailing bytes after payload");
    return s;
}

VectorField read_vector(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error(path + ": cannot open");
    const Header h = read_header(in, path);
    if (h.kind != 1) throw io_error(path + ": expected a vector field, found kind 0");
    VectorField u(Grid(h.dim, h.n));
    for (int a = 0; a < h.dim; ++a) read_block(in, u.comp(a), path);
    in.peek();
    if (!in.eof()) throw io_error(path + ": trailing bytes after payload");
    return u;
}

}  // namespace cbf::fields
