#include "ghartree/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ghartree {

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char buf[4];
    for (int i = 0; i < 4; ++i)
        buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xffu);
    os.write(reinterpret_cast<const char*>(buf), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char buf[4];
    is.read(reinterpret_cast<char*>(buf), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
    return v;
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i)
        buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xffu);
    os.write(reinterpret_cast<const char*>(buf), 8);
}

double get_f64(std::istream& is) {
    unsigned char buf[8];
    is.read(reinterpret_cast<char*>(buf), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
        bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

std::string fmt_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_checkpoint(const std::string& path, const ComplexField& field) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open checkpoint for writing: " + path);
    os.write("GHFD", 4);
    put_u32(os, 1u);
    put_u32(os, static_cast<std::uint32_t>(field.grid.dim));
    put_u32(os, static_cast<std::uint32_t>(field.grid.n));
    put_f64(os, field.grid.half_extent);
    for (const Complex& v : field.values) {
        put_f64(os, v.real());
        put_f64(os, v.imag());
    }
    if (!os)
        throw std::runtime_error("short write on checkpoint: " + path);
}

ComplexField read_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open checkpoint: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "GHFD", 4) != 0)
        throw std::runtime_error("bad checkpoint magic in " + path);
    const std::uint32_t version = get_u32(is);
    if (version != 1u)
        throw std::runtime_error("unsupported checkpoint version in " + path);
    const int dim = static_cast<int>(get_u32(is));
    const int n = static_cast<int>(get_u32(is));
    const double half_extent = get_f64(is);
    ComplexField field(Grid(dim, n, half_extent));
    for (Complex& v : field.values) {
        const double re = get_f64(is);
        const double im = get_f64(is);
        v = Complex(re, im);
    }
    if (!is)
        throw std::runtime_error("short read on checkpoint: " + path);
    return field;
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string hash_hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string csv_header(int dim) {
    std::string header = "t,mass,energy,grad_norm_sq,z,variance,variance_rate";
    const char* names[4] = {"px", "py", "pz", "pw"};
    for (int d = 0; d < dim; ++d) {
        header += ',';
        header += names[d];
    }
    return header;
}

std::string csv_row(const ObservableSet& s) {
    std::ostringstream os;
    os << fmt_g17(s.time) << ',' << fmt_g17(s.mass) << ',' << fmt_g17(s.energy) << ','
       << fmt_g17(s.grad_norm_sq) << ',' << fmt_g17(s.z_value) << ',' << fmt_g17(s.variance)
       << ',' << fmt_g17(s.variance_rate);
    for (int d = 0; d < s.dim; ++d)
        os << ',' << fmt_g17(s.momentum[static_cast<std::size_t>(d)]);
    return os.str();
}

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record,
                          const std::string& config_hash) {
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open trajectory csv for writing: " + path);
    os << "# ghartree " << kArtifactVersion << " config " << config_hash << "\n";
    os << "# status " << to_string(record.status) << " steps " << record.steps << "\n";
    if (!record.samples.empty())
        os << csv_header(record.samples.front().dim) << "\n";
    for (const ObservableSet& s : record.samples)
        os << csv_row(s) << "\n";
}

} // namespace ghartree
