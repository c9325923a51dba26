#include "ouflow/field_io.hpp"

#include "ouflow/errors.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "field serialization assumes a little-endian host");

namespace ouflow {

void write_field(const std::filesystem::path& path, const Field& f) {
    if (f.components() != f.grid().dim)
        throw ConfigError("binary field format stores d-component fields");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path.string());

    const std::int64_t d = f.grid().dim;
    const std::int64_t n = f.grid().n;
    const double L = f.grid().half_width;
    out.write(reinterpret_cast<const char*>(&d), 8);
    out.write(reinterpret_cast<const char*>(&n), 8);
    out.write(reinterpret_cast<const char*>(&L), 8);
    for (int c = 0; c < f.components(); ++c) {
        const auto span = f.comp(c);
        out.write(reinterpret_cast<const char*>(span.data()),
                  static_cast<std::streamsize>(span.size() * sizeof(double)));
    }
    if (!out) throw ConfigError("short write to " + path.string());
}

Field read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::int64_t d = 0, n = 0;
    double L = 0.0;
    in.read(reinterpret_cast<char*>(&d), 8);
    in.read(reinterpret_cast<char*>(&n), 8);
    in.read(reinterpret_cast<char*>(&L), 8);
    if (!in) throw ConfigError("truncated field header in " + path.string());

    Grid g(static_cast<int>(d), static_cast<int>(n), L);
    Field f(g, g.dim);
    for (int c = 0; c < g.dim; ++c) {
        auto span = f.comp(c);
        in.read(reinterpret_cast<char*>(span.data()),
                static_cast<std::streamsize>(span.size() * sizeof(double)));
    }
    if (!in) throw ConfigError("truncated field data in " + path.string());
    if (!f.all_finite())
        throw ConfigError("non-finite entries in " + path.string());
    return f;
}

void write_field_csv(const std::filesystem::path& path, const Field& f) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string());
    const Grid& g = f.grid();
    for (int a = 0; a < g.dim; ++a) out << "x" << (a + 1) << ",";
    for (int c = 0; c < f.components(); ++c)
        out << "u" << (c + 1) << (c + 1 == f.components() ? "\n" : ",");

    char buf[32];
    const std::int64_t total = g.points();
    for (std::int64_t i = 0; i < total; ++i) {
        const Eigen::VectorXd x = g.node(i);
        for (int a = 0; a < g.dim; ++a) {
            std::snprintf(buf, sizeof buf, "%.17g", x(a));
            out << buf << ",";
        }
        for (int c = 0; c < f.components(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", f.comp(c)[i]);
            out << buf << (c + 1 == f.components() ? "\n" : ",");
        }
    }
}

} // namespace ouflow
