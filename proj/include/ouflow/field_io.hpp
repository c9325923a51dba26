#ifndef OUFLOW_FIELD_IO_HPP
#define OUFLOW_FIELD_IO_HPP

#include "ouflow/grid.hpp"

#include <filesystem>

namespace ouflow {

/// Flat binary layout: header of three little-endian 64-bit values
/// (d and N as signed integers, L as an IEEE double), then the d components
/// in axis-major C order, doubles.
void write_field(const std::filesystem::path& path, const Field& f);
Field read_field(const std::filesystem::path& path);

/// CSV export for small grids: columns x1..xd, u1..ud, one node per row.
void write_field_csv(const std::filesystem::path& path, const Field& f);

} // namespace ouflow

#endif
