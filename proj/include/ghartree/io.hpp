#pragma once

#include <cstdint>
#include <string>

#include "ghartree/evolve.hpp"
#include "ghartree/field.hpp"

namespace ghartree {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Binary checkpoint: magic "GHFD", version u32, N u32, n u32, L f64, then
/// n^N little-endian (re, im) f64 pairs, row-major.
void write_checkpoint(const std::string& path, const ComplexField& field);
ComplexField read_checkpoint(const std::string& path);

/// FNV-1a 64-bit over the canonical config text; embedded in output headers
/// so identical configs are recognizable byte-for-byte.
std::uint64_t fnv1a64(const std::string& text);
std::string hash_hex(std::uint64_t value);

/// One observables row: t, mass, energy, grad_norm_sq, z, variance,
/// variance_rate, momentum components.
std::string csv_header(int dim);
std::string csv_row(const ObservableSet& s);

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record,
                          const std::string& config_hash);

} // namespace ghartree
