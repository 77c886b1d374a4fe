#pragma once

#include <string>

#include "fnls/field.hpp"

namespace fnls {

// Binary field snapshot, little endian throughout:
//   magic "FNLS" | version u32 | d u32 | n u32 | L f64 | s f64 | alpha f64 |
//   n^d interleaved (re, im) f64 pairs, row major.
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct Snapshot {
    Field field;
    PhysicsParams params;
};

void save_snapshot(const std::string& path, const Field& field,
                   const PhysicsParams& params);

Snapshot load_snapshot(const std::string& path);

// Weight component export reuses the field container (imaginary part zero).
void save_snapshot_real(const std::string& path, GridPtr grid,
                        const std::vector<double>& data, const PhysicsParams& params);

}  // namespace fnls
