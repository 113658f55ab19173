// Binary restart files for the 2D solver.
//
// Layout (native little-endian):
//   char[8]  magic "PENALFR\0"
//   u32      format version
//   u32      mesh hash (CartesianMesh::hash)
//   i64      step index
//   f64      time
//   u64      elements, points per element, |q|, |q_bar|
//   f64[...] conserved field, then q, then q_bar
//   u32      crc32 of every preceding byte
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "penalfr/field.hpp"
#include "penalfr/sfd.hpp"

namespace penalfr::io {

inline constexpr std::uint32_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Checkpoint {
  std::uint32_t mesh_hash = 0;
  long long step = 0;
  double t = 0.0;
  FlowField field;
  sfd::SfdState sfd_state;
};

/// Throws CheckpointError on I/O failure.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);

/// Throws CheckpointError for a missing or truncated file, bad magic, version
/// mismatch or checksum failure.
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// As above, and also throws when the stored mesh hash differs.
Checkpoint load_checkpoint(const std::filesystem::path& path, std::uint32_t expected_mesh_hash);

}  // namespace penalfr::io
