#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "pointillist/gram_store.hpp"

namespace pointillist {

// Snapshot container, all integers little-endian.
//
//   offset size field
//        0    4 magic "PNTL"
//        4    4 u32 format version (kSnapshotVersion)
//        8    4 u32 primary gram order n
//       12    4 i32 UTC offset in seconds
//       16    4 u32 flags (bit 0: partial ingest)
//       20    4 u32 CRC-32 of the payload
//       24    8 u64 payload length in bytes
//       32      payload
//
// Payload:
//   u32 order_count, order_count x u32 orders
//   u64 gram_count
//   gram_count x { u32 length, length x u32 scalars }       canonical index
//   gram_count x u32                                         reversed-gram index
//   gram_count x { u64 total, u32 run_count,
//                  run_count x { i64 bin, u32 count } }      count runs
inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::uint32_t kSnapshotHeaderSize = 32;

void save_snapshot(const GramStore& store, const std::filesystem::path& path);
void write_snapshot(const GramStore& store, std::ostream& out);

/// Throws SnapshotError with a distinct kind per failure. A store whose
/// partial flag is set is refused unless allow_partial.
GramStore load_snapshot(const std::filesystem::path& path, bool allow_partial = false);
GramStore read_snapshot(std::istream& in, bool allow_partial = false);

/// Plain-text audit dump: one "gram<TAB>bin<TAB>count" line per run, canonical order.
void export_text(const GramStore& store, std::ostream& out);

} // namespace pointillist
