#pragma once

#include <filesystem>
#include <iosfwd>

#include "regen/codec.hpp"

namespace regen::codec {

// RGN1 fragment container, little-endian:
//   magic "RGN1" (4) | scheme (1) | k (u16) | n (u16) | blockCount (u32) |
//   blocksPerFragment (u16) | blockSize (u32) | originalLength (u64) |
//   nodeId (u32) | coeffs (blocksPerFragment*blockCount bytes) |
//   payload (blocksPerFragment*blockSize bytes)
inline constexpr char kFragmentMagic[4] = {'R', 'G', 'N', '1'};
inline constexpr std::size_t kFragmentHeaderSize = 31;

void write_fragment(std::ostream& os, const Fragment& f);
Fragment read_fragment(std::istream& is);  // throws FormatError

void write_fragment_file(const std::filesystem::path& path, const Fragment& f);
Fragment read_fragment_file(const std::filesystem::path& path);

}  // namespace regen::codec
