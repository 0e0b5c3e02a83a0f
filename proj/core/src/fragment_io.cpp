#include "regen/fragment_io.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "regen/errors.hpp"

namespace regen::codec {

namespace {

template <typename T>
void put_le(std::ostream& os, T v) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
    unsigned char buf[sizeof(T)];
    is.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (!is) throw FormatError("truncated fragment");
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
}

void write_bytes(std::ostream& os, std::span<const std::uint8_t> s) {
    os.write(reinterpret_cast<const char*>(s.data()), static_cast<std::streamsize>(s.size()));
}

gf::Matrix read_matrix(std::istream& is, std::size_t rows, std::size_t cols) {
    gf::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        auto row = m.row(r);
        is.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
        if (!is) throw FormatError("truncated fragment body");
    }
    return m;
}

}  // namespace

void write_fragment(std::ostream& os, const Fragment& f) {
    os.write(kFragmentMagic, 4);
    put_le<std::uint8_t>(os, static_cast<std::uint8_t>(f.params.scheme));
    put_le<std::uint16_t>(os, static_cast<std::uint16_t>(f.params.k));
    put_le<std::uint16_t>(os, static_cast<std::uint16_t>(f.params.n));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.params.blockCount));
    put_le<std::uint16_t>(os, static_cast<std::uint16_t>(f.params.blocksPerFragment));
    put_le<std::uint32_t>(os, f.blockSize);
    put_le<std::uint64_t>(os, f.originalLength);
    put_le<std::uint32_t>(os, f.nodeId);
    write_bytes(os, f.coeffs.data());
    write_bytes(os, f.payload.data());
}

Fragment read_fragment(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kFragmentMagic, 4) != 0)
        throw FormatError("not an RGN1 fragment");

    auto schemeTag = get_le<std::uint8_t>(is);
    if (schemeTag > 2) throw FormatError("unknown scheme tag");
    auto k = get_le<std::uint16_t>(is);
    auto n = get_le<std::uint16_t>(is);
    auto blockCount = get_le<std::uint32_t>(is);
    auto bpf = get_le<std::uint16_t>(is);
    auto blockSize = get_le<std::uint32_t>(is);
    auto originalLength = get_le<std::uint64_t>(is);
    auto nodeId = get_le<std::uint32_t>(is);

    CodeParams params;
    try {
        params = CodeParams::make(static_cast<Scheme>(schemeTag), k, n);
    } catch (const InvalidInput& e) {
        throw FormatError(std::string("bad code parameters: ") + e.what());
    }
    if (params.blockCount != static_cast<int>(blockCount) ||
        params.blocksPerFragment != static_cast<int>(bpf))
        throw FormatError("header block geometry inconsistent with (scheme, k, n)");

    Fragment f;
    f.nodeId = nodeId;
    f.params = params;
    f.blockSize = blockSize;
    f.originalLength = originalLength;
    f.coeffs = read_matrix(is, bpf, blockCount);
    f.payload = read_matrix(is, bpf, blockSize);
    return f;
}

void write_fragment_file(const std::filesystem::path& path, const Fragment& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("cannot open " + path.string() + " for writing");
    write_fragment(os, f);
    if (!os) throw FormatError("short write to " + path.string());
}

Fragment read_fragment_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot open " + path.string());
    return read_fragment(is);
}

}  // namespace regen::codec
