#include "regen/codec.hpp"

#include <algorithm>

#include "regen/errors.hpp"

namespace regen::codec {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::MdsNaive: return "naive";
        case Scheme::Ommds: return "ommds";
        case Scheme::Rc: return "rc";
    }
    return "?";
}

CodeParams CodeParams::make(Scheme scheme, int k, int n) {
    if (k < 1 || n <= k) throw InvalidInput("need k >= 1 and n > k");
    CodeParams p;
    p.k = k;
    p.n = n;
    p.scheme = scheme;
    if (scheme == Scheme::Rc) {
        p.blockCount = k * k - k + 1;
        p.blocksPerFragment = k;
    } else {
        p.blockCount = k * (n - k);
        p.blocksPerFragment = n - k;
    }
    return p;
}

Rational CodeParams::repair_transfer_fraction() const {
    return Rational(repair_blocks_downloaded(), blockCount);
}

int CodeParams::repair_blocks_downloaded() const {
    switch (scheme) {
        case Scheme::MdsNaive: return k * blocksPerFragment;  // = blockCount = whole file
        case Scheme::Ommds: return n - 1;
        case Scheme::Rc: return k;
    }
    return 0;
}

int CodeParams::helpers_required() const {
    return scheme == Scheme::Ommds ? n - 1 : k;
}

std::uint32_t block_size_for(std::uint64_t fileLen, const CodeParams& params) {
    if (fileLen == 0) throw InvalidInput("cannot encode an empty file");
    auto b = static_cast<std::uint64_t>(params.blockCount);
    return static_cast<std::uint32_t>((fileLen + b - 1) / b);
}

namespace {

gf::Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    gf::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        bool nonzero;
        do {
            nonzero = false;
            for (auto& b : m.row(r)) {
                b = rng.byte();
                nonzero |= b != 0;
            }
        } while (!nonzero);  // an all-zero combination carries nothing; redraw
    }
    return m;
}

// File bytes as a blockCount x blockSize matrix, zero-padded at the tail.
gf::Matrix blockify(std::span<const std::uint8_t> file, const CodeParams& params,
                    std::uint32_t blockSize) {
    gf::Matrix blocks(params.blockCount, blockSize);
    std::size_t pos = 0;
    for (int r = 0; r < params.blockCount && pos < file.size(); ++r) {
        std::size_t len = std::min<std::size_t>(blockSize, file.size() - pos);
        std::copy_n(file.begin() + pos, len, blocks.row(r).begin());
        pos += len;
    }
    return blocks;
}

void check_param_match(const CodeParams& a, const CodeParams& b) {
    if (a.k != b.k || a.n != b.n || a.scheme != b.scheme || a.blockCount != b.blockCount ||
        a.blocksPerFragment != b.blocksPerFragment)
        throw InvalidInput("fragments coded under different parameters");
}

}  // namespace

std::vector<Fragment> encode(std::span<const std::uint8_t> file, const CodeParams& params,
                             std::uint64_t seed) {
    if (params.k < 1 || params.n <= params.k) throw InvalidInput("invalid code parameters");
    std::uint32_t blockSize = block_size_for(file.size(), params);
    gf::Matrix blocks = blockify(file, params, blockSize);

    Rng rng(seed);
    std::vector<Fragment> out;
    out.reserve(params.n);
    for (int node = 0; node < params.n; ++node) {
        Rng nodeRng = rng.split(static_cast<std::uint64_t>(node));
        Fragment f;
        f.nodeId = static_cast<std::uint32_t>(node);
        f.params = params;
        f.blockSize = blockSize;
        f.originalLength = file.size();
        f.coeffs = random_matrix(params.blocksPerFragment, params.blockCount, nodeRng);
        f.payload = f.coeffs * blocks;
        out.push_back(std::move(f));
    }
    return out;
}

RepairResponse helper_respond(const Fragment& fragment, int rowsRequested, std::uint64_t seed) {
    if (rowsRequested < 1 || rowsRequested > fragment.params.blocksPerFragment)
        throw ProtocolViolation("helper asked for more rows than it stores");
    Rng rng(seed);
    gf::Matrix mix = random_matrix(rowsRequested, fragment.params.blocksPerFragment, rng);
    RepairResponse r;
    r.helperId = fragment.nodeId;
    r.blockSize = fragment.blockSize;
    r.originalLength = fragment.originalLength;
    r.coeffs = mix * fragment.coeffs;  // composed down to the original blocks
    r.payload = mix * fragment.payload;
    return r;
}

namespace {

// Stack response rows into (coeffs, payload) matrices.
std::pair<gf::Matrix, gf::Matrix> stack_responses(std::span<const RepairResponse> responses) {
    gf::Matrix coeffs, payload;
    for (const auto& r : responses) {
        coeffs = coeffs.vstack(r.coeffs);
        payload = payload.vstack(r.payload);
    }
    return {std::move(coeffs), std::move(payload)};
}

}  // namespace

Fragment regenerate_rc(std::span<const RepairResponse> responses, const CodeParams& params,
                       std::uint32_t newNodeId, std::uint64_t /*seed*/) {
    if (params.scheme != Scheme::Rc) throw ProtocolViolation("RC repair on a non-RC code");
    if (static_cast<int>(responses.size()) != params.k)
        throw ProtocolViolation("RC repair needs exactly k responses");
    for (const auto& r : responses)
        if (r.coeffs.rows() != 1) throw ProtocolViolation("RC repair expects single-row responses");

    auto [coeffs, payload] = stack_responses(responses);
    Fragment f;
    f.nodeId = newNodeId;
    f.params = params;
    f.blockSize = responses.front().blockSize;
    f.originalLength = responses.front().originalLength;
    f.coeffs = std::move(coeffs);  // stored verbatim: the newcomer keeps all it downloaded
    f.payload = std::move(payload);
    return f;
}

Fragment combine_responses(std::span<const RepairResponse> responses, const CodeParams& params,
                           int outRows, std::uint32_t newNodeId, std::uint64_t seed) {
    if (responses.empty()) throw ProtocolViolation("no responses to combine");
    auto [coeffs, payload] = stack_responses(responses);
    Rng rng(seed);
    gf::Matrix mix = random_matrix(outRows, coeffs.rows(), rng);
    Fragment f;
    f.nodeId = newNodeId;
    f.params = params;
    f.blockSize = responses.front().blockSize;
    f.originalLength = responses.front().originalLength;
    f.coeffs = mix * coeffs;
    f.payload = mix * payload;
    return f;
}

Fragment regenerate_ommds(std::span<const RepairResponse> responses, const CodeParams& params,
                          std::uint32_t newNodeId, std::uint64_t seed) {
    if (params.scheme != Scheme::Ommds) throw ProtocolViolation("OMMDS repair on a non-OMMDS code");
    if (static_cast<int>(responses.size()) != params.n - 1)
        throw ProtocolViolation("OMMDS repair needs exactly n-1 responses");
    for (const auto& r : responses)
        if (r.coeffs.rows() != 1)
            throw ProtocolViolation("OMMDS repair expects single-row responses");
    return combine_responses(responses, params, params.blocksPerFragment, newNodeId, seed);
}

Fragment regenerate_naive(std::span<const Fragment> fragments, const CodeParams& params,
                          std::uint32_t newNodeId, std::uint64_t seed) {
    FileObject file = reconstruct(fragments, params);
    auto fresh = encode(file.bytes, params, seed);
    Fragment f = std::move(fresh.front());
    f.nodeId = newNodeId;
    return f;
}

FileObject reconstruct(std::span<const Fragment> fragments, const CodeParams& params) {
    if (static_cast<int>(fragments.size()) < params.k)
        throw InvalidInput("need at least k fragments to reconstruct");
    gf::Matrix coeffs, payload;
    for (int i = 0; i < params.k; ++i) {
        check_param_match(fragments[i].params, params);
        if (fragments[i].blockSize != fragments.front().blockSize ||
            fragments[i].originalLength != fragments.front().originalLength)
            throw InvalidInput("fragments disagree on file geometry");
        coeffs = coeffs.vstack(fragments[i].coeffs);
        payload = payload.vstack(fragments[i].payload);
    }
    gf::Matrix blocks = coeffs.solve(payload);  // SingularSystem on rank deficiency

    FileObject out;
    out.originalLength = fragments.front().originalLength;
    out.bytes.reserve(out.originalLength);
    for (std::size_t r = 0; r < blocks.rows() && out.bytes.size() < out.originalLength; ++r) {
        auto row = blocks.row(r);
        std::size_t take =
            std::min<std::size_t>(row.size(), out.originalLength - out.bytes.size());
        out.bytes.insert(out.bytes.end(), row.begin(), row.begin() + take);
    }
    return out;
}

}  // namespace regen::codec
