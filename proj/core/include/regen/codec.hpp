#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "regen/matrix.hpp"
#include "regen/rational.hpp"
#include "regen/rng.hpp"

namespace regen::codec {

enum class Scheme : std::uint8_t {
    MdsNaive = 0,  // (n,k) MDS, repair by full reconstruction
    Ommds = 1,     // MDS repaired from n-1 helpers at the min-cut optimum
    Rc = 2,        // regenerating code: k helpers, newcomer keeps all it downloads
};

const char* scheme_name(Scheme s);

// Code geometry. The file is split into blockCount equal blocks so that
// every transfer in the repair protocols is a whole number of blocks:
//   MDS/OMMDS: blockCount = k*(n-k), fragment = n-k blocks = M/k bytes,
//              OMMDS repair moves 1 block per helper.
//   RC:        blockCount = k^2-k+1, fragment = k blocks = alpha_c*M bytes,
//              repair moves 1 block per helper.
struct CodeParams {
    int k = 0;
    int n = 0;
    Scheme scheme = Scheme::MdsNaive;
    int blockCount = 0;         // B
    int blocksPerFragment = 0;  // rows stored per node
    std::uint16_t fieldModulus = gf::kModulus;

    static CodeParams make(Scheme scheme, int k, int n);  // throws InvalidInput

    // Fraction of the file moved by one repair, as an exact block count:
    // naive 1/1, OMMDS (n-1)/(k(n-k)), RC k/(k^2-k+1).
    Rational repair_transfer_fraction() const;
    int repair_blocks_downloaded() const;
    int helpers_required() const;  // k for naive/RC, n-1 for OMMDS
};

struct FileObject {
    std::vector<std::uint8_t> bytes;
    std::uint64_t originalLength = 0;
};

// One storage node's share: coefficient rows over the original blocks
// plus the coded payload rows they produce.
struct Fragment {
    std::uint32_t nodeId = 0;
    CodeParams params;
    std::uint32_t blockSize = 0;
    std::uint64_t originalLength = 0;
    gf::Matrix coeffs;   // blocksPerFragment x blockCount
    gf::Matrix payload;  // blocksPerFragment x blockSize
};

// What a helper ships during repair: fresh random combinations of its own
// stored rows, with coefficients composed down to the original blocks.
struct RepairResponse {
    std::uint32_t helperId = 0;
    std::uint32_t blockSize = 0;
    std::uint64_t originalLength = 0;
    gf::Matrix coeffs;   // rows x blockCount
    gf::Matrix payload;  // rows x blockSize
};

// Split, pad and randomly code `file` into n fragments. Deterministic
// given the seed. Throws InvalidInput on an empty file or bad params.
std::vector<Fragment> encode(std::span<const std::uint8_t> file, const CodeParams& params,
                             std::uint64_t seed);

// rowsRequested fresh random combinations of the fragment's stored rows.
RepairResponse helper_respond(const Fragment& fragment, int rowsRequested, std::uint64_t seed);

// RC repair: exactly k single-row responses; the newcomer stores every
// row it received, verbatim.
Fragment regenerate_rc(std::span<const RepairResponse> responses, const CodeParams& params,
                       std::uint32_t newNodeId, std::uint64_t seed);

// OMMDS repair: exactly n-1 single-row responses; the newcomer keeps
// n-k fresh random combinations of what it heard.
Fragment regenerate_ommds(std::span<const RepairResponse> responses, const CodeParams& params,
                          std::uint32_t newNodeId, std::uint64_t seed);

// Naive repair: reconstruct the file from k whole fragments, then encode
// one fresh fragment. Download accounts as the full M bytes.
Fragment regenerate_naive(std::span<const Fragment> fragments, const CodeParams& params,
                          std::uint32_t newNodeId, std::uint64_t seed);

// Mix arbitrary responses into a fragment-shaped node (outRows fresh
// combinations). regenerate_ommds is this with outRows = n-k; exposed so
// off-protocol repair experiments can be driven directly.
Fragment combine_responses(std::span<const RepairResponse> responses, const CodeParams& params,
                           int outRows, std::uint32_t newNodeId, std::uint64_t seed);

// Decode the original bytes from any k fragments whose stacked coefficient
// matrix has full column rank; throws SingularSystem when it does not.
FileObject reconstruct(std::span<const Fragment> fragments, const CodeParams& params);

// Block size used for a file of `fileLen` bytes: ceil(M / B).
std::uint32_t block_size_for(std::uint64_t fileLen, const CodeParams& params);

}  // namespace regen::codec
