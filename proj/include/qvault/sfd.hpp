#pragma once

#include "qvault/aont.hpp"
#include "qvault/common.hpp"

namespace qvault::sfd {

// Secure file dispersal: the keyed all-or-nothing transform followed by a
// systematic (t, n) erasure code. Any t chunks reconstruct the piece; with
// fewer than t chunks no lambda-bit block of the piece is recoverable even
// by a holder of the key.

struct DispersalParams {
    uint16_t t = 4;            // reconstruction threshold
    uint16_t n = 10;           // total chunks
    uint32_t lambda_bits = 128;
    uint32_t symbol_bytes = 16;  // erasure-code symbol width

    size_t block_bytes() const { return lambda_bits / 8; }
    void validate() const;  // throws ParamError
};

// One erasure-coded fragment. Indices are 1-based on the wire; chunks
// 1..t carry the dispersal input verbatim, t+1..n carry parity.
struct Chunk {
    uint16_t index = 0;
    Bytes payload;
};

// Wire layout: 2-byte big-endian index, 4-byte big-endian payload length,
// payload bytes.
Bytes serialize_chunk(const Chunk& chunk);
Chunk deserialize_chunk(std::span<const uint8_t> wire);  // throws FormatError

// Geometry of one piece under given parameters. Validation enforces that
// the piece is a power-of-two count of whole lambda-bit blocks with at
// least as many blocks as the threshold. When t does not divide the block
// count, the dispersal input is zero-padded with whole blocks up to
// padded_blocks so all chunks stay block-aligned and uniform.
struct PieceGeometry {
    size_t block_bytes = 0;
    size_t blocks = 0;         // m
    size_t padded_blocks = 0;  // t * ceil(m / t)
    size_t chunk_bytes = 0;    // padded_blocks / t * block_bytes
};
PieceGeometry piece_geometry(const DispersalParams& params, size_t piece_bytes);

// Systematic Reed-Solomon coder over GF(2^8) with a Vandermonde-derived
// generator matrix whose top t rows are the identity. Reusable across
// pieces; encode/decode are const and thread-safe.
class Coder {
public:
    Coder(uint16_t t, uint16_t n);  // throws ParamError

    uint16_t t() const { return t_; }
    uint16_t n() const { return n_; }

    // data.size() must be divisible by t; chunk_out holds n pointers to
    // buffers of data.size()/t bytes each.
    void encode_into(std::span<const uint8_t> data,
                     std::span<uint8_t* const> chunk_out) const;

    // payloads/indices describe exactly t distinct chunks (1-based
    // indices); out receives t * chunk_len bytes of reconstructed data.
    void decode_into(std::span<const uint8_t* const> payloads,
                     std::span<const uint16_t> indices, size_t chunk_len,
                     std::span<uint8_t> out) const;

private:
    uint16_t t_, n_;
    std::vector<std::vector<uint8_t>> matrix_;  // n rows of t coefficients
};

// Information dispersal over raw bytes. data length must be divisible by
// t * lambda bits. Returns n chunks of data.size()/t bytes.
std::vector<Chunk> ids_encode(const DispersalParams& params, std::span<const uint8_t> data);

// Reconstructs from any >= t distinct chunks. Throws
// InsufficientChunksError below the threshold, FormatError on duplicate
// indices, out-of-range indices, or uneven payload sizes.
Bytes ids_decode(const DispersalParams& params, std::span<const Chunk> chunks);

// Full pipeline with the production cipher (lambda = 128): AONT under key,
// zero-pad to whole chunks if needed, disperse.
std::vector<Chunk> sfd_encode(const DispersalParams& params, std::span<const uint8_t> piece,
                              const aont::WideKey& key);
Bytes sfd_decode(const aont::WideKey& key, std::span<const Chunk> chunks,
                 const DispersalParams& params);

// Cipher-injected variants used by the unit codec (lambda is implied by
// cipher.block_bytes()).
std::vector<Chunk> sfd_encode(const DispersalParams& params, std::span<const uint8_t> piece,
                              aont::PairCipher& cipher);
Bytes sfd_decode(aont::PairCipher& cipher, std::span<const Chunk> chunks,
                 const DispersalParams& params);

}  // namespace qvault::sfd
