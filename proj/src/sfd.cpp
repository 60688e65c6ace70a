#include "qvault/sfd.hpp"

#include <algorithm>
#include <cstring>
#include <set>

#include "gf256.hpp"

namespace qvault::sfd {

void DispersalParams::validate() const {
    if (t < 1 || t > n) throw ParamError("dispersal: need 1 <= t <= n");
    if (n > 255) throw ParamError("dispersal: n must fit GF(2^8), n <= 255");
    if (lambda_bits < 8 || !is_power_of_two(lambda_bits))
        throw ParamError("dispersal: lambda must be a power of two >= 8 bits");
    if (symbol_bytes == 0) throw ParamError("dispersal: symbol size must be positive");
}

Bytes serialize_chunk(const Chunk& chunk) {
    Bytes out;
    out.reserve(6 + chunk.payload.size());
    out.push_back(static_cast<uint8_t>(chunk.index >> 8));
    out.push_back(static_cast<uint8_t>(chunk.index & 0xff));
    const uint32_t len = static_cast<uint32_t>(chunk.payload.size());
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<uint8_t>(len >> s));
    out.insert(out.end(), chunk.payload.begin(), chunk.payload.end());
    return out;
}

Chunk deserialize_chunk(std::span<const uint8_t> wire) {
    if (wire.size() < 6) throw FormatError("chunk: truncated header");
    Chunk c;
    c.index = static_cast<uint16_t>(wire[0] << 8 | wire[1]);
    uint32_t len = 0;
    for (int i = 2; i < 6; ++i) len = len << 8 | wire[i];
    if (wire.size() != 6 + static_cast<size_t>(len))
        throw FormatError("chunk: payload length mismatch");
    c.payload.assign(wire.begin() + 6, wire.end());
    return c;
}

PieceGeometry piece_geometry(const DispersalParams& params, size_t piece_bytes) {
    params.validate();
    PieceGeometry g;
    g.block_bytes = params.block_bytes();
    if (piece_bytes == 0 || piece_bytes % g.block_bytes != 0)
        throw ParamError("piece length is not a whole number of lambda-bit blocks");
    g.blocks = piece_bytes / g.block_bytes;
    if (g.blocks < 2) throw ParamError("piece must span at least 2 blocks");
    if (!is_power_of_two(g.blocks))
        throw ParamError("piece block count must be a power of two");
    if (g.blocks < params.t)
        throw ParamError("piece has fewer blocks than the reconstruction threshold");
    g.padded_blocks = (g.blocks + params.t - 1) / params.t * params.t;
    g.chunk_bytes = g.padded_blocks / params.t * g.block_bytes;
    return g;
}

// ---------------------------------------------------------------------------
// Systematic Reed-Solomon.
//
// Start from the n x t Vandermonde matrix V[i][j] = i^j over GF(2^8) (rows
// indexed by distinct evaluation points 0..n-1), then right-multiply by the
// inverse of its top t x t square. The result has an identity prefix, and
// every t-row square stays invertible because it factors as a Vandermonde
// square times a fixed invertible matrix.
// ---------------------------------------------------------------------------

Coder::Coder(uint16_t t, uint16_t n) : t_(t), n_(n) {
    if (t < 1 || t > n || n > 255) throw ParamError("coder: need 1 <= t <= n <= 255");
    std::vector<uint8_t> vand(static_cast<size_t>(n) * t);
    for (uint16_t i = 0; i < n; ++i)
        for (uint16_t j = 0; j < t; ++j)
            vand[static_cast<size_t>(i) * t + j] = gf256::pow(static_cast<uint8_t>(i), j);

    std::vector<uint8_t> top(vand.begin(), vand.begin() + static_cast<size_t>(t) * t);
    if (!gf256::invert_matrix(top, t)) throw Error("coder: Vandermonde top square singular");

    matrix_.assign(n, std::vector<uint8_t>(t, 0));
    for (uint16_t i = 0; i < n; ++i)
        for (uint16_t j = 0; j < t; ++j) {
            uint8_t acc = 0;
            for (uint16_t k = 0; k < t; ++k)
                acc ^= gf256::mul(vand[static_cast<size_t>(i) * t + k], top[static_cast<size_t>(k) * t + j]);
            matrix_[i][j] = acc;
        }
}

void Coder::encode_into(std::span<const uint8_t> data,
                        std::span<uint8_t* const> chunk_out) const {
    if (data.size() % t_ != 0) throw ParamError("coder: data not divisible into t chunks");
    if (chunk_out.size() != n_) throw ParamError("coder: expected n output buffers");
    const size_t len = data.size() / t_;
    for (uint16_t i = 0; i < t_; ++i)
        std::memcpy(chunk_out[i], data.data() + static_cast<size_t>(i) * len, len);
    for (uint16_t i = t_; i < n_; ++i) {
        std::memset(chunk_out[i], 0, len);
        for (uint16_t j = 0; j < t_; ++j)
            gf256::mul_acc(chunk_out[i], data.data() + static_cast<size_t>(j) * len,
                           matrix_[i][j], len);
    }
}

void Coder::decode_into(std::span<const uint8_t* const> payloads,
                        std::span<const uint16_t> indices, size_t chunk_len,
                        std::span<uint8_t> out) const {
    if (indices.size() != t_ || payloads.size() != t_)
        throw ParamError("coder: decode needs exactly t chunks");
    if (out.size() != chunk_len * t_) throw ParamError("coder: bad output size");

    // Slices present verbatim (index <= t) are copied; the rest are solved
    // through the inverse of the selected rows.
    std::vector<bool> have(t_, false);
    bool all_data = true;
    for (size_t p = 0; p < indices.size(); ++p) {
        const uint16_t idx = indices[p];
        if (idx < 1 || idx > n_) throw FormatError("coder: chunk index out of range");
        if (idx <= t_) {
            std::memcpy(out.data() + static_cast<size_t>(idx - 1) * chunk_len, payloads[p], chunk_len);
            have[idx - 1] = true;
        } else {
            all_data = false;
        }
    }
    if (all_data) return;

    std::vector<uint8_t> sub(static_cast<size_t>(t_) * t_);
    for (size_t p = 0; p < t_; ++p)
        for (uint16_t j = 0; j < t_; ++j) sub[p * t_ + j] = matrix_[indices[p] - 1][j];
    if (!gf256::invert_matrix(sub, t_))
        throw Error("coder: selected rows singular");  // cannot happen for distinct indices

    for (uint16_t j = 0; j < t_; ++j) {
        if (have[j]) continue;
        uint8_t* slice = out.data() + static_cast<size_t>(j) * chunk_len;
        std::memset(slice, 0, chunk_len);
        for (size_t p = 0; p < t_; ++p)
            gf256::mul_acc(slice, payloads[p], sub[static_cast<size_t>(j) * t_ + p], chunk_len);
    }
}

std::vector<Chunk> ids_encode(const DispersalParams& params, std::span<const uint8_t> data) {
    params.validate();
    const size_t group = static_cast<size_t>(params.t) * params.block_bytes();
    if (data.empty() || data.size() % group != 0)
        throw ParamError("ids_encode: data length not divisible by t*lambda bits");
    const Coder coder(params.t, params.n);
    const size_t len = data.size() / params.t;
    std::vector<Chunk> chunks(params.n);
    std::vector<uint8_t*> ptrs(params.n);
    for (uint16_t i = 0; i < params.n; ++i) {
        chunks[i].index = static_cast<uint16_t>(i + 1);
        chunks[i].payload.resize(len);
        ptrs[i] = chunks[i].payload.data();
    }
    coder.encode_into(data, ptrs);
    return chunks;
}

// Validates a chunk set and selects the t chunks used for reconstruction.
static void select_chunks(const DispersalParams& params, std::span<const Chunk> chunks,
                          std::vector<const uint8_t*>& payloads, std::vector<uint16_t>& indices,
                          size_t& chunk_len) {
    if (chunks.size() < params.t)
        throw InsufficientChunksError("need at least t = " + std::to_string(params.t) +
                                      " chunks, got " + std::to_string(chunks.size()));
    chunk_len = chunks[0].payload.size();
    std::set<uint16_t> seen;
    for (const Chunk& c : chunks) {
        if (c.payload.size() != chunk_len)
            throw FormatError("ids_decode: inconsistent chunk sizes");
        if (c.index < 1 || c.index > params.n)
            throw FormatError("ids_decode: chunk index out of range");
        if (!seen.insert(c.index).second)
            throw FormatError("ids_decode: duplicate chunk index " + std::to_string(c.index));
    }
    if (chunk_len == 0) throw FormatError("ids_decode: empty chunk payloads");

    // Prefer data chunks; they reconstruct by copy.
    std::vector<const Chunk*> ordered;
    ordered.reserve(chunks.size());
    for (const Chunk& c : chunks) ordered.push_back(&c);
    std::sort(ordered.begin(), ordered.end(),
              [](const Chunk* a, const Chunk* b) { return a->index < b->index; });
    payloads.clear();
    indices.clear();
    for (size_t i = 0; i < params.t; ++i) {
        payloads.push_back(ordered[i]->payload.data());
        indices.push_back(ordered[i]->index);
    }
}

Bytes ids_decode(const DispersalParams& params, std::span<const Chunk> chunks) {
    params.validate();
    std::vector<const uint8_t*> payloads;
    std::vector<uint16_t> indices;
    size_t chunk_len = 0;
    select_chunks(params, chunks, payloads, indices, chunk_len);
    Bytes out(chunk_len * params.t);
    const Coder coder(params.t, params.n);
    coder.decode_into(payloads, indices, chunk_len, out);
    return out;
}

std::vector<Chunk> sfd_encode(const DispersalParams& params, std::span<const uint8_t> piece,
                              aont::PairCipher& cipher) {
    if (cipher.block_bytes() * 8 != params.lambda_bits)
        throw ParamError("sfd_encode: cipher width does not match lambda");
    const PieceGeometry g = piece_geometry(params, piece.size());

    Bytes padded(g.padded_blocks * g.block_bytes, 0);
    std::memcpy(padded.data(), piece.data(), piece.size());
    aont::forward(cipher, std::span<uint8_t>(padded.data(), piece.size()));

    const Coder coder(params.t, params.n);
    std::vector<Chunk> chunks(params.n);
    std::vector<uint8_t*> ptrs(params.n);
    for (uint16_t i = 0; i < params.n; ++i) {
        chunks[i].index = static_cast<uint16_t>(i + 1);
        chunks[i].payload.resize(g.chunk_bytes);
        ptrs[i] = chunks[i].payload.data();
    }
    coder.encode_into(padded, ptrs);
    return chunks;
}

Bytes sfd_decode(aont::PairCipher& cipher, std::span<const Chunk> chunks,
                 const DispersalParams& params) {
    if (cipher.block_bytes() * 8 != params.lambda_bits)
        throw ParamError("sfd_decode: cipher width does not match lambda");
    params.validate();
    std::vector<const uint8_t*> payloads;
    std::vector<uint16_t> indices;
    size_t chunk_len = 0;
    select_chunks(params, chunks, payloads, indices, chunk_len);
    if (chunk_len % params.block_bytes() != 0)
        throw FormatError("sfd_decode: chunk size not block-aligned");

    Bytes padded(chunk_len * params.t);
    const Coder coder(params.t, params.n);
    coder.decode_into(payloads, indices, chunk_len, padded);

    // The unpadded block count is the unique power of two within the padded
    // range: padding never adds a full threshold-worth of blocks.
    const size_t padded_m = padded.size() / params.block_bytes();
    size_t m = 1;
    while (m * 2 <= padded_m) m *= 2;
    if ((padded_m - m) >= params.t || (padded_m % params.t) != 0)
        throw FormatError("sfd_decode: implausible chunk geometry");
    padded.resize(m * params.block_bytes());
    aont::inverse(cipher, padded);
    return padded;
}

std::vector<Chunk> sfd_encode(const DispersalParams& params, std::span<const uint8_t> piece,
                              const aont::WideKey& key) {
    auto cipher = aont::make_wide_cipher(key);
    return sfd_encode(params, piece, *cipher);
}

Bytes sfd_decode(const aont::WideKey& key, std::span<const Chunk> chunks,
                 const DispersalParams& params) {
    auto cipher = aont::make_wide_cipher(key);
    return sfd_decode(*cipher, chunks, params);
}

}  // namespace qvault::sfd
