#pragma once

#include "qvault/common.hpp"

namespace qvault::aont {

// Keyed all-or-nothing transform over a vector of m equal-size blocks
// (m a power of two, m >= 2). The forward direction runs log2(m) butterfly
// rounds; each round applies a keyed permutation over pairs of blocks at
// doubling distance, so every output block ends up depending on every input
// block. Withholding or corrupting any single output block makes inversion
// scramble all recovered input blocks, even when the key is known.

// A keyed permutation on a pair of lambda-bit blocks (2*lambda bits total).
// Implementations must be deterministic and exactly invertible; they may
// hold per-instance state (expanded keys, cipher contexts), so concurrent
// callers use one clone per thread.
class PairCipher {
public:
    virtual ~PairCipher() = default;

    // lambda / 8: width of one block in bytes.
    virtual size_t block_bytes() const = 0;

    // In-place permutation over left||right and its inverse.
    virtual void encrypt_pair(uint8_t* left, uint8_t* right) = 0;
    virtual void decrypt_pair(uint8_t* left, uint8_t* right) = 0;

    virtual std::unique_ptr<PairCipher> clone() const = 0;
};

// 2*lambda-bit symmetric key for the production cipher.
struct WideKey {
    Bytes bits;

    size_t lambda_bits() const { return bits.size() * 8 / 2; }
};

// Fixed-width block of exactly lambda bits (lambda a power of two >= 8).
struct Block {
    Bytes bits;
};

// Ordered sequence of m blocks, stored flat for cheap slicing.
class BlockVector {
public:
    BlockVector(size_t block_bytes, Bytes data);
    static BlockVector from_blocks(const std::vector<Block>& blocks);

    size_t block_count() const { return data_.size() / block_bytes_; }
    size_t block_bytes() const { return block_bytes_; }
    std::span<const uint8_t> block(size_t i) const;
    Block block_copy(size_t i) const;
    const Bytes& bytes() const { return data_; }
    Bytes& bytes() { return data_; }

private:
    size_t block_bytes_;
    Bytes data_;
};

// Production pair cipher for lambda = 128: a four-round balanced Feistel
// network whose round function is AES-128-ECB keyed by round keys derived
// from the 256-bit wide key. The network is a permutation on 256 bits; only
// the AES forward direction is ever needed.
std::unique_ptr<PairCipher> make_wide_cipher(const WideKey& key);

// Tiny permutation on a pair of 8-bit blocks (16-bit domain) under a 16-bit
// key. Exists so exhaustive-enumeration tests can sweep the whole domain.
std::unique_ptr<PairCipher> make_toy_cipher(uint16_t key);

// Single invocation of the keyed pair permutation (the E() of the butterfly)
// using the production cipher. Throws ParamError on size mismatch.
std::pair<Block, Block> cipher_pair(const WideKey& key, const Block& left, const Block& right);
std::pair<Block, Block> cipher_pair_inv(const WideKey& key, const Block& left, const Block& right);

// In-place butterfly over data (m blocks of cipher.block_bytes() each).
// Throws ParamError unless m is a power of two and m >= 2.
void forward(PairCipher& cipher, std::span<uint8_t> data);
void inverse(PairCipher& cipher, std::span<uint8_t> data);

// Typed wrappers around the in-place core, keyed with the production cipher.
BlockVector aont_forward(const WideKey& key, const BlockVector& input);
BlockVector aont_inverse(const WideKey& key, const BlockVector& output);

// Number of pair-cipher calls forward/inverse performs for m blocks:
// (m/2) * log2(m).
size_t cipher_calls_for(size_t m);

}  // namespace qvault::aont
