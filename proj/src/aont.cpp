#include "qvault/aont.hpp"

#include <openssl/evp.h>

#include <cstring>

namespace qvault::aont {

BlockVector::BlockVector(size_t block_bytes, Bytes data)
    : block_bytes_(block_bytes), data_(std::move(data)) {
    if (block_bytes_ == 0 || data_.size() % block_bytes_ != 0)
        throw ParamError("BlockVector: data not a whole number of blocks");
}

BlockVector BlockVector::from_blocks(const std::vector<Block>& blocks) {
    if (blocks.empty()) throw ParamError("BlockVector: no blocks");
    const size_t bb = blocks[0].bits.size();
    Bytes flat;
    flat.reserve(bb * blocks.size());
    for (const auto& b : blocks) {
        if (b.bits.size() != bb) throw ParamError("BlockVector: uneven block sizes");
        flat.insert(flat.end(), b.bits.begin(), b.bits.end());
    }
    return BlockVector(bb, std::move(flat));
}

std::span<const uint8_t> BlockVector::block(size_t i) const {
    return {data_.data() + i * block_bytes_, block_bytes_};
}

Block BlockVector::block_copy(size_t i) const {
    auto s = block(i);
    return Block{Bytes(s.begin(), s.end())};
}

// ---------------------------------------------------------------------------
// Production cipher: 4-round balanced Feistel over AES-128.
//
// State is (L, R), two 16-byte halves. Round i maps (L, R) to
// (R, L xor AES_{Ki}(R)); four rounds of that are a keyed permutation on
// 256 bits (a Luby-Rackoff network), inverted by running the rounds
// backwards. Round keys are derived from the 256-bit wide key by hashing
// it with a per-round label, so the schedule costs four SHA-256 calls per
// key and nothing per block.
// ---------------------------------------------------------------------------

namespace {

constexpr size_t kWideBlockBytes = 16;  // lambda = 128
constexpr size_t kFeistelRounds = 4;

struct EvpCtxDeleter {
    void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};
using EvpCtx = std::unique_ptr<EVP_CIPHER_CTX, EvpCtxDeleter>;

class AesFeistelCipher final : public PairCipher {
public:
    explicit AesFeistelCipher(const WideKey& key) {
        if (key.bits.size() != 32)
            throw ParamError("wide cipher key must be 2*lambda = 256 bits");
        key_ = key.bits;
        for (size_t r = 0; r < kFeistelRounds; ++r) {
            Bytes material;
            material.reserve(32 + key_.size());
            const std::string label = "qvault.aont.feistel.v1";
            material.insert(material.end(), label.begin(), label.end());
            material.push_back(static_cast<uint8_t>(r));
            material.insert(material.end(), key_.begin(), key_.end());
            const Bytes rk = sha256(material);
            ctx_[r] = make_ctx(rk.data());
        }
    }

    size_t block_bytes() const override { return kWideBlockBytes; }

    void encrypt_pair(uint8_t* left, uint8_t* right) override {
        uint8_t tmp[kWideBlockBytes];
        for (size_t r = 0; r < kFeistelRounds; ++r) {
            aes_block(r, right, tmp);
            for (size_t i = 0; i < kWideBlockBytes; ++i) tmp[i] ^= left[i];
            std::memcpy(left, right, kWideBlockBytes);
            std::memcpy(right, tmp, kWideBlockBytes);
        }
    }

    void decrypt_pair(uint8_t* left, uint8_t* right) override {
        uint8_t tmp[kWideBlockBytes];
        for (size_t r = kFeistelRounds; r-- > 0;) {
            aes_block(r, left, tmp);
            for (size_t i = 0; i < kWideBlockBytes; ++i) tmp[i] ^= right[i];
            std::memcpy(right, left, kWideBlockBytes);
            std::memcpy(left, tmp, kWideBlockBytes);
        }
    }

    std::unique_ptr<PairCipher> clone() const override {
        return std::make_unique<AesFeistelCipher>(WideKey{key_});
    }

private:
    static EvpCtx make_ctx(const uint8_t* round_key) {
        EvpCtx ctx(EVP_CIPHER_CTX_new());
        if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ecb(), nullptr, round_key, nullptr) != 1)
            throw Error("AES context init failed");
        EVP_CIPHER_CTX_set_padding(ctx.get(), 0);
        return ctx;
    }

    void aes_block(size_t round, const uint8_t* in, uint8_t* out) {
        int outl = 0;
        if (EVP_EncryptUpdate(ctx_[round].get(), out, &outl, in, kWideBlockBytes) != 1 ||
            outl != static_cast<int>(kWideBlockBytes))
            throw Error("AES block encryption failed");
    }

    Bytes key_;
    EvpCtx ctx_[kFeistelRounds];
};

// Toy cipher: invertible mix on a 16-bit word. Good enough to exercise the
// butterfly wiring exhaustively; not a security primitive.
class ToyCipher final : public PairCipher {
public:
    explicit ToyCipher(uint16_t key) : key_(key) {}

    size_t block_bytes() const override { return 1; }

    void encrypt_pair(uint8_t* left, uint8_t* right) override {
        uint16_t v = static_cast<uint16_t>(*left << 8 | *right);
        for (int r = 0; r < 3; ++r) {
            v = static_cast<uint16_t>(v ^ (key_ + r * 0x9e37));
            v = static_cast<uint16_t>(v * 0x6487);  // odd, hence invertible mod 2^16
            v = static_cast<uint16_t>(v << 5 | v >> 11);
        }
        *left = static_cast<uint8_t>(v >> 8);
        *right = static_cast<uint8_t>(v & 0xff);
    }

    void decrypt_pair(uint8_t* left, uint8_t* right) override {
        uint16_t v = static_cast<uint16_t>(*left << 8 | *right);
        for (int r = 2; r >= 0; --r) {
            v = static_cast<uint16_t>(v >> 5 | v << 11);
            v = static_cast<uint16_t>(v * 0x2137);  // 0x6487^-1 mod 2^16
            v = static_cast<uint16_t>(v ^ (key_ + r * 0x9e37));
        }
        *left = static_cast<uint8_t>(v >> 8);
        *right = static_cast<uint8_t>(v & 0xff);
    }

    std::unique_ptr<PairCipher> clone() const override {
        return std::make_unique<ToyCipher>(key_);
    }

private:
    uint16_t key_;
};

}  // namespace

std::unique_ptr<PairCipher> make_wide_cipher(const WideKey& key) {
    return std::make_unique<AesFeistelCipher>(key);
}

std::unique_ptr<PairCipher> make_toy_cipher(uint16_t key) {
    return std::make_unique<ToyCipher>(key);
}

std::pair<Block, Block> cipher_pair(const WideKey& key, const Block& left, const Block& right) {
    auto cipher = make_wide_cipher(key);
    if (left.bits.size() != cipher->block_bytes() || right.bits.size() != cipher->block_bytes())
        throw ParamError("cipher_pair: block size mismatch");
    Block l = left, r = right;
    cipher->encrypt_pair(l.bits.data(), r.bits.data());
    return {std::move(l), std::move(r)};
}

std::pair<Block, Block> cipher_pair_inv(const WideKey& key, const Block& left, const Block& right) {
    auto cipher = make_wide_cipher(key);
    if (left.bits.size() != cipher->block_bytes() || right.bits.size() != cipher->block_bytes())
        throw ParamError("cipher_pair_inv: block size mismatch");
    Block l = left, r = right;
    cipher->decrypt_pair(l.bits.data(), r.bits.data());
    return {std::move(l), std::move(r)};
}

// ---------------------------------------------------------------------------
// Butterfly rounds.
//
// Round r (1-based) permutes pairs at distance 2^(r-1): the block at
// position p is paired with the one at p + 2^(r-1), for every p whose
// (r-1)-th bit is clear. Equivalently, groups of 2^r blocks are split into
// their lower and upper halves and the halves are enciphered element-wise.
// This is the 0-based rendering of the 1-based schedule
//   pair(j + i*2^r, j + i*2^r + 2^(r-1)),  i in [0, m/2^r), j in [1, 2^(r-1)].
// ---------------------------------------------------------------------------

static size_t checked_block_count(const PairCipher& cipher, std::span<uint8_t> data) {
    const size_t bb = cipher.block_bytes();
    if (bb == 0 || data.size() % bb != 0)
        throw ParamError("aont: data is not a whole number of blocks");
    const size_t m = data.size() / bb;
    if (m < 2) throw ParamError("aont: need at least 2 blocks");
    if (!is_power_of_two(m)) throw ParamError("aont: block count must be a power of two");
    return m;
}

void forward(PairCipher& cipher, std::span<uint8_t> data) {
    const size_t m = checked_block_count(cipher, data);
    const size_t bb = cipher.block_bytes();
    const unsigned rounds = log2_exact(m);
    for (unsigned r = 1; r <= rounds; ++r) {
        const size_t group = size_t{1} << r;
        const size_t half = group >> 1;
        for (size_t base = 0; base < m; base += group) {
            for (size_t j = 0; j < half; ++j) {
                uint8_t* a = data.data() + (base + j) * bb;
                uint8_t* b = data.data() + (base + j + half) * bb;
                cipher.encrypt_pair(a, b);
            }
        }
    }
}

void inverse(PairCipher& cipher, std::span<uint8_t> data) {
    const size_t m = checked_block_count(cipher, data);
    const size_t bb = cipher.block_bytes();
    const unsigned rounds = log2_exact(m);
    for (unsigned r = rounds; r >= 1; --r) {
        const size_t group = size_t{1} << r;
        const size_t half = group >> 1;
        for (size_t base = 0; base < m; base += group) {
            for (size_t j = 0; j < half; ++j) {
                uint8_t* a = data.data() + (base + j) * bb;
                uint8_t* b = data.data() + (base + j + half) * bb;
                cipher.decrypt_pair(a, b);
            }
        }
    }
}

BlockVector aont_forward(const WideKey& key, const BlockVector& input) {
    auto cipher = make_wide_cipher(key);
    if (input.block_bytes() != cipher->block_bytes())
        throw ParamError("aont_forward: block size does not match cipher");
    BlockVector out = input;
    forward(*cipher, out.bytes());
    return out;
}

BlockVector aont_inverse(const WideKey& key, const BlockVector& output) {
    auto cipher = make_wide_cipher(key);
    if (output.block_bytes() != cipher->block_bytes())
        throw ParamError("aont_inverse: block size does not match cipher");
    BlockVector in = output;
    inverse(*cipher, in.bytes());
    return in;
}

size_t cipher_calls_for(size_t m) {
    return m / 2 * log2_exact(m);
}

}  // namespace qvault::aont
