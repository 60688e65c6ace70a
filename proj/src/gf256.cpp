#include "gf256.hpp"

#include <array>
#include <cstddef>

namespace qvault::gf256 {

namespace {

struct Tables {
    std::array<uint8_t, 256> exp_cycle;  // exp[i] = 2^i, i in [0,255), exp[255] unused
    std::array<uint8_t, 256> log;        // log[exp[i]] = i
    std::vector<uint8_t> mul;            // full 64 KiB product table

    Tables() : mul(256 * 256) {
        uint16_t x = 1;
        for (int i = 0; i < 255; ++i) {
            exp_cycle[i] = static_cast<uint8_t>(x);
            log[x] = static_cast<uint8_t>(i);
            x <<= 1;
            if (x & 0x100) x ^= 0x11d;
        }
        exp_cycle[255] = exp_cycle[0];
        log[0] = 0;  // never consulted for zero operands
        for (int a = 1; a < 256; ++a) {
            for (int b = 1; b < 256; ++b) {
                const int e = (log[a] + log[b]) % 255;
                mul[static_cast<size_t>(a) << 8 | b] = exp_cycle[e];
            }
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

const uint8_t* const kMul = tables().mul.data();

uint8_t inv(uint8_t a) {
    const auto& t = tables();
    return t.exp_cycle[(255 - t.log[a]) % 255];
}

uint8_t pow(uint8_t a, unsigned e) {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const auto& t = tables();
    return t.exp_cycle[(static_cast<size_t>(t.log[a]) * e) % 255];
}

void mul_acc(uint8_t* out, const uint8_t* in, uint8_t coef, size_t len) {
    if (coef == 0) return;
    if (coef == 1) {
        for (size_t i = 0; i < len; ++i) out[i] ^= in[i];
        return;
    }
    const uint8_t* row = kMul + (static_cast<size_t>(coef) << 8);
    for (size_t i = 0; i < len; ++i) out[i] ^= row[in[i]];
}

bool invert_matrix(std::vector<uint8_t>& m, size_t dim) {
    std::vector<uint8_t> aug(dim * dim, 0);
    for (size_t i = 0; i < dim; ++i) aug[i * dim + i] = 1;

    for (size_t col = 0; col < dim; ++col) {
        size_t pivot = col;
        while (pivot < dim && m[pivot * dim + col] == 0) ++pivot;
        if (pivot == dim) return false;
        if (pivot != col) {
            for (size_t j = 0; j < dim; ++j) {
                std::swap(m[pivot * dim + j], m[col * dim + j]);
                std::swap(aug[pivot * dim + j], aug[col * dim + j]);
            }
        }
        const uint8_t piv_inv = inv(m[col * dim + col]);
        for (size_t j = 0; j < dim; ++j) {
            m[col * dim + j] = mul(m[col * dim + j], piv_inv);
            aug[col * dim + j] = mul(aug[col * dim + j], piv_inv);
        }
        for (size_t row = 0; row < dim; ++row) {
            if (row == col) continue;
            const uint8_t f = m[row * dim + col];
            if (f == 0) continue;
            for (size_t j = 0; j < dim; ++j) {
                m[row * dim + j] ^= mul(f, m[col * dim + j]);
                aug[row * dim + j] ^= mul(f, aug[col * dim + j]);
            }
        }
    }
    m = std::move(aug);
    return true;
}

}  // namespace qvault::gf256
