#pragma once

#include <cstdint>
#include <vector>

// GF(2^8) arithmetic over the polynomial x^8 + x^4 + x^3 + x^2 + 1 (0x11d),
// generator 2. Internal to the dispersal coder.

namespace qvault::gf256 {

extern const uint8_t* const kMul;  // 256*256 multiplication table

inline uint8_t mul(uint8_t a, uint8_t b) {
    return kMul[static_cast<size_t>(a) << 8 | b];
}

uint8_t inv(uint8_t a);  // a != 0
uint8_t pow(uint8_t a, unsigned e);

// out[i] ^= coef * in[i] over len bytes.
void mul_acc(uint8_t* out, const uint8_t* in, uint8_t coef, size_t len);

// Gauss-Jordan inversion of a square matrix (row-major, dim x dim).
// Returns false if singular.
bool invert_matrix(std::vector<uint8_t>& m, size_t dim);

}  // namespace qvault::gf256
