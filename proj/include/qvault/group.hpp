#pragma once

#include "qvault/common.hpp"

namespace qvault::group {

// Cyclic group of prime order q with a fixed generator g, written
// multiplicatively. Scalars are residues mod q; elements carry their
// canonical encoding, which is injective, so byte equality is element
// equality.

struct Scalar {
    Bytes raw;
    bool operator==(const Scalar&) const = default;
};

struct Element {
    Bytes raw;
    bool operator==(const Element&) const = default;
};

class Group {
public:
    virtual ~Group() = default;

    virtual std::string name() const = 0;
    virtual size_t scalar_bytes() const = 0;
    virtual size_t element_bytes() const = 0;
    // q when it fits in a machine word (toy group); 0 for cryptographic
    // orders.
    virtual uint64_t small_order() const = 0;

    virtual Scalar scalar_zero() const = 0;
    virtual Scalar scalar_from_u64(uint64_t v) const = 0;
    virtual Scalar scalar_random(Rng& rng) const = 0;
    virtual Scalar scalar_add(const Scalar& a, const Scalar& b) const = 0;
    virtual Scalar scalar_sub(const Scalar& a, const Scalar& b) const = 0;
    virtual Scalar scalar_mul(const Scalar& a, const Scalar& b) const = 0;
    virtual Scalar scalar_invert(const Scalar& a) const = 0;  // a != 0
    virtual bool scalar_is_zero(const Scalar& a) const = 0;

    virtual Element identity() const = 0;
    virtual Element generator_pow(const Scalar& s) const = 0;        // g^s
    virtual Element pow(const Element& a, const Scalar& s) const = 0;  // a^s
    virtual Element mul(const Element& a, const Element& b) const = 0;
    virtual bool element_valid(const Element& a) const = 0;

    // Deterministic map from arbitrary strings onto the group, modeled as
    // a random oracle.
    virtual Element hash_to_group(std::string_view input) const = 0;

    // Validated decoding for wire data.
    Scalar decode_scalar(std::span<const uint8_t> raw) const;
    Element decode_element(std::span<const uint8_t> raw) const;
};

// ristretto255 (prime order ~2^252), backed by libsodium. hash_to_group is
// the standard from-uniform-bytes map applied to SHA-512 of a domain label
// plus the input.
const Group& ristretto255();

// Order-11 subgroup of Z*_23 with generator 2. Small enough for
// brute-force oracles: discrete logs are recoverable by trying all eleven
// exponents. Scalars and elements ride in 8-byte big-endian words.
const Group& toy();

}  // namespace qvault::group
