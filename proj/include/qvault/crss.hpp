#pragma once

#include "qvault/aont.hpp"
#include "qvault/common.hpp"
#include "qvault/group.hpp"

namespace qvault::crss {

// Collusion-resistant threshold secret sharing. A fresh secret g^x is
// shared as scalar pairs (x_i, y_i) where x_i = X(i) for a random degree
// t-1 polynomial X with X(0) = x, and y_i = Y(i) for a random degree t-1
// blinding polynomial Y with Y(0) = 0. A share is never handed out
// directly; instead the shareholder issues an identity-bound delegation
// g^{x_i} * H(identity)^{y_i}. Combining t delegations with Lagrange
// coefficients cancels the blinding exactly when all delegations target
// the same identity, so pooled delegations for different identities
// reconstruct garbage rather than the secret.

struct Share {
    uint16_t index = 0;  // 1-based, unique per sharing
    group::Scalar x;     // X(index)
    group::Scalar y;     // Y(index)
};

struct Delegation {
    uint16_t index = 0;
    std::string identity;
    group::Element value;  // g^{x_index} * H(identity)^{y_index}
};

struct Secret {
    group::Element value;  // g^{X(0)}
    bool operator==(const Secret&) const = default;
};

struct Sharing {
    Secret secret;
    std::vector<Share> shares;
};

// Shares a fresh random secret. Requires 1 <= t <= n, and n < q for small
// groups (indices must stay distinct and nonzero mod q).
Sharing crss_share(const group::Group& g, uint16_t t, uint16_t n, Rng& rng);

// Deterministic in (share, identity).
Delegation crss_delegate(const group::Group& g, const Share& share, std::string_view identity);

// Interpolates at zero over the delegation indices. Needs at least
// `threshold` delegations with distinct indices; whether the result is the
// shared secret depends on the delegations all binding one identity — no
// check is made here, a wrong pool just yields a wrong element.
Secret crss_combine(const group::Group& g, std::span<const Delegation> delegations,
                    uint16_t threshold);

// H(identity): deterministic map into the group.
group::Element hash_to_group(const group::Group& g, std::string_view identity);

// Lagrange basis coefficients evaluated at `at`, over distinct nonzero
// indices: sum coeff_p * P(i_p) = P(at) for every polynomial of degree
// < indices.size().
std::vector<group::Scalar> lagrange_coeffs(const group::Group& g,
                                           std::span<const uint16_t> indices, uint64_t at);
std::vector<group::Scalar> lagrange_at_zero(const group::Group& g,
                                            std::span<const uint16_t> indices);

// Derives the 2*lambda-bit symmetric key a unit is enciphered under from
// the canonical encoding of its secret.
aont::WideKey kdf(const group::Group& g, const Secret& secret, uint32_t lambda_bits = 128);

// Wire layouts. Share: 2-byte BE index, then x and y at the group's scalar
// width. Delegation: 2-byte BE index, 2-byte BE identity length, identity
// bytes, element encoding.
Bytes serialize_share(const Share& share);
Share deserialize_share(const group::Group& g, std::span<const uint8_t> wire);
Bytes serialize_delegation(const Delegation& d);
Delegation deserialize_delegation(const group::Group& g, std::span<const uint8_t> wire);

}  // namespace qvault::crss
