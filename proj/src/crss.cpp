#include "qvault/crss.hpp"

#include <set>

namespace qvault::crss {

using group::Element;
using group::Group;
using group::Scalar;

namespace {

// Horner evaluation of sum coeffs[k] * z^k.
Scalar poly_eval(const Group& g, std::span<const Scalar> coeffs, const Scalar& z) {
    Scalar acc = g.scalar_zero();
    for (size_t k = coeffs.size(); k-- > 0;) {
        acc = g.scalar_mul(acc, z);
        acc = g.scalar_add(acc, coeffs[k]);
    }
    return acc;
}

}  // namespace

Sharing crss_share(const Group& g, uint16_t t, uint16_t n, Rng& rng) {
    if (t < 1 || t > n) throw ParamError("crss_share: need 1 <= t <= n");
    if (g.small_order() != 0 && n >= g.small_order())
        throw ParamError("crss_share: n must be smaller than the group order");

    // X: uniform degree t-1 with free constant term; Y: same but Y(0) = 0.
    std::vector<Scalar> xc(t), yc(t);
    for (uint16_t k = 0; k < t; ++k) xc[k] = g.scalar_random(rng);
    yc[0] = g.scalar_zero();
    for (uint16_t k = 1; k < t; ++k) yc[k] = g.scalar_random(rng);

    Sharing out;
    out.secret = Secret{g.generator_pow(xc[0])};
    out.shares.resize(n);
    for (uint16_t i = 1; i <= n; ++i) {
        const Scalar z = g.scalar_from_u64(i);
        out.shares[i - 1] = Share{i, poly_eval(g, xc, z), poly_eval(g, yc, z)};
    }
    return out;
}

Delegation crss_delegate(const Group& g, const Share& share, std::string_view identity) {
    const Element h = g.hash_to_group(identity);
    const Element v = g.mul(g.generator_pow(share.x), g.pow(h, share.y));
    return Delegation{share.index, std::string(identity), v};
}

Secret crss_combine(const Group& g, std::span<const Delegation> delegations,
                    uint16_t threshold) {
    if (delegations.size() < threshold)
        throw InsufficientDelegationsError(
            "need at least t = " + std::to_string(threshold) + " delegations, got " +
            std::to_string(delegations.size()));
    std::vector<uint16_t> indices;
    indices.reserve(delegations.size());
    std::set<uint16_t> seen;
    for (const Delegation& d : delegations) {
        if (!seen.insert(d.index).second)
            throw FormatError("crss_combine: duplicate delegation index " +
                              std::to_string(d.index));
        indices.push_back(d.index);
    }
    const auto coeffs = lagrange_at_zero(g, indices);
    Element acc = g.identity();
    for (size_t p = 0; p < delegations.size(); ++p)
        acc = g.mul(acc, g.pow(delegations[p].value, coeffs[p]));
    return Secret{acc};
}

Element hash_to_group(const Group& g, std::string_view identity) {
    return g.hash_to_group(identity);
}

std::vector<Scalar> lagrange_coeffs(const Group& g, std::span<const uint16_t> indices,
                                    uint64_t at) {
    std::set<uint16_t> seen;
    for (uint16_t i : indices) {
        if (i == 0 || (g.small_order() != 0 && i % g.small_order() == 0))
            throw ParamError("lagrange: index is zero mod q");
        if (!seen.insert(i).second)
            throw ParamError("lagrange: duplicate index " + std::to_string(i));
    }
    const Scalar z = g.scalar_from_u64(at);
    std::vector<Scalar> coeffs(indices.size());
    for (size_t p = 0; p < indices.size(); ++p) {
        const Scalar ip = g.scalar_from_u64(indices[p]);
        Scalar num = g.scalar_from_u64(1);
        Scalar den = g.scalar_from_u64(1);
        for (size_t k = 0; k < indices.size(); ++k) {
            if (k == p) continue;
            const Scalar ik = g.scalar_from_u64(indices[k]);
            num = g.scalar_mul(num, g.scalar_sub(z, ik));
            den = g.scalar_mul(den, g.scalar_sub(ip, ik));
        }
        coeffs[p] = g.scalar_mul(num, g.scalar_invert(den));
    }
    return coeffs;
}

std::vector<Scalar> lagrange_at_zero(const Group& g, std::span<const uint16_t> indices) {
    return lagrange_coeffs(g, indices, 0);
}

aont::WideKey kdf(const Group& g, const Secret& secret, uint32_t lambda_bits) {
    if (!g.element_valid(secret.value)) throw ParamError("kdf: invalid secret element");
    if (lambda_bits % 8 != 0 || lambda_bits == 0) throw ParamError("kdf: bad lambda");
    const size_t want = 2 * lambda_bits / 8;
    Bytes key;
    key.reserve(want);
    uint32_t counter = 0;
    while (key.size() < want) {
        Bytes material;
        const std::string label = "qvault.unitkey.v1";
        material.insert(material.end(), label.begin(), label.end());
        material.push_back(static_cast<uint8_t>(counter++));
        material.insert(material.end(), secret.value.raw.begin(), secret.value.raw.end());
        const Bytes block = sha256(material);
        const size_t take = std::min(block.size(), want - key.size());
        key.insert(key.end(), block.begin(), block.begin() + take);
    }
    return aont::WideKey{std::move(key)};
}

// ---------------------------------------------------------------------------
// Wire formats
// ---------------------------------------------------------------------------

namespace {

void put_u16(Bytes& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v & 0xff));
}

uint16_t take_u16(std::span<const uint8_t>& wire, const char* what) {
    if (wire.size() < 2) throw FormatError(std::string(what) + ": truncated");
    const uint16_t v = static_cast<uint16_t>(wire[0] << 8 | wire[1]);
    wire = wire.subspan(2);
    return v;
}

}  // namespace

Bytes serialize_share(const Share& share) {
    Bytes out;
    put_u16(out, share.index);
    out.insert(out.end(), share.x.raw.begin(), share.x.raw.end());
    out.insert(out.end(), share.y.raw.begin(), share.y.raw.end());
    return out;
}

Share deserialize_share(const Group& g, std::span<const uint8_t> wire) {
    Share s;
    s.index = take_u16(wire, "share");
    const size_t sb = g.scalar_bytes();
    if (wire.size() != 2 * sb) throw FormatError("share: bad scalar payload size");
    s.x = g.decode_scalar(wire.subspan(0, sb));
    s.y = g.decode_scalar(wire.subspan(sb, sb));
    return s;
}

Bytes serialize_delegation(const Delegation& d) {
    if (d.identity.size() > 0xffff) throw ParamError("delegation: identity too long");
    Bytes out;
    put_u16(out, d.index);
    put_u16(out, static_cast<uint16_t>(d.identity.size()));
    out.insert(out.end(), d.identity.begin(), d.identity.end());
    out.insert(out.end(), d.value.raw.begin(), d.value.raw.end());
    return out;
}

Delegation deserialize_delegation(const Group& g, std::span<const uint8_t> wire) {
    Delegation d;
    d.index = take_u16(wire, "delegation");
    const uint16_t idlen = take_u16(wire, "delegation");
    if (wire.size() != idlen + g.element_bytes())
        throw FormatError("delegation: bad payload size");
    d.identity.assign(wire.begin(), wire.begin() + idlen);
    d.value = g.decode_element(wire.subspan(idlen));
    return d;
}

}  // namespace qvault::crss
