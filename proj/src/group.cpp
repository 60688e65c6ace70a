#include "qvault/group.hpp"

#include <sodium.h>

#include <cstring>

namespace qvault::group {

Scalar Group::decode_scalar(std::span<const uint8_t> raw) const {
    if (raw.size() != scalar_bytes()) throw FormatError("scalar: wrong encoding size");
    return Scalar{Bytes(raw.begin(), raw.end())};
}

Element Group::decode_element(std::span<const uint8_t> raw) const {
    if (raw.size() != element_bytes()) throw FormatError("element: wrong encoding size");
    Element e{Bytes(raw.begin(), raw.end())};
    if (!element_valid(e)) throw FormatError("element: not a valid group element");
    return e;
}

// ---------------------------------------------------------------------------
// ristretto255
// ---------------------------------------------------------------------------

namespace {

void ensure_sodium() {
    if (sodium_init() < 0) throw Error("libsodium init failed");
}

class Ristretto255 final : public Group {
public:
    Ristretto255() { ensure_sodium(); }

    std::string name() const override { return "ristretto255"; }
    size_t scalar_bytes() const override { return crypto_core_ristretto255_SCALARBYTES; }
    size_t element_bytes() const override { return crypto_core_ristretto255_BYTES; }
    uint64_t small_order() const override { return 0; }

    Scalar scalar_zero() const override {
        return Scalar{Bytes(crypto_core_ristretto255_SCALARBYTES, 0)};
    }

    Scalar scalar_from_u64(uint64_t v) const override {
        Scalar s = scalar_zero();
        for (int i = 0; i < 8; ++i) s.raw[i] = static_cast<uint8_t>(v >> (8 * i));
        return s;
    }

    Scalar scalar_random(Rng& rng) const override {
        uint8_t wide[64];
        rng.fill(wide);
        Scalar s = scalar_zero();
        crypto_core_ristretto255_scalar_reduce(s.raw.data(), wide);
        return s;
    }

    Scalar scalar_add(const Scalar& a, const Scalar& b) const override {
        Scalar r = scalar_zero();
        crypto_core_ristretto255_scalar_add(r.raw.data(), a.raw.data(), b.raw.data());
        return r;
    }

    Scalar scalar_sub(const Scalar& a, const Scalar& b) const override {
        Scalar r = scalar_zero();
        crypto_core_ristretto255_scalar_sub(r.raw.data(), a.raw.data(), b.raw.data());
        return r;
    }

    Scalar scalar_mul(const Scalar& a, const Scalar& b) const override {
        Scalar r = scalar_zero();
        crypto_core_ristretto255_scalar_mul(r.raw.data(), a.raw.data(), b.raw.data());
        return r;
    }

    Scalar scalar_invert(const Scalar& a) const override {
        Scalar r = scalar_zero();
        if (crypto_core_ristretto255_scalar_invert(r.raw.data(), a.raw.data()) != 0)
            throw ParamError("scalar_invert: zero scalar");
        return r;
    }

    bool scalar_is_zero(const Scalar& a) const override {
        for (uint8_t b : a.raw)
            if (b != 0) return false;
        return true;
    }

    Element identity() const override {
        return Element{Bytes(crypto_core_ristretto255_BYTES, 0)};
    }

    Element generator_pow(const Scalar& s) const override {
        if (scalar_is_zero(s)) return identity();
        Element e{Bytes(crypto_core_ristretto255_BYTES, 0)};
        if (crypto_scalarmult_ristretto255_base(e.raw.data(), s.raw.data()) != 0)
            throw Error("ristretto255 base scalarmult failed");
        return e;
    }

    Element pow(const Element& a, const Scalar& s) const override {
        if (scalar_is_zero(s) || a == identity()) return identity();
        Element e{Bytes(crypto_core_ristretto255_BYTES, 0)};
        if (crypto_scalarmult_ristretto255(e.raw.data(), s.raw.data(), a.raw.data()) != 0)
            throw ParamError("ristretto255 scalarmult failed (invalid element?)");
        return e;
    }

    Element mul(const Element& a, const Element& b) const override {
        if (a == identity()) return b;
        if (b == identity()) return a;
        Element e{Bytes(crypto_core_ristretto255_BYTES, 0)};
        if (crypto_core_ristretto255_add(e.raw.data(), a.raw.data(), b.raw.data()) != 0)
            throw ParamError("ristretto255 add failed (invalid element?)");
        return e;
    }

    bool element_valid(const Element& a) const override {
        if (a.raw.size() != crypto_core_ristretto255_BYTES) return false;
        if (a == identity()) return true;
        return crypto_core_ristretto255_is_valid_point(a.raw.data()) == 1;
    }

    Element hash_to_group(std::string_view input) const override {
        Bytes material;
        const std::string label = "qvault.h2g.ristretto255.v1";
        material.reserve(label.size() + input.size());
        material.insert(material.end(), label.begin(), label.end());
        material.insert(material.end(), input.begin(), input.end());
        const Bytes wide = sha512(material);
        Element e{Bytes(crypto_core_ristretto255_BYTES, 0)};
        if (crypto_core_ristretto255_from_hash(e.raw.data(), wide.data()) != 0)
            throw Error("ristretto255 from_hash failed");
        return e;
    }
};

// ---------------------------------------------------------------------------
// Toy group: <2> in Z*_23, order 11.
// ---------------------------------------------------------------------------

constexpr uint64_t kToyP = 23;
constexpr uint64_t kToyQ = 11;
constexpr uint64_t kToyG = 2;

uint64_t toy_modpow(uint64_t base, uint64_t exp, uint64_t mod) {
    uint64_t r = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return r;
}

class ToyGroup final : public Group {
public:
    std::string name() const override { return "toy-z23-q11"; }
    size_t scalar_bytes() const override { return 8; }
    size_t element_bytes() const override { return 8; }
    uint64_t small_order() const override { return kToyQ; }

    Scalar scalar_zero() const override { return from_u64_scalar(0); }
    Scalar scalar_from_u64(uint64_t v) const override { return from_u64_scalar(v % kToyQ); }
    Scalar scalar_random(Rng& rng) const override { return from_u64_scalar(rng.below(kToyQ)); }

    Scalar scalar_add(const Scalar& a, const Scalar& b) const override {
        return from_u64_scalar((value(a) + value(b)) % kToyQ);
    }
    Scalar scalar_sub(const Scalar& a, const Scalar& b) const override {
        return from_u64_scalar((value(a) + kToyQ - value(b)) % kToyQ);
    }
    Scalar scalar_mul(const Scalar& a, const Scalar& b) const override {
        return from_u64_scalar(value(a) * value(b) % kToyQ);
    }
    Scalar scalar_invert(const Scalar& a) const override {
        const uint64_t v = value(a);
        if (v == 0) throw ParamError("scalar_invert: zero scalar");
        return from_u64_scalar(toy_modpow(v, kToyQ - 2, kToyQ));
    }
    bool scalar_is_zero(const Scalar& a) const override { return value(a) == 0; }

    Element identity() const override { return from_u64_element(1); }
    Element generator_pow(const Scalar& s) const override {
        return from_u64_element(toy_modpow(kToyG, value(s), kToyP));
    }
    Element pow(const Element& a, const Scalar& s) const override {
        return from_u64_element(toy_modpow(value_el(a), value(s), kToyP));
    }
    Element mul(const Element& a, const Element& b) const override {
        return from_u64_element(value_el(a) * value_el(b) % kToyP);
    }
    bool element_valid(const Element& a) const override {
        if (a.raw.size() != 8) return false;
        uint64_t v = 0;
        for (uint8_t b : a.raw) v = v << 8 | b;
        if (v == 0 || v >= kToyP) return false;
        return toy_modpow(v, kToyQ, kToyP) == 1;  // subgroup membership
    }
    Element hash_to_group(std::string_view input) const override {
        Bytes material;
        const std::string label = "qvault.h2g.toy.v1";
        material.insert(material.end(), label.begin(), label.end());
        material.insert(material.end(), input.begin(), input.end());
        const Bytes h = sha256(material);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = v << 8 | h[i];
        return generator_pow(from_u64_scalar(v % kToyQ));
    }

private:
    static Scalar from_u64_scalar(uint64_t v) {
        Scalar s{Bytes(8, 0)};
        for (int i = 0; i < 8; ++i) s.raw[7 - i] = static_cast<uint8_t>(v >> (8 * i));
        return s;
    }
    static Element from_u64_element(uint64_t v) {
        Element e{Bytes(8, 0)};
        for (int i = 0; i < 8; ++i) e.raw[7 - i] = static_cast<uint8_t>(v >> (8 * i));
        return e;
    }
    static uint64_t value(const Scalar& s) {
        uint64_t v = 0;
        for (uint8_t b : s.raw) v = v << 8 | b;
        return v % kToyQ;
    }
    static uint64_t value_el(const Element& e) {
        uint64_t v = 0;
        for (uint8_t b : e.raw) v = v << 8 | b;
        return v % kToyP;
    }
};

}  // namespace

const Group& ristretto255() {
    static const Ristretto255 g;
    return g;
}

const Group& toy() {
    static const ToyGroup g;
    return g;
}

}  // namespace qvault::group
