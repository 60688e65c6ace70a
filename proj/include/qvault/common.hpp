#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qvault {

using Bytes = std::vector<uint8_t>;

// ---------------------------------------------------------------------------
// Error hierarchy. Every recoverable failure in the library throws one of
// these; the CLI maps them onto exit codes.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid parameters (sizes, thresholds, divisibility).
class ParamError : public Error {
public:
    using Error::Error;
};

// Malformed serialized data: bad magic, truncation, inconsistent sizes.
class FormatError : public Error {
public:
    using Error::Error;
};

// Fewer than t chunks available for reconstruction.
class InsufficientChunksError : public Error {
public:
    using Error::Error;
};

// Fewer than t delegations available for combination.
class InsufficientDelegationsError : public Error {
public:
    using Error::Error;
};

// Reconstructed ciphertext does not match the published unit digest.
class PollutedTokenError : public Error {
public:
    using Error::Error;
};

// Reader cannot assemble a threshold of endorsed tokens.
class AccessDeniedError : public Error {
public:
    using Error::Error;
};

// Fewer than t byte-identical manifest replicas.
class InconsistentMetadataError : public Error {
public:
    using Error::Error;
};

class DuplicateFileError : public Error {
public:
    using Error::Error;
};

// Operations the protocol deliberately rejects (threshold change,
// owner revocation).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// Storage backend failures.
class BackendError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public BackendError {
public:
    using BackendError::BackendError;
};

class ForbiddenError : public BackendError {
public:
    using BackendError::BackendError;
};

// ---------------------------------------------------------------------------
// Randomness source. Callers pass one in; nothing in the library touches a
// global RNG, so every randomized path can be replayed from a seed.
// ---------------------------------------------------------------------------

class Rng {
public:
    virtual ~Rng() = default;
    virtual void fill(std::span<uint8_t> out) = 0;

    uint64_t next_u64();
    // Uniform in [0, bound), bound > 0.
    uint64_t below(uint64_t bound);
    Bytes bytes(size_t n);
};

// OS randomness (libsodium).
class SystemRng final : public Rng {
public:
    void fill(std::span<uint8_t> out) override;
};

// Deterministic splitmix64 stream for tests and simulations.
class SeededRng final : public Rng {
public:
    explicit SeededRng(uint64_t seed) : state_(seed) {}
    void fill(std::span<uint8_t> out) override;

private:
    uint64_t state_;
};

// ---------------------------------------------------------------------------
// Small helpers shared across modules.
// ---------------------------------------------------------------------------

std::string to_hex(std::span<const uint8_t> data);
Bytes from_hex(std::string_view hex);  // throws FormatError

Bytes sha256(std::span<const uint8_t> data);
Bytes sha512(std::span<const uint8_t> data);

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

constexpr bool is_power_of_two(uint64_t v) {
    return v != 0 && (v & (v - 1)) == 0;
}

// log2 of a power of two.
unsigned log2_exact(uint64_t v);

// Runs fn(i) for i in [0, count) across a few worker threads. Results must
// be written to disjoint slots; ordering of side effects is up to the
// caller. Degrades to a plain loop for small counts.
void parallel_for(size_t count, const std::function<void(size_t)>& fn);

// Number of workers parallel_for_workers will actually use.
size_t parallel_worker_count(size_t count, size_t max_workers);

// Variant reporting the worker slot, so callers can give each worker its
// own scratch state (cipher contexts, buffers).
void parallel_for_workers(size_t count, size_t max_workers,
                          const std::function<void(size_t worker, size_t index)>& fn);

}  // namespace qvault
