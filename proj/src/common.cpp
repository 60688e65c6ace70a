#include "qvault/common.hpp"

#include <openssl/evp.h>
#include <sodium.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <thread>

namespace qvault {

uint64_t Rng::next_u64() {
    uint8_t buf[8];
    fill(buf);
    uint64_t v;
    std::memcpy(&v, buf, 8);
    return v;
}

uint64_t Rng::below(uint64_t bound) {
    if (bound == 0) throw ParamError("Rng::below: zero bound");
    // Rejection sampling to avoid modulo bias.
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

Bytes Rng::bytes(size_t n) {
    Bytes out(n);
    fill(out);
    return out;
}

void SystemRng::fill(std::span<uint8_t> out) {
    if (sodium_init() < 0) throw Error("libsodium init failed");
    randombytes_buf(out.data(), out.size());
}

void SeededRng::fill(std::span<uint8_t> out) {
    size_t i = 0;
    while (i < out.size()) {
        // splitmix64 step
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z = z ^ (z >> 31);
        const size_t take = std::min<size_t>(8, out.size() - i);
        std::memcpy(out.data() + i, &z, take);
        i += take;
    }
}

std::string to_hex(std::span<const uint8_t> data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

static int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw FormatError("odd-length hex string");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        const int hi = hex_val(hex[2 * i]);
        const int lo = hex_val(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw FormatError("invalid hex digit");
        out[i] = static_cast<uint8_t>(hi << 4 | lo);
    }
    return out;
}

static Bytes evp_digest(const EVP_MD* md, std::span<const uint8_t> data) {
    Bytes out(EVP_MD_size(md));
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr) != 1)
        throw Error("EVP_Digest failed");
    out.resize(len);
    return out;
}

Bytes sha256(std::span<const uint8_t> data) {
    return evp_digest(EVP_sha256(), data);
}

Bytes sha512(std::span<const uint8_t> data) {
    return evp_digest(EVP_sha512(), data);
}

unsigned log2_exact(uint64_t v) {
    if (!is_power_of_two(v)) throw ParamError("log2_exact: not a power of two");
    unsigned r = 0;
    while (v > 1) {
        v >>= 1;
        ++r;
    }
    return r;
}

size_t parallel_worker_count(size_t count, size_t max_workers) {
    const size_t hw = std::max(1u, std::thread::hardware_concurrency());
    size_t workers = std::min({hw, count, max_workers});
    if (workers == 0 || count < 64) workers = 1;
    return workers;
}

void parallel_for_workers(size_t count, size_t max_workers,
                          const std::function<void(size_t, size_t)>& fn) {
    const size_t workers = parallel_worker_count(count, max_workers);
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) fn(0, i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex err_mu;
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            // Static block partition keeps slots contiguous per worker.
            const size_t lo = count * w / workers;
            const size_t hi = count * (w + 1) / workers;
            try {
                for (size_t i = lo; i < hi; ++i) fn(w, i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    parallel_for_workers(count, 8, [&](size_t, size_t i) { fn(i); });
}

}  // namespace qvault
