#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace zflab {

// Thrown when a requested object exceeds a configured size cap, or a count
// would overflow the native word width.
struct SizingError : std::runtime_error {
    explicit SizingError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an operation is called outside the hypotheses it is proven for.
struct HypothesisError : std::runtime_error {
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on invalid field parameters (non prime power order, reducible modulus).
struct FieldError : std::runtime_error {
    explicit FieldError(const std::string& what) : std::runtime_error(what) {}
};

constexpr std::size_t kDefaultVertexCap = std::size_t{1} << 20;

inline unsigned long long checked_mul(unsigned long long a, unsigned long long b,
                                      const char* ctx = "product") {
    unsigned long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw SizingError(std::string(ctx) + " overflows 64-bit arithmetic");
    return r;
}

inline unsigned long long checked_add(unsigned long long a, unsigned long long b,
                                      const char* ctx = "sum") {
    unsigned long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw SizingError(std::string(ctx) + " overflows 64-bit arithmetic");
    return r;
}

inline unsigned long long checked_pow(unsigned long long base, unsigned exp,
                                      const char* ctx = "power") {
    unsigned long long r = 1;
    for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base, ctx);
    return r;
}

// Dynamic bitset over 64-bit words. Row type for adjacency matrices and the
// working set of every propagation loop.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    std::size_t word_count() const { return w_.size(); }
    const std::uint64_t* words() const { return w_.data(); }
    std::uint64_t* words() { return w_.data(); }

    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void clear() { for (auto& w : w_) w = 0; }

    void set_all() {
        for (auto& w : w_) w = ~std::uint64_t{0};
        trim();
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    BitVec& operator&=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    BitVec& operator|=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    BitVec& operator^=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    // this &= ~o
    BitVec& and_not(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend BitVec operator&(BitVec a, const BitVec& b) { a &= b; return a; }
    friend BitVec operator|(BitVec a, const BitVec& b) { a |= b; return a; }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    std::size_t intersect_count(const BitVec& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            c += static_cast<std::size_t>(__builtin_popcountll(w_[i] & o.w_[i]));
        return c;
    }

    // First set bit at position >= from, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t find_next(std::size_t from) const {
        if (from >= n_) return npos;
        std::size_t wi = from >> 6;
        std::uint64_t w = w_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) return (wi << 6) + static_cast<std::size_t>(__builtin_ctzll(w));
            if (++wi == w_.size()) return npos;
            w = w_[wi];
        }
    }
    std::size_t find_first() const { return find_next(0); }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                f((wi << 6) + static_cast<std::size_t>(__builtin_ctzll(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_list() const {
        std::vector<int> out;
        for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
        return out;
    }

private:
    void trim() {
        if (n_ & 63) w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace zflab
