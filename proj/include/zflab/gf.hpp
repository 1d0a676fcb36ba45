#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zflab/common.hpp"

namespace zflab {

/// Arithmetic tables for GF(q), q a prime power. Elements are encoded as
/// 0..q-1; for q = p^e the base-p digits of an element are the coefficients of
/// its polynomial representative (digit i = coefficient of x^i).
class FieldTable {
public:
    /// Default irreducible polynomials for the non-prime orders in range.
    /// Coefficient lists, lowest degree first.
    static std::optional<std::vector<int>> default_modulus(int q) {
        switch (q) {
            case 4:  return std::vector<int>{1, 1, 1};        // x^2 + x + 1
            case 8:  return std::vector<int>{1, 1, 0, 1};     // x^3 + x + 1
            case 9:  return std::vector<int>{1, 0, 1};        // x^2 + 1
            case 16: return std::vector<int>{1, 1, 0, 0, 1};  // x^4 + x + 1
            default: return std::nullopt;
        }
    }

    static FieldTable make(int q, std::optional<std::vector<int>> modulus = std::nullopt,
                           int cap = 16) {
        if (q < 2 || q > cap) throw FieldError("field order out of range: q=" + std::to_string(q));
        int p = smallest_prime_factor(q);
        int e = 0;
        int m = q;
        while (m % p == 0) { m /= p; ++e; }
        if (m != 1) throw FieldError(std::to_string(q) + " is not a prime power");

        FieldTable f;
        f.q_ = q; f.p_ = p; f.e_ = e;
        if (e > 1) {
            if (!modulus) modulus = default_modulus(q);
            if (!modulus) throw FieldError("no modulus given and no built-in default for q=" +
                                           std::to_string(q));
            if (static_cast<int>(modulus->size()) != e + 1 || (*modulus)[e] % p == 0)
                throw FieldError("modulus must be a degree-" + std::to_string(e) + " polynomial");
            f.modulus_ = *modulus;
            for (auto& c : f.modulus_) c = ((c % p) + p) % p;
        }
        f.build_tables();
        f.verify();
        return f;
    }

    int q() const { return q_; }
    int characteristic() const { return p_; }
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add(a, neg_[b]); }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int neg(int a) const { return neg_[a]; }
    int inv(int a) const {
        if (a == 0) throw FieldError("inverse of zero");
        return inv_[a];
    }

private:
    FieldTable() = default;

    static int smallest_prime_factor(int n) {
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return d;
        return n;
    }

    void build_tables() {
        add_.assign(q_ * q_, 0);
        mul_.assign(q_ * q_, 0);
        neg_.assign(q_, 0);
        inv_.assign(q_, 0);
        for (int a = 0; a < q_; ++a) {
            for (int b = 0; b < q_; ++b) {
                add_[a * q_ + b] = poly_add(a, b);
                mul_[a * q_ + b] = poly_mul(a, b);
            }
        }
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b)
                if (add(a, b) == 0) neg_[a] = b;
        for (int a = 1; a < q_; ++a) {
            int found = 0;
            for (int b = 1; b < q_; ++b)
                if (mul(a, b) == 1) { found = b; break; }
            if (!found)
                throw FieldError("element " + std::to_string(a) +
                                 " has no inverse; modulus is reducible");
            inv_[a] = found;
        }
    }

    int poly_add(int a, int b) const {
        int r = 0, pw = 1;
        for (int i = 0; i < e_; ++i) {
            int da = (a / ipow(p_, i)) % p_;
            int db = (b / ipow(p_, i)) % p_;
            r += ((da + db) % p_) * pw;
            pw *= p_;
        }
        return r;
    }

    int poly_mul(int a, int b) const {
        if (e_ == 1) return static_cast<int>((static_cast<long long>(a) * b) % p_);
        // Schoolbook product of the digit polynomials, reduced mod modulus_.
        std::vector<int> prod(2 * e_ - 1, 0);
        for (int i = 0; i < e_; ++i) {
            int da = (a / ipow(p_, i)) % p_;
            if (!da) continue;
            for (int j = 0; j < e_; ++j) {
                int db = (b / ipow(p_, j)) % p_;
                prod[i + j] = (prod[i + j] + da * db) % p_;
            }
        }
        int lead_inv = mod_inverse(modulus_[e_], p_);
        for (int d = 2 * e_ - 2; d >= e_; --d) {
            int c = prod[d];
            if (!c) continue;
            int factor = (c * lead_inv) % p_;
            for (int i = 0; i <= e_; ++i) {
                int idx = d - e_ + i;
                prod[idx] = ((prod[idx] - factor * modulus_[i]) % p_ + p_) % p_;
            }
        }
        int r = 0, pw = 1;
        for (int i = 0; i < e_; ++i) { r += prod[i] * pw; pw *= p_; }
        return r;
    }

    static int ipow(int b, int e) {
        int r = 1;
        while (e--) r *= b;
        return r;
    }

    static int mod_inverse(int a, int p) {
        a %= p;
        for (int b = 1; b < p; ++b)
            if ((a * b) % p == 1) return b;
        throw FieldError("no inverse mod p");
    }

    // Exhaustive field-axiom check; q is capped small, so this is cheap.
    void verify() const {
        for (int a = 0; a < q_; ++a) {
            for (int b = 0; b < q_; ++b) {
                if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a))
                    throw FieldError("commutativity violated");
                for (int c = 0; c < q_; ++c) {
                    if (add(add(a, b), c) != add(a, add(b, c)))
                        throw FieldError("additive associativity violated");
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw FieldError("multiplicative associativity violated");
                    if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
                        throw FieldError("distributivity violated");
                }
            }
            if (add(a, 0) != a || mul(a, 1) != a) throw FieldError("identity violated");
            // characteristic: p copies of any element sum to zero
            int s = 0;
            for (int i = 0; i < p_; ++i) s = add(s, a);
            if (s != 0) throw FieldError("characteristic violated");
        }
    }

    int q_ = 0, p_ = 0, e_ = 0;
    std::vector<int> modulus_;
    std::vector<int> add_, mul_, neg_, inv_;
};

}  // namespace zflab
