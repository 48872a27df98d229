#pragma once

#include <cstdint>

#include "coverph/errors.hpp"

namespace coverph {

// Arithmetic in the prime field GF(p). Residues are plain ints in [0, p);
// every operation normalizes its result back into that range.
class PrimeField {
public:
    explicit PrimeField(int p) : p_(p) {
        if (p < 2 || !is_prime(p)) throw ConfigError("field modulus must be prime, got " + std::to_string(p));
    }

    int p() const { return p_; }

    int normalize(long long x) const {
        long long r = x % p_;
        if (r < 0) r += p_;
        return static_cast<int>(r);
    }

    int add(int a, int b) const { return normalize(static_cast<long long>(a) + b); }
    int sub(int a, int b) const { return normalize(static_cast<long long>(a) - b); }
    int mul(int a, int b) const { return normalize(static_cast<long long>(a) * b); }
    int neg(int a) const { return normalize(-static_cast<long long>(a)); }

    int inv(int a) const {
        a = normalize(a);
        if (a == 0) throw UsageError("division by zero in GF(p)");
        // Fermat: a^(p-2) mod p.
        long long base = a, acc = 1;
        int e = p_ - 2;
        while (e > 0) {
            if (e & 1) acc = acc * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return static_cast<int>(acc);
    }

    int div(int a, int b) const { return mul(a, inv(b)); }

private:
    static bool is_prime(int n) {
        for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    int p_;
};

} // namespace coverph
