// Independent reference implementations used to check the library. Everything
// here is deliberately written from the definitions (trial division, sieves,
// brute-force searches) rather than reusing library code.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

inline std::vector<bool> prime_flags(std::uint32_t limit) {
    std::vector<bool> is_prime(limit + 1, true);
    is_prime[0] = false;
    if (limit >= 1) is_prime[1] = false;
    for (std::uint64_t p = 2; p * p <= limit; ++p)
        if (is_prime[p])
            for (std::uint64_t q = p * p; q <= limit; q += p)
                is_prime[q] = false;
    return is_prime;
}

inline bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        exp >>= 1;
        if (exp) base = mulmod(base, base, m);
    }
    return r;
}

// Strong-probable-prime check used only inside the factorizer below; written
// straight from the textbook with its own witness loop.
inline bool sprp(std::uint64_t n, std::uint64_t a) {
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    a %= n;
    if (a < 2) return true;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

inline bool probably_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (n % p == 0) return n == p;
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (!sprp(n, a)) return false;
    return true;
}

// Brent's variant of Pollard's rho; returns a non-trivial factor of composite n.
inline std::uint64_t brent_factor(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        std::uint64_t power = 1, lam = 1;
        while (d == 1) {
            if (power == lam) {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = (mulmod(y, y, n) + c) % n;
            ++lam;
            std::uint64_t diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
    }
}

inline void factorize_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (probably_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = brent_factor(n);
    factorize_into(d, out);
    factorize_into(n / d, out);
}

// Prime factorization with multiplicity, ascending.
inline std::vector<std::uint64_t> factorize(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    factorize_into(n, out);
    std::sort(out.begin(), out.end());
    return out;
}

// Carmichael function by definition, for small n via trial-division factoring.
inline std::uint64_t carmichael_lambda(std::uint64_t n) {
    std::map<std::uint64_t, int> pf;
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; ++p)
        while (m % p == 0) {
            ++pf[p];
            m /= p;
        }
    if (m > 1) ++pf[m];
    std::uint64_t lambda = 1;
    for (auto [p, k] : pf) {
        std::uint64_t contribution;
        if (p == 2 && k >= 3)
            contribution = 1ULL << (k - 2);
        else {
            contribution = (p - 1);
            for (int i = 1; i < k; ++i) contribution *= p;
        }
        lambda = std::lcm(lambda, contribution);
    }
    return lambda;
}

// Multiplicative order of a mod n (requires gcd(a, n) == 1).
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
    std::uint64_t lambda = carmichael_lambda(n);
    std::uint64_t best = lambda;
    for (std::uint64_t d = 1; d * d <= lambda; ++d) {
        if (lambda % d != 0) continue;
        if (powmod(a, d, n) == 1) return d; // divisors visited ascending
        std::uint64_t e = lambda / d;
        if (powmod(a, e, n) == 1 && e < best) best = e;
    }
    return best;
}

// Smallest k with (1-p)^k <= f, found by stepping rather than logarithms.
inline std::uint32_t smallest_covering_count(double f, double p) {
    long double residual = 1.0L;
    for (std::uint32_t k = 1; k < 100'000; ++k) {
        residual *= (1.0L - static_cast<long double>(p));
        if (residual <= static_cast<long double>(f)) return k;
    }
    return 0;
}

} // namespace oracle
