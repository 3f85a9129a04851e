#ifndef TWISTLAB_INTEGER_HPP
#define TWISTLAB_INTEGER_HPP

#include <twistlab/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>

namespace twistlab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Residues modulo a prime below 2^32; products fit in 64 bits.
using Residue = std::uint64_t;

inline constexpr std::uint64_t kMaxFieldPrime = (std::uint64_t{1} << 32) - 1;

/// Sentinel returned by valuation() for zero.
inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

inline std::string to_string(const Integer& n) { return n.str(); }

inline Integer parse_integer(const std::string& text)
{
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size())
        throw Error(ErrorCode::ParseError, "empty integer literal '" + text + "'");
    Integer value = 0;
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9')
            throw Error(ErrorCode::ParseError, "not an integer: '" + text + "'");
        value = value * 10 + (text[i] - '0');
    }
    return negative ? Integer(-value) : value;
}

/// Least nonnegative residue of n modulo m (m > 0).
inline std::uint64_t mod_u64(const Integer& n, std::uint64_t m)
{
    Integer r = n % m;
    if (r < 0)
        r += m;
    return r.convert_to<std::uint64_t>();
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// p-adic valuation of n; kInfiniteValuation for n = 0.
inline int valuation(Integer n, std::uint64_t p)
{
    if (n == 0)
        return kInfiniteValuation;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// n / p^valuation(n), keeping the sign.
inline Integer unit_part(Integer n, std::uint64_t p)
{
    if (n == 0)
        return n;
    while (n % p == 0)
        n /= p;
    return n;
}

inline Integer ipow(const Integer& base, unsigned exp)
{
    return boost::multiprecision::pow(base, exp);
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0)
            return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

inline bool is_probable_prime(const Integer& n)
{
    if (n < 2)
        return false;
    if (n <= std::numeric_limits<std::uint64_t>::max())
        return is_prime_u64(n.convert_to<std::uint64_t>());
    std::mt19937_64 rng(0x7157);
    return boost::multiprecision::miller_rabin_test(n, 32, rng);
}

/// Throws InvalidPrime unless p is an odd prime usable as a field modulus.
inline void require_odd_prime(std::uint64_t p)
{
    if (p == 2)
        throw Error(ErrorCode::InvalidPrime, "p = 2 is excluded");
    if (p > kMaxFieldPrime)
        throw Error(ErrorCode::InvalidPrime, "p = " + std::to_string(p) + " exceeds 2^32");
    if (!is_prime_u64(p))
        throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not prime");
}

/// Euler's criterion: +1 for a nonzero square mod p, -1 for a non-square, 0 for 0.
inline int legendre(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0)
        return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Smallest square root of a quadratic residue a mod an odd prime p (Tonelli-Shanks).
inline std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0)
        return 0;
    if (legendre(a, p) != 1)
        throw Error(ErrorCode::PreconditionFailed, "sqrt_mod: non-residue");
    std::uint64_t root;
    if (p % 4 == 3) {
        root = powmod(a, (p + 1) / 4, p);
    } else {
        std::uint64_t q = p - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        std::uint64_t z = 2;
        while (legendre(z, p) != -1)
            ++z;
        std::uint64_t c = powmod(z, q, p);
        std::uint64_t r = powmod(a, (q + 1) / 2, p);
        std::uint64_t t = powmod(a, q, p);
        int m = s;
        while (t != 1) {
            int i = 1;
            std::uint64_t t2 = mulmod(t, t, p);
            while (t2 != 1) {
                t2 = mulmod(t2, t2, p);
                ++i;
            }
            std::uint64_t b = c;
            for (int j = 0; j < m - i - 1; ++j)
                b = mulmod(b, b, p);
            r = mulmod(r, b, p);
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            m = i;
        }
        root = r;
    }
    return std::min(root, p - root);
}

namespace detail {

inline Integer pollard_brent(const Integer& n, std::uint64_t seed)
{
    if (n % 2 == 0)
        return 2;
    std::mt19937_64 rng(seed);
    auto random_below = [&](const Integer& bound) {
        Integer r = 0;
        for (int i = 0; i < 8; ++i)
            r = (r << 64) + rng();
        return r % bound;
    };
    for (;;) {
        Integer y = random_below(n - 1) + 1;
        Integer c = random_below(n - 1) + 1;
        const std::uint64_t m = 128;
        Integer g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (Integer i = 0; i < r; ++i)
                y = (y * y + c) % n;
            Integer k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (Integer i = 0; i < std::min<Integer>(m, r - k); ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

inline void factor_into(const Integer& n, std::map<Integer, int>& out, std::uint64_t seed)
{
    if (n == 1)
        return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    Integer d = pollard_brent(n, seed);
    factor_into(d, out, seed + 1);
    factor_into(n / d, out, seed + 2);
}

} // namespace detail

/// Prime factorization of |n| (n != 0): trial division by small primes, then Pollard-Brent.
inline std::map<Integer, int> factor(Integer n)
{
    if (n == 0)
        throw Error(ErrorCode::PreconditionFailed, "factor(0)");
    std::map<Integer, int> out;
    if (n < 0)
        n = -n;
    for (std::uint64_t q = 2; q < 10000 && q * q <= n; q += (q == 2 ? 1 : 2)) {
        while (n % q == 0) {
            ++out[Integer(q)];
            n /= q;
        }
    }
    if (n > 1)
        detail::factor_into(n, out, 0x5eed);
    return out;
}

/// Sign-preserving squarefree part: the unique squarefree s with n = s * k^2.
inline Integer squarefree_part(const Integer& n)
{
    if (n == 0)
        throw Error(ErrorCode::ZeroTwist, "zero has no squarefree part");
    Integer s = n < 0 ? -1 : 1;
    for (const auto& [q, e] : factor(n)) {
        if (e % 2)
            s *= q;
    }
    return s;
}

inline bool is_squarefree(const Integer& n)
{
    if (n == 0)
        return false;
    for (const auto& [q, e] : factor(n)) {
        if (e > 1)
            return false;
    }
    return true;
}

} // namespace twistlab

#endif // TWISTLAB_INTEGER_HPP
