#ifndef TWISTLAB_POLY_HPP
#define TWISTLAB_POLY_HPP

#include <twistlab/error.hpp>
#include <twistlab/integer.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace twistlab {

/// Polynomial degree with a distinct value for the zero polynomial (-infinity).
class Degree {
public:
    constexpr Degree() = default; // -infinity
    constexpr explicit Degree(std::size_t value) : value_(value), finite_(true) {}

    static constexpr Degree neg_infinity() { return Degree(); }

    constexpr bool is_neg_infinity() const noexcept { return !finite_; }

    std::size_t value() const
    {
        if (!finite_)
            throw Error(ErrorCode::ZeroPolynomial, "degree of the zero polynomial");
        return value_;
    }

    constexpr bool operator==(const Degree& other) const noexcept
    {
        return finite_ == other.finite_ && (!finite_ || value_ == other.value_);
    }

    constexpr std::strong_ordering operator<=>(const Degree& other) const noexcept
    {
        if (!finite_ || !other.finite_)
            return finite_ <=> other.finite_;
        return value_ <=> other.value_;
    }

    constexpr bool operator==(std::size_t n) const noexcept { return finite_ && value_ == n; }
    constexpr std::strong_ordering operator<=>(std::size_t n) const noexcept
    {
        return *this <=> Degree(n);
    }

    /// Degree of a product; -infinity absorbs.
    constexpr Degree operator+(const Degree& other) const noexcept
    {
        if (!finite_ || !other.finite_)
            return Degree();
        return Degree(value_ + other.value_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Degree& d)
    {
        return d.finite_ ? os << d.value_ : os << "-inf";
    }

private:
    std::size_t value_ = 0;
    bool finite_ = false;
};

/// Multiset of irreducible-factor degrees, sorted ascending.
using FactorShape = std::vector<int>;

// ---------------------------------------------------------------------------
// Integer polynomials
// ---------------------------------------------------------------------------

/// Dense univariate polynomial over Z; coeffs()[i] is the coefficient of x^i.
class IntPolynomial {
public:
    IntPolynomial() = default;

    IntPolynomial(std::initializer_list<Integer> coeffs) : coeffs_(coeffs) { normalize(); }

    explicit IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    static IntPolynomial monomial(const Integer& c, std::size_t n)
    {
        std::vector<Integer> v(n + 1);
        v[n] = c;
        return IntPolynomial(std::move(v));
    }

    const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    Degree degree() const noexcept
    {
        return coeffs_.empty() ? Degree::neg_infinity() : Degree(coeffs_.size() - 1);
    }

    Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }

    const Integer& leading() const
    {
        if (coeffs_.empty())
            throw Error(ErrorCode::ZeroPolynomial, "leading coefficient of zero");
        return coeffs_.back();
    }

    Integer operator()(const Integer& x) const
    {
        Integer acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    /// gcd of the coefficients, nonnegative; 0 for the zero polynomial.
    Integer content() const
    {
        Integer g = 0;
        for (const auto& c : coeffs_)
            g = gcd(g, c);
        return g;
    }

    IntPolynomial derivative() const
    {
        if (coeffs_.size() <= 1)
            return {};
        std::vector<Integer> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            d[i - 1] = coeffs_[i] * i;
        return IntPolynomial(std::move(d));
    }

    /// f(x + shift)
    IntPolynomial taylor_shift(const Integer& shift) const
    {
        std::vector<Integer> c = coeffs_;
        const std::size_t n = c.size();
        if (shift == 0 || n < 2)
            return IntPolynomial(std::move(c));
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = n - 1; j > i; --j)
                c[j - 1] += shift * c[j];
        }
        return IntPolynomial(std::move(c));
    }

    /// f(scale * x)
    IntPolynomial scale_variable(const Integer& scale) const
    {
        std::vector<Integer> c = coeffs_;
        Integer power = 1;
        for (auto& a : c) {
            a *= power;
            power *= scale;
        }
        return IntPolynomial(std::move(c));
    }

    /// x^n f(1/x); requires n >= deg f.
    IntPolynomial reversed(std::size_t n) const
    {
        if (!is_zero() && coeffs_.size() - 1 > n)
            throw Error(ErrorCode::DegreeTooSmall, "reversal length below degree");
        std::vector<Integer> c(n + 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            c[n - i] = coeffs_[i];
        return IntPolynomial(std::move(c));
    }

    /// Exact division of every coefficient by a nonzero integer; throws if inexact.
    IntPolynomial divide_exact(const Integer& divisor) const
    {
        std::vector<Integer> c = coeffs_;
        for (auto& a : c) {
            if (a % divisor != 0)
                throw Error(ErrorCode::NonIntegralTransform, "inexact coefficient division");
            a /= divisor;
        }
        return IntPolynomial(std::move(c));
    }

    IntPolynomial operator-() const
    {
        std::vector<Integer> c = coeffs_;
        for (auto& a : c)
            a = -a;
        return IntPolynomial(std::move(c));
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b)
    {
        std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(i) + b.coeff(i);
        return IntPolynomial(std::move(c));
    }

    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntPolynomial(std::move(c));
    }

    friend IntPolynomial operator*(const Integer& s, const IntPolynomial& a)
    {
        std::vector<Integer> c = a.coeffs_;
        for (auto& x : c)
            x *= s;
        return IntPolynomial(std::move(c));
    }

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

    /// Human-readable form, highest degree first, e.g. "x^4 - 3*x + 1".
    std::string to_string() const
    {
        if (is_zero())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            const Integer& c = coeffs_[k];
            if (c == 0)
                continue;
            Integer mag = abs(c);
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            first = false;
            if (k == 0 || mag != 1) {
                os << mag;
                if (k > 0)
                    os << "*";
            }
            if (k >= 1)
                os << "x";
            if (k >= 2)
                os << "^" << k;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const IntPolynomial& f) { return os << f.to_string(); }

private:
    void normalize()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0)
            coeffs_.pop_back();
    }

    std::vector<Integer> coeffs_;
};

/// lc(b)^(deg a - deg b + 1) * a mod b, computed without division.
inline IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b)
{
    if (b.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "pseudo-remainder by zero");
    std::vector<Integer> r = a.coeffs();
    const std::size_t db = b.degree().value();
    const Integer& lb = b.leading();
    if (a.is_zero() || a.degree() < db)
        return a;
    std::size_t e = a.degree().value() - db + 1;
    while (r.size() > db && !r.empty()) {
        const std::size_t shift = r.size() - 1 - db;
        const Integer lr = r.back();
        for (auto& c : r)
            c *= lb;
        for (std::size_t i = 0; i <= db; ++i)
            r[shift + i] -= lr * b.coeffs()[i];
        while (!r.empty() && r.back() == 0)
            r.pop_back();
        --e;
    }
    IntPolynomial rem(std::move(r));
    return ipow(lb, static_cast<unsigned>(e)) * rem;
}

/// Res(a, b) over Z by the subresultant PRS; exact.
inline Integer resultant(IntPolynomial a, IntPolynomial b)
{
    if (a.is_zero() || b.is_zero())
        return 0;
    Integer sign = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if (a.degree().value() % 2 == 1 && b.degree().value() % 2 == 1)
            sign = -sign;
    }
    if (b.degree() == 0)
        return sign * ipow(b.leading(), static_cast<unsigned>(a.degree().value()));

    const Integer ca = a.content();
    const Integer cb = b.content();
    const Integer t = ipow(ca, static_cast<unsigned>(b.degree().value())) *
                      ipow(cb, static_cast<unsigned>(a.degree().value()));
    a = a.divide_exact(ca);
    b = b.divide_exact(cb);
    Integer g = 1, h = 1;
    for (;;) {
        const std::size_t da = a.degree().value();
        const std::size_t db = b.degree().value();
        const unsigned delta = static_cast<unsigned>(da - db);
        if (da % 2 == 1 && db % 2 == 1)
            sign = -sign;
        IntPolynomial r = pseudo_remainder(a, b);
        a = b;
        if (r.is_zero())
            return 0;
        b = r.divide_exact(g * ipow(h, delta));
        g = a.leading();
        if (delta != 0) // h <- h^(1-delta) g^delta
            h = ipow(g, delta) / ipow(h, delta - 1);
        if (b.degree() == 0) {
            const unsigned da2 = static_cast<unsigned>(a.degree().value());
            h = ipow(b.leading(), da2) / ipow(h, da2 - 1);
            return sign * t * h;
        }
    }
}

/// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f).
inline Integer discriminant(const IntPolynomial& f)
{
    if (f.is_zero() || f.degree() < 2)
        throw Error(ErrorCode::DegreeTooSmall, "discriminant needs degree >= 2");
    const std::size_t n = f.degree().value();
    Integer res = resultant(f, f.derivative()) / f.leading();
    return (n * (n - 1) / 2) % 2 ? Integer(-res) : res;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p
// ---------------------------------------------------------------------------

/// Dense polynomial over the prime field F_p, p an odd prime below 2^32.
class FpPolynomial {
public:
    struct Unchecked {};

    FpPolynomial(std::uint64_t p, std::vector<Residue> coeffs) : p_(p), coeffs_(std::move(coeffs))
    {
        require_odd_prime(p);
        for (auto& c : coeffs_)
            c %= p_;
        normalize();
    }

    FpPolynomial(std::uint64_t p, std::initializer_list<Residue> coeffs)
        : FpPolynomial(p, std::vector<Residue>(coeffs))
    {
    }

    /// Skips the primality test; coefficients must already be reduced.
    FpPolynomial(Unchecked, std::uint64_t p, std::vector<Residue> coeffs) : p_(p), coeffs_(std::move(coeffs))
    {
        normalize();
    }

    static FpPolynomial x(std::uint64_t p) { return FpPolynomial(Unchecked{}, p, {0, 1}); }
    static FpPolynomial constant(std::uint64_t p, Residue c) { return FpPolynomial(Unchecked{}, p, {c % p}); }

    std::uint64_t modulus() const noexcept { return p_; }
    const std::vector<Residue>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    Degree degree() const noexcept
    {
        return coeffs_.empty() ? Degree::neg_infinity() : Degree(coeffs_.size() - 1);
    }
    Residue coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
    Residue leading() const
    {
        if (coeffs_.empty())
            throw Error(ErrorCode::ZeroPolynomial, "leading coefficient of zero");
        return coeffs_.back();
    }

    Residue operator()(Residue x) const
    {
        Residue acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = (acc * x + *it) % p_;
        return acc;
    }

    FpPolynomial monic() const
    {
        if (is_zero())
            return *this;
        const Residue inv = inverse(leading());
        std::vector<Residue> c = coeffs_;
        for (auto& a : c)
            a = a * inv % p_;
        return FpPolynomial(Unchecked{}, p_, std::move(c));
    }

    FpPolynomial derivative() const
    {
        if (coeffs_.size() <= 1)
            return FpPolynomial(Unchecked{}, p_, {});
        std::vector<Residue> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            d[i - 1] = coeffs_[i] * (i % p_) % p_;
        return FpPolynomial(Unchecked{}, p_, std::move(d));
    }

    Residue inverse(Residue a) const
    {
        if (a % p_ == 0)
            throw Error(ErrorCode::PreconditionFailed, "inverse of zero in F_p");
        return powmod(a, p_ - 2, p_);
    }

    friend FpPolynomial operator+(const FpPolynomial& a, const FpPolynomial& b)
    {
        check_same(a, b);
        std::vector<Residue> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
        return FpPolynomial(Unchecked{}, a.p_, std::move(c));
    }

    friend FpPolynomial operator-(const FpPolynomial& a, const FpPolynomial& b)
    {
        check_same(a, b);
        std::vector<Residue> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = (a.coeff(i) + a.p_ - b.coeff(i)) % a.p_;
        return FpPolynomial(Unchecked{}, a.p_, std::move(c));
    }

    friend FpPolynomial operator*(const FpPolynomial& a, const FpPolynomial& b)
    {
        check_same(a, b);
        if (a.is_zero() || b.is_zero())
            return FpPolynomial(Unchecked{}, a.p_, {});
        std::vector<Residue> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] = (c[i + j] + a.coeffs_[i] * b.coeffs_[j]) % a.p_;
        }
        return FpPolynomial(Unchecked{}, a.p_, std::move(c));
    }

    /// Quotient and remainder; b must be nonzero.
    friend std::pair<FpPolynomial, FpPolynomial> divmod(const FpPolynomial& a, const FpPolynomial& b)
    {
        check_same(a, b);
        if (b.is_zero())
            throw Error(ErrorCode::ZeroPolynomial, "division by zero polynomial");
        const std::uint64_t p = a.p_;
        std::vector<Residue> r = a.coeffs_;
        const std::size_t db = b.coeffs_.size() - 1;
        if (r.size() <= db)
            return {FpPolynomial(Unchecked{}, p, {}), a};
        std::vector<Residue> q(r.size() - db, 0);
        const Residue inv = b.inverse(b.leading());
        for (std::size_t k = r.size(); k-- > db;) {
            const Residue coef = r[k] * inv % p;
            q[k - db] = coef;
            if (coef == 0)
                continue;
            for (std::size_t i = 0; i <= db; ++i)
                r[k - db + i] = (r[k - db + i] + p - coef * b.coeffs_[i] % p) % p;
        }
        r.resize(db);
        return {FpPolynomial(Unchecked{}, p, std::move(q)), FpPolynomial(Unchecked{}, p, std::move(r))};
    }

    friend FpPolynomial operator%(const FpPolynomial& a, const FpPolynomial& b) { return divmod(a, b).second; }
    friend FpPolynomial operator/(const FpPolynomial& a, const FpPolynomial& b) { return divmod(a, b).first; }

    friend bool operator==(const FpPolynomial&, const FpPolynomial&) = default;

    std::string to_string() const
    {
        std::vector<Integer> c(coeffs_.begin(), coeffs_.end());
        return IntPolynomial(std::move(c)).to_string() + " (mod " + std::to_string(p_) + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const FpPolynomial& f) { return os << f.to_string(); }

    static void check_same(const FpPolynomial& a, const FpPolynomial& b)
    {
        if (a.p_ != b.p_)
            throw Error(ErrorCode::ModulusMismatch,
                        "moduli " + std::to_string(a.p_) + " and " + std::to_string(b.p_));
    }

private:
    void normalize()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0)
            coeffs_.pop_back();
    }

    std::uint64_t p_;
    std::vector<Residue> coeffs_;
};

inline FpPolynomial reduce_mod_p(const IntPolynomial& f, std::uint64_t p)
{
    require_odd_prime(p);
    std::vector<Residue> c;
    c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs())
        c.push_back(mod_u64(a, p));
    return FpPolynomial(FpPolynomial::Unchecked{}, p, std::move(c));
}

inline IntPolynomial derivative(const IntPolynomial& f) { return f.derivative(); }
inline FpPolynomial derivative(const FpPolynomial& f) { return f.derivative(); }

/// Monic gcd; gcd(0, 0) = 0.
inline FpPolynomial gcd_fp(FpPolynomial a, FpPolynomial b)
{
    FpPolynomial::check_same(a, b);
    while (!b.is_zero()) {
        FpPolynomial r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// base^exp mod m.
inline FpPolynomial powmod(FpPolynomial base, Integer exp, const FpPolynomial& m)
{
    FpPolynomial::check_same(base, m);
    if (m.is_zero() || m.degree() < 1)
        throw Error(ErrorCode::DegreeTooSmall, "modulus must have degree >= 1");
    if (exp < 0)
        throw Error(ErrorCode::PreconditionFailed, "negative exponent");
    FpPolynomial result = FpPolynomial::constant(m.modulus(), 1) % m;
    base = base % m;
    while (exp > 0) {
        if (bit_test(exp, 0))
            result = result * base % m;
        exp >>= 1;
        if (exp > 0)
            base = base * base % m;
    }
    return result;
}

/// x^e mod f.
inline FpPolynomial powmod_x_p(const Integer& e, const FpPolynomial& f)
{
    if (f.is_zero() || f.degree() < 1)
        throw Error(ErrorCode::DegreeTooSmall, "powmod_x_p needs deg f >= 1");
    if (e < 1)
        throw Error(ErrorCode::PreconditionFailed, "exponent must be positive");
    return powmod(FpPolynomial::x(f.modulus()), e, f);
}

inline bool is_squarefree(const FpPolynomial& f)
{
    if (f.is_zero())
        return false;
    return gcd_fp(f, f.derivative()).degree() == 0;
}

/// Number of distinct roots in F_p: deg gcd(x^p - x, f).
inline std::size_t root_count_mod_p(const FpPolynomial& f)
{
    if (f.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "root count of zero polynomial");
    if (f.degree() == 0)
        return 0;
    const std::uint64_t p = f.modulus();
    FpPolynomial xp = powmod_x_p(Integer(p), f);
    return gcd_fp(xp - FpPolynomial::x(p), f).degree().value();
}

/// Distinct-degree factorization of a squarefree polynomial; returns factor degrees.
inline FactorShape factorization_shape(const FpPolynomial& f)
{
    if (!is_squarefree(f))
        throw Error(ErrorCode::NotSquarefree, f.to_string());
    FactorShape shape;
    const std::uint64_t p = f.modulus();
    FpPolynomial rest = f.monic();
    const FpPolynomial x = FpPolynomial::x(p);
    FpPolynomial h = x % rest.monic();
    for (std::size_t d = 1; rest.degree() >= 2 * d; ++d) {
        h = powmod(h, Integer(p), rest);
        FpPolynomial g = gcd_fp(h - x, rest);
        if (g.degree() > 0) {
            const std::size_t count = g.degree().value() / d;
            shape.insert(shape.end(), count, static_cast<int>(d));
            rest = rest / g;
            if (rest.degree() >= 1)
                h = h % rest;
        }
    }
    if (rest.degree() > 0)
        shape.push_back(static_cast<int>(rest.degree().value()));
    std::sort(shape.begin(), shape.end());
    return shape;
}

/// Distinct roots in F_p, ascending, by equal-degree splitting of gcd(x^p - x, f).
inline std::vector<Residue> roots_mod_p(const FpPolynomial& f)
{
    if (f.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "roots of zero polynomial");
    const std::uint64_t p = f.modulus();
    std::vector<Residue> roots;
    if (f.degree() == 0)
        return roots;
    const FpPolynomial x = FpPolynomial::x(p);
    FpPolynomial linear = gcd_fp(powmod_x_p(Integer(p), f) - x, f);
    std::vector<FpPolynomial> pending{linear};
    Residue shift = 0;
    while (!pending.empty()) {
        FpPolynomial g = std::move(pending.back());
        pending.pop_back();
        if (g.degree() == 0)
            continue;
        if (g.degree() == 1) {
            roots.push_back((p - g.coeff(0)) % p); // g is monic
            continue;
        }
        // split with (x + shift)^((p-1)/2) - 1, trying successive shifts
        for (;; ++shift) {
            FpPolynomial probe = FpPolynomial(FpPolynomial::Unchecked{}, p, {shift % p, 1});
            FpPolynomial w = powmod(probe, Integer((p - 1) / 2), g) - FpPolynomial::constant(p, 1);
            FpPolynomial d = gcd_fp(w, g);
            if (d.degree() > 0 && d.degree() < g.degree()) {
                pending.push_back((g / d).monic());
                pending.push_back(d);
                ++shift;
                break;
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace twistlab

#endif // TWISTLAB_POLY_HPP
