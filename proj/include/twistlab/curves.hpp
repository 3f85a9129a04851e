#ifndef TWISTLAB_CURVES_HPP
#define TWISTLAB_CURVES_HPP

#include <twistlab/error.hpp>
#include <twistlab/integer.hpp>
#include <twistlab/poly.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace twistlab {

/// The curve d*y^2 = f(x) with f squarefree of degree >= 3 and d squarefree.
class HyperellipticTwist {
public:
    HyperellipticTwist(IntPolynomial f, const Integer& d) : f_(std::move(f))
    {
        if (d == 0)
            throw Error(ErrorCode::ZeroTwist, "twist parameter must be nonzero");
        if (f_.is_zero() || f_.degree() < 3)
            throw Error(ErrorCode::GenusTooSmall, "deg f must be at least 3, got " + f_.to_string());
        if (discriminant(f_) == 0)
            throw Error(ErrorCode::SingularCurve, f_.to_string() + " has a repeated root");
        d_ = squarefree_part(d);
        genus_ = static_cast<int>((f_.degree().value() - 1) / 2);
    }

    const IntPolynomial& f() const noexcept { return f_; }
    const Integer& d() const noexcept { return d_; }
    int genus() const noexcept { return genus_; }
    std::size_t degree() const { return f_.degree().value(); }

    friend bool operator==(const HyperellipticTwist&, const HyperellipticTwist&) = default;

private:
    IntPolynomial f_;
    Integer d_;
    int genus_ = 0;
};

inline HyperellipticTwist make_curve(const IntPolynomial& f) { return HyperellipticTwist(f, 1); }

/// Twist by d0: the new parameter is the squarefree part of d * d0.
inline HyperellipticTwist make_twist(const HyperellipticTwist& curve, const Integer& d0)
{
    if (d0 == 0)
        throw Error(ErrorCode::ZeroTwist, "twist by zero");
    return HyperellipticTwist(curve.f(), curve.d() * d0);
}

// ---------------------------------------------------------------------------
// Equation changes x = (a u + b)/(c u + d), y = e z / (c u + d)^(g+1)
// ---------------------------------------------------------------------------

struct MobiusTransform {
    Integer a = 1, b = 0, c = 0, d = 1;
    Rational e = 1;

    Integer determinant() const { return a * d - b * c; }

    /// The transform undoing this one on a curve of the given genus.
    MobiusTransform inverse(int genus) const
    {
        const Integer det = determinant();
        if (det == 0 || e == 0)
            throw Error(ErrorCode::SingularTransform, "transform is not invertible");
        Rational scale = Rational(ipow(det, static_cast<unsigned>(genus + 1))) / e;
        return MobiusTransform{d, -b, -c, a, scale};
    }
};

inline HyperellipticTwist transform_equation(const HyperellipticTwist& curve, const MobiusTransform& m)
{
    if (m.determinant() == 0 || m.e == 0)
        throw Error(ErrorCode::SingularTransform, "degenerate transform");
    const std::size_t n = 2 * static_cast<std::size_t>(curve.genus()) + 2;
    const IntPolynomial num{m.b, m.a};
    const IntPolynomial den{m.d, m.c};

    std::vector<IntPolynomial> den_powers{IntPolynomial{1}};
    for (std::size_t i = 1; i <= n; ++i)
        den_powers.push_back(den_powers.back() * den);

    IntPolynomial acc;
    IntPolynomial num_power{1};
    for (std::size_t i = 0; i <= curve.degree(); ++i) {
        acc = acc + curve.f().coeff(i) * (num_power * den_powers[n - i]);
        num_power = num_power * num;
    }
    const Integer e_num = numerator(m.e);
    const Integer e_den = denominator(m.e);
    IntPolynomial scaled = (e_den * e_den) * acc;
    IntPolynomial out;
    try {
        out = scaled.divide_exact(e_num * e_num);
    } catch (const Error&) {
        throw Error(ErrorCode::NonIntegralTransform, "coefficients not integral after dividing by e^2");
    }
    HyperellipticTwist result(std::move(out), curve.d());
    if (result.genus() != curve.genus())
        throw Error(ErrorCode::InvariantViolation, "transform changed the genus");
    return result;
}

// ---------------------------------------------------------------------------
// Per-prime classification
// ---------------------------------------------------------------------------

enum class PrimeKind { Excluded, Bad, GoodWithRoot, GoodNoRoot };

constexpr std::string_view to_string(PrimeKind kind) noexcept
{
    switch (kind) {
    case PrimeKind::Excluded: return "EXCLUDED";
    case PrimeKind::Bad: return "BAD";
    case PrimeKind::GoodWithRoot: return "GOOD_WITH_ROOT";
    case PrimeKind::GoodNoRoot: return "GOOD_NO_ROOT";
    }
    return "?";
}

constexpr bool is_good(PrimeKind kind) noexcept
{
    return kind == PrimeKind::GoodWithRoot || kind == PrimeKind::GoodNoRoot;
}

struct PrimeClassification {
    std::uint64_t p = 0;
    PrimeKind kind = PrimeKind::Excluded;
    std::size_t root_count = 0;
    std::optional<FactorShape> shape; // good primes only
    std::size_t reduced_degree = 0;   // deg(f mod p), good primes only

    /// The point at infinity is an F_p-rational ramification point.
    bool infinity_ramified() const noexcept { return reduced_degree % 2 == 1; }
};

/// Good at p iff f mod p is squarefree of degree 2g+1 or 2g+2. The "no root"
/// kind also needs the reduced degree to be even, so that infinity is not a
/// rational ramification point either.
inline PrimeClassification classify_prime(const HyperellipticTwist& curve, std::uint64_t p)
{
    PrimeClassification out;
    out.p = p;
    if (p == 2)
        return out;
    require_odd_prime(p);
    const FpPolynomial fbar = reduce_mod_p(curve.f(), p);
    const std::size_t min_degree = 2 * static_cast<std::size_t>(curve.genus()) + 1;
    if (fbar.is_zero() || fbar.degree() < min_degree || !is_squarefree(fbar)) {
        out.kind = PrimeKind::Bad;
        return out;
    }
    out.reduced_degree = fbar.degree().value();
    out.shape = factorization_shape(fbar);
    out.root_count = static_cast<std::size_t>(std::count(out.shape->begin(), out.shape->end(), 1));
    out.kind = (out.root_count == 0 && out.reduced_degree % 2 == 0) ? PrimeKind::GoodNoRoot
                                                                   : PrimeKind::GoodWithRoot;
    return out;
}

struct RamificationPoints {
    std::vector<Residue> affine; // roots of f mod p, ascending
    bool infinity = false;

    std::size_t size() const noexcept { return affine.size() + (infinity ? 1 : 0); }
};

/// F_p-rational ramification points of the double cover at a good prime.
inline RamificationPoints ramification_points_mod_p(const HyperellipticTwist& curve, std::uint64_t p)
{
    const PrimeClassification cls = classify_prime(curve, p);
    if (!is_good(cls.kind))
        throw Error(ErrorCode::BadPrime, std::to_string(p) + " is not a good odd prime");
    RamificationPoints out;
    out.affine = roots_mod_p(reduce_mod_p(curve.f(), p));
    out.infinity = cls.infinity_ramified();
    return out;
}

// ---------------------------------------------------------------------------
// Irreducibility over Q, certified through a single prime
// ---------------------------------------------------------------------------

enum class Irreducibility { Certified, Unknown, Asserted };

constexpr std::string_view to_string(Irreducibility status) noexcept
{
    switch (status) {
    case Irreducibility::Certified: return "CERTIFIED";
    case Irreducibility::Unknown: return "UNKNOWN_IRREDUCIBILITY";
    case Irreducibility::Asserted: return "ASSERTED";
    }
    return "?";
}

struct IrreducibilityCertificate {
    Irreducibility status = Irreducibility::Unknown;
    std::optional<std::uint64_t> prime; // f mod prime is irreducible of full degree
};

/// Sound but incomplete: fires only when f stays irreducible of full degree
/// modulo some odd prime up to the bound.
inline IrreducibilityCertificate certify_irreducible(const IntPolynomial& f, std::uint64_t bound = 1000)
{
    IrreducibilityCertificate cert;
    if (f.is_zero() || f.degree() < 1)
        return cert;
    const std::size_t n = f.degree().value();
    if (n == 1 || f.content() != 1) {
        if (n == 1 && f.content() == 1)
            cert.status = Irreducibility::Certified;
        return cert;
    }
    for (std::uint64_t p = 3; p <= bound; p += 2) {
        if (!is_prime_u64(p))
            continue;
        const FpPolynomial fbar = reduce_mod_p(f, p);
        if (fbar.degree() != n || !is_squarefree(fbar))
            continue;
        if (factorization_shape(fbar) == FactorShape{static_cast<int>(n)}) {
            cert.status = Irreducibility::Certified;
            cert.prime = p;
            return cert;
        }
    }
    return cert;
}

/// Odd primes dividing lc(f) * disc(f), each resolved as good or bad for the
/// curve. Primes above the field-arithmetic limit are left unresolved.
inline std::vector<std::pair<Integer, std::optional<PrimeKind>>> candidate_bad_primes(const HyperellipticTwist& curve)
{
    std::vector<std::pair<Integer, std::optional<PrimeKind>>> out;
    const Integer n = curve.f().leading() * discriminant(curve.f());
    for (const auto& [q, e] : factor(n)) {
        if (q == 2)
            continue;
        if (q > kMaxFieldPrime) {
            out.emplace_back(q, std::nullopt);
            continue;
        }
        out.emplace_back(q, classify_prime(curve, q.convert_to<std::uint64_t>()).kind);
    }
    return out;
}

} // namespace twistlab

#endif // TWISTLAB_CURVES_HPP
