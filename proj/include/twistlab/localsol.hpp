#ifndef TWISTLAB_LOCALSOL_HPP
#define TWISTLAB_LOCALSOL_HPP

#include <twistlab/curves.hpp>
#include <twistlab/error.hpp>
#include <twistlab/integer.hpp>
#include <twistlab/poly.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace twistlab {

enum class Solubility { Soluble, Insoluble, Unknown };

constexpr std::string_view to_string(Solubility s) noexcept
{
    switch (s) {
    case Solubility::Soluble: return "SOLUBLE";
    case Solubility::Insoluble: return "INSOLUBLE";
    case Solubility::Unknown: return "UNKNOWN";
    }
    return "?";
}

/// Affine chart: x in Z_p. Infinity chart: u = 1/x in p Z_p, on d w^2 = u^(2g+2) f(1/u).
enum class Chart { Affine, Infinity };

enum class WitnessKind {
    SquareClass,     // F has constant valuation and square class on the residue class
    HenselRoot,      // F has a root in the residue class; the point has y = 0
    PointAtInfinity, // deg f odd, or lc(f)/d is a square
};

constexpr std::string_view to_string(Chart c) noexcept
{
    return c == Chart::Affine ? "affine" : "infinity";
}

constexpr std::string_view to_string(WitnessKind k) noexcept
{
    switch (k) {
    case WitnessKind::SquareClass: return "square_class";
    case WitnessKind::HenselRoot: return "hensel_root";
    case WitnessKind::PointAtInfinity: return "point_at_infinity";
    }
    return "?";
}

/// A p-adic point certificate: the chart coordinate lies in base + p^precision Z_p.
/// For SquareClass, y = p^((valuation - v_p(d))/2) * Y with Y = y_unit mod p.
struct Witness {
    Chart chart = Chart::Affine;
    WitnessKind kind = WitnessKind::SquareClass;
    Integer base = 0;
    int precision = 0;
    int valuation = 0;
    Residue y_unit = 0;
};

struct SolubilityVerdict {
    Solubility status = Solubility::Unknown;
    std::optional<Witness> witness;
    int depth_used = 0;
    int max_depth = 0;
    std::size_t classes_examined = 0; // residue classes visited; the exhaustion certificate size
};

enum class Prediction { PredictedInsoluble, NoPrediction };

constexpr std::string_view to_string(Prediction p) noexcept
{
    return p == Prediction::PredictedInsoluble ? "PREDICTED_INSOLUBLE" : "NO_PREDICTION";
}

/// v_p(disc f) + 2g + 4: enough for the discriminant-driven descent plus the reversed chart.
inline int default_max_depth(const HyperellipticTwist& curve, std::uint64_t p)
{
    const int v = valuation(discriminant(curve.f()), p);
    return v + 2 * curve.genus() + 4;
}

/// The curve's equation in the given chart: f itself, or its degree-(2g+2) reversal.
inline IntPolynomial chart_polynomial(const HyperellipticTwist& curve, Chart chart)
{
    if (chart == Chart::Affine)
        return curve.f();
    return curve.f().reversed(2 * static_cast<std::size_t>(curve.genus()) + 2);
}

namespace detail {

// Residue-class descent. The twist enters only through the parity of
// v_p(d / p^E) and the quadratic character of the unit part of d.
class ResidueSearch {
public:
    ResidueSearch(std::uint64_t p, const Integer& d, int max_depth)
        : p_(p), d_valuation_(valuation(d, p)), d_unit_(mod_u64(unit_part(d, p), p)),
          d_character_(legendre(d_unit_, p)), max_depth_(max_depth)
    {
    }

    /// Searches t in Z_p with F(base + p^m t) = p^E g(t), g primitive.
    std::optional<Witness> run(const IntPolynomial& g, Chart chart, const Integer& base, int m, int E, int level)
    {
        depth_used_ = std::max(depth_used_, level);
        const FpPolynomial gbar = reduce_mod_p(g, p_);
        const FpPolynomial dgbar = gbar.derivative();
        const bool even_twist = (d_valuation_ - E) % 2 == 0;
        const Integer step = ipow(Integer(p_), static_cast<unsigned>(m));
        for (Residue r = 0; r < p_; ++r) {
            ++classes_;
            const Residue value = gbar(r);
            const Integer point = base + step * r;
            if (value != 0) {
                if (even_twist && legendre(value, p_) * d_character_ == 1) {
                    const Residue ratio = mulmod(value, powmod(d_unit_, p_ - 2, p_), p_);
                    return Witness{chart, WitnessKind::SquareClass, point, m + 1, E, sqrt_mod(ratio, p_)};
                }
                continue;
            }
            if (dgbar(r) != 0)
                return Witness{chart, WitnessKind::HenselRoot, point, m + 1, E, 0};
            if (level >= max_depth_) {
                truncated_ = true;
                continue;
            }
            IntPolynomial h = g.taylor_shift(Integer(r)).scale_variable(Integer(p_));
            const int e = valuation(h.content(), p_);
            h = h.divide_exact(ipow(Integer(p_), static_cast<unsigned>(e)));
            if (auto w = run(h, chart, point, m + 1, E + e, level + 1))
                return w;
        }
        return std::nullopt;
    }

    int depth_used() const noexcept { return depth_used_; }
    std::size_t classes() const noexcept { return classes_; }
    bool truncated() const noexcept { return truncated_; }

private:
    std::uint64_t p_;
    int d_valuation_;
    Residue d_unit_;
    int d_character_;
    int max_depth_;
    int depth_used_ = 0;
    std::size_t classes_ = 0;
    bool truncated_ = false;
};

/// lc(f)/d in Q_p*^2, with the square root of the unit ratio.
inline std::optional<Witness> infinity_witness(const HyperellipticTwist& curve, std::uint64_t p)
{
    const Integer& lc = curve.f().leading();
    const int v = valuation(lc, p);
    if ((v - valuation(curve.d(), p)) % 2 != 0)
        return std::nullopt;
    const Residue lu = mod_u64(unit_part(lc, p), p);
    const Residue du = mod_u64(unit_part(curve.d(), p), p);
    if (legendre(lu, p) * legendre(du, p) != 1)
        return std::nullopt;
    const Residue ratio = mulmod(lu, powmod(du, p - 2, p), p);
    return Witness{Chart::Infinity, WitnessKind::PointAtInfinity, 0, 0, v, sqrt_mod(ratio, p)};
}

inline void require_solubility_prime(std::uint64_t p)
{
    if (p == 2)
        throw Error(ErrorCode::ExcludedPrime, "p = 2 is not supported");
    require_odd_prime(p);
}

} // namespace detail

/// Decides whether d*y^2 = f(x) has a Q_p-point (including points at infinity).
inline SolubilityVerdict is_locally_soluble(const HyperellipticTwist& curve, std::uint64_t p, int max_depth)
{
    detail::require_solubility_prime(p);
    if (max_depth <= 0)
        throw Error(ErrorCode::InvalidDepth, "max_depth must be positive");

    SolubilityVerdict verdict;
    verdict.max_depth = max_depth;
    if (curve.degree() % 2 == 1) {
        verdict.status = Solubility::Soluble;
        verdict.witness = Witness{Chart::Infinity, WitnessKind::PointAtInfinity, 0, 0, 0, 0};
        return verdict;
    }

    detail::ResidueSearch search(p, curve.d(), max_depth);
    auto finish = [&](std::optional<Witness> w) {
        verdict.depth_used = search.depth_used();
        verdict.classes_examined = search.classes();
        if (w) {
            verdict.status = Solubility::Soluble;
            verdict.witness = std::move(w);
        } else {
            verdict.status = search.truncated() ? Solubility::Unknown : Solubility::Insoluble;
        }
        return verdict;
    };

    const auto start = [&](const IntPolynomial& poly, Chart chart, int m) {
        IntPolynomial g = m == 0 ? poly : poly.scale_variable(ipow(Integer(p), static_cast<unsigned>(m)));
        const int e = valuation(g.content(), p);
        g = g.divide_exact(ipow(Integer(p), static_cast<unsigned>(e)));
        return search.run(g, chart, 0, m, e, 1);
    };

    if (auto w = start(curve.f(), Chart::Affine, 0))
        return finish(std::move(w));
    if (auto w = detail::infinity_witness(curve, p))
        return finish(std::move(w));
    return finish(start(chart_polynomial(curve, Chart::Infinity), Chart::Infinity, 1));
}

inline SolubilityVerdict is_locally_soluble(const HyperellipticTwist& curve, std::uint64_t p)
{
    detail::require_solubility_prime(p);
    return is_locally_soluble(curve, p, default_max_depth(curve, p));
}

/// Re-derives a witness from scratch by exact Taylor expansion around its base point.
inline bool verify_witness(const HyperellipticTwist& curve, std::uint64_t p, const Witness& w)
{
    const Integer P = p;
    const int vd = valuation(curve.d(), p);
    const Residue du = mod_u64(unit_part(curve.d(), p), p);
    auto square_ratio = [&](const Integer& value, int v) {
        if ((v - vd) % 2 != 0)
            return false;
        const Residue vu = mod_u64(unit_part(value, p), p);
        const Residue ratio = mulmod(vu, powmod(du, p - 2, p), p);
        return w.y_unit != 0 && mulmod(w.y_unit, w.y_unit, p) == ratio;
    };

    if (w.kind == WitnessKind::PointAtInfinity) {
        if (curve.degree() % 2 == 1)
            return true;
        const Integer& lc = curve.f().leading();
        return valuation(lc, p) == w.valuation && square_ratio(lc, w.valuation);
    }
    if (w.precision < 1)
        return false;
    if (w.chart == Chart::Infinity && w.base % P != 0)
        return false;
    const IntPolynomial F = chart_polynomial(curve, w.chart);

    if (w.kind == WitnessKind::SquareClass) {
        const IntPolynomial h =
            F.taylor_shift(w.base).scale_variable(ipow(P, static_cast<unsigned>(w.precision)));
        const Integer h0 = h.coeff(0);
        if (h0 == 0)
            return false;
        const int E = valuation(h0, p);
        if (E != w.valuation)
            return false;
        const Integer modulus = ipow(P, static_cast<unsigned>(E + 1));
        for (std::size_t i = 1; i < h.coeffs().size(); ++i) {
            if (h.coeffs()[i] % modulus != 0)
                return false;
        }
        return square_ratio(h0, E);
    }

    // HenselRoot: F(base + p^(k-1) s) = p^E g(s) with g(0) = 0 mod p and g'(0) a unit.
    const IntPolynomial h =
        F.taylor_shift(w.base).scale_variable(ipow(P, static_cast<unsigned>(w.precision - 1)));
    const Integer h1 = h.coeff(1);
    if (h1 == 0)
        return false;
    const int E = valuation(h1, p);
    const Integer scale = ipow(P, static_cast<unsigned>(E));
    for (const auto& c : h.coeffs()) {
        if (c % scale != 0)
            return false;
    }
    return h.coeff(0) % (scale * P) == 0;
}

/// One-sided prediction: a good odd prime p | d with no F_p-rational
/// ramification point and f irreducible of even degree forces C_d(Q_p) empty.
inline Prediction predict_insolubility(const HyperellipticTwist& curve, std::uint64_t p, Irreducibility irreducibility)
{
    if (curve.degree() % 2 != 0 || irreducibility == Irreducibility::Unknown)
        return Prediction::NoPrediction;
    if (p == 2 || p > kMaxFieldPrime || !is_prime_u64(p) || curve.d() % p != 0)
        return Prediction::NoPrediction;
    return classify_prime(curve, p).kind == PrimeKind::GoodNoRoot ? Prediction::PredictedInsoluble
                                                                  : Prediction::NoPrediction;
}

inline Prediction predict_insolubility(const HyperellipticTwist& curve, std::uint64_t p)
{
    return predict_insolubility(curve, p, certify_irreducible(curve.f()).status);
}

/// At a good prime not dividing d and above 4g^2, the reduction has a smooth
/// F_p-point, which lifts. Returns the first one in residue order.
inline SolubilityVerdict good_reduction_soluble(const HyperellipticTwist& curve, std::uint64_t p)
{
    detail::require_solubility_prime(p);
    const PrimeClassification cls = classify_prime(curve, p);
    const auto g = static_cast<std::uint64_t>(curve.genus());
    if (!is_good(cls.kind) || curve.d() % p == 0 || p <= 4 * g * g)
        throw Error(ErrorCode::PreconditionFailed,
                    "needs a good prime p not dividing d with p > 4g^2, got p = " + std::to_string(p));

    SolubilityVerdict verdict;
    verdict.status = Solubility::Soluble;
    verdict.depth_used = 1;
    verdict.max_depth = 1;
    const FpPolynomial fbar = reduce_mod_p(curve.f(), p);
    const FpPolynomial dfbar = fbar.derivative();
    const Residue du = mod_u64(curve.d(), p);
    const Residue du_inv = powmod(du, p - 2, p);
    // a root of f gives the point (x, 0); prefer it over a square class
    for (Residue r : roots_mod_p(fbar)) {
        if (dfbar(r) != 0) {
            verdict.witness = Witness{Chart::Affine, WitnessKind::HenselRoot, Integer(r), 1, 0, 0};
            return verdict;
        }
    }
    for (Residue r = 0; r < p; ++r) {
        ++verdict.classes_examined;
        const Residue value = fbar(r);
        if (value != 0 && legendre(mulmod(value, du, p), p) == 1) {
            verdict.witness =
                Witness{Chart::Affine, WitnessKind::SquareClass, Integer(r), 1, 0, sqrt_mod(mulmod(value, du_inv, p), p)};
            return verdict;
        }
    }
    if (curve.degree() % 2 == 1) {
        verdict.witness = Witness{Chart::Infinity, WitnessKind::PointAtInfinity, 0, 0, 0, 0};
        return verdict;
    }
    if (cls.reduced_degree % 2 == 1) {
        // p | lc(f): u = 0 is a simple root of the reversed polynomial mod p
        verdict.witness = Witness{Chart::Infinity, WitnessKind::HenselRoot, 0, 1, 0, 0};
        return verdict;
    }
    if (auto w = detail::infinity_witness(curve, p)) {
        verdict.witness = std::move(w);
        return verdict;
    }
    throw Error(ErrorCode::InvariantViolation, "no smooth F_p-point above the Hasse-Weil threshold");
}

} // namespace twistlab

#endif // TWISTLAB_LOCALSOL_HPP
