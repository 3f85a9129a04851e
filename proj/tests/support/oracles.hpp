// Independent reference computations used only by the test suites. None of
// these route through the algorithms they are used to check.
#ifndef TWISTLAB_TESTS_ORACLES_HPP
#define TWISTLAB_TESTS_ORACLES_HPP

#include <twistlab/integer.hpp>
#include <twistlab/poly.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace twistlab::oracle {

/// Determinant by fraction-free Gaussian elimination with row swaps.
inline Integer determinant(std::vector<std::vector<Integer>> a)
{
    const std::size_t n = a.size();
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// Res(f, g) as the determinant of the Sylvester matrix.
inline Integer sylvester_resultant(const IntPolynomial& f, const IntPolynomial& g)
{
    const std::size_t m = f.degree().value();
    const std::size_t n = g.degree().value();
    const std::size_t size = m + n;
    std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size, 0));
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t i = 0; i <= m; ++i)
            s[row][row + i] = f.coeff(m - i);
    for (std::size_t row = 0; row < m; ++row)
        for (std::size_t i = 0; i <= n; ++i)
            s[n + row][row + i] = g.coeff(n - i);
    return determinant(std::move(s));
}

inline Integer sylvester_discriminant(const IntPolynomial& f)
{
    const std::size_t n = f.degree().value();
    Integer r = sylvester_resultant(f, f.derivative()) / f.leading();
    return (n * (n - 1) / 2) % 2 ? Integer(-r) : r;
}

/// Roots of f mod p by evaluating at every residue.
inline std::vector<std::uint64_t> exhaustive_roots(const IntPolynomial& f, std::uint64_t p)
{
    std::vector<std::uint64_t> roots;
    for (std::uint64_t x = 0; x < p; ++x) {
        if (mod_u64(f(Integer(x)), p) == 0)
            roots.push_back(x);
    }
    return roots;
}

/// Multiplicity of x as a root of f mod p, by repeated synthetic division.
inline int root_multiplicity(const IntPolynomial& f, std::uint64_t p, std::uint64_t x)
{
    std::vector<std::int64_t> c;
    for (const auto& a : f.coeffs())
        c.push_back(static_cast<std::int64_t>(mod_u64(a, p)));
    while (!c.empty() && c.back() == 0)
        c.pop_back();
    if (c.empty())
        return 1 << 20; // f = 0 mod p
    int mult = 0;
    const auto P = static_cast<std::int64_t>(p);
    const auto X = static_cast<std::int64_t>(x);
    while (c.size() > 1) {
        std::vector<std::int64_t> q(c.size() - 1);
        std::int64_t acc = 0;
        for (std::size_t k = c.size() - 1; k >= 1; --k) {
            acc = (acc * X + c[k]) % P;
            q[k - 1] = acc;
        }
        if ((acc * X + c[0]) % P != 0)
            return mult;
        ++mult;
        c = std::move(q);
    }
    return mult;
}

/// Factor degrees mod p by trial division with every monic polynomial of
/// degree <= deg/2, smallest degree first. Only for small p.
inline FactorShape trial_division_shape(const FpPolynomial& f)
{
    const std::uint64_t p = f.modulus();
    FactorShape shape;
    FpPolynomial rest = f.monic();
    for (std::size_t d = 1; rest.degree() >= 2 * d;) {
        bool found = false;
        std::vector<Residue> c(d + 1, 0);
        c[d] = 1;
        // iterate all monic polynomials of degree d
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < d; ++i)
            total *= p;
        for (std::uint64_t code = 0; code < total && !found; ++code) {
            std::uint64_t k = code;
            for (std::size_t i = 0; i < d; ++i) {
                c[i] = k % p;
                k /= p;
            }
            FpPolynomial cand(FpPolynomial::Unchecked{}, p, c);
            auto [q, r] = divmod(rest, cand);
            if (r.is_zero()) {
                shape.push_back(static_cast<int>(d));
                rest = q;
                found = true;
            }
        }
        if (!found)
            ++d;
    }
    if (rest.degree() > 0)
        shape.push_back(static_cast<int>(rest.degree().value()));
    std::sort(shape.begin(), shape.end());
    return shape;
}

/// x^e mod f by e-fold multiplication.
inline FpPolynomial naive_x_power(std::uint64_t e, const FpPolynomial& f)
{
    FpPolynomial acc = FpPolynomial::constant(f.modulus(), 1);
    const FpPolynomial x = FpPolynomial::x(f.modulus());
    for (std::uint64_t i = 0; i < e; ++i)
        acc = (acc * x) % f;
    return acc % f;
}

/// Fraction of permutations of {0..n-1} without a fixed point.
inline std::pair<int, int> derangement_count(int n)
{
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    int total = 0, deranged = 0;
    do {
        ++total;
        bool fixed = false;
        for (int i = 0; i < n; ++i)
            fixed = fixed || perm[i] == i;
        deranged += fixed ? 0 : 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {deranged, total};
}

struct ResidueSearchOutcome {
    bool soluble_class = false;     // some class mod p^k forces a Q_p-point
    std::size_t undetermined = 0;   // classes with F = 0 mod p^K, undecided at this precision
};

/// Exhaustive search over x mod p^K (and u = 1/x in pZ_p mod p^K) for a
/// residue class on which d*y^2 = F is forced solvable: F(x) mod p^j nonzero
/// fixes v_p(F) and the square class of its unit part on the whole class.
inline ResidueSearchOutcome exhaustive_residue_search(const IntPolynomial& f, int genus, const Integer& d,
                                                      std::uint64_t p, int K)
{
    using i128 = __int128;
    std::uint64_t pk = 1;
    for (int i = 0; i < K; ++i)
        pk *= p;
    const int vd = valuation(d, p);
    const int d_char = legendre(mod_u64(unit_part(d, p), p), p);

    ResidueSearchOutcome out;
    auto run_chart = [&](const IntPolynomial& F, bool infinity) {
        std::vector<std::uint64_t> c;
        for (const auto& a : F.coeffs())
            c.push_back(mod_u64(a, pk));
        std::function<void(std::uint64_t, std::uint64_t, int)> dfs = [&](std::uint64_t x, std::uint64_t pj,
                                                                          int j) {
            if (out.soluble_class)
                return;
            i128 acc = 0;
            for (std::size_t k = c.size(); k-- > 0;)
                acc = (acc * x + c[k]) % pj;
            auto val = static_cast<std::uint64_t>(acc);
            if (val != 0) {
                int v = 0;
                while (val % p == 0) {
                    val /= p;
                    ++v;
                }
                if ((v - vd) % 2 == 0 && legendre(val % p, p) * d_char == 1)
                    out.soluble_class = true;
                return;
            }
            if (j == K) {
                ++out.undetermined;
                return;
            }
            for (std::uint64_t digit = 0; digit < p; ++digit)
                dfs(x + digit * pj, pj * p, j + 1);
        };
        if (infinity) {
            dfs(0, p, 1); // u = 0 mod p
        } else {
            for (std::uint64_t digit = 0; digit < p; ++digit)
                dfs(digit, p, 1);
        }
    };
    run_chart(f, false);
    if (!out.soluble_class)
        run_chart(f.reversed(2 * static_cast<std::size_t>(genus) + 2), true);
    return out;
}

inline IntPolynomial random_polynomial(std::mt19937_64& rng, std::size_t degree, int lo, int hi)
{
    std::uniform_int_distribution<int> dist(lo, hi);
    std::vector<Integer> c(degree + 1);
    for (auto& a : c)
        a = dist(rng);
    while (c[degree] == 0)
        c[degree] = dist(rng);
    return IntPolynomial(std::move(c));
}

} // namespace twistlab::oracle

#endif // TWISTLAB_TESTS_ORACLES_HPP
