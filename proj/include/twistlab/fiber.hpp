#ifndef TWISTLAB_FIBER_HPP
#define TWISTLAB_FIBER_HPP

#include <twistlab/error.hpp>
#include <twistlab/integer.hpp>
#include <twistlab/poly.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace twistlab {

struct Component {
    std::string name;
    int multiplicity = 1;
    int self_intersection = 0;
    int genus = 0;
    int orbit = 1; // size of the Frobenius orbit; 1 means defined over F_p
};

using IntersectionMatrix = std::vector<std::vector<std::int64_t>>;

/// Special fiber as a weighted graph. pairings[i][i] is the self-intersection.
struct FiberGraph {
    std::vector<Component> components;
    IntersectionMatrix pairings;

    std::size_t size() const noexcept { return components.size(); }

    std::vector<std::int64_t> multiplicities() const
    {
        std::vector<std::int64_t> m;
        for (const auto& c : components)
            m.push_back(c.multiplicity);
        return m;
    }
};

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

/// Smooth special fiber: one component of multiplicity 1 and genus g.
inline FiberGraph good_fiber(int genus)
{
    if (genus < 1)
        throw Error(ErrorCode::GenusTooSmall, "genus must be >= 1");
    FiberGraph f;
    f.components.push_back(Component{"C", 1, 0, genus, 1});
    f.pairings = {{0}};
    return f;
}

/// Star-shaped fiber of the twist at a good prime: a doubled rational curve
/// Theta with self-intersection -(g+1), met once by each of 2g+2 rational
/// (-2)-curves of multiplicity 1.
inline FiberGraph twist_fiber_model(int genus)
{
    if (genus < 1)
        throw Error(ErrorCode::GenusTooSmall, "genus must be >= 1");
    const std::size_t leaves = 2 * static_cast<std::size_t>(genus) + 2;
    const std::size_t n = leaves + 1;
    FiberGraph f;
    f.components.push_back(Component{"Theta", 2, -(genus + 1), 0, 1});
    for (std::size_t i = 1; i <= leaves; ++i)
        f.components.push_back(Component{"Gamma_" + std::to_string(i), 1, -2, 0, 1});
    f.pairings.assign(n, std::vector<std::int64_t>(n, 0));
    f.pairings[0][0] = -(genus + 1);
    for (std::size_t i = 1; i < n; ++i) {
        f.pairings[i][i] = -2;
        f.pairings[0][i] = f.pairings[i][0] = 1;
    }
    return f;
}

// ---------------------------------------------------------------------------
// Exact linear algebra on the intersection matrix
// ---------------------------------------------------------------------------

namespace detail {

using BigMatrix = std::vector<std::vector<Integer>>;

inline BigMatrix to_big(const IntersectionMatrix& m)
{
    BigMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        out[i].assign(m[i].begin(), m[i].end());
    return out;
}

// Gaussian elimination over Q on sparse rows. Fiber graphs are sparse, and
// only rows meeting the pivot column are touched.
using SparseRow = std::map<std::size_t, Rational>;

inline std::vector<SparseRow> to_sparse(const BigMatrix& a)
{
    std::vector<SparseRow> rows(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            if (a[i][j] != 0)
                rows[i].emplace(j, Rational(a[i][j]));
        }
    }
    return rows;
}

inline Rational entry(const SparseRow& row, std::size_t col)
{
    const auto it = row.find(col);
    return it == row.end() ? Rational(0) : it->second;
}

inline void eliminate_below(std::vector<SparseRow>& rows, std::size_t pivot_row, std::size_t col)
{
    const SparseRow& pivot = rows[pivot_row];
    const Rational lead = pivot.at(col);
    for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
        const auto hit = rows[i].find(col);
        if (hit == rows[i].end())
            continue;
        const Rational factor = hit->second / lead;
        for (const auto& [j, value] : pivot) {
            Rational& target = rows[i][j];
            target -= factor * value;
            if (target == 0)
                rows[i].erase(j);
        }
    }
}

/// Rank by elimination with row pivoting.
inline std::size_t exact_rank(const BigMatrix& m)
{
    std::vector<SparseRow> rows = to_sparse(m);
    const std::size_t n = rows.size();
    const std::size_t cols = n ? m[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < n; ++col) {
        // sparsest candidate as pivot, to limit fill-in
        std::size_t pivot = n;
        for (std::size_t i = rank; i < n; ++i) {
            if (rows[i].count(col) && (pivot == n || rows[i].size() < rows[pivot].size()))
                pivot = i;
        }
        if (pivot == n)
            continue;
        std::swap(rows[pivot], rows[rank]);
        eliminate_below(rows, rank, col);
        ++rank;
    }
    return rank;
}

/// Leading principal minors of a square matrix: running products of the
/// pivots of elimination without pivoting. Stops early (shorter result) when
/// a minor vanishes.
inline std::vector<Integer> leading_minors(const BigMatrix& m)
{
    std::vector<SparseRow> rows = to_sparse(m);
    std::vector<Integer> minors;
    Rational product = 1;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const Rational pivot = entry(rows[k], k);
        product *= pivot;
        minors.push_back(numerator(product));
        if (pivot == 0)
            break;
        eliminate_below(rows, k, k);
    }
    return minors;
}

} // namespace detail

inline bool is_symmetric(const FiberGraph& f)
{
    const std::size_t n = f.size();
    if (f.pairings.size() != n)
        return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (f.pairings[i].size() != n || f.pairings[i][i] != f.components[i].self_intersection)
            return false;
        for (std::size_t j = 0; j < i; ++j) {
            if (f.pairings[i][j] != f.pairings[j][i] || f.pairings[i][j] < 0)
                return false;
        }
    }
    return true;
}

/// F . Gamma_i = 0 for every component, F = sum of m_i Gamma_i.
inline bool fiber_identity_holds(const FiberGraph& f)
{
    if (!is_symmetric(f))
        return false;
    const auto m = f.multiplicities();
    for (std::size_t i = 0; i < f.size(); ++i) {
        Integer dot = 0;
        for (std::size_t j = 0; j < f.size(); ++j)
            dot += Integer(f.pairings[i][j]) * m[j];
        if (dot != 0)
            return false;
    }
    return true;
}

inline std::size_t radical_dimension(const FiberGraph& f)
{
    return f.size() - detail::exact_rank(detail::to_big(f.pairings));
}

/// Negative semidefinite with radical exactly spanned by the multiplicity vector.
/// Given M m = 0 with m_0 != 0, this is equivalent to the submatrix obtained by
/// deleting component 0 being negative definite (Sylvester on its negation).
inline bool is_negative_semidefinite_fiber(const FiberGraph& f)
{
    if (f.size() == 0 || !fiber_identity_holds(f))
        return false;
    const std::size_t n = f.size();
    detail::BigMatrix sub(n - 1, std::vector<Integer>(n - 1));
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j)
            sub[i - 1][j - 1] = -Integer(f.pairings[i][j]);
    const auto minors = detail::leading_minors(std::move(sub));
    if (minors.size() != n - 1)
        return false;
    for (const auto& m : minors) {
        if (m <= 0)
            return false;
    }
    return true;
}

/// No rational (-1)-curve (Castelnuovo).
inline bool check_minimality(const FiberGraph& f)
{
    for (const auto& c : f.components) {
        if (c.genus == 0 && c.self_intersection == -1)
            return false;
    }
    return true;
}

/// 2 p_a - 2 = sum m_i (2 g_i - 2 - Gamma_i^2), by adjunction with F.F = 0.
inline int fiber_arithmetic_genus(const FiberGraph& f)
{
    if (!fiber_identity_holds(f))
        throw Error(ErrorCode::NotAFiber, "fiber identity F.Gamma_i = 0 fails");
    std::int64_t canonical_degree = 0;
    for (const auto& c : f.components)
        canonical_degree += static_cast<std::int64_t>(c.multiplicity) * (2 * c.genus - 2 - c.self_intersection);
    if (canonical_degree % 2 != 0)
        throw Error(ErrorCode::NotAFiber, "odd canonical degree");
    return static_cast<int>(canonical_degree / 2 + 1);
}

struct FiberValidation {
    bool symmetric = false;
    bool fiber_identity = false;
    bool negative_semidefinite = false;
    std::size_t radical_dim = 0;
    bool minimal = false;

    bool ok() const noexcept
    {
        return symmetric && fiber_identity && negative_semidefinite && radical_dim == 1 && minimal;
    }
};

inline FiberValidation validate(const FiberGraph& f)
{
    FiberValidation v;
    v.symmetric = is_symmetric(f);
    v.fiber_identity = v.symmetric && fiber_identity_holds(f);
    v.negative_semidefinite = v.fiber_identity && is_negative_semidefinite_fiber(f);
    v.radical_dim = v.symmetric ? radical_dimension(f) : 0;
    v.minimal = check_minimality(f);
    return v;
}

// ---------------------------------------------------------------------------
// Recognition, descent to F_p, labels
// ---------------------------------------------------------------------------

inline bool is_good_fiber(const FiberGraph& f)
{
    return f.size() == 1 && f.components[0].multiplicity == 1 && f.components[0].genus >= 1 &&
           f.pairings.size() == 1 && f.pairings[0].size() == 1 && f.pairings[0][0] == 0 &&
           f.components[0].self_intersection == 0;
}

/// Matches twist_fiber_model(genus) up to orbit annotations and names.
inline bool is_twist_star(const FiberGraph& f, int genus)
{
    const std::size_t n = 2 * static_cast<std::size_t>(genus) + 3;
    if (genus < 1 || f.size() != n || !is_symmetric(f))
        return false;
    const Component& center = f.components[0];
    if (center.multiplicity != 2 || center.genus != 0 || center.self_intersection != -(genus + 1))
        return false;
    for (std::size_t i = 1; i < n; ++i) {
        const Component& leaf = f.components[i];
        if (leaf.multiplicity != 1 || leaf.genus != 0 || leaf.self_intersection != -2 || f.pairings[0][i] != 1)
            return false;
        for (std::size_t j = 1; j < i; ++j) {
            if (f.pairings[i][j] != 0)
                return false;
        }
    }
    return true;
}

/// Annotates the leaves with Frobenius orbit sizes: one leaf per geometric
/// ramification point, grouped by irreducible factor of f mod p, plus an
/// F_p-rational leaf for infinity when deg f is odd.
inline FiberGraph descend_components(const FiberGraph& f, const FactorShape& shape, bool odd_degree)
{
    const int genus = static_cast<int>((f.size() - 3) / 2);
    if (f.size() < 5 || !is_twist_star(f, genus))
        throw Error(ErrorCode::ShapeMismatch, "descent needs a twist star fiber");
    const int total = std::accumulate(shape.begin(), shape.end(), 0) + (odd_degree ? 1 : 0);
    for (int d : shape) {
        if (d < 1)
            throw Error(ErrorCode::ShapeMismatch, "factor degrees must be positive");
    }
    if (total != 2 * genus + 2)
        throw Error(ErrorCode::ShapeMismatch,
                    "shape accounts for " + std::to_string(total) + " leaves, fiber has " +
                        std::to_string(2 * genus + 2));
    FiberGraph out = f;
    std::size_t leaf = 1;
    for (int d : shape) {
        for (int k = 0; k < d; ++k)
            out.components[leaf++].orbit = d;
    }
    if (odd_degree) {
        out.components[leaf].orbit = 1;
        out.components[leaf].name = "Gamma_inf";
    }
    return out;
}

/// Some multiplicity-1 component is defined over F_p.
inline bool rational_smooth_locus_nonempty(const FiberGraph& f)
{
    for (const auto& c : f.components) {
        if (c.multiplicity == 1 && c.orbit == 1)
            return true;
    }
    return false;
}

inline std::string type_label(const FiberGraph& f, int genus)
{
    if (is_good_fiber(f) && f.components[0].genus == genus)
        return "good";
    if (is_twist_star(f, genus)) {
        if (genus == 1)
            return "I0*";
        if (genus == 2)
            return "[I*_{0-0-0}]";
        return "star(" + std::to_string(2 * genus + 2) + ")";
    }
    throw Error(ErrorCode::UnknownType, "fiber is neither smooth nor a twist star");
}

/// Graphviz rendering: one node per component, one edge per positive intersection.
inline std::string to_dot(const FiberGraph& f, const std::string& title = "fiber")
{
    std::ostringstream os;
    os << "graph \"" << title << "\" {\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Component& c = f.components[i];
        os << "  c" << i << " [label=\"" << c.name << "\\nm=" << c.multiplicity << " s=" << c.self_intersection
           << " g=" << c.genus << " orbit=" << c.orbit << "\"";
        if (c.multiplicity == 1 && c.orbit == 1)
            os << ", style=bold";
        os << "];\n";
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            if (f.pairings[i][j] > 0) {
                os << "  c" << i << " -- c" << j;
                if (f.pairings[i][j] > 1)
                    os << " [label=\"" << f.pairings[i][j] << "\"]";
                os << ";\n";
            }
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace twistlab

#endif // TWISTLAB_FIBER_HPP
