#pragma once

// Polynomial differential forms on the reference simplex: wedge product,
// exterior derivative, Hodge star for a constant metric, coderivative,
// pullback along affine maps and local inner products. Coefficients are
// polynomials over the reference coordinates; the wedge index is a bitmask
// over the coordinate covectors.

#include <hpfec/linalg.hpp>
#include <hpfec/polynomial.hpp>

#include <bit>
#include <cstdint>
#include <map>

namespace hpfec {

using WedgeIndex = std::uint32_t; // bit i set <=> covector dxi^{i+1} present

inline int wedge_degree(WedgeIndex w) { return std::popcount(w); }

/// Sign of merging two disjoint ascending wedges a ^ b into ascending order:
/// (-1)^{#inversions}. Returns 0 when the wedges share a covector.
inline int wedge_merge_sign(WedgeIndex a, WedgeIndex b)
{
    if ((a & b) != 0)
        return 0;
    int sign = 1;
    // count pairs (i in a, j in b) with i > j
    for (WedgeIndex bb = b; bb != 0; bb &= bb - 1) {
        const int j = std::countr_zero(bb);
        if (std::popcount(a >> (j + 1)) % 2 != 0)
            sign = -sign;
    }
    return sign;
}

/// Ascending list of coordinate indices in a wedge mask.
inline std::vector<int> wedge_components(WedgeIndex w)
{
    std::vector<int> out;
    for (WedgeIndex m = w; m != 0; m &= m - 1)
        out.push_back(std::countr_zero(m));
    return out;
}

inline WedgeIndex wedge_from_components(const std::vector<int>& comps)
{
    WedgeIndex w = 0;
    for (int c : comps)
        w |= (WedgeIndex)1u << c;
    return w;
}

/// All degree-k wedge masks over n coordinates, ascending numeric order
/// (which coincides with colex order of the index tuples).
inline std::vector<WedgeIndex> wedge_basis(int n, int k)
{
    std::vector<WedgeIndex> out;
    if (k < 0 || k > n)
        return out;
    const WedgeIndex limit = (WedgeIndex)1u << n;
    for (WedgeIndex w = 0; w < limit; ++w)
        if (std::popcount(w) == k)
            out.push_back(w);
    return out;
}

/// A constant metric sample: the matrix g, its inverse, and sqrt|det g|.
/// The signature is Riemannian throughout.
template <typename T>
struct MetricSample
{
    DenseMatrix<T> g;
    DenseMatrix<T> ginv;
    T sqrt_det; // sqrt(|det g|)

    static MetricSample euclidean(int n)
    {
        MetricSample m;
        m.g = DenseMatrix<T>::identity(n);
        m.ginv = DenseMatrix<T>::identity(n);
        m.sqrt_det = T(1);
        return m;
    }

    static MetricSample from_matrix(DenseMatrix<T> g)
    {
        MetricSample m;
        m.ginv = g.inverse();
        const T det = g.determinant();
        if constexpr (std::is_same_v<T, double>) {
            if (det <= 0.0)
                throw std::runtime_error("MetricSample: non-positive metric determinant");
            m.sqrt_det = std::sqrt(det);
        } else {
            m.sqrt_det = rational_sqrt(det < T(0) ? T(-det) : det);
        }
        m.g = std::move(g);
        return m;
    }
};

/// A polynomial differential k-form sum_sigma w_sigma(xi) dxi^sigma.
template <typename T>
class PolyForm
{
public:
    PolyForm() = default;
    PolyForm(int n, int k)
        : n_(n), k_(k)
    {
        if (k < 0 || n < 0)
            throw std::invalid_argument("PolyForm: negative degree or dimension");
    }

    int n() const { return n_; }
    int k() const { return k_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<WedgeIndex, Polynomial<T>>& components() const { return comps_; }

    int degree() const
    {
        int d = -1;
        for (const auto& [w, p] : comps_)
            d = std::max(d, p.degree());
        return d;
    }

    Polynomial<T> component(WedgeIndex w) const
    {
        auto it = comps_.find(w);
        return it == comps_.end() ? Polynomial<T>(n_) : it->second;
    }

    void add_component(WedgeIndex w, const Polynomial<T>& p)
    {
        if (wedge_degree(w) != k_)
            throw std::invalid_argument("PolyForm: wedge degree mismatch");
        if (p.is_zero())
            return;
        auto it = comps_.find(w);
        if (it == comps_.end()) {
            comps_[w] = p;
        } else {
            it->second += p;
            if (it->second.is_zero())
                comps_.erase(it);
        }
    }

    static PolyForm basis_wedge(int n, WedgeIndex w)
    {
        PolyForm f(n, wedge_degree(w));
        f.add_component(w, Polynomial<T>(n, T(1)));
        return f;
    }

    static PolyForm from_scalar(int n, const Polynomial<T>& p)
    {
        PolyForm f(n, 0);
        f.add_component(0, p);
        return f;
    }

    PolyForm operator+(const PolyForm& o) const
    {
        check_compatible(o);
        PolyForm r = *this;
        for (const auto& [w, p] : o.comps_)
            r.add_component(w, p);
        return r;
    }

    PolyForm operator-(const PolyForm& o) const
    {
        check_compatible(o);
        PolyForm r = *this;
        for (const auto& [w, p] : o.comps_)
            r.add_component(w, -p);
        return r;
    }

    PolyForm operator-() const
    {
        PolyForm r(n_, k_);
        for (const auto& [w, p] : comps_)
            r.comps_[w] = -p;
        return r;
    }

    PolyForm operator*(const T& s) const
    {
        PolyForm r(n_, k_);
        if (s == T(0))
            return r;
        for (const auto& [w, p] : comps_)
            r.comps_[w] = p * s;
        return r;
    }

    PolyForm scale(const Polynomial<T>& s) const
    {
        PolyForm r(n_, k_);
        for (const auto& [w, p] : comps_) {
            auto q = p * s;
            if (!q.is_zero())
                r.comps_[w] = q;
        }
        return r;
    }

    bool operator==(const PolyForm& o) const
    {
        return n_ == o.n_ && k_ == o.k_ && comps_ == o.comps_;
    }

    template <typename S>
    PolyForm<S> convert() const
    {
        PolyForm<S> r(n_, k_);
        for (const auto& [w, p] : comps_)
            r.add_component(w, p.template convert<S>());
        return r;
    }

    /// Evaluates all component polynomials at a point; returns values keyed by
    /// the full ascending wedge basis of degree k.
    std::vector<T> evaluate(const std::vector<T>& x, const std::vector<WedgeIndex>& wedges) const
    {
        std::vector<T> vals(wedges.size(), T(0));
        for (std::size_t i = 0; i < wedges.size(); ++i) {
            auto it = comps_.find(wedges[i]);
            if (it != comps_.end())
                vals[i] = it->second.template evaluate<T>(x);
        }
        return vals;
    }

private:
    void check_compatible(const PolyForm& o) const
    {
        if (n_ != o.n_ || k_ != o.k_)
            throw std::invalid_argument("PolyForm: dimension or degree mismatch");
    }

    int n_ = 0;
    int k_ = 0;
    std::map<WedgeIndex, Polynomial<T>> comps_;
};

template <typename T>
PolyForm<T> wedge(const PolyForm<T>& a, const PolyForm<T>& b)
{
    if (a.n() != b.n())
        throw std::invalid_argument("wedge: ambient dimension mismatch");
    PolyForm<T> r(a.n(), a.k() + b.k());
    if (a.k() + b.k() > a.n())
        return r; // graded algebra truncates to zero beyond top degree
    for (const auto& [wa, pa] : a.components())
        for (const auto& [wb, pb] : b.components()) {
            const int sign = wedge_merge_sign(wa, wb);
            if (sign == 0)
                continue;
            auto prod = pa * pb;
            if (sign < 0)
                prod = -prod;
            r.add_component(wa | wb, prod);
        }
    return r;
}

template <typename T>
PolyForm<T> exterior_derivative(const PolyForm<T>& a)
{
    PolyForm<T> r(a.n(), a.k() + 1);
    if (a.k() >= a.n())
        return r; // zero form one degree up
    for (const auto& [w, p] : a.components())
        for (int i = 0; i < a.n(); ++i) {
            if (w & ((WedgeIndex)1u << i))
                continue;
            auto dp = p.derivative(i);
            if (dp.is_zero())
                continue;
            const int sign = wedge_merge_sign((WedgeIndex)1u << i, w);
            r.add_component(((WedgeIndex)1u << i) | w, sign < 0 ? -dp : dp);
        }
    return r;
}

/// Hodge star with a constant metric. Defined through the inner-product
/// identity om ^ star nu = <om, nu> vol, which in components reads
///   star dxi^sigma = sqrt|det g| sum_mu sign((mu~, mu)) det(ginv[mu~, sigma]) dxi^mu
/// with mu~ the complement of mu; for diagonal metrics only mu = complement of
/// sigma survives and the expression reduces to the permutation sum over
/// S(sigma) with the minor det(ginv[sigma, sigma]).
template <typename T>
PolyForm<T> hodge_star(const PolyForm<T>& a, const MetricSample<T>& metric)
{
    const int n = a.n();
    const int k = a.k();
    const WedgeIndex full = (n == 32) ? ~(WedgeIndex)0 : (((WedgeIndex)1u << n) - 1);
    PolyForm<T> r(n, n - k);

    const auto out_wedges = wedge_basis(n, n - k);
    for (const auto& [ws, p] : a.components()) {
        const auto sigma = wedge_components(ws);
        for (WedgeIndex wm : out_wedges) {
            const WedgeIndex wt = full & ~wm; // tau = complement of the output wedge
            const auto tau = wedge_components(wt);
            // minor of the inverse metric on rows tau, columns sigma
            DenseMatrix<T> minor(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    minor(i, j) = metric.ginv(tau[i], sigma[j]);
            T coeff = minor.determinant();
            if (coeff == T(0))
                continue;
            const int sign = wedge_merge_sign(wt, wm);
            coeff *= metric.sqrt_det;
            if (sign < 0)
                coeff = -coeff;
            r.add_component(wm, p * coeff);
        }
    }
    return r;
}

/// Exterior coderivative delta = (-1)^{n(k+1)+1} star d star for a constant
/// Riemannian metric.
template <typename T>
PolyForm<T> coderivative(const PolyForm<T>& a, const MetricSample<T>& metric)
{
    const int n = a.n();
    const int k = a.k();
    if (k == 0)
        return PolyForm<T>(n, 0); // delta of a 0-form vanishes
    PolyForm<T> r = hodge_star(exterior_derivative(hodge_star(a, metric)), metric);
    const int e = n * (k + 1) + 1;
    if (e % 2 != 0)
        r = -r;
    return r;
}

/// An affine map x = A xi + b from d-dimensional to m-dimensional coordinates.
template <typename T>
struct AffineMap
{
    DenseMatrix<T> linear; // m x d
    std::vector<T> offset; // m

    int domain_dim() const { return linear.cols(); }
    int target_dim() const { return linear.rows(); }

    static AffineMap identity(int n)
    {
        return { DenseMatrix<T>::identity(n), std::vector<T>(n, T(0)) };
    }

    /// this o other (apply other first).
    AffineMap compose(const AffineMap& other) const
    {
        AffineMap r;
        r.linear = linear * other.linear;
        r.offset = linear * other.offset;
        for (int i = 0; i < target_dim(); ++i)
            r.offset[i] += offset[i];
        return r;
    }

    AffineMap inverse() const
    {
        if (domain_dim() != target_dim())
            throw std::invalid_argument("AffineMap: inverse of non-square map");
        AffineMap r;
        r.linear = linear.inverse();
        auto mb = r.linear * offset;
        r.offset.assign(mb.size(), T(0));
        for (std::size_t i = 0; i < mb.size(); ++i)
            r.offset[i] = -mb[i];
        return r;
    }

    /// Metric induced on the domain by pulling the Euclidean target metric
    /// back through the map: g = J^T J.
    MetricSample<T> induced_metric() const
    {
        return MetricSample<T>::from_matrix(linear.transposed() * linear);
    }

    std::vector<T> apply(const std::vector<T>& xi) const
    {
        auto x = linear * xi;
        for (int i = 0; i < target_dim(); ++i)
            x[i] += offset[i];
        return x;
    }
};

/// Pullback of a k-form along an affine map: coefficients are composed with
/// the map and basis wedges transform by the k x k minors of the Jacobian.
template <typename T>
PolyForm<T> pullback(const PolyForm<T>& a, const AffineMap<T>& m)
{
    const int d = m.domain_dim();
    if (a.n() != m.target_dim())
        throw std::invalid_argument("pullback: form/map dimension mismatch");
    PolyForm<T> r(d, a.k());
    if (a.k() > d)
        return r;

    // coordinate polynomials of the map, for substitution into coefficients
    std::vector<Polynomial<T>> coords;
    coords.reserve(a.n());
    for (int i = 0; i < a.n(); ++i) {
        Polynomial<T> xi(d, m.offset[i]);
        for (int j = 0; j < d; ++j)
            xi += Polynomial<T>::variable(d, j) * m.linear(i, j);
        coords.push_back(std::move(xi));
    }

    const auto out_wedges = wedge_basis(d, a.k());
    for (const auto& [ws, p] : a.components()) {
        const auto sigma = wedge_components(ws);
        const auto coeff = p.substitute(coords);
        if (coeff.is_zero())
            continue;
        for (WedgeIndex wm : out_wedges) {
            const auto mu = wedge_components(wm);
            DenseMatrix<T> minor(a.k(), a.k());
            for (int i = 0; i < a.k(); ++i)
                for (int j = 0; j < a.k(); ++j)
                    minor(i, j) = m.linear(sigma[i], mu[j]);
            const T det = minor.determinant();
            if (det == T(0))
                continue;
            r.add_component(wm, coeff * det);
        }
    }
    return r;
}

/// Pushforward along an invertible affine map (pullback along the inverse).
template <typename T>
PolyForm<T> pushforward(const PolyForm<T>& a, const AffineMap<T>& m)
{
    return pullback(a, m.inverse());
}

/// The density <a, b> sqrt|det g| of the inner product; the single coefficient
/// of the n-form a ^ star b.
template <typename T>
Polynomial<T> local_inner_product(const PolyForm<T>& a, const PolyForm<T>& b,
                                  const MetricSample<T>& metric)
{
    if (a.n() != b.n() || a.k() != b.k())
        throw std::invalid_argument("local_inner_product: mismatched forms");
    const int n = a.n();
    const WedgeIndex full = (((WedgeIndex)1u << n) - 1);
    return wedge(a, hodge_star(b, metric)).component(full);
}

/// A W-valued differential form, stored per ambient component.
template <typename T>
struct VectorValuedForm
{
    std::vector<PolyForm<T>> comps;

    int value_dim() const { return static_cast<int>(comps.size()); }
};

} // namespace hpfec
