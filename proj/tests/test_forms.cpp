#include <doctest.h>

#include <hpfec/forms.hpp>

#include <random>

using namespace hpfec;

namespace {

using RForm = PolyForm<Rational>;
using RPoly = Polynomial<Rational>;

RPoly random_poly(int n, int max_degree, std::mt19937& rng)
{
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> expo(0, max_degree);
    RPoly p(n);
    for (int t = 0; t < 4; ++t) {
        MultiIndex e(n, 0);
        int budget = max_degree;
        for (int i = 0; i < n; ++i) {
            e[i] = std::min(budget, expo(rng) % (max_degree + 1));
            budget -= e[i];
        }
        p.add_term(e, Rational(coeff(rng)));
    }
    return p;
}

RForm random_form(int n, int k, int max_degree, std::mt19937& rng)
{
    RForm f(n, k);
    for (WedgeIndex w : wedge_basis(n, k))
        f.add_component(w, random_poly(n, max_degree, rng));
    return f;
}

RForm dxi(int n, int i) { return RForm::basis_wedge(n, (WedgeIndex)1u << i); }

} // namespace

TEST_CASE("wedge product sign rule and nilpotency")
{
    const int n = 2;
    const auto d1 = dxi(n, 0);
    const auto d2 = dxi(n, 1);
    CHECK(wedge(d1, d2) == -wedge(d2, d1));

    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto w = random_form(3, 1, 2, rng);
        CHECK(wedge(w, w).is_zero());
    }

    // (xi1 dxi1) ^ (xi2 dxi2) = xi1 xi2 dxi1^dxi2
    const auto a = dxi(n, 0).scale(RPoly::variable(n, 0));
    const auto b = dxi(n, 1).scale(RPoly::variable(n, 1));
    const auto ab = wedge(a, b);
    CHECK(ab.component(0b11) == RPoly::variable(n, 0) * RPoly::variable(n, 1));

    // graded antisymmetry for random degree pairs
    for (int trial = 0; trial < 20; ++trial) {
        const int ka = trial % 3, kb = (trial / 3) % 3;
        const auto u = random_form(3, ka, 2, rng);
        const auto v = random_form(3, kb, 2, rng);
        auto lhs = wedge(u, v);
        auto rhs = wedge(v, u);
        if ((ka * kb) % 2 != 0)
            rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("exterior derivative: product rule, nilpotency, Leibniz")
{
    const int n = 2;
    const auto x = RPoly::variable(n, 0);
    const auto y = RPoly::variable(n, 1);
    const auto d = exterior_derivative(RForm::from_scalar(n, x * y));
    CHECK(d.component(0b01) == y);
    CHECK(d.component(0b10) == x);

    std::mt19937 rng(23);
    for (int nn = 1; nn <= 3; ++nn)
        for (int k = 0; k <= nn; ++k)
            for (int trial = 0; trial < 5; ++trial) {
                const auto w = random_form(nn, k, 3, rng);
                CHECK(exterior_derivative(exterior_derivative(w)).is_zero());
            }

    for (int trial = 0; trial < 50; ++trial) {
        const int nn = 3;
        const int ka = trial % 2, kb = (trial / 2) % 2;
        const auto u = random_form(nn, ka, 2, rng);
        const auto v = random_form(nn, kb, 2, rng);
        auto lhs = exterior_derivative(wedge(u, v));
        auto rhs = wedge(exterior_derivative(u), v);
        auto second = wedge(u, exterior_derivative(v));
        if (ka % 2 != 0)
            second = -second;
        CHECK(lhs == rhs + second);
    }
}

TEST_CASE("hodge star: Euclidean complements and involution")
{
    const auto e2 = MetricSample<Rational>::euclidean(2);
    CHECK(hodge_star(dxi(2, 0), e2) == dxi(2, 1));
    CHECK(hodge_star(dxi(2, 1), e2) == -dxi(2, 0));

    // star of 1 is sqrt|det g| times the volume form
    DenseMatrix<Rational> g(2, 2);
    g(0, 0) = Rational(4);
    g(1, 1) = Rational(9);
    const auto gm = MetricSample<Rational>::from_matrix(g);
    const auto one = RForm::from_scalar(2, RPoly(2, Rational(1)));
    const auto vol = hodge_star(one, gm);
    CHECK(vol.component(0b11) == RPoly(2, Rational(6)));

    // star star = (-1)^{k(n-k)} on random forms, Euclidean
    std::mt19937 rng(5);
    for (int n = 1; n <= 3; ++n) {
        const auto g_euclid = MetricSample<Rational>::euclidean(n);
        for (int k = 0; k <= n; ++k)
            for (int trial = 0; trial < 5; ++trial) {
                const auto w = random_form(n, k, 2, rng);
                auto ss = hodge_star(hodge_star(w, g_euclid), g_euclid);
                if ((k * (n - k)) % 2 != 0)
                    ss = -ss;
                CHECK(ss == w);
            }
    }
}

TEST_CASE("hodge star satisfies the inner-product identity for general metrics")
{
    // om ^ star nu must equal the Gram determinant of the inverse metric
    // times the metric volume form
    for (int n = 2; n <= 3; ++n) {
        // g = J^T J for a rational J, so sqrt(det g) = |det J| stays rational
        DenseMatrix<Rational> j(n, n);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < n; ++c)
                j(i, c) = Rational((i == c) ? 2 : (i < c ? 1 : 0));
        const auto metric = MetricSample<Rational>::from_matrix(j.transposed() * j);

        for (int k = 0; k <= n; ++k) {
            const auto wedges = wedge_basis(n, k);
            for (WedgeIndex wa : wedges)
                for (WedgeIndex wb : wedges) {
                    const auto a = RForm::basis_wedge(n, wa);
                    const auto b = RForm::basis_wedge(n, wb);
                    const auto density = local_inner_product(a, b, metric);
                    // reference value: det of ginv minor on (wa, wb) times sqrt det g
                    const auto ia = wedge_components(wa);
                    const auto ib = wedge_components(wb);
                    DenseMatrix<Rational> minor(k, k);
                    for (int r = 0; r < k; ++r)
                        for (int c = 0; c < k; ++c)
                            minor(r, c) = metric.ginv(ia[r], ib[c]);
                    const Rational expected = minor.determinant() * metric.sqrt_det;
                    CHECK(density == RPoly(n, expected));
                    // symmetry
                    CHECK(local_inner_product(b, a, metric) == density);
                }
        }
    }
}

TEST_CASE("coderivative: constants, explicit value, nilpotency")
{
    const auto e2 = MetricSample<Rational>::euclidean(2);
    const auto constant = dxi(2, 0);
    CHECK(coderivative(constant, e2).is_zero());

    // delta(xi1 dxi1) in 2d Euclidean: star(xi1 dxi1) = xi1 dxi2,
    // d -> dxi1^dxi2, star -> 1, sign (-1)^{2(1+1)+1} = -1  =>  -1
    const auto w = dxi(2, 0).scale(RPoly::variable(2, 0));
    const auto dw = coderivative(w, e2);
    CHECK(dw.component(0) == RPoly(2, Rational(-1)));

    std::mt19937 rng(29);
    for (int n = 2; n <= 3; ++n) {
        const auto g = MetricSample<Rational>::euclidean(n);
        for (int k = 2; k <= n; ++k)
            for (int trial = 0; trial < 5; ++trial) {
                const auto u = random_form(n, k, 3, rng);
                CHECK(coderivative(coderivative(u, g), g).is_zero());
            }
    }
}

TEST_CASE("pullback: scaling, functoriality, naturality")
{
    // pullback of dx1^dx2 under J = 2 Id picks up the determinant
    AffineMap<Rational> m;
    m.linear = DenseMatrix<Rational>::identity(2);
    m.linear(0, 0) = m.linear(1, 1) = Rational(2);
    m.offset = {Rational(0), Rational(0)};
    const auto area = RForm::basis_wedge(2, 0b11);
    CHECK(pullback(area, m).component(0b11) == RPoly(2, Rational(4)));

    std::mt19937 rng(31);
    auto random_map = [&rng](int n) {
        std::uniform_int_distribution<int> entry(-2, 2);
        AffineMap<Rational> mm;
        while (true) {
            mm.linear = DenseMatrix<Rational>(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    mm.linear(i, j) = Rational(entry(rng));
            if (mm.linear.determinant() != 0)
                break;
        }
        mm.offset.assign(n, Rational(0));
        for (auto& o : mm.offset)
            o = Rational(entry(rng));
        return mm;
    };

    // pullback commutes with d
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 2;
        const int k = trial % n;
        const auto w = random_form(n, k, 2, rng);
        const auto mm = random_map(n);
        CHECK(pullback(exterior_derivative(w), mm) == exterior_derivative(pullback(w, mm)));
    }

    // functoriality: (m1 o m2)^* = m2^* o m1^*
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2;
        const auto w = random_form(n, 1, 2, rng);
        const auto m1 = random_map(n);
        const auto m2 = random_map(n);
        CHECK(pullback(w, m1.compose(m2)) == pullback(pullback(w, m1), m2));
    }

    // Hodge star commutes with pullback when the metric is pulled back too,
    // for orientation-preserving maps
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 2;
        const int k = trial % (n + 1);
        auto mm = random_map(n);
        if (mm.linear.determinant() < 0)
            mm.linear.swap_rows(0, 1);
        const auto w = random_form(n, k, 2, rng);
        const auto euclid = MetricSample<Rational>::euclidean(n);
        const auto pulled_metric = MetricSample<Rational>::from_matrix(
            mm.linear.transposed() * mm.linear);
        const auto lhs = pullback(hodge_star(w, euclid), mm);
        const auto rhs = hodge_star(pullback(w, mm), pulled_metric);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("local inner product on the Euclidean plane")
{
    const auto e2 = MetricSample<Rational>::euclidean(2);
    CHECK(local_inner_product(dxi(2, 0), dxi(2, 0), e2) == RPoly(2, Rational(1)));
    CHECK(local_inner_product(dxi(2, 0), dxi(2, 1), e2) == RPoly(2, Rational(0)));
}
