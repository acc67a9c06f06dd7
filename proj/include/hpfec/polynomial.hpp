#pragma once

// Multivariate polynomials over the reference coordinates, stored in the
// monomial basis with a map from exponent tuple to coefficient. The scalar
// type is a template parameter: exact rationals for basis generation and
// symbolic identities, doubles for assembled solves.

#include <hpfec/rational.hpp>

#include <map>
#include <vector>

namespace hpfec {

using MultiIndex = std::vector<int>;

inline int multi_index_degree(const MultiIndex& a)
{
    int d = 0;
    for (int e : a)
        d += e;
    return d;
}

template <typename T>
class Polynomial
{
public:
    Polynomial() = default;

    explicit Polynomial(int nvars)
        : nvars_(nvars)
    {
    }

    Polynomial(int nvars, const T& constant)
        : nvars_(nvars)
    {
        if (!is_zero_coeff(constant))
            terms_[MultiIndex(nvars, 0)] = constant;
    }

    static Polynomial monomial(int nvars, const MultiIndex& exponents, const T& coeff)
    {
        Polynomial p(nvars);
        if (static_cast<int>(exponents.size()) != nvars)
            throw std::invalid_argument("Polynomial::monomial: exponent tuple size mismatch");
        if (!is_zero_coeff(coeff))
            p.terms_[exponents] = coeff;
        return p;
    }

    /// The coordinate polynomial xi_i.
    static Polynomial variable(int nvars, int i)
    {
        MultiIndex e(nvars, 0);
        e.at(i) = 1;
        return monomial(nvars, e, T(1));
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<MultiIndex, T>& terms() const { return terms_; }

    int degree() const
    {
        int d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, multi_index_degree(e));
        return d; // -1 for the zero polynomial
    }

    T coefficient(const MultiIndex& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? T(0) : it->second;
    }

    void add_term(const MultiIndex& e, const T& c)
    {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!is_zero_coeff(c))
                terms_[e] = c;
        } else {
            it->second += c;
            if (is_zero_coeff(it->second))
                terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        check_vars(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o)
    {
        check_vars(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, T(-c));
        return *this;
    }

    Polynomial operator+(const Polynomial& o) const
    {
        Polynomial r = *this;
        r += o;
        return r;
    }
    Polynomial operator-(const Polynomial& o) const
    {
        Polynomial r = *this;
        r -= o;
        return r;
    }
    Polynomial operator-() const
    {
        Polynomial r = *this;
        for (auto& [e, c] : r.terms_)
            c = -c;
        return r;
    }

    Polynomial operator*(const Polynomial& o) const
    {
        check_vars(o);
        Polynomial r(nvars_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                MultiIndex e = ea;
                for (int i = 0; i < nvars_; ++i)
                    e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    Polynomial operator*(const T& s) const
    {
        Polynomial r(nvars_);
        if (is_zero_coeff(s))
            return r;
        for (const auto& [e, c] : terms_)
            r.terms_[e] = c * s;
        return r;
    }

    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial derivative(int var) const
    {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0)
                continue;
            MultiIndex d = e;
            --d[var];
            r.add_term(d, c * T(e[var]));
        }
        return r;
    }

    template <typename S>
    S evaluate(const std::vector<S>& x) const
    {
        S value(0);
        for (const auto& [e, c] : terms_) {
            S term = coeff_as<S>(c);
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k)
                    term *= x[i];
            value += term;
        }
        return value;
    }

    /// Substitutes xi_i -> args[i]; the args are polynomials in a possibly
    /// different variable set (all of the same nvars).
    Polynomial substitute(const std::vector<Polynomial>& args) const
    {
        if (static_cast<int>(args.size()) != nvars_)
            throw std::invalid_argument("Polynomial::substitute: argument count mismatch");
        const int m = nvars_ == 0 ? 0 : args.front().nvars();
        Polynomial r(m);
        for (const auto& [e, c] : terms_) {
            Polynomial term(m, c);
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k)
                    term = term * args[i];
            r += term;
        }
        return r;
    }

    /// Exact integral over the unit reference simplex {xi_i >= 0, sum xi <= 1},
    /// using the closed-form monomial integral a! / (|a| + n)!.
    T integral_reference_simplex() const
    {
        T sum(0);
        for (const auto& [e, c] : terms_) {
            BigInt num = 1;
            for (int i = 0; i < nvars_; ++i)
                num *= big_factorial(e[i]);
            const BigInt den = big_factorial(multi_index_degree(e) + nvars_);
            sum += c * coeff_as<T>(Rational(num, den));
        }
        return sum;
    }

    template <typename S>
    Polynomial<S> convert() const
    {
        Polynomial<S> r(nvars_);
        for (const auto& [e, c] : terms_)
            r.add_term(e, Polynomial<S>::template coeff_as<S>(c));
        return r;
    }

    template <typename S, typename U>
    static S coeff_as(const U& c)
    {
        if constexpr (std::is_same_v<S, U>)
            return c;
        else if constexpr (std::is_same_v<S, double>)
            return to_double(c);
        else
            return S(c);
    }

private:
    static bool is_zero_coeff(const T& c) { return c == T(0); }

    void check_vars(const Polynomial& o) const
    {
        if (nvars_ != o.nvars_)
            throw std::invalid_argument("Polynomial: variable count mismatch");
    }

    int nvars_ = 0;
    std::map<MultiIndex, T> terms_;
};

template <typename T>
Polynomial<T> operator*(const T& s, const Polynomial<T>& p)
{
    return p * s;
}

using RationalPolynomial = Polynomial<Rational>;

/// Barycentric coordinate lambda_i on the reference n-simplex, expanded in the
/// monomial basis: lambda_0 = 1 - sum xi_j, lambda_i = xi_i.
template <typename T>
Polynomial<T> barycentric(int n, int i)
{
    if (i < 0 || i > n)
        throw std::invalid_argument("barycentric: index out of range");
    if (i > 0)
        return Polynomial<T>::variable(n, i - 1);
    Polynomial<T> p(n, T(1));
    for (int j = 0; j < n; ++j)
        p -= Polynomial<T>::variable(n, j);
    return p;
}

/// All barycentric monomials lambda^alpha with |alpha| = degree, expanded into
/// the monomial basis; ordered lexicographically by alpha.
template <typename T>
std::vector<Polynomial<T>> barycentric_monomials(int n, int degree)
{
    std::vector<Polynomial<T>> out;
    std::vector<int> alpha(n + 1, 0);
    alpha[0] = degree;
    auto emit = [&]() {
        Polynomial<T> p(n, T(1));
        for (int i = 0; i <= n; ++i) {
            const Polynomial<T> li = barycentric<T>(n, i);
            for (int k = 0; k < alpha[i]; ++k)
                p = p * li;
        }
        out.push_back(p);
    };
    // enumerate compositions of `degree` into n+1 parts, lexicographically
    while (true) {
        emit();
        int i = n - 1;
        while (i >= 0 && alpha[i] == 0)
            --i;
        if (i < 0)
            break;
        --alpha[i];
        int rest = alpha[n] + 1;
        alpha[n] = 0;
        alpha[i + 1] = rest;
        for (int j = i + 2; j <= n; ++j) {
            alpha[i + 1] += alpha[j];
            alpha[j] = 0;
        }
    }
    return out;
}

} // namespace hpfec
