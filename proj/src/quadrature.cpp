#include <hpfec/quadrature.hpp>

#include <map>

namespace hpfec {

QuadratureRule grundmann_moeller(int n, int s)
{
    if (n < 1 || s < 0)
        throw std::invalid_argument("grundmann_moeller: need n >= 1, s >= 0");

    const int d = 2 * s + 1;
    QuadratureRule rule;
    rule.n = n;
    rule.s = s;
    rule.exact_degree = d;

    const BigInt two_pow = BigInt(1) << (2 * s);
    for (int i = 0; i <= s; ++i) {
        const int denom = d + n - 2 * i;
        BigInt num = 1;
        for (int e = 0; e < d; ++e)
            num *= denom;
        Rational w(num, two_pow * big_factorial(i) * big_factorial(d + n - i));
        if (i % 2 != 0)
            w = -w;

        // all beta in Z^n_{>=0} with |beta| <= s - i
        const int cap = s - i;
        std::vector<int> beta(n, 0);
        int total = 0;
        while (true) {
            std::vector<Rational> pt(n);
            for (int j = 0; j < n; ++j)
                pt[j] = Rational(2 * beta[j] + 1, denom);
            rule.points.push_back(std::move(pt));
            rule.weights.push_back(w);

            // next composition with sum <= cap
            int j = 0;
            while (j < n && total == cap) {
                total -= beta[j];
                beta[j] = 0;
                ++j;
            }
            if (j == n)
                break;
            ++beta[j];
            ++total;
        }
    }

    rule.points_d.reserve(rule.points.size());
    for (const auto& pt : rule.points) {
        std::vector<double> p(pt.size());
        for (std::size_t j = 0; j < pt.size(); ++j)
            p[j] = to_double(pt[j]);
        rule.points_d.push_back(std::move(p));
    }
    rule.weights_d.reserve(rule.weights.size());
    for (const auto& w : rule.weights)
        rule.weights_d.push_back(to_double(w));
    return rule;
}

const QuadratureRule& quadrature_cache(int n, int s)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{n, s}];
    if (!slot)
        slot = std::make_unique<QuadratureRule>(grundmann_moeller(n, s));
    return *slot;
}

} // namespace hpfec
