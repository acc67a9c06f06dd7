#include <hpfec/combinatorics.hpp>

namespace hpfec {

std::vector<SubsimplexSelector> increasing_maps(int k, int n)
{
    if (k < 0 || n < 0 || k > n)
        throw std::invalid_argument("increasing_maps: need 0 <= k <= n");

    std::vector<SubsimplexSelector> out;
    std::vector<int> tuple(k + 1);
    for (int i = 0; i <= k; ++i)
        tuple[i] = i;
    while (true) {
        out.emplace_back(tuple);
        // advance to the next increasing tuple in lexicographic order
        int i = k;
        while (i >= 0 && tuple[i] == n - (k - i))
            --i;
        if (i < 0)
            break;
        ++tuple[i];
        for (int j = i + 1; j <= k; ++j)
            tuple[j] = tuple[j - 1] + 1;
    }
    return out;
}

Decomposition geometric_descendants(int n)
{
    if (n < 0)
        throw std::invalid_argument("geometric_descendants: n must be >= 0");
    Decomposition dec;
    dec.n = n;
    dec.by_dim.resize(n + 1);
    for (int k = 0; k <= n; ++k)
        dec.by_dim[k] = increasing_maps(k, n);
    return dec;
}

std::set<SubsimplexSelector> geometric_ancestors(const Decomposition& dec,
                                                 const SubsimplexSelector& f,
                                                 bool include_self)
{
    if (!dec.contains(f))
        throw std::invalid_argument("geometric_ancestors: f is not a subsimplex of the decomposition");

    std::set<SubsimplexSelector> out;
    for (int k = f.dim(); k <= dec.n; ++k)
        for (const auto& s : dec.by_dim[k])
            if (s.contains(f) && s != f)
                out.insert(s);
    if (include_self)
        out.insert(f);
    return out;
}

std::vector<std::pair<int, SubsimplexSelector>> boundary(int n)
{
    if (n < 1)
        throw std::invalid_argument("boundary: n must be >= 1");
    std::vector<std::pair<int, SubsimplexSelector>> out;
    for (int i = 0; i <= n; ++i) {
        std::vector<int> facet;
        facet.reserve(n);
        for (int j = 0; j <= n; ++j)
            if (j != i)
                facet.push_back(j);
        out.emplace_back((i % 2 == 0) ? 1 : -1, SubsimplexSelector(facet));
    }
    return out;
}

int permutation_parity(const std::vector<int>& perm)
{
    const int m = static_cast<int>(perm.size());
    std::vector<bool> seen(m, false);
    for (int v : perm) {
        if (v < 0 || v >= m || seen[v])
            throw std::invalid_argument("permutation_parity: input is not a permutation of 0..m");
        seen[v] = true;
    }
    int sign = 1;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (perm[i] > perm[j])
                sign = -sign;
    return sign;
}

Simplex make_simplex(const std::vector<int>& vertices_as_imported)
{
    Simplex s;
    s.vertices = vertices_as_imported;
    s.orientation_flag = sort_parity(vertices_as_imported);
    std::sort(s.vertices.begin(), s.vertices.end());
    for (std::size_t i = 0; i + 1 < s.vertices.size(); ++i)
        if (s.vertices[i] == s.vertices[i + 1])
            throw std::invalid_argument("make_simplex: repeated vertex id");
    return s;
}

} // namespace hpfec
