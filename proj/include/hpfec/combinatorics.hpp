#pragma once

// Combinatorics of the n-simplex: subsimplex enumeration, ancestry,
// orientation and boundary. Subsimplices are identified purely by index
// tuples; geometry lives elsewhere.

#include <hpfec/rational.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace hpfec {

/// A k-subsimplex of the n-simplex, selected by the strictly increasing
/// tuple of the k+1 local vertex indices it spans.
class SubsimplexSelector
{
public:
    SubsimplexSelector() = default;

    explicit SubsimplexSelector(std::vector<int> indices)
        : indices_(std::move(indices))
    {
        if (indices_.empty())
            throw std::invalid_argument("SubsimplexSelector: empty index tuple");
        for (std::size_t i = 0; i + 1 < indices_.size(); ++i)
            if (indices_[i] >= indices_[i + 1])
                throw std::invalid_argument("SubsimplexSelector: indices must strictly increase");
        if (indices_.front() < 0)
            throw std::invalid_argument("SubsimplexSelector: negative index");
    }

    SubsimplexSelector(std::initializer_list<int> indices)
        : SubsimplexSelector(std::vector<int>(indices))
    {
    }

    int dim() const { return static_cast<int>(indices_.size()) - 1; }
    int size() const { return static_cast<int>(indices_.size()); }
    int operator[](int i) const { return indices_[i]; }
    const std::vector<int>& indices() const { return indices_; }

    bool contains(const SubsimplexSelector& other) const
    {
        return std::includes(indices_.begin(), indices_.end(),
                             other.indices_.begin(), other.indices_.end());
    }

    bool operator==(const SubsimplexSelector& o) const { return indices_ == o.indices_; }
    bool operator!=(const SubsimplexSelector& o) const { return indices_ != o.indices_; }
    bool operator<(const SubsimplexSelector& o) const
    {
        // Order by dimension first, lexicographic within a dimension; this is
        // the canonical ordering used for basis and dof numbering throughout.
        if (indices_.size() != o.indices_.size())
            return indices_.size() < o.indices_.size();
        return indices_ < o.indices_;
    }

private:
    std::vector<int> indices_;
};

/// All strictly increasing (k+1)-tuples over {0..n}, lexicographically ordered.
std::vector<SubsimplexSelector> increasing_maps(int k, int n);

/// The subsimplices of the n-simplex, grouped by dimension.
struct Decomposition
{
    int n = -1;
    std::vector<std::vector<SubsimplexSelector>> by_dim; // by_dim[k] = all k-subsimplices

    const std::vector<SubsimplexSelector>& dim(int k) const { return by_dim.at(k); }

    bool contains(const SubsimplexSelector& f) const
    {
        if (f.dim() > n)
            return false;
        const auto& list = by_dim[f.dim()];
        return std::binary_search(list.begin(), list.end(), f,
                                  [](const SubsimplexSelector& a, const SubsimplexSelector& b) {
                                      return a.indices() < b.indices();
                                  });
    }
};

Decomposition geometric_descendants(int n);

/// All s in dec with f contained in cl(s), s != f; with include_self the
/// starred variant that also contains f.
std::set<SubsimplexSelector> geometric_ancestors(const Decomposition& dec,
                                                 const SubsimplexSelector& f,
                                                 bool include_self);

/// The n+1 signed facets (-1)^i f_(0..i-1,i+1..n) of the n-simplex.
std::vector<std::pair<int, SubsimplexSelector>> boundary(int n);

/// +1 for even permutations of (0..m), -1 for odd. Throws if perm is not a
/// permutation.
int permutation_parity(const std::vector<int>& perm);

/// Parity of the permutation sorting `values` ascending. Values must be
/// distinct.
template <typename T>
int sort_parity(std::vector<T> values)
{
    int sign = 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::size_t m = i;
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (values[j] < values[m])
                m = j;
        if (m != i) {
            std::swap(values[i], values[m]);
            sign = -sign;
        }
    }
    return sign;
}

/// An n-simplex of a mesh: global vertex ids in ascending order plus the
/// parity flag relating that order to the imported, positively oriented one.
struct Simplex
{
    std::vector<int> vertices; // ascending global ids
    int orientation_flag = 1;  // +1 or -1

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Sorts the vertex tuple ascending and records the permutation parity as the
/// orientation flag.
Simplex make_simplex(const std::vector<int>& vertices_as_imported);

} // namespace hpfec
