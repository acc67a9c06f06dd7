#pragma once

// Polynomial differential-form bases on the reference simplex for the trimmed
// and full families, decomposed into face-associated blocks with vanishing
// traces, plus the transform to p-hierarchical form: per face, the blocks of
// order q extend the blocks of order q-1 without altering them, so polynomial
// orders can change per subsimplex without rebuilding neighbors.

#include <hpfec/combinatorics.hpp>
#include <hpfec/forms.hpp>

#include <memory>

namespace hpfec {

enum class Family { minus, full };

inline const char* family_name(Family f) { return f == Family::minus ? "minus" : "full"; }

/// The Whitney k-form of the subsimplex sigma, normalized so that the
/// integral of its trace over sigma is one:
///   k! sum_i (-1)^i lambda_{sigma(i)} dlambda_{sigma(0)} ^ .. ^ (omit i) ^ ..
PolyForm<Rational> whitney_form(int n, const SubsimplexSelector& sigma);

/// Spanning set of the requested space in a deterministic order: barycentric
/// monomials times Whitney forms (trimmed family, order r >= 1) or times basis
/// wedges (full family, order r >= 0).
std::vector<PolyForm<Rational>> spanning_set(int n, int k, int r, Family family);

/// Affine inclusion of the dim-f reference simplex onto the face f of the
/// reference n-simplex (vertex i of the face simplex goes to vertex f[i]).
template <typename T>
AffineMap<T> face_inclusion(int n, const SubsimplexSelector& f);

/// Trace onto f: pullback along the face inclusion; the zero form when the
/// form degree exceeds dim f.
PolyForm<Rational> trace_on_face(const PolyForm<Rational>& w, const SubsimplexSelector& f);

/// One face-associated block of basis forms.
struct FaceSpaceBlock
{
    SubsimplexSelector face;
    Family family = Family::minus;
    int order = 1;          // polynomial order of the stage
    bool plus_stage = false; // the full-family complement stage at order 1
    std::vector<PolyForm<Rational>> span;

    int size() const { return static_cast<int>(span.size()); }
};

/// Face-space decomposition of P_r^-Lambda^k or P_r Lambda^k at uniform
/// order: every element of a block has vanishing trace on every subsimplex
/// that is not a geometric ancestor of the block's face. Verified by exact
/// rank to be a direct sum of the full space.
std::vector<FaceSpaceBlock> build_basis(int n, int k, int r, Family family);

/// Basis blocks stratified by order per face. Increasing the order of any
/// face appends blocks without changing existing ones; the lowest block of
/// both families is the Whitney block.
class PHierarchicalBasis
{
public:
    int n = 0;
    int k = 0;
    int max_order = 0;
    Family family = Family::minus;

    std::vector<FaceSpaceBlock> blocks; // grouped by face, stages ascending

    struct Range
    {
        int begin = 0;
        int end = 0;
        int size() const { return end - begin; }
    };

    /// Contiguous index range (into element()) of all blocks of the face with
    /// stage order <= order. Empty range when nothing is assigned to f.
    Range face_range(const SubsimplexSelector& f, int order) const;

    /// Flattened element access; indices from face_range refer here.
    int size() const { return static_cast<int>(flat_.size()); }
    const PolyForm<Rational>& element(int i) const
    {
        const auto& [b, j] = flat_[i];
        return blocks[b].span[j];
    }

    int dimension_at_order(int order) const;

    void finalize(); // builds the flat index and the face offsets

private:
    std::vector<std::pair<int, int>> flat_; // (block, element within block)
    std::map<std::vector<int>, Range> face_flat_range_; // face -> full flat range
};

/// Builds the uniform-order bases for q = 1..r (q = 0 start for the full
/// family of top-degree forms) and transforms them to p-hierarchical form.
PHierarchicalBasis hierarchize(int n, int k, int r, Family family);

/// Shared, immutable cache of hierarchical bases.
const PHierarchicalBasis& basis_cache(int n, int k, int r, Family family);

/// Dimension of P_r^-Lambda^k or P_r Lambda^k on the n-simplex.
std::int64_t space_dimension(int n, int k, int r, Family family);

// -- exact expansion helpers -------------------------------------------------

/// Builds the coefficient matrix of a list of forms over the union of their
/// (wedge, monomial) keys; one column per form.
template <typename T>
DenseMatrix<T> forms_to_matrix(const std::vector<const PolyForm<T>*>& forms);

/// Expands a form exactly in the given span; throws when the form is not in
/// the span.
std::vector<Rational> expand_in_span(const PolyForm<Rational>& w,
                                     const std::vector<const PolyForm<Rational>*>& span);

/// Incremental exact rank tracker: insert() returns true when the vector was
/// independent of everything inserted so far.
class IncrementalSpan
{
public:
    bool insert(std::vector<Rational> v);
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    std::vector<std::vector<Rational>> rows_; // reduced rows
    std::vector<int> pivots_;
};

/// Serializes basis tables to a small versioned binary cache (and back).
void dump_basis_cache(const PHierarchicalBasis& basis, const std::string& path);
PHierarchicalBasis load_basis_cache(const std::string& path);

} // namespace hpfec
