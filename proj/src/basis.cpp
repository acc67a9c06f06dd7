#include <hpfec/basis.hpp>

#include <fstream>
#include <sstream>

namespace hpfec {

namespace {

/// dlambda_i as a constant-coefficient 1-form on the reference n-simplex.
PolyForm<Rational> dlambda(int n, int i)
{
    PolyForm<Rational> f(n, 1);
    if (i == 0) {
        for (int j = 0; j < n; ++j)
            f.add_component((WedgeIndex)1u << j, Polynomial<Rational>(n, Rational(-1)));
    } else {
        f.add_component((WedgeIndex)1u << (i - 1), Polynomial<Rational>(n, Rational(1)));
    }
    return f;
}

using FormKey = std::pair<WedgeIndex, MultiIndex>;

std::vector<Rational> vectorize(const PolyForm<Rational>& f, const std::map<FormKey, int>& keys)
{
    std::vector<Rational> v(keys.size(), Rational(0));
    for (const auto& [w, p] : f.components())
        for (const auto& [e, c] : p.terms()) {
            auto it = keys.find({w, e});
            if (it == keys.end())
                throw std::logic_error("vectorize: key set does not cover the form");
            v[it->second] = c;
        }
    return v;
}

std::map<FormKey, int> collect_keys(const std::vector<const PolyForm<Rational>*>& forms)
{
    std::map<FormKey, int> keys;
    for (const auto* f : forms)
        for (const auto& [w, p] : f->components())
            for (const auto& [e, c] : p.terms())
                keys.emplace(FormKey{w, e}, 0);
    int idx = 0;
    for (auto& [k, v] : keys)
        v = idx++;
    return keys;
}

PolyForm<Rational> linear_combination(const std::vector<PolyForm<Rational>>& forms,
                                      const std::vector<Rational>& coeff)
{
    PolyForm<Rational> out(forms.front().n(), forms.front().k());
    for (std::size_t i = 0; i < forms.size(); ++i)
        if (coeff[i] != 0)
            out = out + forms[i] * coeff[i];
    return out;
}

/// Exact basis of the subspace of span(spanning) with vanishing trace on
/// every subsimplex that is not a geometric ancestor of f.
std::vector<PolyForm<Rational>> trace_vanishing_subspace(
    const std::vector<PolyForm<Rational>>& spanning,
    const Decomposition& dec, const SubsimplexSelector& f, int k)
{
    // trace constraints, one row per (non-ancestor face g, trace key)
    std::vector<std::vector<PolyForm<Rational>>> traces; // per g, per element
    std::vector<std::map<FormKey, int>> keysets;
    int rows = 0;
    for (int d = k; d <= dec.n; ++d) {
        for (const auto& g : dec.dim(d)) {
            if (g.contains(f))
                continue;
            std::vector<PolyForm<Rational>> tr;
            tr.reserve(spanning.size());
            for (const auto& w : spanning)
                tr.push_back(trace_on_face(w, g));
            std::vector<const PolyForm<Rational>*> ptrs;
            for (const auto& t : tr)
                ptrs.push_back(&t);
            keysets.push_back(collect_keys(ptrs));
            rows += static_cast<int>(keysets.back().size());
            traces.push_back(std::move(tr));
        }
    }

    DenseMatrix<Rational> a(rows, static_cast<int>(spanning.size()));
    int row0 = 0;
    for (std::size_t gi = 0; gi < traces.size(); ++gi) {
        const auto& keys = keysets[gi];
        for (std::size_t c = 0; c < spanning.size(); ++c) {
            auto v = vectorize(traces[gi][c], keys);
            for (std::size_t r = 0; r < v.size(); ++r)
                a(row0 + static_cast<int>(r), static_cast<int>(c)) = std::move(v[r]);
        }
        row0 += static_cast<int>(keys.size());
    }

    std::vector<PolyForm<Rational>> out;
    for (const auto& c : nullspace(std::move(a)))
        out.push_back(linear_combination(spanning, c));
    return out;
}

} // namespace

PolyForm<Rational> whitney_form(int n, const SubsimplexSelector& sigma)
{
    const int k = sigma.dim();
    PolyForm<Rational> w(n, k);
    for (int i = 0; i <= k; ++i) {
        PolyForm<Rational> part = PolyForm<Rational>::from_scalar(n, barycentric<Rational>(n, sigma[i]));
        bool first = true;
        PolyForm<Rational> wedge_part(n, 0);
        for (int j = 0; j <= k; ++j) {
            if (j == i)
                continue;
            const auto dl = dlambda(n, sigma[j]);
            wedge_part = first ? dl : wedge(wedge_part, dl);
            first = false;
        }
        PolyForm<Rational> term = first ? part : wedge(part, wedge_part);
        w = (i % 2 == 0) ? (w + term) : (w - term);
    }
    return w * Rational(factorial(k));
}

std::vector<PolyForm<Rational>> spanning_set(int n, int k, int r, Family family)
{
    if (k < 0 || k > n)
        throw std::invalid_argument("spanning_set: need 0 <= k <= n");
    if (family == Family::minus && r < 1)
        throw std::invalid_argument("spanning_set: trimmed family needs r >= 1");
    if (family == Family::full && r < 0)
        throw std::invalid_argument("spanning_set: full family needs r >= 0");
    if (family == Family::full && r == 0 && k != n)
        throw std::invalid_argument("spanning_set: constant forms decompose facewise only for k = n");

    const int degree = (family == Family::minus) ? r - 1 : r;
    std::vector<PolyForm<Rational>> out;
    const auto monomials = barycentric_monomials<Rational>(n, degree);
    if (family == Family::minus) {
        for (const auto& sigma : increasing_maps(k, n)) {
            const auto w = whitney_form(n, sigma);
            for (const auto& m : monomials)
                out.push_back(w.scale(m));
        }
    } else {
        for (WedgeIndex wmask : wedge_basis(n, k)) {
            const auto base = PolyForm<Rational>::basis_wedge(n, wmask);
            for (const auto& m : monomials)
                out.push_back(base.scale(m));
        }
    }
    return out;
}

template <typename T>
AffineMap<T> face_inclusion(int n, const SubsimplexSelector& f)
{
    const int d = f.dim();
    AffineMap<T> m;
    m.linear = DenseMatrix<T>(n, d);
    m.offset.assign(n, T(0));
    // reference vertex 0 is the origin, vertex i is e_i
    if (f[0] > 0)
        m.offset[f[0] - 1] = T(1);
    for (int j = 1; j <= d; ++j) {
        if (f[j] > 0)
            m.linear(f[j] - 1, j - 1) += T(1);
        if (f[0] > 0)
            m.linear(f[0] - 1, j - 1) -= T(1);
    }
    return m;
}

template AffineMap<Rational> face_inclusion<Rational>(int, const SubsimplexSelector&);
template AffineMap<double> face_inclusion<double>(int, const SubsimplexSelector&);

PolyForm<Rational> trace_on_face(const PolyForm<Rational>& w, const SubsimplexSelector& f)
{
    if (w.k() > f.dim())
        return PolyForm<Rational>(f.dim(), w.k()); // zero by convention
    return pullback(w, face_inclusion<Rational>(w.n(), f));
}

bool IncrementalSpan::insert(std::vector<Rational> v)
{
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational c = v[pivots_[r]];
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] -= c * rows_[r][j];
    }
    int pivot = -1;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0) {
            pivot = static_cast<int>(j);
            break;
        }
    if (pivot < 0)
        return false;
    const Rational d = v[pivot];
    for (auto& x : v)
        x /= d;
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
}

template <typename T>
DenseMatrix<T> forms_to_matrix(const std::vector<const PolyForm<T>*>& forms)
{
    static_assert(std::is_same_v<T, Rational>, "forms_to_matrix is used on the exact path");
    const auto keys = collect_keys(forms);
    DenseMatrix<T> m(static_cast<int>(keys.size()), static_cast<int>(forms.size()));
    for (std::size_t c = 0; c < forms.size(); ++c) {
        auto v = vectorize(*forms[c], keys);
        for (std::size_t r = 0; r < v.size(); ++r)
            m(static_cast<int>(r), static_cast<int>(c)) = std::move(v[r]);
    }
    return m;
}

template DenseMatrix<Rational> forms_to_matrix<Rational>(const std::vector<const PolyForm<Rational>*>&);

std::vector<Rational> expand_in_span(const PolyForm<Rational>& w,
                                     const std::vector<const PolyForm<Rational>*>& span)
{
    std::vector<const PolyForm<Rational>*> all = span;
    all.push_back(&w);
    const auto keys = collect_keys(all);
    DenseMatrix<Rational> a(static_cast<int>(keys.size()), static_cast<int>(span.size()));
    for (std::size_t c = 0; c < span.size(); ++c) {
        auto v = vectorize(*span[c], keys);
        for (std::size_t r = 0; r < v.size(); ++r)
            a(static_cast<int>(r), static_cast<int>(c)) = std::move(v[r]);
    }
    auto rhs = vectorize(w, keys);
    auto x = solve(std::move(a), std::move(rhs));
    if (!x)
        throw std::runtime_error("expand_in_span: form is not in the span");
    return *x;
}

std::int64_t space_dimension(int n, int k, int r, Family family)
{
    if (family == Family::minus)
        return binomial(r + k - 1, k) * binomial(n + r, n - k);
    return binomial(r + n, n) * binomial(n, k);
}

std::vector<FaceSpaceBlock> build_basis(int n, int k, int r, Family family)
{
    const auto spanning = spanning_set(n, k, r, family);
    const Decomposition dec = geometric_descendants(n);

    std::vector<const PolyForm<Rational>*> all;
    for (const auto& w : spanning)
        all.push_back(&w);
    const auto keys = collect_keys(all);

    std::vector<FaceSpaceBlock> blocks;
    IncrementalSpan built; // span of all selected blocks, highest dims first

    for (int d = n; d >= 0; --d) {
        for (const auto& f : dec.dim(d)) {
            if (d < k)
                continue; // traces vanish identically; blocks are empty
            auto candidates = trace_vanishing_subspace(spanning, dec, f, k);
            if (candidates.empty())
                continue;

            FaceSpaceBlock block;
            block.face = f;
            block.family = family;
            block.order = r;

            IncrementalSpan trace_span;
            std::map<FormKey, int> trace_keys;
            {
                std::vector<PolyForm<Rational>> traces;
                for (const auto& w : candidates)
                    traces.push_back(trace_on_face(w, f));
                std::vector<const PolyForm<Rational>*> ptrs;
                for (const auto& t : traces)
                    ptrs.push_back(&t);
                trace_keys = collect_keys(ptrs);
            }

            for (const auto& w : candidates) {
                const auto tr = trace_on_face(w, f);
                if (tr.is_zero())
                    continue;
                if (!trace_span.insert(vectorize(tr, trace_keys)))
                    continue;
                if (!built.insert(vectorize(w, keys)))
                    throw std::logic_error("build_basis: trace grew but the span did not");
                block.span.push_back(w);
            }
            if (!block.span.empty())
                blocks.push_back(std::move(block));
        }
    }

    if (built.rank() != space_dimension(n, k, r, family))
        throw std::logic_error("build_basis: face blocks do not sum to the full space");
    return blocks;
}

// -- p-hierarchical transform -------------------------------------------------

namespace {

const FaceSpaceBlock* find_block(const std::vector<FaceSpaceBlock>& blocks,
                                 const SubsimplexSelector& f)
{
    for (const auto& b : blocks)
        if (b.face == f)
            return &b;
    return nullptr;
}

/// L2 Gram-Schmidt on the reference simplex without normalization; exact.
void orthogonalize_block(std::vector<PolyForm<Rational>>& span, int n)
{
    const auto metric = MetricSample<Rational>::euclidean(n);
    std::vector<Rational> norms;
    for (std::size_t j = 0; j < span.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const Rational num =
                local_inner_product(span[j], span[i], metric).integral_reference_simplex();
            if (num == 0)
                continue;
            span[j] = span[j] - span[i] * (num / norms[i]);
        }
        norms.push_back(
            local_inner_product(span[j], span[j], metric).integral_reference_simplex());
        if (norms.back() == 0)
            throw std::logic_error("orthogonalize_block: dependent bubble functions");
    }
}

} // namespace

PHierarchicalBasis hierarchize(int n, int k, int r, Family family)
{
    PHierarchicalBasis basis;
    basis.n = n;
    basis.k = k;
    basis.max_order = r;
    basis.family = family;

    const bool top_full = (family == Family::full && k == n);
    const Decomposition dec = geometric_descendants(n);

    const auto whitney_blocks = build_basis(n, k, 1, Family::minus);
    std::map<int, std::vector<FaceSpaceBlock>> uniform;
    const int q_lo = (family == Family::full) ? 1 : 2;
    for (int q = q_lo; q <= r; ++q)
        uniform[q] = build_basis(n, k, q, family);

    for (int d = 0; d <= n; ++d) {
        for (const auto& f : dec.dim(d)) {
            // gather all stage inputs for this face up front, so that one key
            // set covers every trace that will be compared
            const FaceSpaceBlock* wb = find_block(whitney_blocks, f);
            std::vector<std::pair<int, const FaceSpaceBlock*>> stages;
            for (int q = q_lo; q <= r; ++q)
                if (const auto* b = find_block(uniform[q], f))
                    stages.emplace_back(q, b);
            if (!wb && stages.empty())
                continue;

            std::map<FormKey, int> trace_keys;
            {
                std::vector<PolyForm<Rational>> traces;
                if (wb)
                    for (const auto& w : wb->span)
                        traces.push_back(trace_on_face(w, f));
                for (const auto& [q, b] : stages)
                    for (const auto& w : b->span)
                        traces.push_back(trace_on_face(w, f));
                std::vector<const PolyForm<Rational>*> ptrs;
                for (const auto& t : traces)
                    ptrs.push_back(&t);
                trace_keys = collect_keys(ptrs);
            }

            IncrementalSpan trace_span;
            if (wb) {
                FaceSpaceBlock stage;
                stage.face = f;
                stage.family = family;
                stage.order = top_full ? 0 : 1;
                stage.span = wb->span;
                for (const auto& w : stage.span)
                    if (!trace_span.insert(vectorize(trace_on_face(w, f), trace_keys)))
                        throw std::logic_error("hierarchize: dependent Whitney block");
                basis.blocks.push_back(std::move(stage));
            }
            for (const auto& [q, b] : stages) {
                FaceSpaceBlock stage;
                stage.face = f;
                stage.family = family;
                stage.order = q;
                stage.plus_stage = (family == Family::full && q == 1);
                for (const auto& w : b->span)
                    if (trace_span.insert(vectorize(trace_on_face(w, f), trace_keys)))
                        stage.span.push_back(w);
                if (stage.span.empty())
                    continue;
                if (d == n)
                    orthogonalize_block(stage.span, n);
                basis.blocks.push_back(std::move(stage));
            }
        }
    }

    basis.finalize();

    // the prefixes must reproduce the uniform space dimensions order by order,
    // and the whole collection must be linearly independent
    for (int q = top_full ? 0 : 1; q <= r; ++q)
        if (basis.dimension_at_order(q) != space_dimension(n, k, q, family))
            throw std::logic_error("hierarchize: block sizes disagree with the uniform basis");
    {
        IncrementalSpan span;
        std::vector<const PolyForm<Rational>*> ptrs;
        for (const auto& b : basis.blocks)
            for (const auto& w : b.span)
                ptrs.push_back(&w);
        const auto keys = collect_keys(ptrs);
        for (const auto* w : ptrs)
            if (!span.insert(vectorize(*w, keys)))
                throw std::logic_error("hierarchize: dependent hierarchical blocks");
    }
    return basis;
}

PHierarchicalBasis::Range PHierarchicalBasis::face_range(const SubsimplexSelector& f,
                                                         int order) const
{
    auto it = face_flat_range_.find(f.indices());
    if (it == face_flat_range_.end())
        return {};
    if (order > max_order)
        throw std::invalid_argument("face_range: order beyond built range");
    Range r = it->second;
    int end = r.begin;
    int pos = 0;
    for (const auto& b : blocks) {
        if (b.face == f) {
            if (b.order <= order)
                end = pos + b.size();
        }
        pos += b.size();
    }
    r.end = end;
    return r;
}

int PHierarchicalBasis::dimension_at_order(int order) const
{
    int total = 0;
    for (const auto& b : blocks)
        if (b.order <= order)
            total += b.size();
    return total;
}

void PHierarchicalBasis::finalize()
{
    flat_.clear();
    face_flat_range_.clear();
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto& b = blocks[bi];
        auto it = face_flat_range_.find(b.face.indices());
        if (it == face_flat_range_.end()) {
            Range range;
            range.begin = static_cast<int>(flat_.size());
            range.end = range.begin;
            it = face_flat_range_.emplace(b.face.indices(), range).first;
        }
        if (it->second.end != static_cast<int>(flat_.size()))
            throw std::logic_error("PHierarchicalBasis: blocks of one face must be contiguous");
        for (int j = 0; j < b.size(); ++j)
            flat_.emplace_back(static_cast<int>(bi), j);
        it->second.end = static_cast<int>(flat_.size());
    }
}

const PHierarchicalBasis& basis_cache(int n, int k, int r, Family family)
{
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int, Family>, std::unique_ptr<PHierarchicalBasis>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{n, k, r, family}];
    if (!slot)
        slot = std::make_unique<PHierarchicalBasis>(hierarchize(n, k, r, family));
    return *slot;
}

// -- binary cache -------------------------------------------------------------

namespace {

constexpr std::uint32_t kCacheMagic = 0x48504642; // "HPFB"
constexpr std::uint32_t kCacheVersion = 1;

// layout fingerprint; bump kCacheVersion when the on-disk format changes
constexpr std::uint64_t kSchemaHash = 0x9e3779b97f4a7c15ull ^ (kCacheVersion * 0x100000001b3ull);

void write_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
void write_u64(std::ostream& os, std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
std::uint32_t read_u32(std::istream& is)
{
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
}
std::uint64_t read_u64(std::istream& is)
{
    std::uint64_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}
void write_string(std::ostream& os, const std::string& s)
{
    write_u32(os, static_cast<std::uint32_t>(s.size()));
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}
std::string read_string(std::istream& is)
{
    const auto len = read_u32(is);
    std::string s(len, '\0');
    is.read(s.data(), len);
    return s;
}

} // namespace

void dump_basis_cache(const PHierarchicalBasis& basis, const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("dump_basis_cache: cannot open " + path);
    write_u32(os, kCacheMagic);
    write_u32(os, kCacheVersion);
    write_u64(os, kSchemaHash);
    write_u32(os, basis.n);
    write_u32(os, basis.k);
    write_u32(os, basis.max_order);
    write_u32(os, basis.family == Family::minus ? 0 : 1);
    write_u32(os, static_cast<std::uint32_t>(basis.blocks.size()));
    for (const auto& b : basis.blocks) {
        write_u32(os, static_cast<std::uint32_t>(b.face.size()));
        for (int i = 0; i < b.face.size(); ++i)
            write_u32(os, b.face[i]);
        write_u32(os, b.order);
        write_u32(os, b.plus_stage ? 1 : 0);
        write_u32(os, static_cast<std::uint32_t>(b.span.size()));
        for (const auto& w : b.span) {
            write_u32(os, static_cast<std::uint32_t>(w.components().size()));
            for (const auto& [mask, p] : w.components()) {
                write_u32(os, mask);
                write_u32(os, static_cast<std::uint32_t>(p.terms().size()));
                for (const auto& [e, c] : p.terms()) {
                    for (int x : e)
                        write_u32(os, x);
                    std::ostringstream num;
                    num << c;
                    write_string(os, num.str());
                }
            }
        }
    }
}

PHierarchicalBasis load_basis_cache(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("load_basis_cache: cannot open " + path);
    if (read_u32(is) != kCacheMagic)
        throw std::runtime_error("load_basis_cache: bad magic");
    if (read_u32(is) != kCacheVersion)
        throw std::runtime_error("load_basis_cache: version mismatch");
    if (read_u64(is) != kSchemaHash)
        throw std::runtime_error("load_basis_cache: schema mismatch");

    PHierarchicalBasis basis;
    basis.n = static_cast<int>(read_u32(is));
    basis.k = static_cast<int>(read_u32(is));
    basis.max_order = static_cast<int>(read_u32(is));
    basis.family = read_u32(is) == 0 ? Family::minus : Family::full;
    const auto nblocks = read_u32(is);
    for (std::uint32_t bi = 0; bi < nblocks; ++bi) {
        FaceSpaceBlock b;
        const auto fsize = read_u32(is);
        std::vector<int> face(fsize);
        for (auto& x : face)
            x = static_cast<int>(read_u32(is));
        b.face = SubsimplexSelector(face);
        b.family = basis.family;
        b.order = static_cast<int>(read_u32(is));
        b.plus_stage = read_u32(is) != 0;
        const auto nspan = read_u32(is);
        for (std::uint32_t si = 0; si < nspan; ++si) {
            PolyForm<Rational> w(basis.n, basis.k);
            const auto ncomp = read_u32(is);
            for (std::uint32_t ci = 0; ci < ncomp; ++ci) {
                const WedgeIndex mask = read_u32(is);
                const auto nterms = read_u32(is);
                Polynomial<Rational> p(basis.n);
                for (std::uint32_t ti = 0; ti < nterms; ++ti) {
                    MultiIndex e(basis.n);
                    for (auto& x : e)
                        x = static_cast<int>(read_u32(is));
                    p.add_term(e, Rational(read_string(is)));
                }
                w.add_component(mask, p);
            }
            b.span.push_back(std::move(w));
        }
        basis.blocks.push_back(std::move(b));
    }
    if (!is)
        throw std::runtime_error("load_basis_cache: truncated file");
    basis.finalize();
    return basis;
}

} // namespace hpfec
