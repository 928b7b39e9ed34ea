#include "adams/toda.hpp"

#include "adams/polytope.hpp"
#include "adams/steenrod.hpp"
#include "adams/unstable.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace adams::toda {

// ---------------------------------------------------------------------------
// Integer matrix helpers.
// ---------------------------------------------------------------------------

namespace {

IntMatrix int_combine(const IntMatrix& x, const IntMatrix& y, int sign) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("integer matrix sum: shape mismatch");
    IntMatrix out(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            out.at(i, j) = x.at(i, j) + sign * y.at(i, j);
    return out;
}

IntMatrix int_scale(const BigInt& c, const IntMatrix& x) {
    IntMatrix out(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            out.at(i, j) = c * x.at(i, j);
    return out;
}

bool int_is_zero(const IntMatrix& x) {
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            if (x.at(i, j) != 0) return false;
    return true;
}

std::vector<BigInt> int_apply(const IntMatrix& m, const std::vector<BigInt>& x) {
    if (int(x.size()) != m.cols())
        throw std::invalid_argument("integer apply: length mismatch");
    std::vector<BigInt> out(m.rows(), 0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) out[i] += m.at(i, j) * x[j];
    return out;
}

// Solve m*x = b over the integers using a precomputed Smith form of m.
bool snf_solve(const IntMatrix& m, const SmithResult& s, const std::vector<BigInt>& b,
               std::vector<BigInt>* x_out) {
    std::vector<BigInt> c = int_apply(s.u, b);
    std::vector<BigInt> y(m.cols(), 0);
    for (int i = 0; i < m.rows(); ++i) {
        BigInt d = (i < int(s.diagonal.size())) ? s.diagonal[i] : BigInt(0);
        if (d != 0) {
            if (c[i] % d != 0) return false;
            y[i] = c[i] / d;
        } else if (c[i] != 0) {
            return false;
        }
    }
    if (x_out) *x_out = int_apply(s.v, y);
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// ChainComplexZ
// ---------------------------------------------------------------------------

ChainComplexZ::ChainComplexZ(int t_min, int t_max) : t_min_(t_min), t_max_(t_max) {
    if (t_max_ < t_min_ - 1)
        throw std::invalid_argument("chain complex: bad window");
}

void ChainComplexZ::set_rank(int t, int r) {
    if (t < t_min_ || t > t_max_)
        throw std::invalid_argument("chain complex: degree outside window");
    if (r < 0) throw std::invalid_argument("chain complex: negative rank");
    if (r == 0)
        ranks_.erase(t);
    else
        ranks_[t] = r;
}

int ChainComplexZ::rank(int t) const {
    auto it = ranks_.find(t);
    return it == ranks_.end() ? 0 : it->second;
}

void ChainComplexZ::set_diff(int t, IntMatrix d) {
    if (t <= t_min_ || t > t_max_)
        throw std::invalid_argument("chain complex: differential degree outside window");
    if (d.rows() != rank(t - 1) || d.cols() != rank(t))
        throw std::invalid_argument("chain complex: differential shape mismatch");
    diffs_[t] = std::move(d);
}

IntMatrix ChainComplexZ::diff(int t) const {
    auto it = diffs_.find(t);
    if (it != diffs_.end()) return it->second;
    return IntMatrix(rank(t - 1), rank(t));
}

void ChainComplexZ::validate() const {
    for (const auto& [t, d] : diffs_)
        if (d.rows() != rank(t - 1) || d.cols() != rank(t))
            throw std::invalid_argument("chain complex: differential shape mismatch");
    for (int t = t_min_ + 2; t <= t_max_; ++t)
        if (!int_is_zero(diff(t - 1) * diff(t)))
            throw std::invalid_argument("chain complex: d∘d != 0 at degree " + std::to_string(t));
}

// ---------------------------------------------------------------------------
// ChainMapZ operations
// ---------------------------------------------------------------------------

IntMatrix map_block(const ChainComplexZ& src, const ChainComplexZ& dst,
                    const ChainMapZ& f, int t) {
    int rows = dst.rank(t + f.degree);
    int cols = src.rank(t);
    auto it = f.blocks.find(t);
    if (it == f.blocks.end()) return IntMatrix(rows, cols);
    if (it->second.rows() != rows || it->second.cols() != cols)
        throw std::invalid_argument("graded map: block shape mismatch at degree " +
                                    std::to_string(t));
    return it->second;
}

ChainMapZ compose(const ChainComplexZ& a, const ChainComplexZ& b, const ChainComplexZ& c,
                  const ChainMapZ& outer, const ChainMapZ& inner) {
    ChainMapZ out;
    out.degree = outer.degree + inner.degree;
    for (int t = a.t_min(); t <= a.t_max(); ++t) {
        if (a.rank(t) == 0 || c.rank(t + out.degree) == 0) continue;
        out.blocks[t] = map_block(b, c, outer, t + inner.degree) * map_block(a, b, inner, t);
    }
    return out;
}

ChainMapZ hom_boundary(const ChainComplexZ& src, const ChainComplexZ& dst,
                       const ChainMapZ& f) {
    ChainMapZ out;
    out.degree = f.degree - 1;
    int sign = (f.degree % 2 == 0) ? -1 : 1;  // -(-1)^deg
    for (int t = src.t_min(); t <= src.t_max(); ++t) {
        if (src.rank(t) == 0 || dst.rank(t + out.degree) == 0) continue;
        IntMatrix first = dst.diff(t + f.degree) * map_block(src, dst, f, t);
        IntMatrix second = map_block(src, dst, f, t - 1) * src.diff(t);
        out.blocks[t] = int_combine(first, int_scale(sign, second), 1);
    }
    return out;
}

ChainMapZ add(const ChainMapZ& a, const ChainMapZ& b) {
    if (a.degree != b.degree)
        throw std::invalid_argument("graded map sum: degree mismatch");
    ChainMapZ out;
    out.degree = a.degree;
    out.blocks = a.blocks;
    for (const auto& [t, m] : b.blocks) {
        auto it = out.blocks.find(t);
        if (it == out.blocks.end())
            out.blocks[t] = m;
        else
            it->second = int_combine(it->second, m, 1);
    }
    return out;
}

ChainMapZ subtract(const ChainMapZ& a, const ChainMapZ& b) {
    return add(a, scale(-1, b));
}

ChainMapZ scale(const BigInt& c, const ChainMapZ& f) {
    ChainMapZ out;
    out.degree = f.degree;
    for (const auto& [t, m] : f.blocks) out.blocks[t] = int_scale(c, m);
    return out;
}

bool map_is_zero(const ChainComplexZ& src, const ChainComplexZ& dst, const ChainMapZ& f) {
    for (int t = src.t_min(); t <= src.t_max(); ++t)
        if (!int_is_zero(map_block(src, dst, f, t))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Hom-complex vectorization
// ---------------------------------------------------------------------------

HomBasis hom_basis(const ChainComplexZ& src, const ChainComplexZ& dst, int degree) {
    HomBasis b;
    b.degree = degree;
    for (int t = src.t_min(); t <= src.t_max(); ++t) {
        int rows = dst.rank(t + degree);
        int cols = src.rank(t);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                b.entries.emplace_back(t, i, j);
    }
    return b;
}

std::vector<BigInt> vectorize(const ChainComplexZ& src, const ChainComplexZ& dst,
                              const HomBasis& basis, const ChainMapZ& f) {
    if (f.degree != basis.degree)
        throw std::invalid_argument("vectorize: degree mismatch");
    std::vector<BigInt> v(basis.entries.size(), 0);
    int last_t = basis.entries.empty() ? 0 : std::get<0>(basis.entries.front()) - 1;
    IntMatrix block;
    for (std::size_t e = 0; e < basis.entries.size(); ++e) {
        auto [t, i, j] = basis.entries[e];
        if (t != last_t) {
            block = map_block(src, dst, f, t);
            last_t = t;
        }
        v[e] = block.at(i, j);
    }
    return v;
}

ChainMapZ devectorize(const HomBasis& basis, const std::vector<BigInt>& v) {
    if (v.size() != basis.entries.size())
        throw std::invalid_argument("devectorize: length mismatch");
    // Block shapes: the maximal (row, col) seen per degree.
    std::map<int, std::pair<int, int>> shape;
    for (const auto& [t, i, j] : basis.entries) {
        auto& s = shape[t];
        s.first = std::max(s.first, i + 1);
        s.second = std::max(s.second, j + 1);
    }
    ChainMapZ f;
    f.degree = basis.degree;
    for (const auto& [t, s] : shape) f.blocks[t] = IntMatrix(s.first, s.second);
    for (std::size_t e = 0; e < basis.entries.size(); ++e) {
        auto [t, i, j] = basis.entries[e];
        f.blocks[t].at(i, j) = v[e];
    }
    return f;
}

IntMatrix hom_boundary_matrix(const ChainComplexZ& src, const ChainComplexZ& dst, int degree) {
    HomBasis from = hom_basis(src, dst, degree);
    HomBasis to = hom_basis(src, dst, degree - 1);
    std::map<std::tuple<int, int, int>, int> index;
    for (std::size_t e = 0; e < to.entries.size(); ++e) index[to.entries[e]] = int(e);
    IntMatrix m(to.dim(), from.dim());
    int sign = (degree % 2 == 0) ? -1 : 1;  // -(-1)^deg
    for (std::size_t e = 0; e < from.entries.size(); ++e) {
        auto [t, i, j] = from.entries[e];
        // d_dst ∘ E_{ij}: column j of d at degree t+degree hits row i.
        IntMatrix ddst = dst.diff(t + degree);
        for (int r = 0; r < ddst.rows(); ++r) {
            if (ddst.at(r, i) == 0) continue;
            auto it = index.find({t, r, j});
            if (it != index.end()) m.at(it->second, int(e)) += ddst.at(r, i);
        }
        // E_{ij} ∘ d_src at degree t+1: lands in block t+1.
        IntMatrix dsrc = src.diff(t + 1);
        for (int cc = 0; cc < dsrc.cols(); ++cc) {
            if (dsrc.at(j, cc) == 0) continue;
            auto it = index.find({t + 1, i, cc});
            if (it != index.end()) m.at(it->second, int(e)) += sign * dsrc.at(j, cc);
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// HomologyClasses
// ---------------------------------------------------------------------------

HomologyClasses::HomologyClasses(const ChainComplexZ& src, const ChainComplexZ& dst,
                                 int degree)
    : basis_(hom_basis(src, dst, degree)), src_(&src), dst_(&dst) {
    IntMatrix bs = hom_boundary_matrix(src, dst, degree);
    IntMatrix bs1 = hom_boundary_matrix(src, dst, degree + 1);
    SmithResult s = smith_normal_form(bs);
    cycle_rank_ = bs.cols() - s.rank;
    kernel_ = IntMatrix(bs.cols(), cycle_rank_);
    for (int c = 0; c < cycle_rank_; ++c)
        for (int r = 0; r < bs.cols(); ++r)
            kernel_.at(r, c) = s.v.at(r, s.rank + c);
    kernel_snf_ = smith_normal_form(kernel_);
    boundary_in_kernel_ = IntMatrix(cycle_rank_, bs1.cols());
    for (int c = 0; c < bs1.cols(); ++c) {
        std::vector<BigInt> col(bs1.rows());
        for (int r = 0; r < bs1.rows(); ++r) col[r] = bs1.at(r, c);
        std::vector<BigInt> y;
        if (!snf_solve(kernel_, kernel_snf_, col, &y))
            throw std::logic_error("hom homology: boundary is not a cycle");
        for (int r = 0; r < cycle_rank_; ++r) boundary_in_kernel_.at(r, c) = y[r];
    }
    relation_snf_ = smith_normal_form(boundary_in_kernel_);
    free_rank_ = cycle_rank_ - relation_snf_.rank;
}

std::vector<BigInt> HomologyClasses::invariant_factors() const {
    std::vector<BigInt> out;
    for (int i = 0; i < relation_snf_.rank; ++i)
        if (relation_snf_.diagonal[i] > 1) out.push_back(relation_snf_.diagonal[i]);
    return out;
}

bool HomologyClasses::trivial() const {
    return free_rank_ == 0 && invariant_factors().empty();
}

std::string HomologyClasses::structure() const {
    std::vector<std::string> parts;
    for (const BigInt& d : invariant_factors()) parts.push_back("Z/" + d.str());
    for (int i = 0; i < free_rank_; ++i) parts.push_back("Z");
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
}

std::vector<BigInt> HomologyClasses::kernel_coordinates(const ChainMapZ& f) const {
    std::vector<BigInt> v = vectorize(*src_, *dst_, basis_, f);
    std::vector<BigInt> y;
    if (!snf_solve(kernel_, kernel_snf_, v, &y))
        throw std::invalid_argument("hom homology: the map is not a cycle");
    return y;
}

std::vector<BigInt> HomologyClasses::class_of(const ChainMapZ& f) const {
    std::vector<BigInt> w = int_apply(relation_snf_.u, kernel_coordinates(f));
    for (int i = 0; i < relation_snf_.rank; ++i) {
        const BigInt& d = relation_snf_.diagonal[i];
        w[i] = ((w[i] % d) + d) % d;
    }
    return w;
}

bool HomologyClasses::is_zero_class(const ChainMapZ& f) const {
    for (const BigInt& c : class_of(f))
        if (c != 0) return false;
    return true;
}

bool HomologyClasses::same_class(const ChainMapZ& a, const ChainMapZ& b) const {
    return class_of(a) == class_of(b);
}

bool HomologyClasses::in_subgroup(const ChainMapZ& f,
                                  const std::vector<ChainMapZ>& gens) const {
    std::vector<BigInt> y = kernel_coordinates(f);
    IntMatrix lattice(cycle_rank_, int(gens.size()) + boundary_in_kernel_.cols());
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        std::vector<BigInt> yg = kernel_coordinates(gens[gi]);
        for (int r = 0; r < cycle_rank_; ++r) lattice.at(r, int(gi)) = yg[r];
    }
    for (int c = 0; c < boundary_in_kernel_.cols(); ++c)
        for (int r = 0; r < cycle_rank_; ++r)
            lattice.at(r, int(gens.size()) + c) = boundary_in_kernel_.at(r, c);
    SmithResult s = smith_normal_form(lattice);
    return snf_solve(lattice, s, y, nullptr);
}

std::vector<ChainMapZ> HomologyClasses::cycle_basis() const {
    std::vector<ChainMapZ> out;
    for (int c = 0; c < cycle_rank_; ++c) {
        std::vector<BigInt> v(kernel_.rows());
        for (int r = 0; r < kernel_.rows(); ++r) v[r] = kernel_.at(r, c);
        out.push_back(devectorize(basis_, v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bracket problems
// ---------------------------------------------------------------------------

namespace {

// First source degree where the map is nonzero, or t_min-1 if none.
int first_nonzero_degree(const ChainComplexZ& src, const ChainComplexZ& dst,
                         const ChainMapZ& f) {
    for (int t = src.t_min(); t <= src.t_max(); ++t)
        if (!int_is_zero(map_block(src, dst, f, t))) return t;
    return src.t_min() - 1;
}

void check_chain_map(const ChainComplexZ& src, const ChainComplexZ& dst,
                     const ChainMapZ& f, const std::string& name) {
    if (f.degree != 0)
        throw std::invalid_argument("bracket problem: " + name + " must have degree 0");
    ChainMapZ hb = hom_boundary(src, dst, f);
    int t = first_nonzero_degree(src, dst, hb);
    if (t >= src.t_min())
        throw WitnessError(name + " is not a chain map at degree " + std::to_string(t), t);
}

void check_nullhomotopy(const ChainComplexZ& src, const ChainComplexZ& dst,
                        const ChainMapZ& witness, const ChainMapZ& target,
                        const std::string& name) {
    if (witness.degree != 1)
        throw std::invalid_argument("bracket problem: " + name + " must have degree +1");
    ChainMapZ diff = subtract(hom_boundary(src, dst, witness), target);
    int t = first_nonzero_degree(src, dst, diff);
    if (t >= src.t_min())
        throw WitnessError("nullhomotopy " + name + " fails at degree " + std::to_string(t),
                           t);
}

}  // namespace

void BracketProblem::validate() const {
    a.validate();
    b.validate();
    c.validate();
    d.validate();
    check_chain_map(a, b, h, "h");
    check_chain_map(b, c, g, "g");
    check_chain_map(c, d, f, "f");
    check_nullhomotopy(a, c, big_g, compose(a, b, c, g, h), "G");
    check_nullhomotopy(b, d, big_f, compose(b, c, d, f, g), "F");
}

BracketValue toda_value(const BracketProblem& p) {
    p.validate();
    BracketValue v;
    v.theta = subtract(compose(p.a, p.c, p.d, p.f, p.big_g),
                       compose(p.a, p.b, p.d, p.big_f, p.h));
    HomologyClasses hom(p.a, p.d, 1);
    v.class_coords = hom.class_of(v.theta);
    v.invariant_factors = hom.invariant_factors();
    v.free_rank = hom.free_rank();
    v.group = hom.structure();
    v.zero = hom.is_zero_class(v.theta);
    Indeterminacy ind = indeterminacy(p);
    v.contains_zero = hom.in_subgroup(v.theta, ind.generators);
    return v;
}

Indeterminacy indeterminacy(const BracketProblem& p) {
    p.validate();
    Indeterminacy ind;
    HomologyClasses hom_ac(p.a, p.c, 1);
    for (const ChainMapZ& z : hom_ac.cycle_basis())
        ind.generators.push_back(compose(p.a, p.c, p.d, p.f, z));
    HomologyClasses hom_bd(p.b, p.d, 1);
    for (const ChainMapZ& z : hom_bd.cycle_basis())
        ind.generators.push_back(compose(p.a, p.b, p.d, z, p.h));
    HomologyClasses hom_ad(p.a, p.d, 1);
    ind.zero = true;
    for (const ChainMapZ& gen : ind.generators) {
        ind.generator_classes.push_back(hom_ad.class_of(gen));
        if (!hom_ad.is_zero_class(gen)) ind.zero = false;
    }
    return ind;
}

std::string BracketValue::text() const {
    std::ostringstream os;
    os << "group\t" << group << '\n';
    os << "value_class\t";
    if (class_coords.empty()) {
        os << "-";
    } else {
        for (std::size_t i = 0; i < class_coords.size(); ++i) {
            if (i) os << ' ';
            os << class_coords[i].str();
        }
    }
    os << '\n';
    os << "nonzero\t" << (zero ? "no" : "yes") << '\n';
    os << "contains_zero\t" << (contains_zero ? "yes" : "no") << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// GF(2) lane
// ---------------------------------------------------------------------------

ChainComplexF2::ChainComplexF2(int t_min, int t_max) : t_min_(t_min), t_max_(t_max) {
    if (t_max_ < t_min_ - 1)
        throw std::invalid_argument("chain complex: bad window");
}

void ChainComplexF2::set_rank(int t, int r) {
    if (t < t_min_ || t > t_max_)
        throw std::invalid_argument("chain complex: degree outside window");
    if (r < 0) throw std::invalid_argument("chain complex: negative rank");
    if (r == 0)
        ranks_.erase(t);
    else
        ranks_[t] = r;
}

int ChainComplexF2::rank(int t) const {
    auto it = ranks_.find(t);
    return it == ranks_.end() ? 0 : it->second;
}

void ChainComplexF2::set_diff(int t, gf2::Matrix d) {
    if (t <= t_min_ || t > t_max_)
        throw std::invalid_argument("chain complex: differential degree outside window");
    if (d.rows() != rank(t - 1) || d.cols() != rank(t))
        throw std::invalid_argument("chain complex: differential shape mismatch");
    diffs_[t] = std::move(d);
}

gf2::Matrix ChainComplexF2::diff(int t) const {
    auto it = diffs_.find(t);
    if (it != diffs_.end()) return it->second;
    return gf2::Matrix(rank(t - 1), rank(t));
}

void ChainComplexF2::validate() const {
    for (const auto& [t, d] : diffs_)
        if (d.rows() != rank(t - 1) || d.cols() != rank(t))
            throw std::invalid_argument("chain complex: differential shape mismatch");
    for (int t = t_min_ + 2; t <= t_max_; ++t)
        if (!(diff(t - 1) * diff(t)).is_zero())
            throw std::invalid_argument("chain complex: d∘d != 0 at degree " + std::to_string(t));
}

gf2::Matrix map_block(const ChainComplexF2& src, const ChainComplexF2& dst,
                      const ChainMapF2& f, int t) {
    int rows = dst.rank(t + f.degree);
    int cols = src.rank(t);
    auto it = f.blocks.find(t);
    if (it == f.blocks.end()) return gf2::Matrix(rows, cols);
    if (it->second.rows() != rows || it->second.cols() != cols)
        throw std::invalid_argument("graded map: block shape mismatch at degree " +
                                    std::to_string(t));
    return it->second;
}

ChainMapF2 compose(const ChainComplexF2& a, const ChainComplexF2& b, const ChainComplexF2& c,
                   const ChainMapF2& outer, const ChainMapF2& inner) {
    ChainMapF2 out;
    out.degree = outer.degree + inner.degree;
    for (int t = a.t_min(); t <= a.t_max(); ++t) {
        if (a.rank(t) == 0 || c.rank(t + out.degree) == 0) continue;
        out.blocks[t] = map_block(b, c, outer, t + inner.degree) * map_block(a, b, inner, t);
    }
    return out;
}

ChainMapF2 hom_boundary(const ChainComplexF2& src, const ChainComplexF2& dst,
                        const ChainMapF2& f) {
    ChainMapF2 out;
    out.degree = f.degree - 1;
    for (int t = src.t_min(); t <= src.t_max(); ++t) {
        if (src.rank(t) == 0 || dst.rank(t + out.degree) == 0) continue;
        out.blocks[t] = dst.diff(t + f.degree) * map_block(src, dst, f, t) +
                        map_block(src, dst, f, t - 1) * src.diff(t);
    }
    return out;
}

ChainMapF2 add(const ChainMapF2& a, const ChainMapF2& b) {
    if (a.degree != b.degree)
        throw std::invalid_argument("graded map sum: degree mismatch");
    ChainMapF2 out;
    out.degree = a.degree;
    out.blocks = a.blocks;
    for (const auto& [t, m] : b.blocks) {
        auto it = out.blocks.find(t);
        if (it == out.blocks.end())
            out.blocks[t] = m;
        else
            it->second = it->second + m;
    }
    return out;
}

bool map_is_zero(const ChainComplexF2& src, const ChainComplexF2& dst, const ChainMapF2& f) {
    for (int t = src.t_min(); t <= src.t_max(); ++t)
        if (!map_block(src, dst, f, t).is_zero()) return false;
    return true;
}

HomBasis hom_basis(const ChainComplexF2& src, const ChainComplexF2& dst, int degree) {
    HomBasis b;
    b.degree = degree;
    for (int t = src.t_min(); t <= src.t_max(); ++t) {
        int rows = dst.rank(t + degree);
        int cols = src.rank(t);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                b.entries.emplace_back(t, i, j);
    }
    return b;
}

gf2::Vec vectorize(const ChainComplexF2& src, const ChainComplexF2& dst,
                   const HomBasis& basis, const ChainMapF2& f) {
    if (f.degree != basis.degree)
        throw std::invalid_argument("vectorize: degree mismatch");
    gf2::Vec v(basis.dim());
    int last_t = basis.entries.empty() ? 0 : std::get<0>(basis.entries.front()) - 1;
    gf2::Matrix block;
    for (std::size_t e = 0; e < basis.entries.size(); ++e) {
        auto [t, i, j] = basis.entries[e];
        if (t != last_t) {
            block = map_block(src, dst, f, t);
            last_t = t;
        }
        if (block.get(i, j)) v.set(int(e), true);
    }
    return v;
}

ChainMapF2 devectorize_f2(const HomBasis& basis, const gf2::Vec& v) {
    std::map<int, std::pair<int, int>> shape;
    for (const auto& [t, i, j] : basis.entries) {
        auto& s = shape[t];
        s.first = std::max(s.first, i + 1);
        s.second = std::max(s.second, j + 1);
    }
    ChainMapF2 f;
    f.degree = basis.degree;
    for (const auto& [t, s] : shape) f.blocks[t] = gf2::Matrix(s.first, s.second);
    for (std::size_t e = 0; e < basis.entries.size(); ++e) {
        auto [t, i, j] = basis.entries[e];
        if (v.get(int(e))) f.blocks[t].set(i, j, true);
    }
    return f;
}

gf2::Matrix hom_boundary_matrix(const ChainComplexF2& src, const ChainComplexF2& dst,
                                int degree) {
    HomBasis from = hom_basis(src, dst, degree);
    HomBasis to = hom_basis(src, dst, degree - 1);
    std::map<std::tuple<int, int, int>, int> index;
    for (std::size_t e = 0; e < to.entries.size(); ++e) index[to.entries[e]] = int(e);
    gf2::Matrix m(to.dim(), from.dim());
    for (std::size_t e = 0; e < from.entries.size(); ++e) {
        auto [t, i, j] = from.entries[e];
        gf2::Matrix ddst = dst.diff(t + degree);
        for (int r = 0; r < ddst.rows(); ++r) {
            if (!ddst.get(r, i)) continue;
            auto it = index.find({t, r, j});
            if (it != index.end()) m.flip(it->second, int(e));
        }
        gf2::Matrix dsrc = src.diff(t + 1);
        for (int cc = 0; cc < dsrc.cols(); ++cc) {
            if (!dsrc.get(j, cc)) continue;
            auto it = index.find({t + 1, i, cc});
            if (it != index.end()) m.flip(it->second, int(e));
        }
    }
    return m;
}

HomologyClassesF2::HomologyClassesF2(const ChainComplexF2& src, const ChainComplexF2& dst,
                                     int degree)
    : basis_(hom_basis(src, dst, degree)), src_(&src), dst_(&dst) {
    gf2::Matrix bs = hom_boundary_matrix(src, dst, degree);
    gf2::Matrix bs1 = hom_boundary_matrix(src, dst, degree + 1);
    cycles_ = gf2::Subspace::span(gf2::kernel(bs));
    boundaries_ = gf2::Subspace::span(gf2::image(bs1));
    quotient_ = gf2::quotient(cycles_, boundaries_);
}

gf2::Vec HomologyClassesF2::class_of(const ChainMapF2& f) const {
    gf2::Vec v = vectorize(*src_, *dst_, basis_, f);
    if (!cycles_.contains(v))
        throw std::invalid_argument("hom homology: the map is not a cycle");
    return gf2::quotient_coordinates(quotient_, boundaries_, v);
}

bool HomologyClassesF2::is_zero_class(const ChainMapF2& f) const {
    return class_of(f).is_zero();
}

bool HomologyClassesF2::in_subspace(const ChainMapF2& f,
                                    const std::vector<ChainMapF2>& gens) const {
    gf2::Matrix rows(0, dim());
    for (const ChainMapF2& g : gens) rows.append_row(class_of(g));
    return gf2::Subspace::span(rows).contains(class_of(f));
}

NullhomotopiesF2 nullhomotopies_f2(const ChainComplexF2& src, const ChainComplexF2& dst,
                                   int degree, const ChainMapF2& rhs) {
    NullhomotopiesF2 out;
    out.basis = hom_basis(src, dst, degree);
    gf2::Matrix m = hom_boundary_matrix(src, dst, degree);
    gf2::Vec b = vectorize(src, dst, hom_basis(src, dst, degree - 1), rhs);
    gf2::Vec x(m.cols());
    out.exists = gf2::solve(m, b, x);
    if (out.exists) {
        out.particular = x;
        out.kernel = gf2::kernel(m);
    }
    return out;
}

void BracketProblemF2::validate() const {
    a.validate();
    b.validate();
    c.validate();
    d.validate();
    auto check_map = [&](const ChainComplexF2& s, const ChainComplexF2& t,
                         const ChainMapF2& m, const std::string& name) {
        if (m.degree != 0)
            throw std::invalid_argument("bracket problem: " + name + " must have degree 0");
        ChainMapF2 hb = hom_boundary(s, t, m);
        for (int tt = s.t_min(); tt <= s.t_max(); ++tt)
            if (!map_block(s, t, hb, tt).is_zero())
                throw WitnessError(name + " is not a chain map at degree " + std::to_string(tt),
                                   tt);
    };
    check_map(a, b, h, "h");
    check_map(b, c, g, "g");
    check_map(c, d, f, "f");
    auto check_null = [&](const ChainComplexF2& s, const ChainComplexF2& t,
                          const ChainMapF2& w, const ChainMapF2& target,
                          const std::string& name) {
        if (w.degree != 1)
            throw std::invalid_argument("bracket problem: " + name + " must have degree +1");
        ChainMapF2 diff = add(hom_boundary(s, t, w), target);
        for (int tt = s.t_min(); tt <= s.t_max(); ++tt)
            if (!map_block(s, t, diff, tt).is_zero())
                throw WitnessError("nullhomotopy " + name + " fails at degree " +
                                       std::to_string(tt),
                                   tt);
    };
    check_null(a, c, big_g, compose(a, b, c, g, h), "G");
    check_null(b, d, big_f, compose(b, c, d, f, g), "F");
}

ChainComplexF2 reduce_mod2(const ChainComplexZ& c) {
    ChainComplexF2 out(c.t_min(), c.t_max());
    for (int t = c.t_min(); t <= c.t_max(); ++t) out.set_rank(t, c.rank(t));
    for (int t = c.t_min() + 1; t <= c.t_max(); ++t) {
        IntMatrix d = c.diff(t);
        gf2::Matrix m(d.rows(), d.cols());
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j)
                if (d.at(i, j) % 2 != 0) m.set(i, j, true);
        if (!m.is_zero()) out.set_diff(t, m);
    }
    return out;
}

ChainMapF2 reduce_mod2(const ChainMapZ& f) {
    ChainMapF2 out;
    out.degree = f.degree;
    for (const auto& [t, d] : f.blocks) {
        gf2::Matrix m(d.rows(), d.cols());
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j)
                if (d.at(i, j) % 2 != 0) m.set(i, j, true);
        out.blocks[t] = m;
    }
    return out;
}

BracketProblemF2 reduce_mod2(const BracketProblem& p) {
    BracketProblemF2 out;
    out.a = reduce_mod2(p.a);
    out.b = reduce_mod2(p.b);
    out.c = reduce_mod2(p.c);
    out.d = reduce_mod2(p.d);
    out.h = reduce_mod2(p.h);
    out.g = reduce_mod2(p.g);
    out.f = reduce_mod2(p.f);
    out.big_g = reduce_mod2(p.big_g);
    out.big_f = reduce_mod2(p.big_f);
    return out;
}

ChainMapF2 theta_f2(const BracketProblemF2& p) {
    return add(compose(p.a, p.c, p.d, p.f, p.big_g),
               compose(p.a, p.b, p.d, p.big_f, p.h));
}

gf2::Vec toda_class_f2(const BracketProblemF2& p) {
    p.validate();
    HomologyClassesF2 hom(p.a, p.d, 1);
    return hom.class_of(theta_f2(p));
}

// ---------------------------------------------------------------------------
// Worked models
// ---------------------------------------------------------------------------

namespace {

IntMatrix one_by_one(const BigInt& v) {
    IntMatrix m(1, 1);
    m.at(0, 0) = v;
    return m;
}

}  // namespace

BracketProblem moore_problem(int n) {
    if (n < 1) throw std::invalid_argument("moore bracket model: need n >= 1");
    BracketProblem p;
    p.a = ChainComplexZ(n, n);
    p.a.set_rank(n, 1);
    p.b = p.a;
    p.c = ChainComplexZ(n, n + 1);
    p.c.set_rank(n, 1);
    p.c.set_rank(n + 1, 1);
    p.c.set_diff(n + 1, one_by_one(2));
    p.d = ChainComplexZ(n + 1, n + 1);
    p.d.set_rank(n + 1, 1);
    p.h.degree = 0;
    p.h.blocks[n] = one_by_one(2);
    p.g.degree = 0;
    p.g.blocks[n] = one_by_one(1);
    p.f.degree = 0;
    p.f.blocks[n + 1] = one_by_one(1);
    p.big_g.degree = 1;
    p.big_g.blocks[n] = one_by_one(1);
    p.big_f.degree = 1;
    return p;
}

BracketProblem moore_problem_reduced(int n) {
    BracketProblem p = moore_problem(n);
    p.d = ChainComplexZ(n + 1, n + 2);
    p.d.set_rank(n + 1, 1);
    p.d.set_rank(n + 2, 1);
    p.d.set_diff(n + 2, one_by_one(2));
    return p;
}

// ---------------------------------------------------------------------------
// Filtration obstruction
// ---------------------------------------------------------------------------

ObstructionReport filtration_obstruction(const simplicial::CWResolution& r, int m) {
    const unstable::FreeModule& lv0 = r.complex.level(0);
    if (lv0.generators().size() != 1)
        throw std::invalid_argument(
            "filtration obstruction: the resolution must resolve a single-generator sphere "
            "model");
    int n = lv0.generators()[0].degree;
    ObstructionReport rep;
    rep.coefficient = m;
    rep.degree = n;
    if (m == 0) {
        rep.filtration = -1;
        rep.value = "0";
        return rep;
    }
    if (m % 2 != 0) {
        // Odd multiples reduce to the fundamental class mod 2, so the class
        // is already visible to the resolution's augmentation.
        rep.filtration = 0;
        rep.value = "iota";
        return rep;
    }
    // Even multiple: the obstruction is the bracket <Sq1, iota_n, m>,
    // assembled from the degree-(n+1) attaching data of stage 1.
    if (r.max_s() < 1)
        throw std::invalid_argument(
            "filtration obstruction: resolution window has no stage 1");
    if (r.complex.window().t_max < n + 1)
        throw std::invalid_argument(
            "filtration obstruction: resolution window stops below degree n+1");
    if (lv0.dim(n + 1) != 1)
        throw std::invalid_argument(
            "filtration obstruction: unexpected sphere model in degree n+1");
    const unstable::FreeModule& bar1 = r.complex.bar(1);
    bool witness = false;
    for (std::size_t i = 0; i < bar1.generators().size(); ++i) {
        if (bar1.generators()[i].degree != n + 1) continue;
        const gf2::Vec& img = r.complex.attach_images(1)[i];
        if (img.size() == 1 && img.get(0)) {
            witness = true;
            break;
        }
    }
    if (!witness)
        throw std::invalid_argument(
            "filtration obstruction: stage 1 carries no generator attached along Sq1");
    BracketProblem p = moore_problem_reduced(n);
    p.h.blocks[n] = one_by_one(m);
    p.big_g.blocks[n] = one_by_one(m / 2);
    BracketValue v = toda_value(p);
    rep.bracket_nonzero = !v.zero;
    if (rep.bracket_nonzero) {
        rep.filtration = 1;
        rep.value = "h0";
    } else {
        rep.filtration = -1;
        rep.value = "requires homotopy input";
        int e = 0;
        int q = m;
        while (q % 2 == 0) {
            q /= 2;
            ++e;
        }
        rep.labels = polytope::facet_label_table(
            polytope::facet_labels(e + 1, e + 1, polytope::LabelVariant::filtration));
    }
    return rep;
}

std::string ObstructionReport::text() const {
    std::ostringstream os;
    os << "obstruction\n";
    os << "coefficient\t" << coefficient << '\n';
    os << "degree\t" << degree << '\n';
    if (coefficient == 0) {
        os << "filtration\tnone\n";
    } else if (filtration >= 0) {
        os << "filtration\t" << filtration << '\n';
    } else {
        os << "filtration\tundetermined\n";
    }
    os << "value\t" << value << '\n';
    if (!labels.empty()) {
        os << "labels\n" << labels;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Problem-file parsing
// ---------------------------------------------------------------------------

namespace {

using unstable::ParseError;

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        if (!tok.empty() && tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

int parse_int_tok(const std::string& tok, int line_no) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected an integer, got '" + tok + "'");
    }
}

IntMatrix parse_matrix(const std::string& tok, int line_no) {
    std::vector<std::vector<BigInt>> rows;
    std::size_t nc = 0;
    std::stringstream rs(tok);
    std::string row;
    while (std::getline(rs, row, ';')) {
        std::vector<BigInt> entries;
        std::stringstream es(row);
        std::string ent;
        while (std::getline(es, ent, ',')) {
            try {
                entries.emplace_back(ent);
            } catch (const std::exception&) {
                throw ParseError(line_no, "bad matrix entry '" + ent + "'");
            }
        }
        if (entries.empty()) throw ParseError(line_no, "empty matrix row");
        if (!rows.empty() && entries.size() != nc)
            throw ParseError(line_no, "ragged matrix rows");
        nc = entries.size();
        rows.push_back(std::move(entries));
    }
    if (rows.empty()) throw ParseError(line_no, "empty matrix");
    IntMatrix m(int(rows.size()), int(nc));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < nc; ++j)
            m.at(int(i), int(j)) = rows[i][j];
    return m;
}

}  // namespace

BracketProblem parse_problem(const std::string& text) {
    struct RawComplex {
        std::map<int, int> ranks;
        std::map<int, std::pair<IntMatrix, int>> diffs;  // degree -> (matrix, line)
    };
    std::map<std::string, RawComplex> complexes;
    struct RawMap {
        int degree = -2;  // -2: unseen
        std::map<int, std::pair<IntMatrix, int>> blocks;
    };
    std::map<std::string, RawMap> maps;
    std::vector<std::string> roles;
    int roles_line = 0;

    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::vector<std::string> tok = split_ws(line);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        if (kw == "space") {
            if (tok.size() != 4) throw ParseError(line_no, "space needs: space <complex> <degree> <rank>");
            if (tok[1] != "A" && tok[1] != "B" && tok[1] != "C" && tok[1] != "D")
                throw ParseError(line_no, "complex name must be A, B, C or D");
            int t = parse_int_tok(tok[2], line_no);
            int rk = parse_int_tok(tok[3], line_no);
            if (rk < 0) throw ParseError(line_no, "negative rank");
            auto& c = complexes[tok[1]];
            if (c.ranks.count(t)) throw ParseError(line_no, "duplicate space line");
            c.ranks[t] = rk;
        } else if (kw == "diff") {
            if (tok.size() != 4) throw ParseError(line_no, "diff needs: diff <complex> <degree> <matrix>");
            if (tok[1] != "A" && tok[1] != "B" && tok[1] != "C" && tok[1] != "D")
                throw ParseError(line_no, "complex name must be A, B, C or D");
            int t = parse_int_tok(tok[2], line_no);
            auto& c = complexes[tok[1]];
            if (c.diffs.count(t)) throw ParseError(line_no, "duplicate diff line");
            c.diffs[t] = {parse_matrix(tok[3], line_no), line_no};
        } else if (kw == "map" || kw == "homotopy") {
            if (tok.size() != 4)
                throw ParseError(line_no, kw + " needs: " + kw + " <name> <degree> <matrix>");
            int deg = kw == "map" ? 0 : 1;
            auto& m = maps[tok[1]];
            if (m.degree == -2) m.degree = deg;
            if (m.degree != deg)
                throw ParseError(line_no, "'" + tok[1] + "' is used as both map and homotopy");
            int t = parse_int_tok(tok[2], line_no);
            if (m.blocks.count(t)) throw ParseError(line_no, "duplicate block for '" + tok[1] + "'");
            m.blocks[t] = {parse_matrix(tok[3], line_no), line_no};
        } else if (kw == "problem") {
            if (tok.size() != 6)
                throw ParseError(line_no, "problem needs: problem <h> <g> <f> <G> <F>");
            if (!roles.empty()) throw ParseError(line_no, "duplicate problem line");
            roles.assign(tok.begin() + 1, tok.end());
            roles_line = line_no;
        } else {
            throw ParseError(line_no, "unknown directive '" + kw + "'");
        }
    }
    if (roles.empty()) throw ParseError(line_no == 0 ? 1 : line_no, "missing problem line");

    auto build_complex = [&](const std::string& name) {
        auto it = complexes.find(name);
        if (it == complexes.end() || it->second.ranks.empty()) return ChainComplexZ();
        int lo = it->second.ranks.begin()->first;
        int hi = it->second.ranks.rbegin()->first;
        ChainComplexZ c(lo, hi);
        for (const auto& [t, rk] : it->second.ranks) c.set_rank(t, rk);
        for (const auto& [t, dm] : it->second.diffs) {
            if (t <= lo || t > hi)
                throw ParseError(dm.second, "differential outside the declared degrees");
            if (dm.first.rows() != c.rank(t - 1) || dm.first.cols() != c.rank(t))
                throw ParseError(dm.second, "differential shape mismatch");
            c.set_diff(t, dm.first);
        }
        return c;
    };
    BracketProblem p;
    p.a = build_complex("A");
    p.b = build_complex("B");
    p.c = build_complex("C");
    p.d = build_complex("D");

    auto build_map = [&](const std::string& name, int expect_deg) {
        ChainMapZ f;
        f.degree = expect_deg;
        if (name == "0") return f;
        auto it = maps.find(name);
        if (it == maps.end())
            throw ParseError(roles_line, "problem line names unknown map '" + name + "'");
        if (it->second.degree != expect_deg)
            throw ParseError(roles_line, "'" + name + "' has the wrong kind for its role");
        for (const auto& [t, bm] : it->second.blocks) f.blocks[t] = bm.first;
        return f;
    };
    p.h = build_map(roles[0], 0);
    p.g = build_map(roles[1], 0);
    p.f = build_map(roles[2], 0);
    p.big_g = build_map(roles[3], 1);
    p.big_f = build_map(roles[4], 1);
    return p;
}

BracketProblem parse_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

}  // namespace adams::toda
