#include "adams/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace adams::polytope {

// ---------------------------------------------------------------------------
// FaceComplex
// ---------------------------------------------------------------------------

FaceComplex FaceComplex::from_cells(const std::vector<std::vector<int>>& cells) {
    std::vector<std::set<std::vector<int>>> by_dim;
    for (const auto& cell : cells) {
        std::vector<int> v = cell;
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end())
            throw std::invalid_argument("face complex: cell has a repeated vertex");
        if (v.empty()) continue;
        int sz = int(v.size());
        for (unsigned mask = 1; mask < (1u << sz); ++mask) {
            std::vector<int> f;
            for (int i = 0; i < sz; ++i)
                if (mask & (1u << i)) f.push_back(v[i]);
            int d = int(f.size()) - 1;
            if (int(by_dim.size()) <= d) by_dim.resize(d + 1);
            by_dim[d].insert(std::move(f));
        }
    }
    FaceComplex out;
    out.faces_.reserve(by_dim.size());
    for (auto& s : by_dim)
        out.faces_.emplace_back(s.begin(), s.end());
    return out;
}

int FaceComplex::total_faces() const {
    int total = 0;
    for (const auto& fs : faces_) total += int(fs.size());
    return total;
}

int FaceComplex::index_of(const std::vector<int>& face) const {
    int d = int(face.size()) - 1;
    if (d < 0 || d >= int(faces_.size())) return -1;
    auto it = std::lower_bound(faces_[d].begin(), faces_[d].end(), face);
    if (it == faces_[d].end() || *it != face) return -1;
    return int(it - faces_[d].begin());
}

bool FaceComplex::contains(const std::vector<int>& face) const {
    return index_of(face) >= 0;
}

gf2::Matrix FaceComplex::boundary_mod2(int d) const {
    gf2::Matrix m(count(d - 1), count(d));
    if (d < 1 || d > dim()) return m;
    for (int j = 0; j < count(d); ++j) {
        const std::vector<int>& f = faces_[d][j];
        std::vector<int> sub(f.begin() + 1, f.end());
        for (int i = 0; i <= d; ++i) {
            int r = index_of(sub);
            if (r < 0) throw std::logic_error("face complex: missing boundary face");
            m.flip(r, j);
            if (i < d) sub[i] = f[i];
        }
    }
    return m;
}

IntMatrix FaceComplex::boundary_int(int d) const {
    IntMatrix m(count(d - 1), count(d));
    if (d < 1 || d > dim()) return m;
    for (int j = 0; j < count(d); ++j) {
        const std::vector<int>& f = faces_[d][j];
        std::vector<int> sub(f.begin() + 1, f.end());
        for (int i = 0; i <= d; ++i) {
            int r = index_of(sub);
            if (r < 0) throw std::logic_error("face complex: missing boundary face");
            m.at(r, j) += (i % 2 == 0) ? 1 : -1;
            if (i < d) sub[i] = f[i];
        }
    }
    return m;
}

std::vector<int> FaceComplex::mod2_homology(int top_degree) const {
    std::vector<int> ranks(std::max(dim(), 0) + 2, 0);
    for (int d = 1; d <= dim(); ++d) ranks[d] = gf2::rank(boundary_mod2(d));
    std::vector<int> h(top_degree + 1, 0);
    for (int d = 0; d <= top_degree && d <= dim(); ++d)
        h[d] = count(d) - ranks[d] - ranks[d + 1];
    return h;
}

long FaceComplex::euler() const {
    long chi = 0;
    for (int d = 0; d <= dim(); ++d)
        chi += (d % 2 == 0) ? count(d) : -count(d);
    return chi;
}

std::vector<int> relative_mod2_homology(const FaceComplex& x, const FaceComplex& a,
                                        int top_degree) {
    for (int d = 0; d <= a.dim(); ++d)
        for (const auto& f : a.faces(d))
            if (!x.contains(f))
                throw std::invalid_argument("relative homology: second complex is not a subcomplex");
    // rel[d][j] = index of the j-th relative basis face within x's d-faces.
    std::vector<std::vector<int>> rel(std::max(x.dim(), 0) + 1);
    std::vector<std::vector<int>> rel_index(rel.size());
    for (int d = 0; d <= x.dim(); ++d) {
        rel_index[d].assign(x.count(d), -1);
        for (int j = 0; j < x.count(d); ++j)
            if (!a.contains(x.faces(d)[j])) {
                rel_index[d][j] = int(rel[d].size());
                rel[d].push_back(j);
            }
    }
    std::vector<int> ranks(rel.size() + 1, 0);
    for (int d = 1; d <= x.dim(); ++d) {
        gf2::Matrix full = x.boundary_mod2(d);
        gf2::Matrix m(int(rel[d - 1].size()), int(rel[d].size()));
        for (int j = 0; j < int(rel[d].size()); ++j)
            for (int i = 0; i < full.rows(); ++i)
                if (full.get(i, rel[d][j]) && rel_index[d - 1][i] >= 0)
                    m.set(rel_index[d - 1][i], j, true);
        ranks[d] = gf2::rank(m);
    }
    std::vector<int> h(top_degree + 1, 0);
    for (int d = 0; d <= top_degree && d <= x.dim(); ++d)
        h[d] = int(rel[d].size()) - ranks[d] - ranks[d + 1];
    return h;
}

// ---------------------------------------------------------------------------
// GluedComplex
// ---------------------------------------------------------------------------

namespace {

// Local vertices of facet f of an n-simplex, increasing.
std::vector<int> facet_locals(int n, int f) {
    std::vector<int> v;
    v.reserve(n);
    for (int i = 0; i <= n; ++i)
        if (i != f) v.push_back(i);
    return v;
}

}  // namespace

GluedComplex::GluedComplex(int n, std::vector<int> subscripts, std::vector<Gluing> gluings)
    : n_(n), subscripts_(std::move(subscripts)), gluings_(std::move(gluings)) {
    if (n_ < 1) throw std::invalid_argument("glued complex: dimension must be >= 1");
    int k = int(subscripts_.size());
    if (k < 1) throw std::invalid_argument("glued complex: need at least one simplex");
    auto check_ref = [&](const FacetRef& r) {
        if (r.position < 0 || r.position >= k || r.facet < 0 || r.facet > n_)
            throw std::invalid_argument("glued complex: facet reference out of range");
    };
    int slots = k * (n_ + 1);
    std::vector<int> parent(slots);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const Gluing& g : gluings_) {
        check_ref(g.a);
        check_ref(g.b);
        if (g.a.position == g.b.position && g.a.facet == g.b.facet)
            throw std::invalid_argument("glued complex: facet glued to itself");
        std::vector<int> la = facet_locals(n_, g.a.facet);
        std::vector<int> lb = facet_locals(n_, g.b.facet);
        for (int i = 0; i < n_; ++i) {
            int x = find(g.a.position * (n_ + 1) + la[i]);
            int y = find(g.b.position * (n_ + 1) + lb[i]);
            if (x != y) parent[x] = y;
        }
    }
    vertex_id_.assign(k, std::vector<int>(n_ + 1, -1));
    std::vector<int> label(slots, -1);
    for (int p = 0; p < k; ++p)
        for (int v = 0; v <= n_; ++v) {
            int root = find(p * (n_ + 1) + v);
            if (label[root] < 0) label[root] = vertex_count_++;
            vertex_id_[p][v] = label[root];
        }
}

std::vector<int> GluedComplex::facet_vertices(int position, int facet) const {
    std::vector<int> out;
    out.reserve(n_);
    for (int v = 0; v <= n_; ++v)
        if (v != facet) out.push_back(vertex_id_[position][v]);
    return out;
}

bool GluedComplex::is_interior(int position, int facet) const {
    for (const Gluing& g : gluings_) {
        if (g.a.position == position && g.a.facet == facet) return true;
        if (g.b.position == position && g.b.facet == facet) return true;
    }
    return false;
}

int GluedComplex::boundary_facet_count() const {
    return simplex_count() * (n_ + 1) - 2 * int(gluings_.size());
}

FaceComplex GluedComplex::closure() const {
    std::vector<std::vector<int>> cells;
    for (int p = 0; p < simplex_count(); ++p)
        cells.push_back(vertex_id_[p]);
    return FaceComplex::from_cells(cells);
}

FaceComplex GluedComplex::boundary_complex() const {
    std::vector<std::vector<int>> cells;
    for (int p = 0; p < simplex_count(); ++p)
        for (int f = 0; f <= n_; ++f)
            if (!is_interior(p, f)) cells.push_back(facet_vertices(p, f));
    return FaceComplex::from_cells(cells);
}

void GluedComplex::validate() const {
    int k = simplex_count();
    std::set<std::vector<int>> tops;
    for (int p = 0; p < k; ++p) {
        std::vector<int> v = vertex_id_[p];
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end())
            throw std::logic_error("glued complex: simplex vertices collapsed together");
        if (!tops.insert(v).second)
            throw std::logic_error("glued complex: two simplices were fully identified");
    }
    std::set<std::pair<int, int>> used;
    for (const Gluing& g : gluings_) {
        if (!used.insert({g.a.position, g.a.facet}).second ||
            !used.insert({g.b.position, g.b.facet}).second)
            throw std::logic_error("glued complex: facet glued more than once");
    }
    // Incidence scan over (n-1)-faces of the top simplices.
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> incidence;
    for (int p = 0; p < k; ++p)
        for (int f = 0; f <= n_; ++f) {
            std::vector<int> v = facet_vertices(p, f);
            std::sort(v.begin(), v.end());
            incidence[v].push_back({p, f});
        }
    int shared = 0;
    for (const auto& [verts, refs] : incidence) {
        if (refs.size() == 1) continue;
        if (refs.size() > 2)
            throw std::logic_error("glued complex: facet shared by more than two simplices");
        bool declared = false;
        for (const Gluing& g : gluings_) {
            std::pair<int, int> a{g.a.position, g.a.facet};
            std::pair<int, int> b{g.b.position, g.b.facet};
            if ((refs[0] == a && refs[1] == b) || (refs[0] == b && refs[1] == a)) {
                declared = true;
                break;
            }
        }
        if (!declared)
            throw std::logic_error("glued complex: undeclared facet identification");
        ++shared;
    }
    if (shared != int(gluings_.size()))
        throw std::logic_error("glued complex: a declared gluing failed to identify its facets");
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

namespace {

void check_family_range(int n, int k) {
    if (n < 1) throw std::invalid_argument("folding polytope: dimension must be >= 1");
    if (k < 1 || k > n + 1)
        throw std::invalid_argument("folding polytope: need 1 <= k <= n+1");
}

}  // namespace

std::vector<int> folding_subscripts(int n, int k) {
    check_family_range(n, k);
    std::vector<int> subs;
    for (int m = n - k + 1; m <= n; ++m) subs.push_back(m);
    return subs;
}

std::vector<int> modified_subscripts(int n, int k) {
    check_family_range(n, k);
    std::vector<int> subs;
    if (k == n + 1)
        for (int m = 0; m <= n; ++m) subs.push_back(m);
    else
        for (int m = n - k; m <= n - 1; ++m) subs.push_back(m);
    return subs;
}

GluedComplex build_folding(int n, int k) {
    std::vector<int> subs = folding_subscripts(n, k);
    std::vector<Gluing> gluings;
    for (int c = 0; c + 1 < k; ++c) {
        int m = subs[c];
        gluings.push_back({{c, n - m - 1}, {c + 1, n - m - 1}});
    }
    return GluedComplex(n, std::move(subs), std::move(gluings));
}

GluedComplex build_modified(int n, int k) {
    std::vector<int> subs = modified_subscripts(n, k);
    std::vector<Gluing> gluings;
    for (int c = 0; c + 1 < k; ++c) {
        int m = subs[c];
        gluings.push_back({{c, n - m - 1}, {c + 1, n - m}});
    }
    return GluedComplex(n, std::move(subs), std::move(gluings));
}

// ---------------------------------------------------------------------------
// Facet tags
// ---------------------------------------------------------------------------

LabelVariant parse_variant(const std::string& s) {
    if (s == "standard") return LabelVariant::standard;
    if (s == "modified") return LabelVariant::modified;
    if (s == "filtration") return LabelVariant::filtration;
    throw std::invalid_argument("unknown label variant: " + s);
}

std::string variant_name(LabelVariant v) {
    switch (v) {
        case LabelVariant::standard: return "standard";
        case LabelVariant::modified: return "modified";
        case LabelVariant::filtration: return "filtration";
    }
    return "?";
}

std::vector<FacetLabel> facet_labels(int n, int k, LabelVariant variant) {
    check_family_range(n, k);
    if (variant == LabelVariant::filtration && k > n)
        throw std::invalid_argument("filtration labels are defined for k <= n only");
    bool standard = variant == LabelVariant::standard;
    std::vector<int> subs = standard ? folding_subscripts(n, k) : modified_subscripts(n, k);
    // Interior facets first: both sides of a gluing carry the same ipH tag.
    std::map<std::pair<int, int>, std::string> tag;
    for (int c = 0; c + 1 < k; ++c) {
        int m = subs[c];
        std::string t = "ipH" + std::to_string(standard ? c + 1 : c);
        if (standard) {
            tag[{c, n - m - 1}] = t;
            tag[{c + 1, n - m - 1}] = t;
        } else {
            tag[{c, n - m - 1}] = t;
            tag[{c + 1, n - m}] = t;
        }
    }
    std::vector<FacetLabel> out;
    for (int c = 0; c < k; ++c)
        for (int i = 0; i <= n; ++i) {
            std::string t = "*";
            if (auto it = tag.find({c, i}); it != tag.end()) {
                t = it->second;
            } else if (variant == LabelVariant::standard) {
                if (i == n) t = "F" + std::to_string(c) + "G" + std::to_string(c);
            } else if (variant == LabelVariant::filtration) {
                if (i == 0) {
                    if (c == 0) t = "F-1G-1";
                    else if (c == 1) t = "F0egq(degenerate)";
                } else if (c >= 1 && i == n - c) {
                    t = "F" + std::to_string(c - 1) + "G" + std::to_string(c - 1);
                }
            }
            out.push_back({subs[c], i, t});
        }
    return out;
}

std::string facet_label_table(const std::vector<FacetLabel>& labels) {
    std::ostringstream os;
    for (const FacetLabel& l : labels)
        os << l.subscript << '\t' << l.facet << '\t' << l.tag << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

namespace {

std::vector<int> point_homology(int top) {
    std::vector<int> h(top + 1, 0);
    h[0] = 1;
    return h;
}

// Unreduced mod-2 homology of S^d, reported in degrees 0..top.
std::vector<int> sphere_homology(int d, int top) {
    std::vector<int> h(top + 1, 0);
    if (d == 0) {
        h[0] = 2;
    } else {
        h[0] = 1;
        if (d <= top) h[d] += 1;
    }
    return h;
}

std::string dims_str(const std::vector<int>& h) {
    std::ostringstream os;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (i) os << ' ';
        os << h[i];
    }
    return os.str();
}

long euler_of(const std::vector<int>& h) {
    long chi = 0;
    for (std::size_t i = 0; i < h.size(); ++i)
        chi += (i % 2 == 0) ? h[i] : -h[i];
    return chi;
}

}  // namespace

BallReport verify_ball(const GluedComplex& c) {
    BallReport r;
    r.n = c.n();
    r.k = c.simplex_count();
    try {
        c.validate();
    } catch (const std::exception& e) {
        r.failures.push_back(e.what());
    }
    r.vertices = c.vertex_count();
    r.interior_facets = c.interior_facet_count();
    r.boundary_facets = c.boundary_facet_count();
    FaceComplex cl = c.closure();
    FaceComplex bd = c.boundary_complex();
    int n = r.n;
    r.h = cl.mod2_homology(n);
    r.h_boundary = bd.mod2_homology(n - 1);
    r.h_quotient = relative_mod2_homology(cl, bd, n);
    r.h_quotient[0] += 1;  // the collapsed boundary point
    r.chi = cl.euler();
    r.chi_boundary = bd.euler();
    if (r.h != point_homology(n))
        r.failures.push_back("polytope homology is not that of a point: " + dims_str(r.h));
    if (r.h_boundary != sphere_homology(n - 1, n - 1))
        r.failures.push_back("boundary homology is not that of a sphere: " + dims_str(r.h_boundary));
    if (r.h_quotient != sphere_homology(n, n))
        r.failures.push_back("boundary-collapse homology is not that of a sphere: " +
                             dims_str(r.h_quotient));
    if (r.chi != 1)
        r.failures.push_back("Euler characteristic of the polytope is not 1");
    if (r.chi_boundary != ((n - 1) % 2 == 0 ? 2 : 0))
        r.failures.push_back("Euler characteristic of the boundary is wrong");
    if (euler_of(r.h) != r.chi || euler_of(r.h_boundary) != r.chi_boundary)
        r.failures.push_back("homology dimensions disagree with the cell counts");
    r.ok = r.failures.empty();
    return r;
}

std::string BallReport::text(const std::string& label_table) const {
    std::ostringstream os;
    os << "counts\n";
    os << "n\t" << n << '\n';
    os << "k\t" << k << '\n';
    os << "vertices\t" << vertices << '\n';
    os << "interior_facets\t" << interior_facets << '\n';
    os << "boundary_facets\t" << boundary_facets << '\n';
    os << "chi\t" << chi << '\n';
    os << "chi_boundary\t" << chi_boundary << '\n';
    os << '\n';
    os << "homology\n";
    os << "polytope\t" << dims_str(h) << '\n';
    os << "boundary\t" << dims_str(h_boundary) << '\n';
    os << "quotient\t" << dims_str(h_quotient) << '\n';
    os << '\n';
    if (!label_table.empty()) os << "labels\n" << label_table << '\n';
    for (const std::string& f : failures) os << "failure\t" << f << '\n';
    os << "verdict\t" << (ok ? "ok" : "fail") << '\n';
    return os.str();
}

SphereDomainReport sphere_class_domain(int n, int k, LabelVariant variant) {
    GluedComplex c = variant == LabelVariant::standard ? build_folding(n, k)
                                                       : build_modified(n, k);
    SphereDomainReport r;
    r.n = n;
    r.k = k;
    r.variant = variant;
    const std::vector<int>& subs = c.subscripts();
    std::set<int> cone;
    for (int p = 0; p < c.simplex_count(); ++p)
        for (int v = 0; v <= n - subs[p] - 1; ++v)
            cone.insert(c.global_vertex(p, v));
    r.cone_vertices.assign(cone.begin(), cone.end());
    FaceComplex bd = c.boundary_complex();
    for (int p = 0; p < c.simplex_count(); ++p)
        for (int f = 0; f <= n; ++f) {
            if (c.is_interior(p, f)) continue;
            std::vector<int> verts = c.facet_vertices(p, f);
            for (int g : verts)
                if (cone.count(g)) r.star[g].push_back({p, f});
        }
    for (int g : r.cone_vertices)
        if (!r.star.count(g))
            r.failures.push_back("cone vertex " + std::to_string(g) +
                                 " does not lie on the boundary");
    // Subcomplex spanned by the cone vertices.
    std::vector<std::vector<int>> tcells;
    for (int d = 0; d <= bd.dim(); ++d)
        for (const auto& f : bd.faces(d)) {
            bool all = true;
            for (int v : f)
                if (!cone.count(v)) { all = false; break; }
            if (all) tcells.push_back(f);
        }
    FaceComplex t = FaceComplex::from_cells(tcells);
    r.collapsed_faces = t.total_faces();
    r.chi_boundary = bd.euler();
    if (t.total_faces() == 0) {
        r.h_quotient = bd.mod2_homology(n - 1);
        r.chi_quotient = bd.euler();
    } else {
        if (t.euler() != 1)
            r.failures.push_back("collapsed subcomplex is not Euler-trivial");
        r.h_quotient = relative_mod2_homology(bd, t, n - 1);
        r.h_quotient[0] += 1;  // the collapse point
        r.chi_quotient = bd.euler() - t.euler() + 1;
    }
    if (r.h_quotient != sphere_homology(n - 1, n - 1))
        r.failures.push_back("collapsed boundary is not a mod-2 sphere: " +
                             dims_str(r.h_quotient));
    if (euler_of(r.h_quotient) != r.chi_quotient)
        r.failures.push_back("quotient homology disagrees with the cell recount");
    r.ok = r.failures.empty();
    return r;
}

std::string SphereDomainReport::text() const {
    std::ostringstream os;
    os << "sphere_class_domain\n";
    os << "n\t" << n << '\n';
    os << "k\t" << k << '\n';
    os << "variant\t" << variant_name(variant) << '\n';
    os << "cone_vertices\t" << cone_vertices.size() << '\n';
    os << "collapsed_faces\t" << collapsed_faces << '\n';
    os << "chi_boundary\t" << chi_boundary << '\n';
    os << "chi_quotient\t" << chi_quotient << '\n';
    os << "quotient_homology\t" << dims_str(h_quotient) << '\n';
    for (const std::string& f : failures) os << "failure\t" << f << '\n';
    os << "verdict\t" << (ok ? "ok" : "fail") << '\n';
    return os.str();
}

}  // namespace adams::polytope
