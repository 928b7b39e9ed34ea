#include "adams/spectral.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

namespace adams::spectral {

namespace {

bool maps_equal(const GradedMap& a, const GradedMap& b, const Window& w) {
    return (a + b).is_zero(w);
}

[[noreturn]] void fail_identity(int n, const std::string& what) {
    throw std::invalid_argument("cosimplicial identity failure at level " + std::to_string(n) +
                                ": " + what);
}

}  // namespace

void CosimplicialModule::check_identities() const {
    int top = top_level();
    if (top < 0) throw std::invalid_argument("cosimplicial module: no levels");
    if (static_cast<int>(cofaces.size()) != top + 1 || static_cast<int>(codegens.size()) != top + 1)
        throw std::invalid_argument("cosimplicial module: coface/codegeneracy tables must have one slot per level");
    for (int n = 0; n <= top; ++n) {
        int want_cofaces = n == 0 ? 0 : n + 1;
        int want_codegens = n == top ? 0 : n + 1;
        if (static_cast<int>(cofaces[n].size()) != want_cofaces)
            throw std::invalid_argument("cosimplicial module: level " + std::to_string(n) +
                                        " needs " + std::to_string(want_cofaces) + " cofaces");
        if (static_cast<int>(codegens[n].size()) != want_codegens)
            throw std::invalid_argument("cosimplicial module: level " + std::to_string(n) +
                                        " needs " + std::to_string(want_codegens) + " codegeneracies");
        for (int i = 0; i < want_cofaces; ++i)
            if (!(cofaces[n][i].source() == levels[n - 1]) || !(cofaces[n][i].target() == levels[n]) ||
                cofaces[n][i].degree_shift() != 0)
                fail_identity(n, "coface d^" + std::to_string(i) + " has wrong shape");
        for (int j = 0; j < want_codegens; ++j)
            if (!(codegens[n][j].source() == levels[n + 1]) || !(codegens[n][j].target() == levels[n]) ||
                codegens[n][j].degree_shift() != 0)
                fail_identity(n, "codegeneracy s^" + std::to_string(j) + " has wrong shape");
    }
    // d^j ∘ d^i = d^i ∘ d^{j-1} for i < j (maps W^{n-1} -> W^{n+1}).
    for (int n = 1; n + 1 <= top; ++n)
        for (int j = 1; j <= n + 1; ++j)
            for (int i = 0; i < j; ++i)
                if (!maps_equal(cofaces[n][i].then(cofaces[n + 1][j]),
                                cofaces[n][j - 1].then(cofaces[n + 1][i]), window))
                    fail_identity(n, "d^" + std::to_string(j) + " d^" + std::to_string(i));
    // s^j ∘ s^i-dual: codegens[n+1][i] then codegens[n][j] = codegens[n+1][j+1]
    // then codegens[n][i] for i <= j (maps W^{n+2} -> W^n).
    for (int n = 0; n + 2 <= top; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                if (!maps_equal(codegens[n + 1][i].then(codegens[n][j]),
                                codegens[n + 1][j + 1].then(codegens[n][i]), window))
                    fail_identity(n, "s^" + std::to_string(j) + " s^" + std::to_string(i));
    // Mixed relations (maps W^n -> W^n).
    for (int n = 0; n + 1 <= top; ++n) {
        GradedMap idn = graded_identity(levels[n]);
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                GradedMap lhs = cofaces[n + 1][i].then(codegens[n][j]);
                const GradedMap* rhs = nullptr;
                GradedMap tmp;
                if (i == j || i == j + 1) {
                    rhs = &idn;
                } else if (i < j) {
                    tmp = codegens[n - 1][j - 1].then(cofaces[n][i]);
                    rhs = &tmp;
                } else {
                    tmp = codegens[n - 1][j].then(cofaces[n][i - 1]);
                    rhs = &tmp;
                }
                if (!maps_equal(lhs, *rhs, window))
                    fail_identity(n, "s^" + std::to_string(j) + " d^" + std::to_string(i));
            }
    }
}

CosimplicialModule dualize(const simplicial::SimplicialModule& v) {
    CosimplicialModule w;
    w.window = v.window;
    w.levels = v.levels;
    int top = v.top_level();
    w.cofaces.resize(top + 1);
    w.codegens.resize(top + 1);
    for (int n = 1; n <= top; ++n)
        for (int i = 0; i <= n; ++i) {
            GradedMap m(w.levels[n - 1], w.levels[n], 0);
            for (int t = v.window.t_min; t <= v.window.t_max; ++t) {
                if (w.levels[n - 1].dim(t) == 0 || w.levels[n].dim(t) == 0) continue;
                m.set_block(t, v.faces[n][i].block(t).transpose());
            }
            w.cofaces[n].push_back(std::move(m));
        }
    for (int n = 0; n < top; ++n)
        for (int j = 0; j <= n; ++j) {
            GradedMap m(w.levels[n + 1], w.levels[n], 0);
            for (int t = v.window.t_min; t <= v.window.t_max; ++t) {
                if (w.levels[n + 1].dim(t) == 0 || w.levels[n].dim(t) == 0) continue;
                m.set_block(t, v.degens[n][j].block(t).transpose());
            }
            w.codegens[n].push_back(std::move(m));
        }
    return w;
}

std::map<int, gf2::Subspace> normalized_cochains(const CosimplicialModule& w, int n) {
    std::map<int, gf2::Subspace> out;
    for (int t = w.window.t_min; t <= w.window.t_max; ++t) {
        gf2::Subspace cur = gf2::Subspace::full(w.levels.at(n).dim(t));
        // s^j out of W^n live at codegens[n-1][j] (they land in W^{n-1}).
        if (n >= 1)
            for (int j = 0; j <= n - 1; ++j)
                cur = gf2::Subspace::intersect(
                    cur, gf2::Subspace::span(gf2::kernel(w.codegens.at(n - 1).at(j).block(t))));
        out.emplace(t, std::move(cur));
    }
    return out;
}

CochainComplex d1_complex(const CosimplicialModule& w) {
    CochainComplex out;
    out.window = w.window;
    int top = w.top_level();
    for (int n = 0; n <= top; ++n) {
        out.normalized.push_back(normalized_cochains(w, n));
        GradedSpace sp;
        for (const auto& [t, sub] : out.normalized.back()) sp.set_dim(t, sub.dim());
        out.spaces.push_back(std::move(sp));
    }
    out.diff.resize(top + 1);
    for (int n = 0; n < top; ++n) {
        GradedMap d(out.spaces[n], out.spaces[n + 1], 0);
        for (int t = w.window.t_min; t <= w.window.t_max; ++t) {
            const gf2::Subspace& nn = out.normalized[n].at(t);
            const gf2::Subspace& nm = out.normalized[n + 1].at(t);
            if (nn.dim() == 0) continue;
            gf2::Matrix m(nm.dim(), nn.dim());
            for (int c = 0; c < nn.dim(); ++c) {
                gf2::Vec img(w.levels[n + 1].dim(t));
                for (int i = 0; i <= n + 1; ++i)
                    img ^= w.cofaces[n + 1][i].block(t).apply(nn.basis().row(c));
                if (!nm.contains(img))
                    throw std::invalid_argument(
                        "d1 does not preserve the normalization at level " + std::to_string(n) +
                        ", degree " + std::to_string(t) + " (cosimplicial identities violated?)");
                gf2::Vec coords = nm.coordinates(img);
                for (int r = 0; r < nm.dim(); ++r)
                    if (coords.get(r)) m.set(r, c, true);
            }
            d.set_block(t, std::move(m));
        }
        out.diff[n] = std::move(d);
    }
    out.diff[top] = GradedMap(out.spaces[top], GradedSpace{}, 0);
    for (int n = 0; n + 2 <= top; ++n)
        if (!out.diff[n].then(out.diff[n + 1]).is_zero(w.window))
            throw std::invalid_argument("d1∘d1 != 0 out of level " + std::to_string(n));
    return out;
}

QuotientCochains moore_cochains(const CosimplicialModule& w) {
    w.check_identities();
    QuotientCochains out;
    out.window = w.window;
    int top = w.top_level();
    for (int n = 0; n <= top; ++n) {
        std::map<int, gf2::Subspace> deg;
        std::map<int, gf2::QuotientBasis> cls;
        GradedSpace sp;
        for (int t = w.window.t_min; t <= w.window.t_max; ++t) {
            int dim = w.levels[n].dim(t);
            gf2::Matrix rows(0, dim);
            for (int i = 1; i <= n; ++i) {
                const gf2::Matrix& blk = w.cofaces[n][i].block(t);
                for (int c = 0; c < blk.cols(); ++c) {
                    gf2::Vec col(dim);
                    for (int r = 0; r < dim; ++r)
                        if (blk.get(r, c)) col.set(r, true);
                    rows.append_row(std::move(col));
                }
            }
            gf2::Subspace d = gf2::Subspace::span(rows);
            gf2::QuotientBasis q = gf2::quotient(gf2::Subspace::full(dim), d);
            sp.set_dim(t, q.dim());
            deg.emplace(t, std::move(d));
            cls.emplace(t, std::move(q));
        }
        out.degenerate.push_back(std::move(deg));
        out.classes.push_back(std::move(cls));
        out.spaces.push_back(std::move(sp));
    }
    out.diff.resize(top + 1);
    for (int n = 0; n < top; ++n) {
        GradedMap d(out.spaces[n], out.spaces[n + 1], 0);
        for (int t = w.window.t_min; t <= w.window.t_max; ++t) {
            const gf2::QuotientBasis& qn = out.classes[n].at(t);
            const gf2::QuotientBasis& qm = out.classes[n + 1].at(t);
            const gf2::Subspace& dm = out.degenerate[n + 1].at(t);
            if (qn.dim() == 0) continue;
            gf2::Matrix m(qm.dim(), qn.dim());
            for (int c = 0; c < qn.dim(); ++c) {
                gf2::Vec img = w.cofaces[n + 1][0].block(t).apply(qn.reps.row(c));
                gf2::Vec coords = gf2::quotient_coordinates(qm, dm, img);
                for (int r = 0; r < qm.dim(); ++r)
                    if (coords.get(r)) m.set(r, c, true);
            }
            d.set_block(t, std::move(m));
        }
        out.diff[n] = std::move(d);
    }
    out.diff[top] = GradedMap(out.spaces[top], GradedSpace{}, 0);
    for (int n = 0; n + 2 <= top; ++n)
        if (!out.diff[n].then(out.diff[n + 1]).is_zero(w.window))
            throw std::invalid_argument("moore cochains: induced differential does not square to zero");
    return out;
}

bool pages_equal(const SpectralPage& a, const SpectralPage& b, const Window& w) {
    if (a.table.size() != b.table.size()) return false;
    for (size_t n = 0; n < a.table.size(); ++n)
        for (int t = w.t_min; t <= w.t_max; ++t)
            if (a.table[n].dim(t) != b.table[n].dim(t)) return false;
    size_t nd = std::max(a.diff.size(), b.diff.size());
    for (size_t n = 0; n < nd; ++n) {
        bool za = n >= a.diff.size() || a.diff[n].is_zero(w);
        bool zb = n >= b.diff.size() || b.diff[n].is_zero(w);
        if (za != zb) return false;
        if (za) continue;
        if (!maps_equal(a.diff[n], b.diff[n], w)) return false;
    }
    return true;
}

int FilteredComplex::jump(int n) const {
    if (n < 0 || n >= top_level()) return std::numeric_limits<int>::max();
    return steps[n + 1] - steps[n];
}

int FilteredComplex::filtration_length() const {
    if (steps.empty()) return 0;
    auto [lo, hi] = std::minmax_element(steps.begin(), steps.end());
    return *hi - *lo;
}

void FilteredComplex::validate() const {
    int top = top_level();
    if (top < 0) throw std::invalid_argument("filtered complex: no levels");
    if (static_cast<int>(diff.size()) != top + 1 || static_cast<int>(steps.size()) != top + 1)
        throw std::invalid_argument("filtered complex: one differential slot and one step per level required");
    for (int n = 0; n <= top; ++n) {
        if (!(diff[n].source() == spaces[n]) || diff[n].degree_shift() != 0)
            throw std::invalid_argument("filtered complex: differential at level " +
                                        std::to_string(n) + " has wrong source");
        const GradedSpace want = n == top ? GradedSpace{} : spaces[n + 1];
        if (!(diff[n].target() == want))
            throw std::invalid_argument("filtered complex: differential at level " +
                                        std::to_string(n) + " has wrong target");
    }
    for (int n = 0; n + 1 <= top; ++n)
        if (steps[n + 1] < steps[n])
            throw std::invalid_argument("filtered complex: filtration steps must be non-decreasing");
    for (int n = 0; n + 1 <= top; ++n)
        if (!diff[n].then(diff[n + 1]).is_zero(window))
            throw std::invalid_argument("filtered complex: d∘d != 0 out of level " + std::to_string(n));
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (!tok.empty() && tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

int parse_int(const std::string& tok, int line, const std::string& what) {
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw unstable::ParseError(line, "expected integer for " + what + ", got '" + tok + "'");
    }
}

}  // namespace

FilteredComplex parse_filtered(std::istream& in) {
    std::map<std::pair<int, int>, int> dims;                      // (level, degree) -> dim
    std::map<std::pair<int, int>, std::vector<std::string>> raw;  // (level, degree) -> bit rows
    std::map<std::pair<int, int>, int> raw_line;
    std::map<int, int> steps;
    int max_level = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::string> tok = split_ws(line);
        if (tok.empty()) continue;
        if (tok[0] == "space") {
            if (tok.size() != 4) throw unstable::ParseError(lineno, "space needs: space <level> <degree> <dim>");
            int lv = parse_int(tok[1], lineno, "level");
            int t = parse_int(tok[2], lineno, "degree");
            int d = parse_int(tok[3], lineno, "dim");
            if (lv < 0 || d < 0) throw unstable::ParseError(lineno, "level and dim must be non-negative");
            if (!dims.emplace(std::make_pair(lv, t), d).second)
                throw unstable::ParseError(lineno, "duplicate space declaration");
            max_level = std::max(max_level, lv);
        } else if (tok[0] == "diff") {
            if (tok.size() != 4) throw unstable::ParseError(lineno, "diff needs: diff <level> <degree> <rows>");
            int lv = parse_int(tok[1], lineno, "level");
            int t = parse_int(tok[2], lineno, "degree");
            if (lv < 0) throw unstable::ParseError(lineno, "level must be non-negative");
            std::vector<std::string> rows;
            std::string cur;
            for (char ch : tok[3]) {
                if (ch == ';') {
                    rows.push_back(cur);
                    cur.clear();
                } else if (ch == '0' || ch == '1') {
                    cur += ch;
                } else {
                    throw unstable::ParseError(lineno, std::string("bad character '") + ch + "' in bit rows");
                }
            }
            rows.push_back(cur);
            if (!raw.emplace(std::make_pair(lv, t), rows).second)
                throw unstable::ParseError(lineno, "duplicate diff declaration");
            raw_line[{lv, t}] = lineno;
            max_level = std::max(max_level, lv + 1);
        } else if (tok[0] == "filtration") {
            if (tok.size() != 3) throw unstable::ParseError(lineno, "filtration needs: filtration <level> <step>");
            int lv = parse_int(tok[1], lineno, "level");
            int st = parse_int(tok[2], lineno, "step");
            if (lv < 0) throw unstable::ParseError(lineno, "level must be non-negative");
            if (!steps.emplace(lv, st).second)
                throw unstable::ParseError(lineno, "duplicate filtration declaration");
            max_level = std::max(max_level, lv);
        } else {
            throw unstable::ParseError(lineno, "unknown directive '" + tok[0] + "'");
        }
    }
    if (max_level < 0) throw unstable::ParseError(lineno ? lineno : 1, "empty filtered complex");

    FilteredComplex f;
    int t_min = 0, t_max = -1;
    bool any = false;
    for (const auto& [key, d] : dims) {
        (void)d;
        if (!any) {
            t_min = t_max = key.second;
            any = true;
        } else {
            t_min = std::min(t_min, key.second);
            t_max = std::max(t_max, key.second);
        }
    }
    for (const auto& [key, rows] : raw) {
        (void)rows;
        if (!any) {
            t_min = t_max = key.second;
            any = true;
        } else {
            t_min = std::min(t_min, key.second);
            t_max = std::max(t_max, key.second);
        }
    }
    if (!any) {
        t_min = 0;
        t_max = 0;
    }
    f.window = Window{t_min, t_max};
    f.spaces.resize(max_level + 1);
    for (const auto& [key, d] : dims) f.spaces[key.first].set_dim(key.second, d);
    f.steps.resize(max_level + 1, 0);
    for (int n = 0; n <= max_level; ++n) {
        auto it = steps.find(n);
        if (it == steps.end())
            throw unstable::ParseError(lineno ? lineno : 1,
                                       "missing filtration step for level " + std::to_string(n));
        f.steps[n] = it->second;
    }
    for (int n = 0; n <= max_level; ++n) {
        GradedSpace target = n == max_level ? GradedSpace{} : f.spaces[n + 1];
        GradedMap d(f.spaces[n], target, 0);
        for (int t = t_min; t <= t_max; ++t) {
            auto it = raw.find({n, t});
            if (it == raw.end()) continue;
            int rows = target.dim(t);
            int cols = f.spaces[n].dim(t);
            int at = raw_line[{n, t}];
            const std::vector<std::string>& bits = it->second;
            if (static_cast<int>(bits.size()) != rows)
                throw unstable::ParseError(at, "diff block needs " + std::to_string(rows) +
                                                   " rows, got " + std::to_string(bits.size()));
            gf2::Matrix m(rows, cols);
            for (int r = 0; r < rows; ++r) {
                if (static_cast<int>(bits[r].size()) != cols)
                    throw unstable::ParseError(at, "diff row " + std::to_string(r) + " needs " +
                                                       std::to_string(cols) + " columns, got " +
                                                       std::to_string(bits[r].size()));
                for (int c = 0; c < cols; ++c)
                    if (bits[r][c] == '1') m.set(r, c, true);
            }
            d.set_block(t, std::move(m));
        }
        f.diff.push_back(std::move(d));
    }
    f.validate();
    return f;
}

FilteredComplex parse_filtered_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open filtered complex file: " + path);
    return parse_filtered(in);
}

namespace {

// Z_r at (level n, degree t): everything when the step jumps by at least
// r (the differential automatically lands deep enough), the kernel
// otherwise.
gf2::Subspace page_cycles(const FilteredComplex& f, int r, int n, int t) {
    if (f.jump(n) >= r) return gf2::Subspace::full(f.spaces[n].dim(t));
    return gf2::Subspace::span(gf2::kernel(f.diff[n].block(t)));
}

// B_r at (level n, degree t): the incoming image once the previous jump
// is small enough to have been caught (jump(n-1) <= r-1), zero before.
gf2::Subspace page_boundaries(const FilteredComplex& f, int r, int n, int t) {
    if (n >= 1 && f.jump(n - 1) <= r - 1)
        return gf2::Subspace::span(f.diff[n - 1].block(t).transpose());
    return gf2::Subspace(f.spaces[n].dim(t));
}

SpectralPage build_page(const FilteredComplex& f, int r, bool limit) {
    int top = f.top_level();
    SpectralPage p;
    p.r = limit ? -1 : r;
    p.steps = f.steps;
    p.table.resize(top + 1);
    std::vector<std::map<int, gf2::QuotientBasis>> q(top + 1);
    std::vector<std::map<int, gf2::Subspace>> b(top + 1);
    for (int n = 0; n <= top; ++n)
        for (int t = f.window.t_min; t <= f.window.t_max; ++t) {
            gf2::Subspace z = limit ? gf2::Subspace::span(gf2::kernel(f.diff[n].block(t)))
                                    : page_cycles(f, r, n, t);
            gf2::Subspace bb = limit ? (n >= 1 ? gf2::Subspace::span(f.diff[n - 1].block(t).transpose())
                                               : gf2::Subspace(f.spaces[n].dim(t)))
                                     : page_boundaries(f, r, n, t);
            gf2::QuotientBasis qq = gf2::quotient(z, bb);
            if (qq.dim() > 0) p.table[n].set_dim(t, qq.dim());
            q[n].emplace(t, std::move(qq));
            b[n].emplace(t, std::move(bb));
        }
    for (int n = 0; n <= top; ++n) {
        GradedSpace target = n == top ? GradedSpace{} : p.table[n + 1];
        GradedMap d(p.table[n], target, 0);
        if (!limit && n < top && f.jump(n) == r) {
            for (int t = f.window.t_min; t <= f.window.t_max; ++t) {
                const gf2::QuotientBasis& qs = q[n].at(t);
                const gf2::QuotientBasis& qt = q[n + 1].at(t);
                if (qs.dim() == 0) continue;
                gf2::Matrix m(qt.dim(), qs.dim());
                for (int c = 0; c < qs.dim(); ++c) {
                    gf2::Vec img = f.diff[n].block(t).apply(qs.reps.row(c));
                    gf2::Vec coords = gf2::quotient_coordinates(qt, b[n + 1].at(t), img);
                    for (int rr = 0; rr < qt.dim(); ++rr)
                        if (coords.get(rr)) m.set(rr, c, true);
                }
                d.set_block(t, std::move(m));
            }
        }
        p.diff.push_back(std::move(d));
    }
    return p;
}

}  // namespace

std::vector<SpectralPage> pages(const FilteredComplex& f, int r_max) {
    f.validate();
    std::vector<SpectralPage> out;
    for (int r = 1; r <= r_max; ++r) out.push_back(build_page(f, r, false));
    return out;
}

SpectralPage limit_page(const FilteredComplex& f) {
    f.validate();
    return build_page(f, 0, true);
}

ResolutionPages resolution_pages(const simplicial::CWResolution& res) {
    const simplicial::CWComplex& cx = res.complex;
    const Window& w = cx.window();
    int top = cx.top_level();
    ResolutionPages out;
    out.e1.r = 1;
    out.e1.table.resize(top + 1);
    // Generator indices per (stage, degree), in declaration order.
    std::vector<std::map<int, std::vector<int>>> by_deg(top + 1);
    for (int s = 0; s <= top; ++s) {
        const auto& gens = cx.bar(s).generators();
        std::map<int, std::vector<std::string>> labels;
        for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
            by_deg[s][gens[g].degree].push_back(g);
            labels[gens[g].degree].push_back(gens[g].name);
        }
        for (auto& [t, names] : labels) {
            out.e1.table[s].set_dim(t, static_cast<int>(names.size()));
            out.e1.table[s].set_labels(t, names);
        }
    }
    for (int s = 0; s <= top; ++s) {
        GradedSpace target = s == top ? GradedSpace{} : out.e1.table[s + 1];
        GradedMap d(out.e1.table[s], target, 0);
        if (s < top) {
            for (int t = w.t_min; t <= w.t_max; ++t) {
                auto src = by_deg[s].find(t);
                auto dst = by_deg[s + 1].find(t);
                if (src == by_deg[s].end() || dst == by_deg[s + 1].end()) continue;
                gf2::Matrix m(static_cast<int>(dst->second.size()),
                              static_cast<int>(src->second.size()));
                for (int row = 0; row < m.rows(); ++row) {
                    const gf2::Vec& img = cx.attach_images(s + 1)[dst->second[row]];
                    for (int col = 0; col < m.cols(); ++col) {
                        int pos = cx.level(s).basis_offset(src->second[col], t);
                        if (img.get(pos)) m.set(row, col, true);
                    }
                }
                d.set_block(t, std::move(m));
            }
        }
        out.e1.diff.push_back(std::move(d));
    }
    // E2 = homology of (E1, d1), with labels naming each class by its
    // representative in E1 coordinates.
    out.e2.r = 2;
    out.e2.table.resize(top + 1);
    for (int s = 0; s <= top; ++s) {
        GradedMap d_in = s == 0 ? GradedMap(GradedSpace{}, out.e1.table[0], 0) : out.e1.diff[s - 1];
        GradedHomology h = graded_homology(d_in, out.e1.diff[s], w);
        for (int t = w.t_min; t <= w.t_max; ++t) {
            auto it = h.reps.find(t);
            int dim = it == h.reps.end() ? 0 : it->second.dim();
            if (dim == 0) continue;
            out.e2.table[s].set_dim(t, dim);
            std::vector<std::string> names;
            const std::vector<std::string>& base = out.e1.table[s].labels(t);
            for (int row = 0; row < dim; ++row) {
                std::string name;
                const gf2::Vec& rep = it->second.reps.row(row);
                for (int c = 0; c < static_cast<int>(base.size()); ++c)
                    if (rep.get(c)) {
                        if (!name.empty()) name += "+";
                        name += base[c];
                    }
                names.push_back(name.empty() ? "?" : name);
            }
            out.e2.table[s].set_labels(t, names);
        }
    }
    return out;
}

SpectralPage e2_from_resolution(const simplicial::CWResolution& r) {
    return resolution_pages(r).e2;
}

std::string chart_tsv(const SpectralPage& p) {
    struct Row {
        int stem;
        int s;
        int dim;
        std::string names;
    };
    std::vector<Row> rows;
    for (int s = 0; s < static_cast<int>(p.table.size()); ++s)
        for (const auto& [t, d] : p.table[s].dims()) {
            if (d == 0) continue;
            std::string names = "-";
            if (p.table[s].has_labels(t)) {
                names.clear();
                const std::vector<std::string>& ls = p.table[s].labels(t);
                for (size_t i = 0; i < ls.size(); ++i) {
                    if (i) names += ",";
                    names += ls[i];
                }
            }
            rows.push_back(Row{t - s, s, d, names});
        }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.stem != b.stem) return a.stem < b.stem;
        return a.s < b.s;
    });
    std::string out = "s\tt-s\tdim\tnames\n";
    for (const Row& r : rows)
        out += std::to_string(r.s) + "\t" + std::to_string(r.stem) + "\t" + std::to_string(r.dim) +
               "\t" + r.names + "\n";
    return out;
}

std::string page_text(const SpectralPage& p) {
    std::string out = "page\t";
    out += (p.r < 0 ? std::string("limit") : std::to_string(p.r));
    out += "\n";
    for (int n = 0; n < static_cast<int>(p.table.size()); ++n)
        for (const auto& [t, d] : p.table[n].dims())
            if (d != 0)
                out += "space\t" + std::to_string(n) + "\t" + std::to_string(t) + "\t" +
                       std::to_string(d) + "\n";
    for (int n = 0; n < static_cast<int>(p.steps.size()); ++n)
        out += "filtration\t" + std::to_string(n) + "\t" + std::to_string(p.steps[n]) + "\n";
    for (int n = 0; n < static_cast<int>(p.diff.size()); ++n)
        for (const auto& [t, m] : p.diff[n].blocks()) {
            if (m.is_zero()) continue;
            std::string rows;
            for (int r = 0; r < m.rows(); ++r) {
                if (r) rows += ";";
                for (int c = 0; c < m.cols(); ++c) rows += m.get(r, c) ? '1' : '0';
            }
            out += "diff\t" + std::to_string(n) + "\t" + std::to_string(t) + "\t" + rows + "\n";
        }
    return out;
}

SpectralPage parse_chart(std::istream& in) {
    SpectralPage p;
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::string cur;
        for (char ch : line) {
            if (ch == '\t') {
                cols.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        cols.push_back(cur);
        if (!saw_header) {
            if (cols != std::vector<std::string>{"s", "t-s", "dim", "names"})
                throw unstable::ParseError(lineno, "bad chart header");
            saw_header = true;
            continue;
        }
        if (cols.size() != 4) throw unstable::ParseError(lineno, "chart rows need 4 tab-separated fields");
        int s = parse_int(cols[0], lineno, "s");
        int stem = parse_int(cols[1], lineno, "t-s");
        int dim = parse_int(cols[2], lineno, "dim");
        if (s < 0 || dim <= 0) throw unstable::ParseError(lineno, "s must be >= 0 and dim positive");
        int t = stem + s;
        if (static_cast<int>(p.table.size()) <= s) p.table.resize(s + 1);
        if (p.table[s].dim(t) != 0) throw unstable::ParseError(lineno, "duplicate chart entry");
        p.table[s].set_dim(t, dim);
        if (cols[3] != "-") {
            std::vector<std::string> names;
            std::string nm;
            for (char ch : cols[3]) {
                if (ch == ',') {
                    names.push_back(nm);
                    nm.clear();
                } else {
                    nm += ch;
                }
            }
            names.push_back(nm);
            if (static_cast<int>(names.size()) != dim)
                throw unstable::ParseError(lineno, "name count does not match dim");
            p.table[s].set_labels(t, names);
        }
    }
    if (!saw_header) throw unstable::ParseError(lineno ? lineno : 1, "missing chart header");
    return p;
}

}  // namespace adams::spectral
