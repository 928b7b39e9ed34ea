#include "adams/simplicial.hpp"

#include <algorithm>

namespace adams::simplicial {

bool Surjection::valid() const {
    if (values.empty() || values[0] != 0) return false;
    for (size_t x = 1; x < values.size(); ++x) {
        int step = values[x] - values[x - 1];
        if (step < 0 || step > 1) return false;
    }
    return true;
}

std::string Surjection::tag() const {
    std::string out;
    for (size_t x = 0; x < values.size(); ++x) {
        if (x) out += '.';
        out += std::to_string(values[x]);
    }
    return out;
}

Surjection Surjection::identity(int n) {
    Surjection s;
    s.values.resize(n + 1);
    for (int x = 0; x <= n; ++x) s.values[x] = x;
    return s;
}

Surjection Surjection::degenerate(int j) const {
    Surjection out;
    out.values = values;
    out.values.insert(out.values.begin() + j, values.at(j));
    return out;
}

Surjection Surjection::compose(const Surjection& inner) const {
    if (inner.target() != source())
        throw std::invalid_argument("surjection compose: inner target != outer source");
    Surjection out;
    out.values.reserve(inner.values.size());
    for (int v : inner.values) out.values.push_back(values.at(v));
    return out;
}

FaceFactor face_factor(const Surjection& s, int i) {
    FaceFactor f;
    int hit = s.values.at(i);
    int count = 0;
    for (int v : s.values)
        if (v == hit) ++count;
    std::vector<int> dropped = s.values;
    dropped.erase(dropped.begin() + i);
    if (count > 1) {
        f.surjective = true;
        f.onto.values = std::move(dropped);
        return f;
    }
    // values[i] occurred exactly once, so dropping entry i misses it and
    // nothing else; shifting the larger values down recovers the second
    // factor of sigma ∘ delta_i = delta_missed ∘ stripped.
    f.missed = hit;
    f.stripped.values.reserve(dropped.size());
    for (int v : dropped) f.stripped.values.push_back(v > hit ? v - 1 : v);
    return f;
}

namespace {

void surjection_rec(int n, int k, std::vector<int>& acc, std::vector<Surjection>& out) {
    int pos = static_cast<int>(acc.size());
    if (pos == n + 1) {
        out.push_back(Surjection{acc});
        return;
    }
    int cur = acc.back();
    for (int v = cur; v <= cur + 1 && v <= k; ++v) {
        // Still reachable: the n - pos remaining entries can add at most 1
        // each, and the final value must be k.
        if (v + (n - pos) < k) continue;
        acc.push_back(v);
        surjection_rec(n, k, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Surjection> surjections(int n, int k) {
    std::vector<Surjection> out;
    if (n < 0 || k < 0 || k > n) return out;
    std::vector<int> acc{0};
    if (n >= k) surjection_rec(n, k, acc, out);
    return out;
}

namespace {

bool maps_equal(const GradedMap& a, const GradedMap& b, const Window& w) {
    return (a + b).is_zero(w);
}

[[noreturn]] void fail_identity(int n, const std::string& what) {
    throw std::invalid_argument("simplicial identity failure out of level " + std::to_string(n) +
                                ": " + what);
}

}  // namespace

void SimplicialModule::check_identities() const {
    int top = top_level();
    if (top < 0) throw std::invalid_argument("simplicial module: no levels");
    if (static_cast<int>(faces.size()) != top + 1 || static_cast<int>(degens.size()) != top + 1)
        throw std::invalid_argument("simplicial module: face/degeneracy tables must have one slot per level");
    for (int n = 0; n <= top; ++n) {
        int want_faces = n == 0 ? 0 : n + 1;
        int want_degens = n == top ? 0 : n + 1;
        if (static_cast<int>(faces[n].size()) != want_faces)
            throw std::invalid_argument("simplicial module: level " + std::to_string(n) +
                                        " needs " + std::to_string(want_faces) + " faces");
        if (static_cast<int>(degens[n].size()) != want_degens)
            throw std::invalid_argument("simplicial module: level " + std::to_string(n) +
                                        " needs " + std::to_string(want_degens) + " degeneracies");
        for (int i = 0; i < want_faces; ++i)
            if (!(faces[n][i].source() == levels[n]) || !(faces[n][i].target() == levels[n - 1]) ||
                faces[n][i].degree_shift() != 0)
                fail_identity(n, "face d" + std::to_string(i) + " has wrong shape");
        for (int j = 0; j < want_degens; ++j)
            if (!(degens[n][j].source() == levels[n]) || !(degens[n][j].target() == levels[n + 1]) ||
                degens[n][j].degree_shift() != 0)
                fail_identity(n, "degeneracy s" + std::to_string(j) + " has wrong shape");
    }
    for (int n = 2; n <= top; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                if (!maps_equal(faces[n][j].then(faces[n - 1][i]),
                                faces[n][i].then(faces[n - 1][j - 1]), window))
                    fail_identity(n, "d" + std::to_string(i) + " d" + std::to_string(j));
    for (int n = 0; n + 2 <= top; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                if (!maps_equal(degens[n][j].then(degens[n + 1][i]),
                                degens[n][i].then(degens[n + 1][j + 1]), window))
                    fail_identity(n, "s" + std::to_string(i) + " s" + std::to_string(j));
    for (int n = 0; n + 1 <= top; ++n) {
        GradedMap idn = graded_identity(levels[n]);
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                GradedMap lhs = degens[n][j].then(faces[n + 1][i]);
                const GradedMap* rhs = nullptr;
                GradedMap tmp;
                if (i == j || i == j + 1) {
                    rhs = &idn;
                } else if (i < j) {
                    tmp = faces[n][i].then(degens[n - 1][j - 1]);
                    rhs = &tmp;
                } else {
                    tmp = faces[n][i - 1].then(degens[n - 1][j]);
                    rhs = &tmp;
                }
                if (!maps_equal(lhs, *rhs, window))
                    fail_identity(n, "d" + std::to_string(i) + " s" + std::to_string(j));
            }
    }
}

namespace {

std::map<int, gf2::Subspace> kernel_intersection(const SimplicialModule& v, int n, int first_face) {
    std::map<int, gf2::Subspace> out;
    const std::vector<GradedMap>& fs = v.faces.at(n);
    for (int t = v.window.t_min; t <= v.window.t_max; ++t) {
        gf2::Subspace cur = gf2::Subspace::full(v.levels.at(n).dim(t));
        for (int i = first_face; i < static_cast<int>(fs.size()); ++i)
            cur = gf2::Subspace::intersect(cur, gf2::Subspace::span(gf2::kernel(fs[i].block(t))));
        out.emplace(t, std::move(cur));
    }
    return out;
}

}  // namespace

std::map<int, gf2::Subspace> moore_chains(const SimplicialModule& v, int n) {
    return kernel_intersection(v, n, 1);
}

std::map<int, gf2::Subspace> moore_cycles(const SimplicialModule& v, int n) {
    return kernel_intersection(v, n, 0);
}

MooreComplex moore_complex(const SimplicialModule& v) {
    MooreComplex out;
    out.window = v.window;
    int top = v.top_level();
    for (int n = 0; n <= top; ++n) {
        out.chains.push_back(moore_chains(v, n));
        GradedSpace sp;
        for (const auto& [t, sub] : out.chains.back()) sp.set_dim(t, sub.dim());
        out.spaces.push_back(std::move(sp));
    }
    out.diff.resize(top + 1);
    for (int n = 1; n <= top; ++n) {
        GradedMap d(out.spaces[n], out.spaces[n - 1], 0);
        for (int t = v.window.t_min; t <= v.window.t_max; ++t) {
            const gf2::Subspace& cn = out.chains[n].at(t);
            const gf2::Subspace& cm = out.chains[n - 1].at(t);
            if (cn.dim() == 0) continue;
            gf2::Matrix m(cm.dim(), cn.dim());
            for (int c = 0; c < cn.dim(); ++c) {
                gf2::Vec img = v.faces[n][0].apply(t, cn.basis().row(c));
                if (!cm.contains(img))
                    throw std::logic_error("moore complex: d_0 does not preserve chains");
                gf2::Vec coords = cm.coordinates(img);
                for (int r = 0; r < cm.dim(); ++r)
                    if (coords.get(r)) m.set(r, c, true);
            }
            d.set_block(t, std::move(m));
        }
        out.diff[n] = std::move(d);
    }
    // Bottom placeholder: the zero map out of C_0, usable as d_out when
    // taking homology at level 0.
    out.diff[0] = GradedMap(out.spaces[0], GradedSpace{}, 0);
    return out;
}

std::vector<std::pair<int, Surjection>> degenerate_copies(int n) {
    std::vector<std::pair<int, Surjection>> out;
    for (int k = n - 1; k >= 0; --k)
        for (Surjection& s : surjections(n, k)) out.emplace_back(k, std::move(s));
    return out;
}

int CWComplex::copy_gen_begin(int n, int c) const { return copy_gen_begin_.at(n).at(c); }

std::pair<int, int> CWComplex::copy_basis_range(int n, int c, int t) const {
    const std::vector<int>& gb = copy_gen_begin_.at(n);
    const unstable::FreeModule& lv = *levels_.at(n);
    int a = lv.basis_offset(gb.at(c), t);
    int b = lv.basis_offset(gb.at(c + 1), t);
    return {a, b - a};
}

int CWComplex::copy_index(int n, int k, const Surjection& s) const {
    const auto& lk = copy_lookup_.at(n);
    auto it = lk.find({k, s.values});
    if (it == lk.end()) throw std::logic_error("cw complex: copy lookup miss");
    return it->second;
}

const std::map<int, gf2::Subspace>& CWComplex::cycles(int n) const {
    auto it = cycles_cache_.find(n);
    if (it != cycles_cache_.end()) return it->second;
    std::map<int, gf2::Subspace> out;
    for (int t = window_.t_min; t <= window_.t_max; ++t) {
        gf2::Subspace cur = gf2::Subspace::full(levels_.at(n)->dim(t));
        if (n >= 1)
            for (int i = 0; i <= n; ++i)
                cur = gf2::Subspace::intersect(
                    cur, gf2::Subspace::span(gf2::kernel(faces_.at(n).at(i).block(t))));
        out.emplace(t, std::move(cur));
    }
    return cycles_cache_.emplace(n, std::move(out)).first->second;
}

void CWComplex::add_stage(std::unique_ptr<unstable::FreeModule> bar,
                          std::vector<gf2::Vec> attach_gen_images) {
    int n = top_level() + 1;
    size_t want = n == 0 ? 0 : bar->generators().size();
    if (attach_gen_images.size() != want)
        throw std::invalid_argument("add_stage: need one attaching image per generator");
    if (n >= 1) {
        const std::map<int, gf2::Subspace>& zn = cycles(n - 1);
        for (size_t g = 0; g < bar->generators().size(); ++g) {
            const unstable::Generator& gen = bar->generators()[g];
            if (!window_.contains(gen.degree))
                throw std::invalid_argument("add_stage: generator '" + gen.name +
                                            "' lies outside the window");
            const gf2::Subspace& z = zn.at(gen.degree);
            if (attach_gen_images[g].size() != z.ambient())
                throw std::invalid_argument("add_stage: attaching image of '" + gen.name +
                                            "' has the wrong dimension");
            if (!z.contains(attach_gen_images[g]))
                throw std::invalid_argument("add_stage: attaching image of '" + gen.name +
                                            "' is not a Moore cycle");
        }
    }
    bars_.push_back(std::move(bar));

    std::vector<std::pair<int, Surjection>> cps;
    std::vector<unstable::Generator> gens;
    std::vector<int> gb{0};
    std::map<std::pair<int, std::vector<int>>, int> lookup;
    for (int k = n; k >= 0; --k)
        for (Surjection& s : surjections(n, k)) {
            lookup[{k, s.values}] = static_cast<int>(cps.size());
            for (const unstable::Generator& g : bars_.at(k)->generators())
                gens.push_back(unstable::Generator{
                    s.is_identity() ? g.name : g.name + "@" + s.tag(), g.degree});
            cps.emplace_back(k, std::move(s));
            gb.push_back(static_cast<int>(gens.size()));
        }
    copies_.push_back(std::move(cps));
    copy_gen_begin_.push_back(std::move(gb));
    copy_lookup_.push_back(std::move(lookup));
    levels_.push_back(std::make_unique<unstable::FreeModule>(std::move(gens), window_));

    if (n == 0) {
        attach_.emplace_back();
        attach_images_.emplace_back();
    } else {
        attach_.push_back(unstable::extend_map(*bars_[n], *levels_[n - 1], attach_gen_images));
        attach_images_.push_back(std::move(attach_gen_images));
    }

    faces_.emplace_back();
    if (n >= 1)
        for (int i = 0; i <= n; ++i) build_face(n, i);
    degens_.emplace_back();
    if (n >= 1)
        for (int j = 0; j <= n - 1; ++j) build_degeneracy(n - 1, j);
}

void CWComplex::build_face(int n, int i) {
    const unstable::FreeModule& src = *levels_[n];
    const unstable::FreeModule& dst = *levels_[n - 1];
    GradedMap f(src.space(), dst.space(), 0);
    const std::vector<std::pair<int, Surjection>>& cps = copies_[n];
    for (int t = window_.t_min; t <= window_.t_max; ++t) {
        int rows = dst.dim(t), cols = src.dim(t);
        if (rows == 0 || cols == 0) continue;
        gf2::Matrix m(rows, cols);
        for (int c = 0; c < static_cast<int>(cps.size()); ++c) {
            int k = cps[c].first;
            const Surjection& sigma = cps[c].second;
            auto [soff, slen] = copy_basis_range(n, c, t);
            if (slen == 0) continue;
            FaceFactor ff = face_factor(sigma, i);
            if (ff.surjective) {
                int doff = copy_basis_range(n - 1, copy_index(n - 1, k, ff.onto), t).first;
                for (int x = 0; x < slen; ++x) m.set(doff + x, soff + x, true);
            } else if (ff.missed == 0) {
                // sigma ∘ delta_i = delta_0 ∘ stripped: apply the stage-k
                // attaching map, then transport each copy (j, rho) of
                // level k-1 to the copy (j, rho ∘ stripped) of level n-1.
                const gf2::Matrix& ab = attach_[k].block(t);
                const std::vector<std::pair<int, Surjection>>& mid = copies_[k - 1];
                for (int c2 = 0; c2 < static_cast<int>(mid.size()); ++c2) {
                    auto [moff, mlen] = copy_basis_range(k - 1, c2, t);
                    if (mlen == 0) continue;
                    int c3 = copy_index(n - 1, mid[c2].first, mid[c2].second.compose(ff.stripped));
                    int doff = copy_basis_range(n - 1, c3, t).first;
                    for (int x = 0; x < slen; ++x)
                        for (int r = 0; r < mlen; ++r)
                            if (ab.get(moff + r, x)) m.set(doff + r, soff + x, true);
                }
            }
            // missed >= 1: the block is zero.
        }
        f.set_block(t, std::move(m));
    }
    faces_[n].push_back(std::move(f));
}

void CWComplex::build_degeneracy(int n, int j) {
    const unstable::FreeModule& src = *levels_[n];
    const unstable::FreeModule& dst = *levels_[n + 1];
    GradedMap f(src.space(), dst.space(), 0);
    const std::vector<std::pair<int, Surjection>>& cps = copies_[n];
    for (int t = window_.t_min; t <= window_.t_max; ++t) {
        int rows = dst.dim(t), cols = src.dim(t);
        if (rows == 0 || cols == 0) continue;
        gf2::Matrix m(rows, cols);
        for (int c = 0; c < static_cast<int>(cps.size()); ++c) {
            auto [soff, slen] = copy_basis_range(n, c, t);
            if (slen == 0) continue;
            int c2 = copy_index(n + 1, cps[c].first, cps[c].second.degenerate(j));
            int doff = copy_basis_range(n + 1, c2, t).first;
            for (int x = 0; x < slen; ++x) m.set(doff + x, soff + x, true);
        }
        f.set_block(t, std::move(m));
    }
    degens_[n].push_back(std::move(f));
}

SimplicialModule CWComplex::simplicial() const {
    SimplicialModule v;
    v.window = window_;
    for (const auto& lp : levels_) v.levels.push_back(lp->space());
    v.faces = faces_;
    v.degens = degens_;
    return v;
}

CWResolution cw_resolve(const unstable::Presentation& p, int max_s, int t_max, bool minimal) {
    if (max_s < 0) throw std::invalid_argument("cw_resolve: max_s must be >= 0");
    int t_lo = p.generators.empty() ? 0 : p.generators[0].degree;
    for (const unstable::Generator& g : p.generators) t_lo = std::min(t_lo, g.degree);
    if (t_max < t_lo)
        throw std::invalid_argument("cw_resolve: t_max is below the lowest generator degree");
    Window w{t_lo, t_max};
    std::shared_ptr<unstable::Module> base = p.expand_shared(w);

    CWComplex cx(w);
    cx.add_stage(std::make_unique<unstable::FreeModule>(p.generators, w), {});

    std::vector<gf2::Vec> aug_imgs;
    for (size_t g = 0; g < p.generators.size(); ++g) {
        int t = p.generators[g].degree;
        gf2::Vec unit(base->ambient().dim(t));
        unit.set(base->ambient().basis_offset(static_cast<int>(g), t), true);
        aug_imgs.push_back(base->project(t, unit));
    }
    GradedMap aug = unstable::extend_map(cx.level(0), *base, aug_imgs);

    for (int s = 1; s <= max_s; ++s) {
        // Cycles the new stage must span: ker(augmentation) for s = 1,
        // the Moore cycles of the previous level after that.
        std::map<int, gf2::Subspace> z =
            s == 1 ? graded_kernel(aug, w) : cx.cycles(s - 1);
        for (int t = w.t_min; t <= w.t_max; ++t)
            if (!z.count(t)) z.emplace(t, gf2::Subspace(cx.level(s - 1).dim(t)));
        const unstable::FreeModule& lv = cx.level(s - 1);
        std::vector<unstable::Generator> gens;
        std::vector<gf2::Vec> imgs;
        for (int t = w.t_min; t <= w.t_max; ++t) {
            const gf2::Subspace& zt = z.at(t);
            gf2::Matrix chosen(0, zt.ambient());
            if (minimal) {
                // A+ · Z in degree t: operations of every positive degree
                // applied to lower cycle spaces.
                gf2::Matrix rows(0, zt.ambient());
                for (int k = 1; k <= t - w.t_min; ++k) {
                    const gf2::Subspace& zk = z.at(t - k);
                    if (zk.dim() == 0) continue;
                    const gf2::Matrix& act = lv.action(k).block(t - k);
                    for (int r = 0; r < zk.dim(); ++r)
                        rows.append_row(act.apply(zk.basis().row(r)));
                }
                chosen = gf2::quotient(zt, gf2::Subspace::span(rows)).reps;
            } else {
                chosen = zt.basis();
            }
            for (int r = 0; r < chosen.rows(); ++r) {
                gens.push_back(unstable::Generator{
                    "v" + std::to_string(s) + "_" + std::to_string(t) + "_" + std::to_string(r), t});
                imgs.push_back(chosen.row(r));
            }
        }
        cx.add_stage(std::make_unique<unstable::FreeModule>(std::move(gens), w), std::move(imgs));

        // The A-linear extension of the chosen generators must still span
        // the cycle spaces inside the window; a failure here means the
        // truncation cut off needed operations, so report it rather than
        // continue with a non-exact stage.
        const GradedMap& at = cx.attach(s);
        for (int t = w.t_min; t <= w.t_max; ++t) {
            const gf2::Subspace& zt = z.at(t);
            if (zt.dim() == 0) continue;
            gf2::Subspace im = gf2::Subspace::span(at.block(t).transpose());
            for (int r = 0; r < zt.dim(); ++r)
                if (!im.contains(zt.basis().row(r)))
                    throw TruncationError(s, t,
                                          "stage " + std::to_string(s) +
                                              " does not span its cycles in degree " +
                                              std::to_string(t) + " within the window");
        }
    }
    return CWResolution{std::move(base), std::move(cx), std::move(aug)};
}

}  // namespace adams::simplicial
