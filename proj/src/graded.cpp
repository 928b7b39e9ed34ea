#include "adams/graded.hpp"

#include <stdexcept>

namespace adams {

const std::vector<std::string> GradedSpace::kNoLabels;

void GradedSpace::set_dim(int t, int d) {
    if (d < 0)
        throw std::invalid_argument("set_dim: negative dimension");
    if (d == 0)
        dims_.erase(t);
    else
        dims_[t] = d;
}

int GradedSpace::total_dim() const {
    int n = 0;
    for (auto& [t, d] : dims_)
        n += d;
    return n;
}

int GradedSpace::total_dim(const Window& w) const {
    int n = 0;
    for (auto& [t, d] : dims_)
        if (w.contains(t))
            n += d;
    return n;
}

const std::vector<std::string>& GradedSpace::labels(int t) const {
    auto it = labels_.find(t);
    return it == labels_.end() ? kNoLabels : it->second;
}

void GradedSpace::set_labels(int t, std::vector<std::string> labels) {
    if (int(labels.size()) != dim(t))
        throw std::invalid_argument("set_labels: label count != dimension");
    labels_[t] = std::move(labels);
}

GradedMap::GradedMap(GradedSpace source, GradedSpace target, int degree_shift)
    : source_(std::move(source)), target_(std::move(target)), shift_(degree_shift) {}

const gf2::Matrix& GradedMap::block(int t) const {
    auto it = blocks_.find(t);
    if (it != blocks_.end())
        return it->second;
    auto zit = zero_cache_.find(t);
    if (zit == zero_cache_.end())
        zit = zero_cache_.emplace(t, gf2::Matrix(target_.dim(t + shift_), source_.dim(t))).first;
    return zit->second;
}

void GradedMap::set_block(int t, gf2::Matrix m) {
    if (m.rows() != target_.dim(t + shift_) || m.cols() != source_.dim(t))
        throw std::invalid_argument("set_block: shape mismatch at degree " + std::to_string(t));
    blocks_[t] = std::move(m);
    zero_cache_.erase(t);
}

gf2::Vec GradedMap::apply(int t, const gf2::Vec& x) const { return block(t).apply(x); }

GradedMap GradedMap::then(const GradedMap& other) const {
    if (!(other.source_ == target_))
        throw std::invalid_argument("then: middle space mismatch");
    GradedMap out(source_, other.target_, shift_ + other.shift_);
    for (auto& [t, b] : blocks_) {
        gf2::Matrix composed = other.block(t + shift_) * b;
        if (!composed.is_zero())
            out.set_block(t, std::move(composed));
    }
    return out;
}

GradedMap GradedMap::operator+(const GradedMap& other) const {
    if (!(source_ == other.source_) || !(target_ == other.target_) || shift_ != other.shift_)
        throw std::invalid_argument("graded map sum: shape mismatch");
    GradedMap out(source_, target_, shift_);
    for (auto& [t, b] : blocks_)
        out.set_block(t, b);
    for (auto& [t, b] : other.blocks_) {
        if (out.has_block(t))
            out.set_block(t, out.block(t) + b);
        else
            out.set_block(t, b);
    }
    return out;
}

bool GradedMap::is_zero(const Window& w) const {
    for (auto& [t, b] : blocks_)
        if (w.contains(t) && !b.is_zero())
            return false;
    return true;
}

std::map<int, int> GradedMap::rank_per_degree(const Window& w) const {
    // Batch the per-degree blocks so the elimination can run in parallel.
    std::vector<int> degrees;
    std::vector<gf2::Matrix> mats;
    for (int t = w.t_min; t <= w.t_max; ++t) {
        if (source_.dim(t) == 0 || target_.dim(t + shift_) == 0)
            continue;
        degrees.push_back(t);
        mats.push_back(block(t));
    }
    auto elims = gf2::eliminate_batch(mats);
    std::map<int, int> out;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        out[degrees[i]] = elims[i].rank;
    return out;
}

GradedMap graded_identity(const GradedSpace& s) {
    GradedMap id(s, s, 0);
    for (const auto& [t, d] : s.dims()) id.set_block(t, gf2::Matrix::identity(d));
    return id;
}

std::map<int, gf2::Subspace> graded_kernel(const GradedMap& f, const Window& w) {
    std::map<int, gf2::Subspace> out;
    for (int t = w.t_min; t <= w.t_max; ++t) {
        int n = f.source().dim(t);
        if (n == 0)
            continue;
        out.emplace(t, gf2::Subspace::span(gf2::kernel(f.block(t))));
    }
    return out;
}

std::map<int, gf2::Subspace> graded_image(const GradedMap& f, const Window& w) {
    std::map<int, gf2::Subspace> out;
    for (int t = w.t_min; t <= w.t_max; ++t) {
        int m = f.target().dim(t + f.degree_shift());
        if (m == 0 || f.source().dim(t) == 0)
            continue;
        out.emplace(t + f.degree_shift(), gf2::Subspace::span(gf2::image(f.block(t))));
    }
    return out;
}

int GradedHomology::total_dim() const {
    int n = 0;
    for (auto& [t, q] : reps)
        n += q.dim();
    return n;
}

GradedHomology graded_homology(const GradedMap& d_in, const GradedMap& d_out, const Window& w) {
    if (!(d_in.target() == d_out.source()))
        throw std::invalid_argument("graded_homology: middle space mismatch");
    GradedMap composite = d_in.then(d_out);
    if (!composite.is_zero({w.t_min - d_in.degree_shift(), w.t_max}))
        throw std::invalid_argument("graded_homology: composite differential is nonzero");

    GradedHomology h;
    h.window = w;
    for (int t = w.t_min; t <= w.t_max; ++t) {
        int n = d_out.source().dim(t);
        if (n == 0)
            continue;
        gf2::Subspace cyc = gf2::Subspace::span(gf2::kernel(d_out.block(t)));
        gf2::Subspace bnd(n);
        int src_t = t - d_in.degree_shift();
        if (d_in.source().dim(src_t) > 0)
            bnd = gf2::Subspace::span(gf2::image(d_in.block(src_t)));
        h.reps[t] = gf2::quotient(cyc, bnd);
        h.cycles.emplace(t, std::move(cyc));
        h.boundaries.emplace(t, std::move(bnd));
    }
    return h;
}

}  // namespace adams
