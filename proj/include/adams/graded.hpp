#pragma once

// Graded vector spaces over GF(2) and degree-homogeneous maps between them.
//
// A GradedSpace is a finite family of GF(2) spaces indexed by an integer
// internal degree, with optional basis labels.  A GradedMap of shift s
// sends degree t to degree t+s and stores one dense block per source
// degree.  All computations are windowed: a Window [t_min, t_max] travels
// with every derived result so truncation is never implicit.

#include "adams/gf2.hpp"

#include <map>
#include <string>
#include <vector>

namespace adams {

struct Window {
    int t_min = 0;
    int t_max = 0;
    bool contains(int t) const { return t >= t_min && t <= t_max; }
};

class GradedSpace {
public:
    GradedSpace() = default;

    int dim(int t) const {
        auto it = dims_.find(t);
        return it == dims_.end() ? 0 : it->second;
    }
    void set_dim(int t, int d);
    int total_dim() const;
    int total_dim(const Window& w) const;

    const std::map<int, int>& dims() const { return dims_; }

    const std::vector<std::string>& labels(int t) const;
    void set_labels(int t, std::vector<std::string> labels);
    bool has_labels(int t) const { return labels_.count(t) != 0; }

    bool operator==(const GradedSpace& o) const { return dims_ == o.dims_; }

private:
    std::map<int, int> dims_;
    std::map<int, std::vector<std::string>> labels_;
    static const std::vector<std::string> kNoLabels;
};

class GradedMap {
public:
    GradedMap() = default;
    GradedMap(GradedSpace source, GradedSpace target, int degree_shift);

    const GradedSpace& source() const { return source_; }
    const GradedSpace& target() const { return target_; }
    int degree_shift() const { return shift_; }

    // Block acting on source degree t; shape dim_target(t+shift) x dim_source(t).
    // Absent blocks read as zero.
    const gf2::Matrix& block(int t) const;
    void set_block(int t, gf2::Matrix m);
    bool has_block(int t) const { return blocks_.count(t) != 0; }
    const std::map<int, gf2::Matrix>& blocks() const { return blocks_; }

    gf2::Vec apply(int t, const gf2::Vec& x) const;

    // Composition other∘this (apply this first).
    GradedMap then(const GradedMap& other) const;
    GradedMap operator+(const GradedMap& other) const;
    bool is_zero(const Window& w) const;

    std::map<int, int> rank_per_degree(const Window& w) const;

private:
    GradedSpace source_, target_;
    int shift_ = 0;
    std::map<int, gf2::Matrix> blocks_;
    mutable std::map<int, gf2::Matrix> zero_cache_;
};

// Identity map of shift 0 on a space.
GradedMap graded_identity(const GradedSpace& s);

// Kernel and image of a graded map restricted to a window; one subspace per
// source degree (kernel) / target degree (image).
std::map<int, gf2::Subspace> graded_kernel(const GradedMap& f, const Window& w);
std::map<int, gf2::Subspace> graded_image(const GradedMap& f, const Window& w);

// Homology at the middle space of d_in: A -> B, d_out: B -> C, degreewise
// over the window.  Throws std::invalid_argument if the composite is not
// zero on the window.
struct GradedHomology {
    Window window;
    std::map<int, gf2::Subspace> cycles;      // per degree of B
    std::map<int, gf2::Subspace> boundaries;  // per degree of B
    std::map<int, gf2::QuotientBasis> reps;   // canonical class representatives
    int dim(int t) const {
        auto it = reps.find(t);
        return it == reps.end() ? 0 : it->second.dim();
    }
    int total_dim() const;
};
GradedHomology graded_homology(const GradedMap& d_in, const GradedMap& d_out, const Window& w);

}  // namespace adams
