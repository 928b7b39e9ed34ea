#pragma once

// Truncated simplicial objects in unstable modules and CW resolutions.
//
// A SimplicialModule is a finite truncation: graded levels V_0..V_N with
// degree-preserving faces d_i: V_n -> V_{n-1} and degeneracies
// s_j: V_n -> V_{n+1}, subject to the simplicial identities as far as they
// make sense inside the truncation.
//
// The structured case is a CWComplex: level n is free on one copy of the
// stage module V-bar_k for every monotone surjection [n] ->> [k], k <= n,
// and the whole object is determined by the stages together with attaching
// maps sending stage-n generators into the Moore cycles of level n-1.
// Faces and degeneracies are then forced blockwise: composing the indexing
// surjection with a coface either stays surjective (identity block to the
// relabelled copy), misses a positive value (zero), or misses 0, in which
// case the attaching map of that stage is applied and embedded along the
// stripped surjection.

#include "adams/graded.hpp"
#include "adams/unstable.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adams::simplicial {

// Monotone surjection [n] ->> [k], stored as its value list (size n+1).
// Monotone surjectivity is equivalent to values[0] = 0 with steps in {0,1}.
struct Surjection {
    std::vector<int> values;

    int source() const { return static_cast<int>(values.size()) - 1; }
    int target() const { return values.empty() ? -1 : values.back(); }
    bool is_identity() const { return source() == target(); }
    bool valid() const;
    std::string tag() const;  // dot-separated values, e.g. "0.0.1.2"

    static Surjection identity(int n);

    // this ∘ sigma_j : [source+1] ->> [target] (duplicate entry j).
    Surjection degenerate(int j) const;
    // this ∘ inner (inner.target() must equal source()).
    Surjection compose(const Surjection& inner) const;

    bool operator==(const Surjection& o) const { return values == o.values; }
    bool operator<(const Surjection& o) const { return values < o.values; }
};

// Factorization of sigma ∘ delta_i.  Dropping entry i of a monotone
// surjection either stays surjective or skips exactly one value, namely
// values[i]; in the latter case sigma ∘ delta_i = delta_missed ∘ stripped.
struct FaceFactor {
    bool surjective = false;
    Surjection onto;      // when surjective
    int missed = -1;      // otherwise: the unique value not attained
    Surjection stripped;  //   [n-1] ->> [k-1]
};
FaceFactor face_factor(const Surjection& s, int i);

// All monotone surjections [n] ->> [k] in lexicographic value order.
std::vector<Surjection> surjections(int n, int k);

struct SimplicialModule {
    Window window{0, -1};
    std::vector<GradedSpace> levels;
    // faces[n][i] : levels[n] -> levels[n-1] for n >= 1; faces[0] empty.
    std::vector<std::vector<GradedMap>> faces;
    // degens[n][j] : levels[n] -> levels[n+1] for n < top; degens[top] empty.
    std::vector<std::vector<GradedMap>> degens;

    int top_level() const { return static_cast<int>(levels.size()) - 1; }

    // Verify map shapes and every simplicial identity expressible within
    // the truncation; throws std::invalid_argument naming the first
    // failure.
    void check_identities() const;
};

// Degreewise intersection of face kernels at level n: chains skip d_0,
// cycles include it.  Every degree in the window gets an entry (possibly
// the zero subspace).  Level 0 chains are the whole level.
std::map<int, gf2::Subspace> moore_chains(const SimplicialModule& v, int n);
std::map<int, gf2::Subspace> moore_cycles(const SimplicialModule& v, int n);

// The Moore chain complex: C_n = ∩_{i>=1} ker d_i with differential d_0,
// expressed in chain coordinates.  diff[n] : spaces[n] -> spaces[n-1] for
// n >= 1; diff[0] is an empty placeholder.
struct MooreComplex {
    Window window{0, -1};
    std::vector<std::map<int, gf2::Subspace>> chains;
    std::vector<GradedSpace> spaces;
    std::vector<GradedMap> diff;
};
MooreComplex moore_complex(const SimplicialModule& v);

// Degenerate copies (k, sigma) with k < n indexing the latching object at
// level n, in the same order they occupy inside an assembled level.
std::vector<std::pair<int, Surjection>> degenerate_copies(int n);

class CWComplex {
public:
    explicit CWComplex(Window w) : window_(w) {}

    const Window& window() const { return window_; }
    int top_level() const { return static_cast<int>(bars_.size()) - 1; }

    // Append the next stage.  attach_gen_images holds, for each generator
    // of bar, its image coordinates in level(top) at the generator's
    // degree; images must land in the Moore cycles of the current top
    // level (checked; std::invalid_argument).  Must be empty for stage 0.
    void add_stage(std::unique_ptr<unstable::FreeModule> bar,
                   std::vector<gf2::Vec> attach_gen_images);

    const unstable::FreeModule& bar(int n) const { return *bars_.at(n); }
    const unstable::FreeModule& level(int n) const { return *levels_.at(n); }
    // Copies (k, sigma) assembling level n: k descending, sigma lex within
    // k; copy 0 is always (n, id).
    const std::vector<std::pair<int, Surjection>>& copies(int n) const { return copies_.at(n); }
    // Index of the first generator of copy c inside level(n)'s generator
    // list.
    int copy_gen_begin(int n, int c) const;
    // Basis column range {offset, length} of copy c at degree t.
    std::pair<int, int> copy_basis_range(int n, int c, int t) const;

    const GradedMap& face(int n, int i) const { return faces_.at(n).at(i); }
    const GradedMap& degeneracy(int n, int j) const { return degens_.at(n).at(j); }
    // A-linear extension of the stage-n attaching map, bar(n) -> level(n-1).
    const GradedMap& attach(int n) const { return attach_.at(n); }
    const std::vector<gf2::Vec>& attach_images(int n) const { return attach_images_.at(n); }

    // Moore cycles of level n (cached).  Level 0 reports the full level;
    // the kernel of an augmentation is the caller's business.
    const std::map<int, gf2::Subspace>& cycles(int n) const;

    SimplicialModule simplicial() const;

private:
    int copy_index(int n, int k, const Surjection& s) const;
    void build_face(int n, int i);
    void build_degeneracy(int n, int j);

    Window window_{0, -1};
    std::vector<std::unique_ptr<unstable::FreeModule>> bars_;
    std::vector<std::unique_ptr<unstable::FreeModule>> levels_;
    std::vector<std::vector<std::pair<int, Surjection>>> copies_;
    std::vector<std::vector<int>> copy_gen_begin_;  // per level, size copies+1
    std::vector<std::map<std::pair<int, std::vector<int>>, int>> copy_lookup_;
    std::vector<std::vector<GradedMap>> faces_;
    std::vector<std::vector<GradedMap>> degens_;
    std::vector<GradedMap> attach_;
    std::vector<std::vector<gf2::Vec>> attach_images_;
    mutable std::map<int, std::map<int, gf2::Subspace>> cycles_cache_;
};

// Raised when a requested stage cannot span the cycles it must kill inside
// the degree window (a truncation artifact, not a math failure).
struct TruncationError : std::runtime_error {
    int stage;
    int degree;
    TruncationError(int stage_, int degree_, const std::string& msg)
        : std::runtime_error(msg), stage(stage_), degree(degree_) {}
};

struct CWResolution {
    std::shared_ptr<unstable::Module> base;
    CWComplex complex;
    GradedMap augmentation;  // level(0) -> base quotient coordinates

    int max_s() const { return complex.top_level(); }
};

// Resolve the module presented by p by a CW object, up to simplicial level
// max_s and internal degree t_max.  Stage 0 is free on the presentation
// generators.  With minimal=true stage n >= 1 takes one generator per
// basis vector of Z_{n-1}/(A+ · Z_{n-1}) degree by degree (named
// v<stage>_<degree>_<index>); otherwise one generator per basis vector of
// Z_{n-1} itself.  Z_0 means ker(augmentation).
CWResolution cw_resolve(const unstable::Presentation& p, int max_s, int t_max,
                        bool minimal = true);

}  // namespace adams::simplicial
