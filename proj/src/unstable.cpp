#include "adams/unstable.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace adams::unstable {

void FreeElement::add(const FreeTerm& t) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t);
    if (it != terms_.end() && *it == t)
        terms_.erase(it);
    else
        terms_.insert(it, t);
}

void FreeElement::operator+=(const FreeElement& e) {
    for (const FreeTerm& t : e.terms_)
        add(t);
}

int FreeElement::degree(const std::vector<Generator>& gens) const {
    if (terms_.empty())
        return -1;
    int d = terms_.front().op.degree() + gens.at(terms_.front().gen).degree;
    for (const FreeTerm& t : terms_)
        if (t.op.degree() + gens.at(t.gen).degree != d)
            throw std::invalid_argument("inhomogeneous element: " + str(gens));
    return d;
}

std::string FreeElement::str(const std::vector<Generator>& gens) const {
    if (terms_.empty())
        return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i)
            s += " + ";
        const FreeTerm& t = terms_[i];
        if (!t.op.sq.empty())
            s += t.op.str() + " ";
        s += gens.at(t.gen).name;
    }
    return s;
}

FreeModule::FreeModule(std::vector<Generator> gens, Window w) : gens_(std::move(gens)), window_(w) {
    for (int t = window_.t_min; t <= window_.t_max; ++t) {
        std::vector<FreeTerm> b;
        std::vector<int> off{0};
        for (int g = 0; g < static_cast<int>(gens_.size()); ++g) {
            int d = gens_[g].degree;
            if (t >= d)
                for (steenrod::Monomial& m : steenrod::basis_excess_at_most(t - d, d))
                    b.push_back(FreeTerm{std::move(m), g});
            off.push_back(static_cast<int>(b.size()));
        }
        offsets_.emplace(t, std::move(off));
        if (!b.empty()) {
            std::vector<std::string> labels;
            labels.reserve(b.size());
            for (const FreeTerm& term : b)
                labels.push_back(term.op.sq.empty() ? gens_[term.gen].name : term.op.str() + " " + gens_[term.gen].name);
            space_.set_dim(t, static_cast<int>(b.size()));
            space_.set_labels(t, std::move(labels));
            basis_.emplace(t, std::move(b));
        }
    }
}

int FreeModule::dim(int t) const { return space_.dim(t); }

const std::vector<FreeTerm>& FreeModule::basis(int t) const {
    static const std::vector<FreeTerm> empty;
    auto it = basis_.find(t);
    return it == basis_.end() ? empty : it->second;
}

int FreeModule::basis_offset(int gen, int t) const {
    auto it = offsets_.find(t);
    return it == offsets_.end() ? 0 : it->second.at(gen);
}

int FreeModule::basis_count(int gen, int t) const {
    auto it = offsets_.find(t);
    return it == offsets_.end() ? 0 : it->second.at(gen + 1) - it->second.at(gen);
}

int FreeModule::index_of(const FreeTerm& term) const {
    int t = term.op.degree() + gens_.at(term.gen).degree;
    const std::vector<FreeTerm>& b = basis(t);
    auto it = std::lower_bound(b.begin(), b.end(), term);
    if (it == b.end() || !(*it == term))
        return -1;
    return static_cast<int>(it - b.begin());
}

gf2::Vec FreeModule::coordinates(int t, const FreeElement& e) const {
    gf2::Vec v(dim(t));
    for (const FreeTerm& term : e.terms()) {
        int d = gens_.at(term.gen).degree;
        if (term.op.degree() + d != t)
            throw std::invalid_argument("element term has degree " + std::to_string(term.op.degree() + d) + ", expected " + std::to_string(t));
        steenrod::Element reduced = steenrod::adem_reduce(term.op);
        for (const steenrod::Monomial& m : reduced.terms()) {
            if (m.excess() > d)
                continue;  // zero in the free unstable module
            int idx = index_of(FreeTerm{m, term.gen});
            if (idx >= 0)
                v.flip(idx);
        }
    }
    return v;
}

FreeElement FreeModule::element_of(int t, const gf2::Vec& coords) const {
    const std::vector<FreeTerm>& b = basis(t);
    FreeElement e;
    for (int i = 0; i < static_cast<int>(b.size()); ++i)
        if (coords.get(i))
            e.add(b[i]);
    return e;
}

const GradedMap& FreeModule::action(int k) const {
    if (k < 1)
        throw std::invalid_argument("action exponent must be positive");
    std::lock_guard<std::mutex> lock(action_mutex_);
    auto it = actions_.find(k);
    if (it != actions_.end())
        return it->second;
    GradedMap map(space_, space_, k);
    for (int t = window_.t_min; t + k <= window_.t_max; ++t) {
        int n = dim(t), m = dim(t + k);
        if (n == 0 || m == 0)
            continue;
        gf2::Matrix block(m, n);
        const std::vector<FreeTerm>& b = basis(t);
        for (int j = 0; j < n; ++j) {
            steenrod::Monomial word{std::vector<int>{k}};
            gf2::Vec col = coordinates(t + k, FreeElement(FreeTerm{word.concat(b[j].op), b[j].gen}));
            for (int r = 0; r < m; ++r)
                if (col.get(r))
                    block.set(r, j, true);
        }
        map.set_block(t, std::move(block));
    }
    return actions_.emplace(k, std::move(map)).first->second;
}

Module::Module(std::vector<Generator> gens, std::vector<FreeElement> relations, Window w)
    : gens_(std::move(gens)), relations_(std::move(relations)), window_(w) {
    int t_lo = window_.t_min;
    for (const Generator& g : gens_)
        t_lo = std::min(t_lo, g.degree);
    ambient_ = std::make_shared<FreeModule>(gens_, Window{t_lo, window_.t_max});

    // Bucket relation vectors by degree (homogeneity is enforced here).
    std::map<int, std::vector<gf2::Vec>> rel_rows;
    for (const FreeElement& r : relations_) {
        if (r.is_zero())
            continue;
        int d = r.degree(gens_);
        if (d > window_.t_max)
            continue;
        rel_rows[d].push_back(ambient_->coordinates(d, r));
    }

    // Close the relation span under the Sq^k actions, bottom degree up.
    for (int t = t_lo; t <= window_.t_max; ++t) {
        int n = ambient_->dim(t);
        gf2::Matrix rows(0, n);
        if (auto it = rel_rows.find(t); it != rel_rows.end())
            for (const gf2::Vec& v : it->second)
                rows.append_row(v);
        for (int k = 1; t - k >= t_lo; ++k) {
            auto lower = relation_span_.find(t - k);
            if (lower == relation_span_.end() || lower->second.dim() == 0)
                continue;
            const gf2::Matrix& block = ambient_->action(k).block(t - k);
            for (int r = 0; r < lower->second.dim(); ++r)
                rows.append_row(block.apply(lower->second.basis().row(r)));
        }
        gf2::Subspace span = gf2::Subspace::span(rows);
        gf2::QuotientBasis q = gf2::quotient(gf2::Subspace::full(n), span);
        if (q.dim() > 0) {
            std::vector<std::string> labels;
            const std::vector<std::string>& amb = ambient_->space().labels(t);
            for (int r = 0; r < q.dim(); ++r) {
                std::string s;
                for (int c = 0; c < n; ++c)
                    if (q.reps.get(r, c))
                        s += (s.empty() ? "" : " + ") + amb.at(c);
                labels.push_back(std::move(s));
            }
            space_.set_dim(t, q.dim());
            space_.set_labels(t, std::move(labels));
        }
        relation_span_.emplace(t, std::move(span));
        quotients_.emplace(t, std::move(q));
    }
}

int Module::dim(int t) const { return space_.dim(t); }

const gf2::Subspace& Module::relation_span(int t) const {
    static const gf2::Subspace empty;
    auto it = relation_span_.find(t);
    return it == relation_span_.end() ? empty : it->second;
}

const gf2::Matrix& Module::reps(int t) const {
    static const gf2::Matrix empty;
    auto it = quotients_.find(t);
    return it == quotients_.end() ? empty : it->second.reps;
}

gf2::Vec Module::project(int t, const gf2::Vec& ambient_coords) const {
    auto it = quotients_.find(t);
    if (it == quotients_.end())
        return gf2::Vec(0);
    return gf2::quotient_coordinates(it->second, relation_span(t), ambient_coords);
}

gf2::Vec Module::lift(int t, const gf2::Vec& class_coords) const {
    gf2::Vec v(ambient_->dim(t));
    const gf2::Matrix& r = reps(t);
    for (int i = 0; i < r.rows(); ++i)
        if (class_coords.get(i))
            v ^= r.row(i);
    return v;
}

const GradedMap& Module::action(int k) const {
    if (k < 1)
        throw std::invalid_argument("action exponent must be positive");
    std::lock_guard<std::mutex> lock(action_mutex_);
    auto it = actions_.find(k);
    if (it != actions_.end())
        return it->second;
    GradedMap map(space_, space_, k);
    for (int t = window_.t_min; t + k <= window_.t_max; ++t) {
        int n = dim(t), m = dim(t + k);
        if (n == 0 || m == 0)
            continue;
        gf2::Matrix block(m, n);
        const gf2::Matrix& amb_block = ambient_->action(k).block(t);
        for (int j = 0; j < n; ++j) {
            gf2::Vec col = project(t + k, amb_block.apply(reps(t).row(j)));
            for (int r = 0; r < m; ++r)
                if (col.get(r))
                    block.set(r, j, true);
        }
        map.set_block(t, std::move(block));
    }
    return actions_.emplace(k, std::move(map)).first->second;
}

Presentation sphere_presentation(int n) {
    if (n < 1)
        throw std::invalid_argument("sphere dimension must be positive");
    Presentation p;
    p.name = "sphere" + std::to_string(n);
    p.generators.push_back(Generator{"i" + std::to_string(n), n});
    for (int k = 1; k <= n; ++k)
        p.relations.push_back(FreeElement(FreeTerm{steenrod::Monomial{{k}}, 0}));
    return p;
}

Module sphere_module(int n, Window w) { return sphere_presentation(n).expand(w); }

Presentation moore_presentation(int n) {
    if (n < 2)
        throw std::invalid_argument("moore_module requires degree >= 2");
    Presentation p;
    p.name = "moore" + std::to_string(n);
    p.generators.push_back(Generator{"x", n});
    p.generators.push_back(Generator{"y", n + 1});
    FreeElement sq1x(FreeTerm{steenrod::Monomial{{1}}, 0});
    sq1x.add(FreeTerm{steenrod::Monomial{}, 1});
    p.relations.push_back(sq1x);  // Sq^1 x = y
    for (int k = 2; k <= n; ++k)
        p.relations.push_back(FreeElement(FreeTerm{steenrod::Monomial{{k}}, 0}));
    for (int k = 1; k <= n + 1; ++k)
        p.relations.push_back(FreeElement(FreeTerm{steenrod::Monomial{{k}}, 1}));
    return p;
}

Module moore_module(int n, Window w) { return moore_presentation(n).expand(w); }

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (tok[0] == '#')
            break;
        out.push_back(tok);
    }
    return out;
}

steenrod::Monomial parse_word(const std::string& tok, int line) {
    try {
        return steenrod::Monomial::parse(tok);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
    }
}

}  // namespace

Presentation parse_presentation(std::istream& in) {
    Presentation p;
    std::map<std::string, int> gen_index;
    std::set<std::pair<int, int>> listed;  // (generator, k) pairs seen on a lhs
    std::string line;
    int lineno = 0;
    bool saw_module = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::string> tok = tokenize(line);
        if (tok.empty())
            continue;
        if (tok[0] == "module") {
            if (tok.size() != 2)
                throw ParseError(lineno, "expected: module <name>");
            if (saw_module)
                throw ParseError(lineno, "duplicate module line");
            saw_module = true;
            p.name = tok[1];
        } else if (tok[0] == "generator") {
            if (tok.size() != 3)
                throw ParseError(lineno, "expected: generator <name> <degree>");
            if (gen_index.count(tok[1]))
                throw ParseError(lineno, "duplicate generator '" + tok[1] + "'");
            int d;
            try {
                d = std::stoi(tok[2]);
            } catch (const std::exception&) {
                throw ParseError(lineno, "bad degree '" + tok[2] + "'");
            }
            if (d < 1)
                throw ParseError(lineno, "generator degree must be positive");
            gen_index[tok[1]] = static_cast<int>(p.generators.size());
            p.generators.push_back(Generator{tok[1], d});
        } else if (tok[0] == "action") {
            if (tok.size() < 5 || tok[3] != "=")
                throw ParseError(lineno, "expected: action Sq<k> <gen> = <term> { + <term> }");
            steenrod::Monomial lhs_word = parse_word(tok[1], lineno);
            if (lhs_word.sq.empty())
                throw ParseError(lineno, "left-hand side must apply at least one operation");
            if (!lhs_word.admissible())
                throw ParseError(lineno, "left-hand word " + tok[1] + " is not admissible");
            auto git = gen_index.find(tok[2]);
            if (git == gen_index.end())
                throw ParseError(lineno, "unknown generator '" + tok[2] + "'");
            int lhs_gen = git->second;
            int degree = lhs_word.degree() + p.generators[lhs_gen].degree;
            if (lhs_word.sq.size() == 1) {
                if (!listed.insert({lhs_gen, lhs_word.sq[0]}).second)
                    throw ParseError(lineno, "duplicate action for Sq" + std::to_string(lhs_word.sq[0]) + " " + tok[2]);
            }

            FreeElement rel(FreeTerm{lhs_word, lhs_gen});
            // Right-hand side: '+'-separated terms, each `0`, `<gen>`, or
            // `Sq<...> <gen>`.
            std::vector<std::vector<std::string>> groups(1);
            for (std::size_t i = 4; i < tok.size(); ++i) {
                if (tok[i] == "+")
                    groups.emplace_back();
                else
                    groups.back().push_back(tok[i]);
            }
            for (const std::vector<std::string>& g : groups) {
                if (g.empty())
                    throw ParseError(lineno, "empty term on right-hand side");
                if (g.size() == 1 && g[0] == "0")
                    continue;
                steenrod::Monomial word;
                std::string gen_name;
                if (g.size() == 1) {
                    gen_name = g[0];
                } else if (g.size() == 2) {
                    word = parse_word(g[0], lineno);
                    gen_name = g[1];
                } else {
                    throw ParseError(lineno, "term must be `<gen>`, `Sq<...> <gen>`, or `0`");
                }
                auto rit = gen_index.find(gen_name);
                if (rit == gen_index.end())
                    throw ParseError(lineno, "unknown generator '" + gen_name + "'");
                if (word.degree() + p.generators[rit->second].degree != degree)
                    throw ParseError(lineno, "term degree mismatch: left side has degree " + std::to_string(degree));
                rel += FreeElement(FreeTerm{word, rit->second});
            }
            p.relations.push_back(std::move(rel));
        } else {
            throw ParseError(lineno, "unknown directive '" + tok[0] + "'");
        }
    }
    // Unlisted Sq^k actions on generators default to zero.
    for (int g = 0; g < static_cast<int>(p.generators.size()); ++g)
        for (int k = 1; k <= p.generators[g].degree; ++k)
            if (!listed.count({g, k}))
                p.relations.push_back(FreeElement(FreeTerm{steenrod::Monomial{{k}}, g}));
    return p;
}

Presentation parse_presentation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open module file: " + path);
    return parse_presentation(in);
}

namespace {

template <typename Target>
GradedMap extend_map_impl(const FreeModule& src, const Target& dst, const std::vector<gf2::Vec>& gen_images) {
    const std::vector<Generator>& gens = src.generators();
    if (gen_images.size() != gens.size())
        throw std::invalid_argument("extend_map: need one image per generator");
    for (std::size_t g = 0; g < gens.size(); ++g)
        if (gen_images[g].size() != dst.dim(gens[g].degree))
            throw std::invalid_argument("extend_map: image of '" + gens[g].name + "' has wrong dimension");
    GradedMap map(src.space(), dst.space(), 0);
    const Window& w = src.window();
    for (int t = w.t_min; t <= w.t_max; ++t) {
        int n = src.dim(t), m = dst.dim(t);
        if (n == 0)
            continue;
        gf2::Matrix block(m, n);
        for (int j = 0; j < n; ++j) {
            const FreeTerm& term = src.basis(t)[j];
            gf2::Vec v = gen_images[term.gen];
            int d = gens[term.gen].degree;
            for (auto it = term.op.sq.rbegin(); it != term.op.sq.rend(); ++it) {
                v = dst.action(*it).block(d).apply(v);
                d += *it;
            }
            for (int r = 0; r < m; ++r)
                if (v.get(r))
                    block.set(r, j, true);
        }
        map.set_block(t, std::move(block));
    }
    return map;
}

}  // namespace

GradedMap extend_map(const FreeModule& src, const FreeModule& dst, const std::vector<gf2::Vec>& gen_images) {
    return extend_map_impl(src, dst, gen_images);
}

GradedMap extend_map(const FreeModule& src, const Module& dst, const std::vector<gf2::Vec>& gen_images) {
    return extend_map_impl(src, dst, gen_images);
}

}  // namespace adams::unstable
