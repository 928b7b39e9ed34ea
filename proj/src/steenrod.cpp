#include "adams/steenrod.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace adams::steenrod {

int Monomial::degree() const { return std::accumulate(sq.begin(), sq.end(), 0); }

int Monomial::excess() const {
    if (sq.empty())
        return 0;
    int tail = std::accumulate(sq.begin() + 1, sq.end(), 0);
    return sq.front() - tail;
}

bool Monomial::admissible() const {
    for (std::size_t i = 0; i + 1 < sq.size(); ++i)
        if (sq[i] < 2 * sq[i + 1])
            return false;
    return true;
}

Monomial Monomial::concat(const Monomial& rhs) const {
    Monomial out = *this;
    out.sq.insert(out.sq.end(), rhs.sq.begin(), rhs.sq.end());
    return out;
}

std::string Monomial::str() const {
    if (sq.empty())
        return "1";
    std::string s;
    for (int i : sq)
        s += "Sq" + std::to_string(i);
    return s;
}

Monomial Monomial::parse(const std::string& s) {
    if (s == "1")
        return Monomial{};
    if (s.empty())
        throw std::invalid_argument("bad monomial '': empty input");
    Monomial m;
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (s.compare(pos, 2, "Sq") != 0)
            throw std::invalid_argument("bad monomial '" + s + "': expected 'Sq' at position " + std::to_string(pos));
        pos += 2;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (start == pos)
            throw std::invalid_argument("bad monomial '" + s + "': missing exponent");
        int v = std::stoi(s.substr(start, pos - start));
        if (v <= 0)
            throw std::invalid_argument("bad monomial '" + s + "': exponents must be positive");
        m.sq.push_back(v);
    }
    return m;
}

int Element::degree() const { return terms_.empty() ? -1 : terms_.front().degree(); }

void Element::add(const Monomial& m) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m);
    if (it != terms_.end() && *it == m)
        terms_.erase(it);
    else
        terms_.insert(it, m);
}

void Element::operator+=(const Element& e) {
    for (const Monomial& m : e.terms_)
        add(m);
}

std::string Element::str() const {
    if (terms_.empty())
        return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i)
            s += " + ";
        s += terms_[i].str();
    }
    return s;
}

bool binom_mod2(long long m, long long n) {
    if (n < 0 || n > m)
        return false;
    // binom(m, n) is odd iff n and m-n share no binary digit.
    return ((m - n) & n) == 0;
}

namespace {

// Single Adem expansion of an inadmissible pair (a, b), a < 2b.  Each
// result entry is (p, q); q == 0 encodes the lone factor Sq^p.
const std::vector<std::pair<int, int>>& adem_pair(int a, int b) {
    static std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> memo;
    static std::mutex memo_mutex;
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto key = std::make_pair(a, b);
    auto it = memo.find(key);
    if (it != memo.end())
        return it->second;
    std::vector<std::pair<int, int>> out;
    for (int c = 0; c <= a / 2; ++c)
        if (binom_mod2(b - c - 1, a - 2 * c))
            out.emplace_back(a + b - c, c);
    return memo.emplace(key, std::move(out)).first->second;
}

}  // namespace

Element adem_reduce(const Monomial& word) {
    Element result;
    std::vector<std::vector<int>> work{word.sq};
    while (!work.empty()) {
        std::vector<int> w = std::move(work.back());
        work.pop_back();

        // Leftmost inadmissible pair, if any.
        std::size_t bad = w.size();
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] < 2 * w[i + 1]) {
                bad = i;
                break;
            }
        if (bad == w.size()) {
            result.add(Monomial{std::move(w)});
            continue;
        }
        for (auto [p, q] : adem_pair(w[bad], w[bad + 1])) {
            std::vector<int> nw;
            nw.reserve(w.size());
            nw.insert(nw.end(), w.begin(), w.begin() + bad);
            nw.push_back(p);
            if (q > 0)
                nw.push_back(q);
            nw.insert(nw.end(), w.begin() + bad + 2, w.end());
            work.push_back(std::move(nw));
        }
    }
    return result;
}

Element multiply(const Element& a, const Element& b) {
    Element out;
    for (const Monomial& ma : a.terms())
        for (const Monomial& mb : b.terms())
            out += adem_reduce(ma.concat(mb));
    return out;
}

namespace {

// Admissible sequences of total degree d whose leading exponent is at most
// cap, emitted in lexicographic order.
void enumerate_admissible(int d, int cap, std::vector<int>& prefix, std::vector<Monomial>& out) {
    if (d == 0) {
        out.push_back(Monomial{prefix});
        return;
    }
    for (int a = 1; a <= std::min(d, cap); ++a) {
        prefix.push_back(a);
        enumerate_admissible(d - a, a / 2, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Monomial> basis(int degree) {
    if (degree < 0)
        return {};
    std::vector<Monomial> out;
    std::vector<int> prefix;
    enumerate_admissible(degree, degree, prefix, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> basis_excess_at_most(int degree, int max_excess) {
    std::vector<Monomial> out;
    for (Monomial& m : basis(degree))
        if (m.excess() <= max_excess)
            out.push_back(std::move(m));
    return out;
}

}  // namespace adams::steenrod
