#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace exclusia::algebra {

// Polynomial in noncommuting generators 0, 1, ...; a word is a sequence of
// generator indices and the empty word is the identity.
class NcPoly {
public:
    using Word = std::vector<int>;

    NcPoly() = default;
    static NcPoly gen(int i) { return NcPoly(Word{i}, 1.0); }
    static NcPoly scalar(double c) { return NcPoly(Word{}, c); }

    NcPoly operator+(const NcPoly& o) const {
        NcPoly r = *this;
        for (const auto& [w, c] : o.terms_) r.terms_[w] += c;
        r.prune();
        return r;
    }
    NcPoly operator-(const NcPoly& o) const { return *this + o * -1.0; }
    NcPoly operator*(double s) const {
        NcPoly r;
        if (s == 0.0) return r;
        for (const auto& [w, c] : terms_) r.terms_[w] = c * s;
        return r;
    }
    friend NcPoly operator*(double s, const NcPoly& p) { return p * s; }
    NcPoly operator*(const NcPoly& o) const {
        NcPoly r;
        for (const auto& [w1, c1] : terms_)
            for (const auto& [w2, c2] : o.terms_) {
                Word w = w1;
                w.insert(w.end(), w2.begin(), w2.end());
                r.terms_[w] += c1 * c2;
            }
        r.prune();
        return r;
    }

    int degree() const {
        int d = 0;
        for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
        return d;
    }
    const std::map<Word, double>& terms() const { return terms_; }

private:
    NcPoly(Word w, double c) { if (c != 0.0) terms_[std::move(w)] = c; }
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = (std::abs(it->second) == 0.0) ? terms_.erase(it) : std::next(it);
    }
    std::map<Word, double> terms_;
};

inline NcPoly comm(const NcPoly& x, const NcPoly& y) { return x * y - y * x; }
inline NcPoly anticomm(const NcPoly& x, const NcPoly& y) { return x * y + y * x; }
// q^{1/2} xy - q^{-1/2} yx
inline NcPoly qcomm(const NcPoly& x, const NcPoly& y, double q) {
    return std::sqrt(q) * (x * y) - (1.0 / std::sqrt(q)) * (y * x);
}

}  // namespace exclusia::algebra
