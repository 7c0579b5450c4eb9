// spectral.cpp

#include "hfl/spectral.hpp"
#include "hfl/errors.hpp"

#include <algorithm>
#include <sstream>

namespace hfl {

std::string TowerProfile::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int k : lengths) {
        os << (first ? "" : ",") << k;
        first = false;
    }
    for (int i = 0; i < open; ++i) {
        os << (first ? "" : ",") << ">=" << horizon;
        first = false;
    }
    os << "}";
    return os.str();
}

TowerProfile infer_towers(const std::vector<std::size_t>& ranks, std::size_t factor) {
    if (factor == 0) throw ValidationError("infer_towers: factor must be positive");
    TowerProfile t;
    t.horizon = int(ranks.size());
    std::vector<long> count;  // count[i] = towers of length > i
    long prev = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (ranks[i] % factor) throw ValidationError("infer_towers: rank at delta " + std::to_string(i + 1) + " not divisible by factor");
        long f = long(ranks[i] / factor);
        long c = f - prev;
        if (c < 0 || (!count.empty() && c > count.back()))
            throw ValidationError("infer_towers: no tower profile fits the ranks (at delta " + std::to_string(i + 1) + ")");
        count.push_back(c);
        prev = f;
    }
    for (std::size_t i = 0; i + 1 < count.size(); ++i)
        for (long k = 0; k < count[i] - count[i + 1]; ++k) t.lengths.push_back(int(i + 1));
    t.open = count.empty() ? 0 : int(count.back());
    return t;
}

std::size_t predicted_rank(const TowerProfile& t, int delta, std::size_t factor) {
    std::size_t s = 0;
    for (int k : t.lengths) s += std::size_t(std::min(k, delta));
    s += std::size_t(t.open) * std::size_t(delta);
    return factor * s;
}

namespace {

struct Graded {
    const FlatComplex* f;
    std::vector<int> level;
    std::map<int, std::vector<std::size_t>> bucket;
    std::vector<std::size_t> local;

    int deg(std::size_t i) const { return f->graded ? f->grading[i] : 0; }
    int below(int k) const { return f->graded ? k - 1 : k; }
    int above(int k) const { return f->graded ? k + 1 : k; }
    const std::vector<std::size_t>& members(int k) const {
        static const std::vector<std::size_t> none;
        auto it = bucket.find(k);
        return it == bucket.end() ? none : it->second;
    }

    // {x in F_p, degree k : dx in F_{p-r}}, as bit vectors over bucket k.
    std::vector<std::vector<gf2::Word>> cycles(int k, int p, int r) const {
        const auto& src = members(k);
        const auto& tgt = members(below(k));
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < src.size(); ++i)
            if (level[src[i]] <= p) rows.push_back(i);
        std::vector<std::size_t> tcol(tgt.size(), gf2::kNpos);
        std::size_t nc = 0;
        for (std::size_t j = 0; j < tgt.size(); ++j)
            if (level[tgt[j]] > p - r) tcol[j] = nc++;
        gf2::BitMatrix m(rows.size(), nc);
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t t : f->image[src[rows[a]]]) {
                std::size_t c = tcol[local[t]];
                if (c != gf2::kNpos) m.set(a, c);
            }
        std::vector<std::vector<gf2::Word>> out;
        const std::size_t w = gf2::words_for(src.size());
        for (const auto& z : gf2::left_kernel(m)) {
            std::vector<gf2::Word> v(w, 0);
            for (std::size_t a = 0; a < rows.size(); ++a)
                if ((z[a >> 6] >> (a & 63)) & 1) v[rows[a] >> 6] |= gf2::Word(1) << (rows[a] & 63);
            out.push_back(std::move(v));
        }
        return out;
    }

    std::vector<gf2::Word> boundary(int k, const std::vector<gf2::Word>& x) const {
        const auto& src = members(k);
        const auto& tgt = members(below(k));
        std::vector<gf2::Word> v(gf2::words_for(tgt.size()), 0);
        for (std::size_t i = 0; i < src.size(); ++i)
            if ((x[i >> 6] >> (i & 63)) & 1)
                for (std::size_t t : f->image[src[i]]) v[local[t] >> 6] ^= gf2::Word(1) << (local[t] & 63);
        return v;
    }
};

}  // namespace

SpectralPages spectral_sequence(const FilteredComplex& fc) {
    const GradedComplex& c = fc.base;
    if (int(fc.level.size()) != c.size()) throw ValidationError("filtered complex: one level per generator required");
    for (int s = 0; s < c.size(); ++s)
        for (const auto& e : c.d.col(s))
            if (fc.level[e.row] > fc.level[s])
                throw ValidationError("filtered complex: differential raises level at " + c.name(s) + " -> " + c.name(e.row));
    c.require_square_zero();
    FlatComplex f = flatten(c);
    Graded g;
    g.f = &f;
    const std::size_t B = c.ring.basis_size();
    g.level.resize(f.dim);
    g.local.resize(f.dim);
    for (std::size_t i = 0; i < f.dim; ++i) {
        g.level[i] = fc.level[i / B];
        auto& v = g.bucket[g.deg(i)];
        g.local[i] = v.size();
        v.push_back(i);
    }
    SpectralPages out;
    if (f.dim == 0) return out;
    int pmin = *std::min_element(fc.level.begin(), fc.level.end());
    int pmax = *std::max_element(fc.level.begin(), fc.level.end());
    int R = pmax - pmin + 2;
    for (int r = 0; r <= R; ++r) {
        std::map<int, std::size_t> page;
        for (const auto& [k, mem] : g.bucket) {
            std::size_t tot = 0;
            for (int p = pmin; p <= pmax; ++p) {
                auto zr = g.cycles(k, p, r);
                gf2::Echelon e(mem.size());
                for (const auto& v : g.cycles(k, p - 1, r - 1)) e.insert(v.data());
                int up = g.above(k);
                if (g.bucket.count(up))
                    for (const auto& y : g.cycles(up, p + r - 1, r - 1)) {
                        auto by = g.boundary(up, y);
                        e.insert(by.data());
                    }
                std::size_t lower = e.dim();
                for (const auto& v : zr) e.insert(v.data());
                tot += e.dim() - lower;
            }
            page[k] = tot;
        }
        out.pages.push_back(std::move(page));
    }
    out.infinity = out.pages.back();
    out.total_homology = homology_ranks(f);
    return out;
}

}  // namespace hfl
