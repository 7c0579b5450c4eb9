// ring.cpp

#include "hfl/ring.hpp"
#include "hfl/errors.hpp"

#include <algorithm>
#include <sstream>

namespace hfl {

bool TruncatedRing::alive(Mono m) const {
    for (int i = 0; i < p; ++i)
        if (exp(m, i) >= delta) return false;
    return true;
}

int TruncatedRing::degree(Mono m) const {
    int d = 0;
    for (int i = 0; i < p; ++i) d += exp(m, i);
    return d;
}

std::size_t TruncatedRing::basis_size() const {
    std::size_t n = 1;
    for (int i = 0; i < p; ++i) n *= std::size_t(delta);
    return n;
}

Mono TruncatedRing::basis_mono(std::size_t idx) const {
    Mono m = 0;
    for (int i = 0; i < p; ++i) {
        m |= unit(i, int(idx % delta));
        idx /= delta;
    }
    return m;
}

std::size_t TruncatedRing::basis_index(Mono m) const {
    std::size_t idx = 0;
    for (int i = p - 1; i >= 0; --i) idx = idx * delta + exp(m, i);
    return idx;
}

void TruncatedRing::check() const {
    if (p < 0 || p > kMaxVars) throw ValidationError("ring: number of variables must be in [0, 8]");
    if (delta < 1 || delta > kMaxDelta) throw ValidationError("ring: delta must be in [1, 64]");
}

void poly_add(std::vector<Mono>& a, const std::vector<Mono>& b) {
    if (b.empty()) return;
    std::vector<Mono> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) out.push_back(a[i++]);
        else if (b[j] < a[i]) out.push_back(b[j++]);
        else { ++i; ++j; }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    a.swap(out);
}

std::vector<Mono> poly_mul(const TruncatedRing& r, const std::vector<Mono>& a, const std::vector<Mono>& b) {
    std::vector<Mono> out;
    if (a.empty() || b.empty()) return out;
    if (a.size() == 1 && a[0] == 0) return b;
    if (b.size() == 1 && b[0] == 0) return a;
    out.reserve(a.size() * b.size());
    for (Mono x : a)
        for (Mono y : b) {
            Mono z = x + y;
            if (r.alive(z)) out.push_back(z);
        }
    std::sort(out.begin(), out.end());
    // pairs cancel in characteristic two
    std::size_t w = 0;
    for (std::size_t i = 0; i < out.size();) {
        std::size_t j = i;
        while (j < out.size() && out[j] == out[i]) ++j;
        if ((j - i) & 1) out[w++] = out[i];
        i = j;
    }
    out.resize(w);
    return out;
}

RingElement::RingElement(TruncatedRing r, std::vector<Mono> terms) : ring_(r) {
    std::sort(terms.begin(), terms.end());
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if (((j - i) & 1) && r.alive(terms[i])) terms_.push_back(terms[i]);
        i = j;
    }
}

RingElement RingElement::monomial(TruncatedRing r, Mono m) {
    RingElement e(r);
    if (r.alive(m)) e.terms_.push_back(m);
    return e;
}

RingElement& RingElement::operator+=(const RingElement& o) {
    if (!(o.ring_ == ring_)) throw ValidationError("ring mismatch in addition");
    poly_add(terms_, o.terms_);
    return *this;
}

RingElement RingElement::operator+(const RingElement& o) const {
    RingElement r = *this;
    r += o;
    return r;
}

RingElement RingElement::operator*(const RingElement& o) const {
    if (!(o.ring_ == ring_)) throw ValidationError("ring mismatch in multiplication");
    RingElement r(ring_);
    r.terms_ = poly_mul(ring_, terms_, o.terms_);
    return r;
}

RingElement RingElement::truncate(TruncatedRing r) const {
    RingElement e(r);
    for (Mono m : terms_)
        if (r.alive(m)) e.terms_.push_back(m);
    return e;
}

std::string RingElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        if (k) os << "+";
        Mono m = terms_[k];
        if (m == 0) { os << "1"; continue; }
        bool first = true;
        for (int i = 0; i < ring_.p; ++i) {
            int e = ring_.exp(m, i);
            if (!e) continue;
            if (!first) os << "*";
            first = false;
            os << "U" << (i + 1);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

RMat RMat::identity(TruncatedRing r, int n) {
    RMat m(r, n, n);
    for (int i = 0; i < n; ++i) m.col_[i].push_back({i, RingElement::one(r)});
    return m;
}

RingElement RMat::at(int r, int c) const {
    const auto& v = col_[c];
    auto it = std::lower_bound(v.begin(), v.end(), r, [](const Entry& e, int x) { return e.row < x; });
    if (it != v.end() && it->row == r) return it->val;
    return RingElement(ring_);
}

void RMat::add(int r, int c, const RingElement& val) {
    if (val.zero()) return;
    auto& v = col_[c];
    auto it = std::lower_bound(v.begin(), v.end(), r, [](const Entry& e, int x) { return e.row < x; });
    if (it != v.end() && it->row == r) {
        it->val += val;
        if (it->val.zero()) v.erase(it);
    } else {
        v.insert(it, Entry{r, val});
    }
}

void RMat::add_mono(int r, int c, Mono m) { add(r, c, RingElement::monomial(ring_, m)); }

bool RMat::zero() const {
    for (const auto& v : col_)
        if (!v.empty()) return false;
    return true;
}

std::size_t RMat::nnz() const {
    std::size_t n = 0;
    for (const auto& v : col_) n += v.size();
    return n;
}

RMat RMat::operator*(const RMat& o) const {
    if (cols_ != o.rows_) throw ValidationError("matrix shape mismatch in product");
    if (!(ring_ == o.ring_)) throw ValidationError("ring mismatch in matrix product");
    RMat out(ring_, rows_, o.cols_);
    std::vector<std::vector<Mono>> acc(rows_);
    std::vector<char> seen(rows_, 0);
    std::vector<int> touched;
    for (int j = 0; j < o.cols_; ++j) {
        touched.clear();
        for (const Entry& b : o.col_[j])
            for (const Entry& a : col_[b.row]) {
                if (!seen[a.row]) { seen[a.row] = 1; touched.push_back(a.row); }
                poly_add(acc[a.row], poly_mul(ring_, a.val.terms(), b.val.terms()));
            }
        std::sort(touched.begin(), touched.end());
        for (int r : touched) {
            if (!acc[r].empty()) {
                out.col_[j].push_back({r, RingElement(ring_, std::move(acc[r]))});
            }
            acc[r].clear();
            seen[r] = 0;
        }
    }
    return out;
}

RMat& RMat::operator+=(const RMat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("matrix shape mismatch in sum");
    for (int j = 0; j < cols_; ++j)
        for (const Entry& e : o.col_[j]) add(e.row, j, e.val);
    return *this;
}

RMat RMat::operator+(const RMat& o) const {
    RMat r = *this;
    r += o;
    return r;
}

bool RMat::operator==(const RMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (int j = 0; j < cols_; ++j) {
        if (col_[j].size() != o.col_[j].size()) return false;
        for (std::size_t k = 0; k < col_[j].size(); ++k)
            if (col_[j][k].row != o.col_[j][k].row || col_[j][k].val != o.col_[j][k].val) return false;
    }
    return true;
}

RMat RMat::block(int r0, int nr, int c0, int nc) const {
    RMat out(ring_, nr, nc);
    for (int j = 0; j < nc; ++j)
        for (const Entry& e : col_[c0 + j])
            if (e.row >= r0 && e.row < r0 + nr) out.col_[j].push_back({e.row - r0, e.val});
    return out;
}

void RMat::place(const RMat& m, int r0, int c0) {
    for (int j = 0; j < m.cols_; ++j)
        for (const Entry& e : m.col_[j]) add(r0 + e.row, c0 + j, e.val);
}

RMat RMat::truncate(TruncatedRing r) const {
    RMat out(r, rows_, cols_);
    for (int j = 0; j < cols_; ++j)
        for (const Entry& e : col_[j]) {
            RingElement v = e.val.truncate(r);
            if (!v.zero()) out.col_[j].push_back({e.row, std::move(v)});
        }
    return out;
}

std::pair<int, int> RMat::first_nonzero() const {
    for (int j = 0; j < cols_; ++j)
        if (!col_[j].empty()) return {col_[j].front().row, j};
    return {-1, -1};
}

}  // namespace hfl
