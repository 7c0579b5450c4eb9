// songs.cpp

#include "hfl/songs.hpp"
#include "hfl/errors.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <sstream>

namespace hfl {

int Item::letter() const { return std::countr_zero(mask); }

Letters song_letters(const Song& s) {
    Letters m = 0;
    for (const Item& it : s) m |= it.mask;
    return m;
}

std::string song_str(const Song& s) {
    std::ostringstream os;
    os << "(";
    for (const Item& it : s) {
        if (!it.harmony) {
            os << it.letter() + 1;
            continue;
        }
        os << "{";
        bool first = true;
        for (Letters m = it.mask; m; m &= m - 1) {
            os << (first ? "" : ",") << std::countr_zero(m) + 1;
            first = false;
        }
        os << "}";
    }
    os << ")";
    return os.str();
}

SongSum::SongSum(Letters alphabet, std::vector<Song> songs) : alphabet_(alphabet) {
    for (const Song& s : songs) toggle(s);
}

void SongSum::toggle(const Song& s) {
    if (song_letters(s) & ~alphabet_) throw ValidationError("song " + song_str(s) + " uses letters outside the alphabet");
    auto [it, fresh] = songs_.insert(s);
    if (!fresh) songs_.erase(it);
}

SongSum& SongSum::operator+=(const SongSum& o) {
    if (o.alphabet_ & ~alphabet_) throw ValidationError("song sum: alphabet mismatch");
    for (const Song& s : o.songs_) toggle(s);
    return *this;
}

SongSum SongSum::operator+(const SongSum& o) const {
    SongSum r(alphabet_ | o.alphabet_);
    r += *this;
    r += o;
    return r;
}

SongSum SongSum::operator*(const SongSum& o) const {
    SongSum r(alphabet_ | o.alphabet_);
    for (const Song& a : songs_)
        for (const Song& b : o.songs_) {
            Song c = a;
            c.insert(c.end(), b.begin(), b.end());
            r.toggle(c);
        }
    return r;
}

SongSum SongSum::relabel(const std::vector<int>& map) const {
    auto mv = [&](Letters m) {
        Letters out = 0;
        for (; m; m &= m - 1) out |= Letters(1) << map.at(std::countr_zero(m));
        return out;
    };
    SongSum r(mv(alphabet_));
    for (Song s : songs_) {
        for (Item& it : s) it.mask = mv(it.mask);
        r.toggle(s);
    }
    return r;
}

std::string SongSum::str() const {
    if (songs_.empty()) return "0";
    std::string out;
    for (const Song& s : songs_) {
        if (!out.empty()) out += " + ";
        out += song_str(s);
    }
    return out;
}

SongSum parse_songs(const std::string& text, Letters alphabet) {
    SongSum out(alphabet);
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw ValidationError("cannot parse song at offset " + std::to_string(i) + ": " + why);
    };
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
    };
    skip();
    if (text.compare(i, std::string::npos, "0") == 0) return out;
    while (true) {
        skip();
        if (i >= text.size() || text[i] != '(') fail("expected '('");
        ++i;
        Song s;
        while (i < text.size() && text[i] != ')') {
            char ch = text[i];
            if (ch >= '1' && ch <= '9') {
                s.push_back(Item::note(ch - '1'));
                ++i;
            } else if (ch == '{') {
                ++i;
                Letters m = 0;
                while (i < text.size() && text[i] != '}') {
                    if (text[i] >= '1' && text[i] <= '9') {
                        Letters b = Letters(1) << (text[i] - '1');
                        if (m & b) fail("repeated letter in harmony");
                        m |= b;
                    } else if (text[i] != ',' && text[i] != ' ') {
                        fail("bad harmony character");
                    }
                    ++i;
                }
                if (i >= text.size()) fail("unterminated harmony");
                ++i;
                s.push_back(Item::chord(m));
            } else if (ch == ' ') {
                ++i;
            } else {
                fail(std::string("unexpected '") + ch + "'");
            }
        }
        if (i >= text.size()) fail("unterminated song");
        ++i;
        out.toggle(s);
        skip();
        if (i >= text.size()) break;
        if (text[i] != '+') fail("expected '+'");
        ++i;
    }
    return out;
}

namespace {

void ordered_partitions(Letters rest, std::vector<Letters>& cur, std::vector<std::vector<Letters>>& out) {
    if (!rest) {
        out.push_back(cur);
        return;
    }
    for (Letters b = rest; b; b = (b - 1) & rest) {
        cur.push_back(b);
        ordered_partitions(rest & ~b, cur, out);
        cur.pop_back();
    }
}

std::vector<Song> psi_item(const Item& it, int y) {
    const Item Y = Item::note(y);
    const Letters ybit = Letters(1) << y;
    if (!it.harmony) return {{it, Y, Item::chord(it.mask | ybit), Y, it}};
    if (!it.mask) return {{Y}};
    std::vector<std::vector<Letters>> parts;
    std::vector<Letters> cur;
    ordered_partitions(it.mask, cur, parts);
    std::vector<Song> out;
    for (const auto& p : parts) {
        Song s{Y};
        for (Letters b : p) {
            s.push_back(Item::chord(b | ybit));
            s.push_back(Y);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

SongSum psi(const SongSum& s, int y) {
    const Letters ybit = Letters(1) << y;
    if (s.alphabet() & ybit) throw ValidationError("psi: letter " + std::to_string(y + 1) + " already in the alphabet");
    SongSum out(s.alphabet() | ybit);
    for (const Song& song : s.songs())
        for (std::size_t i = 0; i < song.size(); ++i)
            for (const Song& mid : psi_item(song[i], y)) {
                Song t(song.begin(), song.begin() + i);
                t.insert(t.end(), mid.begin(), mid.end());
                t.insert(t.end(), song.begin() + i + 1, song.end());
                out.toggle(t);
            }
    return out;
}

const SongSum& symphony(int n) {
    static std::mutex mu;
    static std::map<int, SongSum> memo;
    if (n < 0 || n > 12) throw ValidationError("symphony: alphabet size out of range");
    std::lock_guard<std::mutex> lock(mu);
    if (memo.empty()) memo[0] = SongSum(0, {{Item::chord(0)}});
    int have = memo.rbegin()->first;
    for (int k = have + 1; k <= n; ++k) memo[k] = psi(memo[k - 1], k - 1);
    return memo.at(n);
}

SongSum symphony(Letters alphabet) {
    std::vector<int> map;
    for (Letters m = alphabet; m; m &= m - 1) map.push_back(std::countr_zero(m));
    return symphony(int(map.size())).relabel(map);
}

bool satisfies_h1(const Song& s, int n) {
    int k = 0, l = 0, h = 0;
    for (const Item& it : s) {
        if (it.harmony) {
            ++l;
            h += std::popcount(it.mask);
        } else {
            ++k;
        }
    }
    return k == 2 * n + l - 1 && h == n + l - 1;
}

Collection::Collection(TruncatedRing r, int letters_, int dim_) : ring(r), letters(letters_), dim(dim_) {
    if (letters < 0 || letters > 16) throw ValidationError("collection: too many letters");
    A.assign(std::size_t(1) << letters, RMat(r, dim, dim));
}

std::optional<Letters> Collection::relation_defect() const {
    for (Letters Z = 0; Z < (Letters(1) << letters); ++Z) {
        RMat acc(ring, dim, dim);
        for (Letters B = Z;; B = (B - 1) & Z) {
            acc += A[B] * A[Z & ~B];
            if (!B) break;
        }
        if (!acc.zero()) return Z;
    }
    return std::nullopt;
}

Collection Collection::restrict_to(Letters Z) const {
    std::vector<int> pos;
    for (Letters m = Z; m; m &= m - 1) pos.push_back(std::countr_zero(m));
    Collection out(ring, int(pos.size()), dim);
    for (Letters W = 0; W < (Letters(1) << pos.size()); ++W) {
        Letters full = 0;
        for (std::size_t k = 0; k < pos.size(); ++k)
            if (W >> k & 1) full |= Letters(1) << pos[k];
        out.A[W] = A[full];
    }
    return out;
}

namespace {

// One song: items right to left, states are consumed-count vectors.
void play_song(const Song& s, const Collection& c, const std::vector<int>& reg, const RMat& start, RMat& acc) {
    const int n = c.letters;
    std::vector<std::size_t> stride(n + 1, 1);
    for (int x = 0; x < n; ++x) stride[x + 1] = stride[x] * std::size_t(reg[x] + 1);
    const std::size_t S = stride[n];
    auto digit = [&](std::size_t st, int x) { return int(st / stride[x] % std::size_t(reg[x] + 1)); };

    std::vector<std::optional<RMat>> M(S);
    M[0] = start;
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        std::vector<std::optional<RMat>> next(S);
        auto put = [&](std::size_t st, RMat&& m) {
            if (m.zero()) return;
            if (next[st]) *next[st] += m;
            else next[st] = std::move(m);
        };
        for (std::size_t st = 0; st < S; ++st) {
            if (!M[st]) continue;
            if (!it->harmony) {
                int x = it->letter();
                RMat P = *M[st];
                for (int j = 0; digit(st, x) + j <= reg[x]; ++j) {
                    if (j) P = c.A[it->mask] * P;
                    if (P.zero()) break;
                    put(st + std::size_t(j) * stride[x], RMat(P));
                }
            } else {
                bool fits = true;
                std::size_t to = st;
                for (Letters m = it->mask; m; m &= m - 1) {
                    int x = std::countr_zero(m);
                    if (digit(st, x) + 1 > reg[x]) fits = false;
                    to += stride[x];
                }
                if (fits) put(to, c.A[it->mask] * *M[st]);
            }
        }
        M.swap(next);
    }
    if (M[S - 1]) acc += *M[S - 1];
}

}  // namespace

RMat play(const SongSum& s, const Collection& c, const std::vector<int>& reg, const RMat* start) {
    if (int(reg.size()) != c.letters) throw ValidationError("play: register length differs from the alphabet");
    for (int d : reg)
        if (d < 1) throw ValidationError("play: register entries must be positive");
    const Letters all = c.letters ? ((Letters(1) << c.letters) - 1) : 0;
    if (s.alphabet() & ~all) throw ValidationError("play: song alphabet is not contained in the collection's");
    RMat I = RMat::identity(c.ring, c.dim);
    const RMat& st = start ? *start : I;
    if (st.rows() != c.dim) throw ValidationError("play: start matrix has the wrong height");
    RMat acc(c.ring, c.dim, st.cols());
    for (const Song& song : s.songs()) {
        if (song_letters(song) != all) continue;  // a missing letter can never meet its register
        play_song(song, c, reg, st, acc);
    }
    return acc;
}

Collection compressed_collection(const Collection& c, const std::vector<int>& reg) {
    if (auto bad = c.relation_defect()) {
        Song z{Item::chord(*bad)};
        throw ValidationError("collection violates its relation at Z = " + song_str(z).substr(1, song_str(z).size() - 2));
    }
    if (int(reg.size()) != c.letters) throw ValidationError("compressed_collection: register length differs from the alphabet");
    Collection out(c.ring, c.letters, c.dim);
    for (Letters Z = 0; Z < (Letters(1) << c.letters); ++Z) {
        std::vector<int> sub;
        for (Letters m = Z; m; m &= m - 1) sub.push_back(reg[std::countr_zero(m)]);
        out.A[Z] = play(symphony(int(sub.size())), c.restrict_to(Z), sub);
    }
    if (auto bad = out.relation_defect()) throw InvariantError("compressed collection fails its relation at mask " + std::to_string(*bad));
    return out;
}

}  // namespace hfl
