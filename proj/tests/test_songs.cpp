// test_songs.cpp

#include "fixtures.hpp"

#include "hfl/errors.hpp"
#include "hfl/songs.hpp"

#include <doctest.h>

using namespace hfl;
using fixtures::pick;

namespace {

SongSum S(const std::string& t, Letters alphabet) { return parse_songs(t, alphabet); }

const TruncatedRing F2{0, 1};

// Wrap every song of r as s1 * song * s2.
SongSum in_context(const Song& s1, const SongSum& r, const Song& s2) {
    SongSum out(r.alphabet() | song_letters(s1) | song_letters(s2));
    for (const Song& s : r.songs()) {
        Song t = s1;
        t.insert(t.end(), s.begin(), s.end());
        t.insert(t.end(), s2.begin(), s2.end());
        out.toggle(t);
    }
    return out;
}

Song cat(std::initializer_list<Song> parts) {
    Song out;
    for (const Song& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

}  // namespace

TEST_SUITE("songs") {

TEST_CASE("psi on notes and harmonies") {
    CHECK(psi(S("(1)", 1), 1).str() == "(12{1,2}21)");
    CHECK(psi(S("({})", 0), 0).str() == "(1)");
    SongSum got = psi(S("(2{1,2})", 3), 2);
    SongSum want = S("(23{2,3}32{1,2}) + (23{1,2,3}3) + (23{1,3}3{2,3}3) + (23{2,3}3{1,3}3)", 7);
    CHECK(got == want);
    CHECK(got.size() == 4);
    CHECK_THROWS_AS(psi(S("(1)", 1), 0), ValidationError);
}

TEST_CASE("psi is a derivation over concatenation") {
    std::mt19937_64 g(3);
    for (int t = 0; t < 30; ++t) {
        Song a = fixtures::random_song(g, 2, pick(g, 0, 3));
        Song b = fixtures::random_song(g, 2, pick(g, 0, 3));
        SongSum sa(3, {a}), sb(3, {b}), sab(3, {cat({a, b})});
        CHECK(psi(sab, 2) == psi(sa, 2) * sb + sa * psi(sb, 2));
    }
}

TEST_CASE("standard symphonies") {
    CHECK(symphony(0).str() == "({})");
    CHECK(symphony(1).str() == "(1)");
    CHECK(symphony(2).str() == "(12{1,2}21)");
    CHECK(symphony(3).size() == 7);
    CHECK(symphony(4).size() == 97);
    CHECK(symphony(5).size() == 2051);
    for (int n = 1; n <= 5; ++n)
        for (const Song& s : symphony(n).songs()) CHECK(satisfies_h1(s, n));
    // relabelled alphabet
    CHECK(symphony(Letters(0b101)).str() == "(13{1,3}31)");
}

TEST_CASE("printing and parsing round trip") {
    std::mt19937_64 g(8);
    for (int t = 0; t < 40; ++t) {
        SongSum s(7);
        for (int k = 0; k < 3; ++k) s.toggle(fixtures::random_song(g, 3, pick(g, 0, 5)));
        CHECK(parse_songs(s.str(), 7) == s);
    }
    CHECK_THROWS_AS(parse_songs("(1{2", 3), ValidationError);
    CHECK_THROWS_AS(parse_songs("(4)", 7), ValidationError);
}

TEST_CASE("playing small songs") {
    std::mt19937_64 g(21);
    Collection c = fixtures::random_collection(g, 1, F2);
    for (int d = 1; d <= 3; ++d) {
        CHECK(play(S("(1)", 1), c, {d}) == fixtures::power(c.A[1], d));
        RMat h = play(S("({1})", 1), c, {d});
        if (d == 1) CHECK(h == c.A[1]);
        else CHECK(h.zero());
    }
    // a song missing a letter plays to zero
    Collection c2 = fixtures::random_collection(g, 2, F2);
    CHECK(play(S("(1{1}1)", 1), c2, {1, 1}).zero());
    CHECK_THROWS_AS(play(S("(1)", 1), c2, {1}), ValidationError);
    CHECK_THROWS_AS(play(S("(1)", 1), c2, {0, 1}), ValidationError);
}

TEST_CASE("second symphony matches the double sum") {
    std::mt19937_64 g(5);
    for (int t = 0; t < 20; ++t) {
        Collection c = fixtures::random_collection(g, 2, t % 2 ? TruncatedRing{1, 2} : F2);
        int d1 = pick(g, 1, 3), d2 = pick(g, 1, 3);
        RMat want(c.ring, c.dim, c.dim);
        using fixtures::power;
        for (int j1 = 1; j1 <= d1; ++j1)
            for (int j2 = 1; j2 <= d2; ++j2)
                want += power(c.A[1], j1 - 1) * power(c.A[2], j2 - 1) * c.A[3] * power(c.A[2], d2 - j2) * power(c.A[1], d1 - j1);
        CHECK(play(symphony(2), c, {d1, d2}) == want);
    }
}

TEST_CASE("dynamic programming agrees with brute force") {
    std::mt19937_64 g(13);
    for (int t = 0; t < 60; ++t) {
        int n = pick(g, 1, 3);
        Collection c = fixtures::random_collection(g, n, F2);
        std::vector<int> reg(n);
        for (int& d : reg) d = pick(g, 1, 3);
        Song s = fixtures::random_song(g, n, pick(g, 1, 6));
        CHECK(play(SongSum((1u << n) - 1, {s}), c, reg) == fixtures::play_brute(s, c, reg));
    }
}

TEST_CASE("played relations vanish in any context") {
    std::mt19937_64 g(17);
    for (int t = 0; t < 40; ++t) {
        int n = pick(g, 1, 3);
        const Letters all = (1u << n) - 1;
        Collection c = fixtures::random_collection(g, n, t % 3 ? F2 : TruncatedRing{1, 2});
        std::vector<int> reg(n);
        for (int& d : reg) d = pick(g, 1, 3);
        Song s1 = fixtures::random_song(g, n, pick(g, 0, 2));
        Song s2 = fixtures::random_song(g, n, pick(g, 0, 2));
        // cover every letter so the plays are not trivially zero
        for (int x = 0; x < n; ++x)
            if (!((song_letters(s1) | song_letters(s2)) >> x & 1)) s2.push_back(Item::note(x));
        int x = pick(g, 0, n - 1);
        Song X{Item::note(x)}, E{Item::chord(0)}, H{Item::chord(1u << x)};
        Song mid = fixtures::random_song(g, n, pick(g, 0, 2));
        std::vector<SongSum> rels;
        rels.push_back(SongSum(all, {cat({X, E}), cat({E, X})}));
        rels.push_back(SongSum(all, {cat({X, H}), cat({H, X})}));
        rels.push_back(SongSum(all, {cat({X, H, mid, X}), cat({X, mid, H, X}), cat({X, mid}), cat({mid, X})}));
        Letters A = Letters(pick(g, 0, int(all)));
        SongSum trei(all);
        for (Letters B = A;; B = (B - 1) & A) {
            trei.toggle({Item::chord(B), Item::chord(A & ~B)});
            if (!B) break;
        }
        rels.push_back(trei);
        for (const SongSum& r : rels) CHECK(play(in_context(s1, r, s2), c, reg).zero());
    }
}

TEST_CASE("playing is multiplicative over disjoint alphabets") {
    std::mt19937_64 g(23);
    for (int t = 0; t < 20; ++t) {
        Collection c = fixtures::random_collection(g, 2, F2);
        std::vector<int> reg{pick(g, 1, 3), pick(g, 1, 3)};
        SongSum a(1, {fixtures::random_song(g, 1, pick(g, 1, 3))});
        Song b = fixtures::random_song(g, 1, pick(g, 1, 3));
        for (Item& it : b) it.mask <<= 1;  // letter 2 only
        SongSum bs(2, {b});
        RMat lhs = play(a * bs, c, reg);
        // restrict_to(2) renumbers letter 2 to letter 1
        Song b1 = b;
        for (Item& it : b1) it.mask >>= 1;
        RMat rhs = play(a, c.restrict_to(1), {reg[0]}) * play(SongSum(1, {b1}), c.restrict_to(2), {reg[1]});
        CHECK(lhs == rhs);
    }
}

TEST_CASE("compressed collections") {
    std::mt19937_64 g(29);
    for (int t = 0; t < 20; ++t) {
        int n = pick(g, 1, 3);
        Collection c = fixtures::random_collection(g, n, t % 2 ? F2 : TruncatedRing{1, 2});
        // unit register reproduces the collection
        Collection same = compressed_collection(c, std::vector<int>(n, 1));
        for (std::size_t z = 0; z < c.A.size(); ++z) CHECK(same.A[z] == c.A[z]);
        std::vector<int> reg(n);
        for (int& d : reg) d = pick(g, 1, 3);
        Collection out = compressed_collection(c, reg);
        CHECK(!out.relation_defect());
        for (int x = 0; x < n; ++x) CHECK(out.A[1u << x] == fixtures::power(c.A[1u << x], reg[x]));
    }
    Collection bad(F2, 1, 1);
    bad.A[1] = RMat::identity(F2, 1);
    bad.A[0] = RMat::identity(F2, 1);
    try {
        compressed_collection(bad, {2});
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("Z = {}") != std::string::npos);
    }
}

}  // TEST_SUITE
