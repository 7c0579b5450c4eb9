// test_hyperbox.cpp

#include "fixtures.hpp"

#include "hfl/errors.hpp"
#include "hfl/hyperbox.hpp"

#include <doctest.h>

using namespace hfl;
using fixtures::pick;

namespace {

const TruncatedRing F2{0, 1};

RMat M(TruncatedRing r, int rows, int cols, std::initializer_list<std::pair<int, int>> ones) {
    RMat m(r, rows, cols);
    for (auto [i, j] : ones) m.add(i, j, RingElement::one(r));
    return m;
}

GradedComplex zero_complex(TruncatedRing r, int n) {
    GradedComplex c(r, n);
    c.graded = false;
    return c;
}

bool same(const Hyperbox& a, const Hyperbox& b) {
    if (a.size != b.size) return false;
    const Letters all = (Letters(1) << a.dim()) - 1;
    for (int v = 0; v < a.num_vertices(); ++v) {
        if (a.vertex[v].grading != b.vertex[v].grading) return false;
        for (Letters eps = 0; eps <= all; ++eps)
            if (a.shift(v, eps) >= 0 && !(a.map(v, eps) == b.map(v, eps))) return false;
    }
    return true;
}

// Compose the edge maps along one axis, walking vertex by vertex.
RMat walk(const Hyperbox& h, int v, int axis, int steps, RMat acc) {
    for (int k = 0; k < steps; ++k) {
        acc = h.map(v, Letters(1) << axis) * acc;
        v = h.shift(v, Letters(1) << axis);
    }
    return acc;
}

Hyperbox random_box(std::mt19937_64& g, std::vector<int> size, TruncatedRing r = F2) {
    RandomBoxSpec spec;
    spec.ring = r;
    spec.size = std::move(size);
    spec.graded = r.p > 0;
    spec.max_gens = 2;
    return random_hyperbox(g, spec);
}

std::size_t total_rank(const GradedComplex& c) { return total(homology_ranks(c)); }

}  // namespace

TEST_SUITE("hyperbox") {

TEST_CASE("validation reports the failing face") {
    // a string of chain maps: F2 -> F2 -> F2 with identities
    Hyperbox s(F2, {2});
    for (auto& c : s.vertex) c = zero_complex(F2, 1);
    s.set_map(0, 1, RMat::identity(F2, 1));
    s.set_map(1, 1, RMat::identity(F2, 1));
    CHECK(!s.violation());

    // commuting square with zero diagonal
    Hyperbox sq(F2, {1, 1});
    for (auto& c : sq.vertex) c = zero_complex(F2, 2);
    RMat swap = M(F2, 2, 2, {{0, 1}, {1, 0}});
    for (int v : {0, 1, 2}) {
        if (sq.shift(v, 1) >= 0) sq.set_map(v, 1, swap);
        if (sq.shift(v, 2) >= 0) sq.set_map(v, 2, swap);
    }
    CHECK(!sq.violation());

    // edges that do not commute need a homotopy
    sq.set_map(0, 1, M(F2, 2, 2, {{0, 0}}));
    auto bad = sq.violation();
    REQUIRE(bad);
    CHECK(bad->first == 0);
    CHECK(bad->second == 3);
    try {
        sq.require_valid();
        FAIL("expected a violation");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("eps (1,1)") != std::string::npos);
    }
    // with zero vertex differentials no diagonal can repair it
    sq.set_map(0, 3, swap);
    CHECK(sq.violation());
}

TEST_CASE("compression of a string composes the edges") {
    std::mt19937_64 g(2);
    for (int t = 0; t < 10; ++t) {
        Hyperbox h = random_box(g, {3}, t % 2 ? F2 : TruncatedRing{1, 2});
        Hyperbox c = compress(h);
        REQUIRE(c.size == std::vector<int>{1});
        CHECK(c.vertex[1].size() == h.vertex[3].size());
        CHECK(c.map(0, 1) == walk(h, 0, 0, 3, RMat::identity(h.ring, h.vertex[0].size())));
        CHECK(!c.violation());
    }
}

TEST_CASE("compressed diagonal of a rectangle") {
    std::mt19937_64 g(4);
    for (int t = 0; t < 12; ++t) {
        const int d1 = pick(g, 1, 3), d2 = pick(g, 1, 3);
        Hyperbox h = random_box(g, {d1, d2}, t % 3 ? F2 : TruncatedRing{1, 2});
        Hyperbox c = compress(h);
        const int n0 = h.vertex[0].size();
        RMat want(h.ring, h.vertex.back().size(), n0);
        for (int j1 = 1; j1 <= d1; ++j1)
            for (int j2 = 1; j2 <= d2; ++j2) {
                RMat p = RMat::identity(h.ring, n0);
                int v = 0;
                p = walk(h, v, 0, d1 - j1, p);
                v = h.index({d1 - j1, 0});
                p = walk(h, v, 1, d2 - j2, p);
                v = h.index({d1 - j1, d2 - j2});
                p = h.map(v, 3) * p;
                v = h.index({d1 - j1 + 1, d2 - j2 + 1});
                p = walk(h, v, 1, j2 - 1, p);
                v = h.index({d1 - j1 + 1, d2});
                want += walk(h, v, 0, j1 - 1, p);
            }
        CHECK(c.map(0, 3) == want);
        CHECK(c.map(0, 1) == walk(h, 0, 0, d1, RMat::identity(h.ring, n0)));
        CHECK(c.map(0, 2) == walk(h, 0, 1, d2, RMat::identity(h.ring, n0)));
    }
}

TEST_CASE("compressing a unit hypercube changes nothing") {
    std::mt19937_64 g(6);
    for (int n = 0; n <= 3; ++n) {
        Hyperbox h = random_box(g, std::vector<int>(n, 1));
        CHECK(same(compress(h), h));
    }
}

TEST_CASE("compression preserves the hyperbox relation") {
    std::mt19937_64 g(8);
    for (int t = 0; t < 25; ++t) {
        const int n = pick(g, 1, 3);
        std::vector<int> size(n);
        for (int& d : size) d = pick(g, 1, n == 3 ? 2 : 3);
        if (t == 0) size = {3, 3, 3};
        Hyperbox h = random_box(g, size, t % 4 ? F2 : TruncatedRing{1, 2});
        REQUIRE(!h.violation());
        Hyperbox c = compress(h);
        CHECK(!c.violation());
        CHECK(!c.degree_violation());
        for (int i = 0; i < n; ++i) {
            RMat want = walk(h, 0, i, size[i], RMat::identity(h.ring, h.vertex[0].size()));
            CHECK(c.map(0, Letters(1) << i) == want);
        }
    }
}

TEST_CASE("degenerate axes are dropped by compression") {
    std::mt19937_64 g(10);
    Hyperbox h = random_box(g, {2, 0});
    Hyperbox c = compress(h);
    CHECK(c.size == std::vector<int>{1});
    CHECK(c.map(0, 1) == walk(h, 0, 0, 2, RMat::identity(F2, h.vertex[0].size())));
    Hyperbox point = random_box(g, {0, 0});
    CHECK(compress(point).num_vertices() == 1);
}

TEST_CASE("enlargement") {
    // a point becomes an identity string
    Hyperbox p(F2, {0});
    p.vertex[0] = zero_complex(F2, 2);
    p.vertex[0].d = M(F2, 2, 2, {{0, 1}});
    Hyperbox e = enlarge(p, 0, 0);
    CHECK(e.size == std::vector<int>{1});
    CHECK(e.map(0, 1) == RMat::identity(F2, 2));
    CHECK(!e.violation());

    std::mt19937_64 g(12);
    for (int t = 0; t < 20; ++t) {
        const int n = pick(g, 1, 3);
        std::vector<int> size(n);
        for (int& d : size) d = pick(g, 0, 2);
        Hyperbox h = random_box(g, size, t % 3 ? F2 : TruncatedRing{1, 2});
        const int k = pick(g, 0, n - 1), j = pick(g, 0, size[k]);
        Hyperbox big = enlarge(h, k, j);
        CHECK(!big.violation());
        CHECK(!big.degree_violation());
        if (size[k] > 0) CHECK(same(compress(big), compress(h)));
        if (n >= 2) {
            int k2 = (k + 1) % n, j2 = pick(g, 0, size[k2]);
            CHECK(same(enlarge(enlarge(h, k, j), k2, j2), enlarge(enlarge(h, k2, j2), k, j)));
        }
    }
    Hyperbox h = random_box(g, {1});
    CHECK_THROWS_AS(enlarge(h, 1, 0), ValidationError);
    CHECK_THROWS_AS(enlarge(h, 0, 2), ValidationError);
}

TEST_CASE("canonical inclusions") {
    std::mt19937_64 g(14);
    Hyperbox pt = random_box(g, {});
    HyperboxChainMap id = canonical_inclusion(pt);
    CHECK(id.at(0, 0) == RMat::identity(F2, pt.vertex[0].size()));
    CHECK(id.valid());

    // n = 1: the square with identity at the start, D^(1) at the end, no diagonal
    Hyperbox line = random_box(g, {1});
    HyperboxChainMap f = canonical_inclusion(line);
    CHECK(f.valid());
    CHECK(f.at(0, 0) == RMat::identity(F2, line.vertex[0].size()));
    CHECK(f.at(1, 0) == line.map(0, 1));
    CHECK(f.at(0, 1).zero());
    CHECK(same(f.source, canonical_hypercube(line.vertex[0], 1)));

    for (int t = 0; t < 15; ++t) {
        const int n = pick(g, 2, 3);
        Hyperbox h = random_box(g, std::vector<int>(n, 1), t % 3 ? F2 : TruncatedRing{1, 2});
        HyperboxChainMap c = canonical_inclusion(h);
        CHECK(c.valid());
        CHECK(same(c.source, canonical_hypercube(h.vertex[0], n)));
        CHECK(same(c.target, h));
    }
    CHECK_THROWS_AS(canonical_inclusion(random_box(g, {2})), ValidationError);
}

TEST_CASE("total complexes") {
    const TruncatedRing R{1, 3};
    // cone of an isomorphism
    std::mt19937_64 g(16);
    GradedComplex a = random_complex(g, R, 3, true, 2);
    Hyperbox iso(R, {1});
    iso.vertex = {a, a};
    auto [P, Q] = random_invertible(g, R, a.size(), &a.grading);
    iso.vertex[1].d = P * a.d * Q;
    iso.set_map(0, 1, P);
    REQUIRE(!iso.violation());
    CHECK(total_rank(total_complex(iso)) == 0);

    // cone of zero: the homology of both ends, the end shifted down by one
    Hyperbox z(R, {1});
    GradedComplex b = random_complex(g, R, 3, true, 1);
    z.vertex = {a, b};
    auto t = homology_ranks(total_complex(z));
    auto ha = homology_ranks(a), hb = homology_ranks(b);
    std::map<int, std::size_t> want = ha;
    for (auto [k, r] : hb) want[k - 1] += r;
    std::erase_if(want, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(t, [](const auto& kv) { return kv.second == 0; });
    CHECK(t == want);

    CHECK_THROWS_AS(total_complex(random_box(g, {2})), ValidationError);
}

TEST_CASE("quasi-isomorphic vertices give quasi-isomorphic totals") {
    std::mt19937_64 g(18);
    for (int t = 0; t < 10; ++t) {
        const int n = pick(g, 1, 2);
        Hyperbox h = random_box(g, std::vector<int>(n, 1), TruncatedRing{1, 2});
        // base change at every vertex is a chain isomorphism with F^0 only
        Hyperbox h2 = h;
        HyperboxChainMap f{h, h2, {}};
        std::vector<RMat> Pv, Qv;
        for (int v = 0; v < h.num_vertices(); ++v) {
            auto [P, Q] = random_invertible(g, h.ring, h.vertex[v].size(), &h.vertex[v].grading);
            Pv.push_back(P);
            Qv.push_back(Q);
        }
        const Letters all = (Letters(1) << n) - 1;
        for (int v = 0; v < h.num_vertices(); ++v)
            for (Letters eps = 0; eps <= all; ++eps) {
                int w = h.shift(v, eps);
                if (w >= 0) h2.set_map(v, eps, Pv[w] * h.map(v, eps) * Qv[v]);
            }
        f.target = h2;
        for (int v = 0; v < h.num_vertices(); ++v) f.F[{v, 0}] = Pv[v];
        REQUIRE(f.valid());
        CHECK(homology_ranks(total_complex(h)) == homology_ranks(total_complex(h2)));
    }
}

TEST_CASE("json round trip") {
    std::mt19937_64 g(20);
    for (int t = 0; t < 8; ++t) {
        Hyperbox h = random_box(g, {pick(g, 0, 2), pick(g, 1, 2)}, TruncatedRing{2, 2});
        Hyperbox back = hyperbox_from_json(io::parse_json(hyperbox_to_json(h).dump(), "hyperbox"));
        CHECK(same(back, h));
        CHECK(!back.violation());
    }
    io::json j = hyperbox_to_json(random_box(g, {1}));
    j["vertices"].erase(1);
    CHECK_THROWS_AS(hyperbox_from_json(j), ValidationError);
}

}  // TEST_SUITE
