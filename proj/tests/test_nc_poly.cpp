#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "lindgal/nc_poly.hpp"

using lindgal::Letter;
using lindgal::NCPoly;
using cd = std::complex<double>;

TEST_CASE("factory polynomials have the expected words") {
    NCPoly a = NCPoly::annihilation(0, 1);
    REQUIRE(a.terms().size() == 1);
    CHECK(a.terms()[0].coeff == cd(1.0));
    CHECK(a.terms()[0].word == std::vector<Letter>{{0, false}});
    CHECK(a.degree() == 1);

    NCPoly ad = NCPoly::creation(1, 2);
    CHECK(ad.terms()[0].word == std::vector<Letter>{{1, true}});

    NCPoly id = NCPoly::identity(1);
    CHECK(id.terms().size() == 1);
    CHECK(id.terms()[0].word.empty());
    CHECK(id.degree() == 0);

    NCPoly num = NCPoly::number(0, 1);
    CHECK(num.degree() == 2);
    CHECK(num.terms()[0].word == std::vector<Letter>{{0, true}, {0, false}});
}

TEST_CASE("adjoint reverses words, swaps daggers, conjugates coefficients") {
    NCPoly p(1);
    p.add_term(cd(0, 2), {{0, false}, {0, false}});  // 2i a a
    NCPoly q = p.adjoint();
    REQUIRE(q.terms().size() == 1);
    CHECK(q.terms()[0].coeff == cd(0, -2));
    CHECK(q.terms()[0].word == std::vector<Letter>{{0, true}, {0, true}});

    // (a b)† = b† a† ordering
    NCPoly ab = NCPoly::annihilation(0, 2) * NCPoly::annihilation(1, 2);
    NCPoly adj = ab.adjoint();
    CHECK(adj.terms()[0].word == std::vector<Letter>{{1, true}, {0, true}});

    // involution
    NCPoly back = adj.adjoint();
    CHECK(back.terms()[0].word == ab.terms()[0].word);
    CHECK(back.terms()[0].coeff == ab.terms()[0].coeff);
}

TEST_CASE("sum and product expand term lists") {
    NCPoly a = NCPoly::annihilation(0, 1);
    NCPoly ad = NCPoly::creation(0, 1);
    NCPoly s = a + ad;
    CHECK(s.terms().size() == 2);
    CHECK(s.degree() == 1);

    NCPoly sq = s * s;  // a a + a a† + a† a + a† a†
    CHECK(sq.terms().size() == 4);
    CHECK(sq.degree() == 2);

    NCPoly scaled = cd(0, 1) * a;
    CHECK(scaled.terms()[0].coeff == cd(0, 1));
}

TEST_CASE("degree of the zero polynomial is 0") {
    NCPoly z(1);
    CHECK(z.is_zero());
    CHECK(z.degree() == 0);
}

TEST_CASE("text grammar round trip") {
    NCPoly p = NCPoly::parse("1*a0 a0 + (-4,0)*1", 1);
    REQUIRE(p.terms().size() == 2);
    CHECK(p.terms()[0].coeff == cd(1));
    CHECK(p.terms()[0].word == std::vector<Letter>{{0, false}, {0, false}});
    CHECK(p.terms()[1].coeff == cd(-4));
    CHECK(p.terms()[1].word.empty());

    NCPoly q = NCPoly::parse(p.to_string(), 1);
    REQUIRE(q.terms().size() == p.terms().size());
    for (std::size_t i = 0; i < q.terms().size(); ++i) {
        CHECK(q.terms()[i].coeff == p.terms()[i].coeff);
        CHECK(q.terms()[i].word == p.terms()[i].word);
    }
}

TEST_CASE("parser handles complex coefficients and multi-mode letters") {
    NCPoly p = NCPoly::parse("(0,-1)*ad1 a0", 2);
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].coeff == cd(0, -1));
    CHECK(p.terms()[0].word == std::vector<Letter>{{1, true}, {0, false}});
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS(NCPoly::parse("1*b0", 1));         // unknown letter
    CHECK_THROWS(NCPoly::parse("1*a5", 2));         // mode out of range
    CHECK_THROWS(NCPoly::parse("nonsense", 1));     // no coefficient separator
    CHECK_THROWS(NCPoly::parse("", 1));             // empty
}

TEST_CASE("mode-count mismatch in arithmetic throws") {
    NCPoly one_mode = NCPoly::annihilation(0, 1);
    NCPoly two_mode = NCPoly::annihilation(0, 2);
    CHECK_THROWS(one_mode + two_mode);
    CHECK_THROWS(one_mode * two_mode);
}
