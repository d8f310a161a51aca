#include <catch2/catch_amalgamated.hpp>

#include "mcl/farey.hpp"
#include "mcl/poset.hpp"

using namespace mcl;

TEST_CASE("det2") {
    CHECK(det2(Fraction(0, 1), Fraction(1, 1)) == -1);
    CHECK(det2(Fraction(1, 2), Fraction(2, 3)) == -1);
    CHECK(det2(Fraction(1, 0), Fraction(0, 1)) == 1);
}

TEST_CASE("parity rule") {
    const KParams k(5, 7, 9);
    CHECK(k.k_of(Fraction(1, 1)) == 5);
    CHECK(k.k_of(Fraction(1, 0)) == 7);
    CHECK(k.k_of(Fraction(2, 3)) == 9);
    CHECK(k.k_of(Fraction(0, 1)) == 9);
    CHECK(k.k_of(Fraction(3, 5)) == 5);
}

TEST_CASE("triple_of") {
    CHECK(triple_of(Fraction(2, 3)) == FareyTriple{Fraction(1, 2), Fraction(2, 3), Fraction(1, 1)});
    CHECK(triple_of(Fraction(1, 1)) == farey_root());
    CHECK(triple_of(Fraction(3, 5)) == FareyTriple{Fraction(1, 2), Fraction(3, 5), Fraction(2, 3)});
    CHECK_THROWS_AS(triple_of(Fraction(0, 1)), NotInterior);
    CHECK_THROWS_AS(triple_of(Fraction(1, 0)), NotInterior);
}

TEST_CASE("children") {
    const auto [l, r] = children(farey_root());
    CHECK(l == FareyTriple{Fraction(0, 1), Fraction(1, 2), Fraction(1, 1)});
    CHECK(r == FareyTriple{Fraction(1, 1), Fraction(2, 1), Fraction(1, 0)});

    const auto [l2, r2] = children(triple_of(Fraction(2, 3)));
    CHECK(l2 == FareyTriple{Fraction(1, 2), Fraction(3, 5), Fraction(2, 3)});
    CHECK(r2 == FareyTriple{Fraction(2, 3), Fraction(3, 4), Fraction(1, 1)});
}

TEST_CASE("farey invariants over the tree") {
    for (const FareyTriple& t : farey_vertices(6)) {
        CHECK(t.valid());
        // parities of the three fractions are pairwise distinct
        const int a = parity_index(t.left), b = parity_index(t.middle), c = parity_index(t.right);
        CHECK(((a != b) && (b != c) && (a != c)));
        // mediant children stay reduced by construction (Fraction ctor throws otherwise)
        CHECK_NOTHROW(mediant(t.left, t.middle));
        CHECK_NOTHROW(mediant(t.middle, t.right));
    }
}

TEST_CASE("path round-trip") {
    for (const FareyTriple& t : farey_vertices(7)) {
        if (t == farey_root()) continue;
        std::string path;
        triple_of(t.middle, &path);
        CHECK(replay_path(path) == t);
    }
}

TEST_CASE("fraction parsing") {
    CHECK(parse_fraction("2/3") == Fraction(2, 3));
    CHECK(parse_fraction("1/0") == Fraction(1, 0));
    CHECK(parse_fraction("7") == Fraction(7, 1));
    CHECK_THROWS_AS(Fraction(2, 4), NotReduced);
}
