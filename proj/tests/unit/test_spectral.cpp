#include <doctest.h>

#include <algorithm>

#include "flowclass/spectral/spectral.hpp"
#include "../support/generators.hpp"

using namespace flowclass;
using namespace flowclass::spectral;
using numkit::ComplexQ;
using numkit::make_rational;
using flowclass::testing::Rng;

namespace {

bool same_descriptor(const SpectrumDescriptor& a, const SpectrumDescriptor& b, double tol = 1e-9) {
    if (a.dimension() != b.dimension() || a.blocks().size() != b.blocks().size()) return false;
    for (std::size_t k = 0; k < a.blocks().size(); ++k) {
        const auto& x = a.blocks()[k];
        const auto& y = b.blocks()[k];
        if (x.size != y.size || x.count != y.count || !x.lambda.same(y.lambda, tol)) return false;
    }
    return true;
}

std::string describe(const SpectrumDescriptor& d) {
    std::string s;
    for (const auto& b : d.blocks())
        s += "(" + b.lambda.str() + "," + std::to_string(b.size) + "," + std::to_string(b.count) + ") ";
    return s;
}

const EigenvalueMultiplicity* find(const std::vector<EigenvalueMultiplicity>& eigs, const std::string& name) {
    for (const auto& e : eigs)
        if (e.value.str() == name) return &e;
    return nullptr;
}

MatrixQ jordan(const Rational& a, std::size_t m) {
    MatrixQ j(m);
    for (std::size_t i = 0; i < m; ++i) j(i, i) = a;
    for (std::size_t i = 0; i + 1 < m; ++i) j(i, i + 1) = 1;
    return j;
}

}  // namespace

TEST_CASE("exact eigenvalues") {
    SUBCASE("diag(1,-1)") {
        const auto e = eigenvalues(MatrixQ{{1, 0}, {0, -1}});
        REQUIRE(e.size() == 2);
        CHECK(find(e, "1")->multiplicity == 1);
        CHECK(find(e, "-1")->multiplicity == 1);
    }
    SUBCASE("rotation at speed 2") {
        const auto e = eigenvalues(MatrixQ{{0, 2}, {-2, 0}});
        REQUIRE(e.size() == 2);
        REQUIRE(find(e, "2i"));
        REQUIRE(find(e, "-2i"));
        CHECK(find(e, "2i")->value.exact().is_gaussian());
        CHECK(*find(e, "2i")->factor == PolyQ({4, 0, 1}));
    }
    SUBCASE("companion of (t^2+1)(t-2)") {
        // t^3 - 2t^2 + t - 2
        const MatrixQ c{{0, 0, 2}, {1, 0, -1}, {0, 1, 2}};
        const auto e = eigenvalues(c);
        REQUIRE(e.size() == 3);
        for (const char* name : {"i", "-i", "2"}) {
            const auto* hit = find(e, name);
            REQUIRE_MESSAGE(hit, name);
            // Factor oracle: each reported value must be a root of the char poly.
            const auto z = hit->value.exact().as_gaussian();
            CHECK(numkit::is_zero(numkit::char_poly(c).eval(z)));
        }
    }
    SUBCASE("real surd pair and a repeated root") {
        // (t^2 - 2)(t - 1)^2
        const auto blocks = std::vector<testing::BlockSpec>{{PolyQ({-2, 0, 1}), 1}, {PolyQ({-1, 1}), 2}};
        const auto e = eigenvalues(testing::realize(blocks));
        REQUIRE(e.size() == 3);
        CHECK(find(e, "sqrt(2)"));
        CHECK(find(e, "-sqrt(2)"));
        CHECK(find(e, "1")->multiplicity == 2);
    }
    SUBCASE("irreducible cubic needs the floating path") {
        CHECK_THROWS_AS(eigenvalues(MatrixQ{{0, 0, 2}, {1, 0, 0}, {0, 1, 0}}), FallbackNeeded);
    }
}

TEST_CASE("floating eigenvalues") {
    const auto e = eigenvalues(MatrixD{{0.0, 2.0}, {-2.0, 0.0}});
    REQUIRE(e.size() == 2);
    for (const auto& v : e) {
        CHECK(v.value.approx().re == doctest::Approx(0.0));
        CHECK(std::fabs(v.value.approx().im) == doctest::Approx(2.0));
    }
    // A defective eigenvalue spreads its roots; clustering merges them.
    const auto j = eigenvalues(numkit::to_double(jordan(Rational(1), 3)));
    REQUIRE(j.size() == 1);
    CHECK(j.front().multiplicity == 3);
}

TEST_CASE("split_dims") {
    const auto s1 = split_dims(eigenvalues(MatrixQ{{1, 0, 0}, {0, -2, 0}, {0, 0, 0}}), 0.0);
    CHECK(s1.dim_plus == 1);
    CHECK(s1.dim_minus == 1);
    CHECK(s1.dim_zero == 1);

    const auto s2 = split_dims(eigenvalues(MatrixQ{{0, 1}, {-1, 0}}), 0.0);
    CHECK(s2.dim_zero == 2);
    CHECK(s2.dim_plus + s2.dim_minus == 0);

    SpectralOptions opts;
    opts.tol = 1e-10;
    const auto s3 = split_dims(eigenvalues(MatrixD{{1e-14, 0.0}, {0.0, 1.0}}, opts), 1e-10);
    CHECK(s3.dim_plus == 1);
    CHECK(s3.dim_minus == 0);
    CHECK(s3.dim_zero == 1);
}

TEST_CASE("jordan_counts") {
    using V = std::vector<JordanCount>;
    // Rank sequence [3,2,1,0] gives N(0,3) = 1.
    CHECK(counts_from_ranks(std::vector<std::size_t>{3, 2, 1, 0, 0}) == V{{3, 1}});
    CHECK(jordan_counts(jordan(Rational(0), 3), ExactEigenvalue::rational(0)) == V{{3, 1}});
    CHECK(jordan_counts(MatrixQ(2), ExactEigenvalue::rational(0)) == V{{1, 2}});
    const ComplexQ i(Rational(0), Rational(1));
    MatrixCQ m(3);
    for (std::size_t k = 0; k < 3; ++k) m(k, k) = i;
    m(0, 1) = ComplexQ(1);
    CHECK(jordan_counts(m, i) == V{{1, 1}, {2, 1}});
    CHECK(jordan_counts(numkit::to_double(m), numkit::ComplexD(0, 1)) == V{{1, 1}, {2, 1}});
    CHECK_THROWS_AS(counts_from_ranks(std::vector<std::size_t>{2, 2, 1}), InconsistentInvariants);

    SUBCASE("real companion blocks carry counts to both roots") {
        const auto blocks = std::vector<testing::BlockSpec>{{PolyQ({9, 0, 1}), 2}, {PolyQ({9, 0, 1}), 1}};
        const MatrixQ a = testing::realize(blocks);
        CHECK(jordan_counts(a, ExactEigenvalue::gaussian(0, 3)) == V{{1, 1}, {2, 1}});
        CHECK(jordan_counts(a, ExactEigenvalue::gaussian(0, -3)) == V{{1, 1}, {2, 1}});
    }
}

TEST_CASE("spectrum_descriptor examples") {
    const auto d1 = spectrum_descriptor(MatrixQ{{0, 1}, {0, 0}});
    REQUIRE(d1.blocks().size() == 1);
    CHECK(d1.blocks()[0].lambda.str() == "0");
    CHECK(d1.blocks()[0].size == 2);

    const auto d2 = spectrum_descriptor(MatrixQ{{0, 2}, {-2, 0}});
    CHECK(describe(d2) == "(2i,1,1) (-2i,1,1) ");

    const std::vector<MatrixQ> parts{jordan(Rational(0), 2), MatrixQ{{0, 3}, {-3, 0}}};
    const auto d3 = spectrum_descriptor(numkit::block_diag<Rational>(parts));
    CHECK(describe(d3) == "(0,2,1) (3i,1,1) (-3i,1,1) ");

    const auto d4 = spectrum_descriptor(MatrixD{{0.0, 2.0}, {-2.0, 0.0}});
    CHECK(same_descriptor(d4, SpectrumDescriptor(2, {{numkit::ComplexD(0, 2), 1, 1}, {numkit::ComplexD(0, -2), 1, 1}}, true)));
}

TEST_CASE("descriptor validation") {
    CHECK_THROWS_AS(SpectrumDescriptor(3, {{ExactEigenvalue::rational(0), 2, 1}}, true), UsageError);
    CHECK_THROWS_AS(SpectrumDescriptor(1, {{ExactEigenvalue::gaussian(0, 1), 1, 1}}, true), UsageError);
    CHECK_NOTHROW(SpectrumDescriptor(1, {{ExactEigenvalue::gaussian(0, 1), 1, 1}}, false));
    const SpectrumDescriptor merged(4, {{ExactEigenvalue::rational(1), 2, 1}, {ExactEigenvalue::rational(1), 2, 1}}, true);
    REQUIRE(merged.blocks().size() == 1);
    CHECK(merged.blocks()[0].count == 2);
}

TEST_CASE("descriptor is a similarity invariant") {
    Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const auto blocks = testing::random_blocks(rng, 7);
        const MatrixQ a = testing::realize(blocks);
        const MatrixQ b = testing::conjugate_by(a, testing::random_invertible(rng, a.size()));
        const auto expected = testing::expected_descriptor(blocks);
        const auto da = spectrum_descriptor(a);
        const auto db = spectrum_descriptor(b);
        INFO("expected " << describe(expected) << " got " << describe(db));
        CHECK(same_descriptor(da, expected));
        CHECK(same_descriptor(db, expected));
    }
}

TEST_CASE("floating descriptor agrees with the exact one on well-separated spectra") {
    Rng rng(22);
    int compared = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto blocks = testing::random_blocks(rng, 5);
        const MatrixQ a = testing::conjugate_by(testing::realize(blocks), testing::random_invertible(rng, testing::dimension_of(blocks)));
        const auto exact = spectrum_descriptor(a);
        // Defective blocks perturb roots by eps^(1/m); compare only semisimple cases.
        if (std::any_of(exact.blocks().begin(), exact.blocks().end(), [](const auto& b) { return b.size > 1; })) continue;
        const auto approx = spectrum_descriptor(numkit::to_double(a));
        CHECK_MESSAGE(same_descriptor(approx, exact, 1e-6), describe(approx) << " vs " << describe(exact));
        ++compared;
    }
    CHECK(compared > 5);
}
