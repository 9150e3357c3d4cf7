#include "drham/models.hpp"

#include <doctest.h>

using namespace drham;

namespace {
DiffPoly u(const RingPtr &r, int a, int j) { return DiffPoly::u_var(r, a, j); }
} // namespace

TEST_CASE("homogeneity of the builtin densities") {
    CHECK(check_homogeneity(builtin_trivial(6)));
    CHECK(check_homogeneity(builtin_rspin(3, 6)));
    auto m = builtin_trivial(6);
    CHECK(euler_Ehat(m.gbar, m.h) == m.gbar.scaled(Rat(3)));
}

TEST_CASE("K2 for the trivial theory") {
    auto m = builtin_trivial(6);
    MatDiffOp def = build_K2(m, K2Form::defining);
    MatDiffOp alt = build_K2(m, K2Form::alternative);
    CHECK(def == alt);
    CHECK(def == expected_k2_kdv(m.ring));
    CHECK(def.is_skew());
    // dispersionless reduction agrees with the potential operator
    CHECK(def.eps_coefficient(0) == genus0_k2(*m.potential, m.h));
}

TEST_CASE("zero data gives a zero operator") {
    auto r = make_ring(1, 2);
    HomogeneityData h;
    h.n = 1;
    h.eta = {{Rat(1)}};
    h.unit = {Rat(1)};
    h.q = {Rat(0)};
    h.r = {Rat(0)};
    h.delta = Rat(0);
    h.a_matrix = {{Rat(0)}};
    std::vector<DiffPoly> R = r_vector_field(DiffPoly::zero(r), h);
    CHECK(R[0].is_zero());
    MatDiffOp k2 = build_K2(DiffPoly::zero(r), h, K2Form::alternative);
    CHECK(k2.at(0, 0).is_zero());
}

TEST_CASE("recursion check at the Casimir level") {
    auto m = builtin_trivial(6);
    MatDiffOp k2 = build_K2(m);
    HamTable t = casimirs(m.h, m.ring);
    t.emplace(std::make_pair(0, 0), LocalFunctional(m.gbar.partial_u(0, 0)));
    auto steps = recursion_check(m.h, k2, t);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].pass);
    // negative control: corrupt the level-0 Hamiltonian
    HamTable bad = casimirs(m.h, m.ring);
    bad.emplace(std::make_pair(0, 0),
                LocalFunctional(m.gbar.partial_u(0, 0) +
                                (u(m.ring, 0, 0) * u(m.ring, 0, 0) * u(m.ring, 0, 0))));
    auto badsteps = recursion_check(m.h, k2, bad);
    REQUIRE(badsteps.size() == 1);
    CHECK(!badsteps[0].pass);
    CHECK(!badsteps[0].note.empty());
}

TEST_CASE("recursion generation regenerates the stated KdV Hamiltonian") {
    auto m = builtin_trivial(6);
    MatDiffOp k2 = build_K2(m);
    GenerateResult gen = recursion_generate(m.h, k2, m.ring, 2);
    CHECK(gen.ok);
    REQUIRE(gen.table.count({0, 1}) == 1);
    CHECK(functional_equal(gen.table.at({0, 1}), LocalFunctional(m.known.at({0, 1}))));
    auto steps = recursion_check(m.h, k2, gen.table);
    for (auto &s : steps) CHECK(s.pass);
}

TEST_CASE("genus-0 tables and recursion for the trivial potential") {
    auto m = builtin_trivial(2);
    Genus0Report rep = genus0_check(m, 3);
    CHECK(rep.unit_axiom);
    CHECK(rep.ok());
}

TEST_CASE("genus-0 recursion for the 3-spin potential") {
    auto m = builtin_rspin(3, 2);
    Genus0Report rep = genus0_check(m, 2);
    CHECK(rep.ok());
}
