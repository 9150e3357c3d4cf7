#include "drham/models.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace drham;

namespace {
DiffPoly u(const RingPtr &r, int a, int j) { return DiffPoly::u_var(r, a, j); }
} // namespace

TEST_CASE("bernoulli numbers") {
    auto b = bernoulli(8);
    CHECK(b[0] == Rat(1));
    CHECK(b[1] == Rat(-1, 2));
    CHECK(b[2] == Rat(1, 6));
    CHECK(b[4] == Rat(-1, 30));
    CHECK(b[6] == Rat(1, 42));
    CHECK(b[3].is_zero());
}

TEST_CASE("shift series") {
    auto r = make_ring(1, 2);
    ScalarDiffOp e = shift_exp(r, Rat(1));
    ScalarDiffOp want(r);
    want.add(0, DiffPoly::constant(r, Rat(1)));
    want.add(1, DiffPoly::eps_pow(r, 1));
    want.add(2, DiffPoly::eps_pow(r, 2).scaled(Rat(1, 2)));
    CHECK(e == want);
    auto s = s_series(4);
    CHECK(s[0] == Rat(1));
    CHECK(s[2] == Rat(1, 24));
    CHECK(s[4] == Rat(1, 1920));
    auto inv = invert_series(s);
    // S(z) S^{-1}(z) = 1
    Rat conv = s[0] * inv[2] + s[2] * inv[0];
    CHECK(conv.is_zero());
}

TEST_CASE("cp1 density at low eps order") {
    auto m = builtin_cp1(2);
    auto r = m.ring;
    DiffPoly E = DiffPoly::generator(r, 0);
    DiffPoly want = (u(r, 0, 0) * u(r, 0, 0) * u(r, 1, 0)).scaled(Rat(1, 2)) +
                    (u(r, 0, 0) * u(r, 0, 2)).multiplied_by_eps(2).scaled(Rat(1, 24)) +
                    E * (DiffPoly::constant(r, Rat(1)) +
                         u(r, 1, 2).multiplied_by_eps(2).scaled(Rat(1, 24))) -
                    u(r, 1, 0) - (u(r, 1, 0) * u(r, 1, 0)).scaled(Rat(1, 2));
    CHECK(m.gbar == want);
    CHECK(check_homogeneity(m));
}

TEST_CASE("cp1 dilation identity") {
    auto m = builtin_cp1(4);
    DiffPoly lhs = dilation_D(m.gbar) - m.gbar.scaled(Rat(2));
    CHECK(functional_equal(LocalFunctional(lhs), LocalFunctional(m.known.at({0, 1}))));
}

TEST_CASE("genus-1 density from the potential") {
    auto r = make_ring(1, 4);
    DiffPoly F = (u(r, 0, 0) * u(r, 0, 0) * u(r, 0, 0)).scaled(Rat(1, 6));
    DiffPoly g = genus1_g_from_potential(F, {{Rat(1)}});
    auto m = builtin_trivial(4);
    CHECK(functional_equal(LocalFunctional(g), LocalFunctional(m.gbar.in_ring(r))));
    auto r2 = make_ring(1, 4);
    DiffPoly F4 = (u(r2, 0, 0) * u(r2, 0, 0) * u(r2, 0, 0) * u(r2, 0, 0)).scaled(Rat(1, 24));
    DiffPoly g4 = genus1_g_from_potential(F4, {{Rat(1)}});
    CHECK(!g4.eps_coefficient(2).is_zero());
    // a quadratic potential has a constant c-tensor, so no dispersive tail
    DiffPoly F2 = (u(r2, 0, 0) * u(r2, 0, 0)).scaled(Rat(1, 2));
    CHECK(genus1_g_from_potential(F2, {{Rat(1)}}).eps_coefficient(2).is_zero());
    CHECK_THROWS(genus1_g_from_potential(u(r2, 0, 0), {{Rat(1)}}));
}

TEST_CASE("3-spin genus-1 tail matches the stated density") {
    auto m = builtin_rspin(3, 2);
    DiffPoly g = genus1_g_from_potential(*m.potential, m.h.eta);
    // agreement modulo total derivatives at order eps^2
    CHECK(functional_equal(LocalFunctional(g.eps_coefficient(2)),
                           LocalFunctional(m.gbar.eps_coefficient(2))));
}

TEST_CASE("toda operators are skew") {
    TodaPair t = builtin_toda(4);
    CHECK(t.k1.is_skew());
    CHECK(t.k2.is_skew());
}

TEST_CASE("model file round trip and validation") {
    auto m = builtin_rspin(3, 4);
    save_model(m, "/tmp/drham_test_model.json");
    CohFTModel back = load_model("/tmp/drham_test_model.json", 4);
    CHECK(back.gbar == m.gbar);
    CHECK(back.h.eta == m.h.eta);
    CHECK(back.h.delta == m.h.delta);
    std::remove("/tmp/drham_test_model.json");
    CHECK_THROWS(load_model("/nonexistent/file.json", 4));
    // inconsistent homogeneity data is rejected
    {
        std::ofstream f("/tmp/drham_bad_model.json");
        f << R"({"schema":"drham-model/1","name":"bad","dimension":2,
                 "metric":[["0","1"],["1","0"]],"unit":["1","0"],
                 "charges":["0","1/3"],"shifts":["0","0"],
                 "conformal_dimension":"1","a_matrix":[["0","0"],["0","0"]],
                 "gbar":[]})";
    }
    CHECK_THROWS(load_model("/tmp/drham_bad_model.json", 4));
    std::remove("/tmp/drham_bad_model.json");
}

TEST_CASE("expected operator transcriptions are skew") {
    auto r3 = make_ring(2, 6);
    CHECK(expected_k2_3spin(r3).is_skew());
    auto r4 = make_ring(3, 6);
    CHECK(expected_k2_4spin(r4).is_skew());
    auto rc = make_ring(2, 6);
    // the closed form needs the generator-bearing ring
    auto m = builtin_cp1(6);
    CHECK(expected_k2_cp1(m.ring).is_skew());
}
