#include "drham/models.hpp"
#include "drham/multivector.hpp"

#include <doctest.h>

using namespace drham;

namespace {
DiffPoly u(const RingPtr &r, int a, int j) { return DiffPoly::u_var(r, a, j); }
DiffPoly th(const RingPtr &r, int a, int k) { return DiffPoly::theta_var(r, a, k); }
} // namespace

TEST_CASE("bivector of the constant operator") {
    auto r = make_ring(2, 4);
    std::vector<std::vector<Rat>> eta{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    MatDiffOp k1 = k1_operator(r, invert_matrix(eta));
    MultiVector b = bivector_of_op(k1);
    DiffPoly want = (th(r, 0, 0) * th(r, 1, 1) + th(r, 1, 0) * th(r, 0, 1)).scaled(Rat(1, 2));
    CHECK(b.density() == want);
    CHECK(op_of_bivector(b) == k1);
}

TEST_CASE("KdV bivector representative") {
    auto r = make_ring(1, 4);
    MatDiffOp k2 = expected_k2_kdv(r);
    MultiVector b = bivector_of_op(k2);
    DiffPoly stated = (u(r, 0, 0) * th(r, 0, 0) * th(r, 0, 1)).scaled(Rat(1, 2)) +
                      (th(r, 0, 0) * th(r, 0, 3)).multiplied_by_eps(2).scaled(Rat(1, 16));
    CHECK(functional_equal(b, MultiVector(stated)));
    CHECK(op_of_bivector(b) == k2);
}

TEST_CASE("schouten bracket basics") {
    auto r = make_ring(1, 4);
    LocalFunctional f((u(r, 0, 0) * u(r, 0, 0) * u(r, 0, 0)).scaled(Rat(1, 6)));
    LocalFunctional g((u(r, 0, 0) * u(r, 0, 0)).scaled(Rat(1, 2)));
    CHECK(schouten(f, g).density().is_zero());
    MatDiffOp k1 = k1_operator(r, {{Rat(1)}});
    MultiVector b1 = bivector_of_op(k1);
    CHECK(is_zero_functional(schouten(b1, b1)));
    // {f,g}_K = [[B_K, f], g]
    MultiVector lhs = schouten(schouten(b1, f), g);
    CHECK(functional_equal(lhs, poisson_bracket(f, g, k1)));
}

TEST_CASE("poisson and compatibility of the KdV pair") {
    auto r = make_ring(1, 4);
    MatDiffOp k1 = k1_operator(r, {{Rat(1)}});
    MatDiffOp k2 = expected_k2_kdv(r);
    CHECK(is_poisson(k1));
    CHECK(is_poisson(k2));
    CHECK(compatible(k1, k2));
    CHECK(compatible(k1, k1));
    MatDiffOp sym(r, 1);
    sym.at(0, 0).add(0, u(r, 0, 0) * u(r, 0, 0));
    CHECK_THROWS_AS(is_poisson(sym), std::invalid_argument);
}

TEST_CASE("a skew operator that is not Poisson is detected") {
    auto r = make_ring(1, 4);
    ScalarDiffOp a(r);
    a.add(3, u(r, 0, 0) * u(r, 0, 0));
    MatDiffOp k(r, 1);
    k.at(0, 0) = a - a.adjoint();
    REQUIRE(k.is_skew());
    CHECK(!is_poisson(k));
    // and such a defect also breaks compatibility with dx
    MatDiffOp k1 = k1_operator(r, {{Rat(1)}});
    CHECK(is_poisson(k1));
    CHECK(!schouten_commute(k1, k));
}

TEST_CASE("closed-form commutator") {
    auto r = make_ring(1, 4);
    MatDiffOp k1 = k1_operator(r, {{Rat(1)}});
    std::vector<DiffPoly> q{u(r, 0, 0)};
    MatDiffOp kt = commutator_VQ_BK(q, k1);
    CHECK(kt.at(0, 0) == ScalarDiffOp::dx(r).scaled(Rat(2)));
    std::vector<DiffPoly> zero{DiffPoly::zero(r)};
    MatDiffOp z = commutator_VQ_BK(zero, k1);
    CHECK(z.at(0, 0).is_zero());
}

TEST_CASE("the R vector field of KdV reproduces -K2") {
    auto m = builtin_trivial(6);
    MatDiffOp k1 = k1_operator(m.ring, m.h.eta_inv());
    std::vector<DiffPoly> R = r_vector_field(m.gbar, m.h);
    MatDiffOp kt = commutator_VQ_BK(R, k1);
    CHECK(kt == -expected_k2_kdv(m.ring));
}
