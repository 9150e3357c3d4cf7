#include "drham/models.hpp"
#include "drham/operators.hpp"
#include "drham/variational.hpp"

#include <doctest.h>

using namespace drham;

namespace {
DiffPoly u(const RingPtr &r, int a, int j) { return DiffPoly::u_var(r, a, j); }
} // namespace

TEST_CASE("composition") {
    auto r = make_ring(1, 4);
    ScalarDiffOp dx = ScalarDiffOp::dx(r);
    ScalarDiffOp mu = ScalarDiffOp::mul_by(u(r, 0, 0));
    ScalarDiffOp a = compose(dx, mu);
    ScalarDiffOp want(r);
    want.add(1, u(r, 0, 0));
    want.add(0, u(r, 0, 1));
    CHECK(a == want);
    ScalarDiffOp b = compose(ScalarDiffOp::dx(r, 2), mu);
    ScalarDiffOp want2(r);
    want2.add(2, u(r, 0, 0));
    want2.add(1, u(r, 0, 1).scaled(Rat(2)));
    want2.add(0, u(r, 0, 2));
    CHECK(b == want2);
    ScalarDiffOp udx(r);
    udx.add(1, u(r, 0, 0));
    ScalarDiffOp c = compose(udx, udx);
    ScalarDiffOp want3(r);
    want3.add(2, u(r, 0, 0) * u(r, 0, 0));
    want3.add(1, u(r, 0, 0) * u(r, 0, 1));
    CHECK(c == want3);
}

TEST_CASE("adjoints") {
    auto r = make_ring(1, 4);
    ScalarDiffOp udx(r);
    udx.add(1, u(r, 0, 0));
    ScalarDiffOp adj = udx.adjoint();
    ScalarDiffOp want(r);
    want.add(1, -u(r, 0, 0));
    want.add(0, -u(r, 0, 1));
    CHECK(adj == want);
    CHECK(ScalarDiffOp::dx(r, 3).adjoint() == -ScalarDiffOp::dx(r, 3));
    CHECK(adj.adjoint() == udx);
    MatDiffOp k2 = expected_k2_kdv(r);
    CHECK(k2.is_skew());
}

TEST_CASE("application") {
    auto r = make_ring(1, 4);
    MatDiffOp k2 = expected_k2_kdv(r);
    std::vector<DiffPoly> one{DiffPoly::constant(r, Rat(1))};
    CHECK(k2.apply(one)[0] == u(r, 0, 1).scaled(Rat(1, 2)));
    MatDiffOp k1 = k1_operator(r, {{Rat(1)}});
    std::vector<DiffPoly> v{u(r, 0, 0)};
    CHECK(k1.apply(v)[0] == u(r, 0, 1));
    std::vector<DiffPoly> z{DiffPoly::zero(r)};
    CHECK(k2.apply(z)[0].is_zero());
}

TEST_CASE("poisson bracket") {
    auto r = make_ring(1, 4);
    MatDiffOp k1 = k1_operator(r, {{Rat(1)}});
    LocalFunctional f((u(r, 0, 0) * u(r, 0, 0) * u(r, 0, 0)).scaled(Rat(1, 6)));
    LocalFunctional g((u(r, 0, 0) * u(r, 0, 0)).scaled(Rat(1, 2)));
    CHECK(is_zero_functional(poisson_bracket(f, g, k1)));
    CHECK(is_zero_functional(poisson_bracket(f, f, k1)));
    // the dispersive Hamiltonian commutes with the quadratic one as well
    LocalFunctional h1(f.density() +
                       (u(r, 0, 0) * u(r, 0, 2)).multiplied_by_eps(2).scaled(Rat(1, 24)));
    CHECK(is_zero_functional(poisson_bracket(g, h1, k1)));
    MatDiffOp sym(r, 1);
    sym.at(0, 0).add(0, u(r, 0, 0));
    CHECK_THROWS_AS(poisson_bracket(f, g, sym), std::invalid_argument);
}

TEST_CASE("degree parts") {
    auto r = make_ring(1, 4);
    MatDiffOp k2 = expected_k2_kdv(r);
    CHECK(k2.at(0, 0).coeff(3).eps_coefficient(2) == DiffPoly::constant(r, Rat(1, 8)));
    MatDiffOp k0 = k2.eps_coefficient(0);
    ScalarDiffOp want(r);
    want.add(1, u(r, 0, 0));
    want.add(0, u(r, 0, 1).scaled(Rat(1, 2)));
    CHECK(k0.at(0, 0) == want);
}

TEST_CASE("miura transport") {
    auto r = make_ring(1, 4);
    MatDiffOp k2 = expected_k2_kdv(r);
    MiuraMap id;
    id.ring = r;
    id.expr = {u(r, 0, 0)};
    CHECK(miura_op(k2, id) == k2);
    MiuraMap m;
    m.ring = r;
    m.expr = {u(r, 0, 0) + u(r, 0, 2).multiplied_by_eps(2).scaled(Rat(1, 24))};
    auto inv = miura_invert(m);
    Subst s;
    s.target = r;
    s.comp = inv;
    CHECK(substitute(m.expr[0], s) == u(r, 0, 0));
    MatDiffOp moved = miura_op(k2, m);
    CHECK(moved.is_skew());
}
