#include "drham/variational.hpp"

#include <doctest.h>

using namespace drham;

namespace {

DiffPoly u(const RingPtr &r, int a, int j) { return DiffPoly::u_var(r, a, j); }

DiffPoly kdv_density(const RingPtr &r) {
    return (u(r, 0, 0) * u(r, 0, 0) * u(r, 0, 0)).scaled(Rat(1, 6)) +
           (u(r, 0, 0) * u(r, 0, 2)).multiplied_by_eps(2).scaled(Rat(1, 48));
}

} // namespace

TEST_CASE("variational derivative") {
    auto r = make_ring(1, 6);
    CHECK(var_derivative_u(u(r, 0, 0) * u(r, 0, 2), 0) == u(r, 0, 2).scaled(Rat(2)));
    CHECK(var_derivative_u(kdv_density(r), 0) ==
          (u(r, 0, 0) * u(r, 0, 0)).scaled(Rat(1, 2)) +
              u(r, 0, 2).multiplied_by_eps(2).scaled(Rat(1, 24)));
    DiffPoly h = u(r, 0, 0) * u(r, 0, 1) * u(r, 0, 1);
    CHECK(var_derivative_u(h.dx(), 0).is_zero());
}

TEST_CASE("functional equality is representative independent") {
    auto r = make_ring(1, 6);
    LocalFunctional a(u(r, 0, 0) * u(r, 0, 2));
    LocalFunctional b(-(u(r, 0, 1) * u(r, 0, 1)));
    CHECK(functional_equal(a, b));
    LocalFunctional c((u(r, 0, 0) * u(r, 0, 0) * u(r, 0, 0)));
    LocalFunctional d(c.density() + DiffPoly::constant(r, Rat(5)));
    CHECK(functional_equal(c, d));
    auto r2 = make_ring(2, 6);
    LocalFunctional e(u(r2, 0, 0) * u(r2, 0, 0) * u(r2, 1, 0));
    LocalFunctional f(u(r2, 1, 0) * u(r2, 1, 0) * u(r2, 0, 0));
    CHECK(!functional_equal(e, f));
}

TEST_CASE("higher Euler operators") {
    auto r = make_ring(1, 4);
    CHECK(higher_euler(u(r, 0, 1) * u(r, 0, 1), 0, 1) == u(r, 0, 1).scaled(Rat(2)));
    DiffPoly f = u(r, 0, 0) * u(r, 0, 2) + u(r, 0, 1) * u(r, 0, 1) * u(r, 0, 0);
    CHECK(higher_euler(f, 0, 0) == var_derivative_u(f, 0));
    for (int k = 0; k <= 3; ++k) CHECK(higher_euler(f.dx(), 0, k + 1) == higher_euler(f, 0, k));
}

TEST_CASE("Frechet operators") {
    auto r = make_ring(1, 4);
    DiffPoly f = u(r, 0, 0) * u(r, 0, 2);
    ScalarDiffOp l1 = frechet_L(f, 0, 1);
    ScalarDiffOp want(r);
    want.add(1, u(r, 0, 0).scaled(Rat(2)));
    CHECK(l1 == want);
    ScalarDiffOp l0 = frechet_L(f, 0, 0);
    ScalarDiffOp want0(r);
    want0.add(0, u(r, 0, 2));
    want0.add(2, u(r, 0, 0));
    CHECK(l0 == want0);
}

TEST_CASE("omega-hat of the KdV functional") {
    auto r = make_ring(1, 6);
    LocalFunctional g(kdv_density(r));
    std::vector<std::vector<Rat>> eta{{Rat(1)}};
    MatDiffOp om0 = omega_hat(g, 0, eta);
    ScalarDiffOp want0(r);
    want0.add(0, u(r, 0, 0));
    want0.add(2, DiffPoly::eps_pow(r, 2).scaled(Rat(1, 24)));
    CHECK(om0.at(0, 0) == want0);
    MatDiffOp om1 = omega_hat(g, 1, eta);
    ScalarDiffOp want1(r);
    want1.add(1, DiffPoly::eps_pow(r, 2).scaled(Rat(1, 12)));
    CHECK(om1.at(0, 0) == want1);

    // quadratic functional gives the inverse metric at order zero
    auto r2 = make_ring(2, 2);
    std::vector<std::vector<Rat>> eta2{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    DiffPoly quad(r2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            quad += (u(r2, a, 0) * u(r2, b, 0)).scaled(eta2[a][b] * Rat(1, 2));
    MatDiffOp om = omega_hat(LocalFunctional(quad), 0, eta2);
    CHECK(om == const_matrix_op(r2, invert_matrix(eta2)));
}

TEST_CASE("homotopy reconstruction") {
    auto r = make_ring(1, 6);
    std::vector<DiffPoly> e1{u(r, 0, 0)};
    CHECK(functional_from_variational(e1).density() ==
          (u(r, 0, 0) * u(r, 0, 0)).scaled(Rat(1, 2)));
    std::vector<DiffPoly> e2{(u(r, 0, 0) * u(r, 0, 0)).scaled(Rat(1, 2)) +
                             u(r, 0, 2).multiplied_by_eps(2).scaled(Rat(1, 24))};
    LocalFunctional back = functional_from_variational(e2);
    CHECK(functional_equal(back, LocalFunctional(kdv_density(r))));
    std::vector<DiffPoly> bad{u(r, 0, 1)};
    CHECK_THROWS_AS(functional_from_variational(bad), std::domain_error);
}

TEST_CASE("dx inversion") {
    auto r = make_ring(2, 4);
    DiffPoly q = u(r, 0, 0) * u(r, 1, 1) * u(r, 1, 1) + u(r, 0, 2) * u(r, 1, 0);
    DiffPoly p = q.dx();
    CHECK(is_dx_exact(p));
    CHECK(dx_invert(p).dx() == p);
    CHECK(!is_dx_exact(u(r, 0, 1) * u(r, 0, 1)));
    CHECK_THROWS(dx_invert(u(r, 0, 1) * u(r, 0, 1)));
    CHECK_THROWS(dx_invert(DiffPoly::theta_var(r, 0, 1)));
}
