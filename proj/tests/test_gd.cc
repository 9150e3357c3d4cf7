#include "drham/gd.hpp"
#include "drham/models.hpp"

#include <doctest.h>

using namespace drham;

TEST_CASE("pseudo-differential basics") {
    auto r = make_ring(1, 0);
    DiffPoly f = DiffPoly::u_var(r, 0, 0);
    // dx^{-1} o f = f dx^{-1} - f_x dx^{-2} + f_xx dx^{-3} - ...
    PseudoDiffOp p = PseudoDiffOp::dxn_mul(r, -1, f, -3);
    CHECK(p.coeff(-1) == f);
    CHECK(p.coeff(-2) == -DiffPoly::u_var(r, 0, 1));
    CHECK(p.coeff(-3) == DiffPoly::u_var(r, 0, 2));
    PseudoDiffOp one = compose(PseudoDiffOp::dx_power(r, 1), PseudoDiffOp::dx_power(r, -1), -4);
    CHECK(one.coeff(0) == DiffPoly::constant(r, Rat(1)));
    CHECK(one.coeff(-1).is_zero());
    CHECK(PseudoDiffOp::dx_power(r, -1).residue() == DiffPoly::constant(r, Rat(1)));
    PseudoDiffOp mixed(r, -2);
    mixed.add(2, DiffPoly::constant(r, Rat(1)));
    mixed.add(-1, f);
    CHECK(mixed.plus_part() == ScalarDiffOp::dx(r, 2));
}

TEST_CASE("square root of the order-2 Lax operator") {
    GDContext ctx(2);
    const PseudoDiffOp &root = ctx.root_power(1);
    DiffPoly f0 = DiffPoly::u_var(ctx.ring, 0, 0);
    CHECK(root.coeff(1) == DiffPoly::constant(ctx.ring, Rat(1)));
    CHECK(root.coeff(0).is_zero());
    CHECK(root.coeff(-1) == f0.scaled(Rat(1, 2)));
    CHECK(root.coeff(-2) == DiffPoly::u_var(ctx.ring, 0, 1).scaled(Rat(-1, 4)));
    CHECK(ctx.fractional_power(0, 1).residue() == f0.scaled(Rat(1, 2)));
}

TEST_CASE("re-powering the cube root") {
    GDContext ctx(3);
    PseudoDiffOp back = ctx.root_power(1).power(3, 2 - ctx.m_trunc);
    for (int n = back.floor(); n <= 3; ++n) CHECK(back.coeff(n) == ctx.lax.coeff(n));
}

TEST_CASE("GD Hamiltonians at r = 2") {
    GDContext ctx(2);
    // alpha = 1, a = -1: -(2/1) int res L^{1/2} = - int f0
    LocalFunctional h = gd_hamiltonian(ctx, 1, -1);
    CHECK(h.density() == -DiffPoly::u_var(ctx.ring, 0, 0));
    // Casimir of the first structure
    MatDiffOp k1 = gd_k1(ctx);
    CHECK(k1.at(0, 0) == ScalarDiffOp::dx(ctx.ring).scaled(Rat(-2)));
    std::vector<DiffPoly> grad{h.var_u(0)};
    CHECK(k1.apply(grad)[0].is_zero());
}

TEST_CASE("the r = 2 pipeline reproduces the KdV pair") {
    RSpinPackage pkg = rspin_package(2, 1);
    CHECK(pkg.k1 == k1_operator(pkg.wring, {{Rat(1)}}));
    auto target = make_ring(1, 6);
    MatDiffOp emb = embed_eps_op(pkg.k2, target);
    CHECK(emb == expected_k2_kdv(target));
    for (auto &[key, ok] : dz_recursion_check(pkg)) CHECK(ok);
}

TEST_CASE("the r = 3 package matches the displayed operator") {
    RSpinPackage pkg = rspin_package(3, 0);
    HomogeneityData h = rspin_homogeneity(3);
    CHECK(pkg.k1 == k1_operator(pkg.wring, h.eta_inv()));
    auto target = make_ring(2, 6);
    CHECK(embed_eps_op(pkg.k2, target) == expected_k2_3spin(target));
}

TEST_CASE("extension scalars") {
    ExtScalar::s_sq = Rat(-3);
    ExtScalar a(Rat(2), Rat(1)); // 2 + s
    ExtScalar b = a * a;         // 4 + 4s + s^2 = 1 + 4s
    CHECK(b.re == Rat(1));
    CHECK(b.im == Rat(4));
    ExtScalar inv = a.inv();
    ExtScalar one = a * inv;
    CHECK(one.re == Rat(1));
    CHECK(one.im == Rat(0));
    CHECK(ExtScalar::s_power(3).im == Rat(-3));
}

TEST_CASE("density reconstruction from the level (1,1) Hamiltonian") {
    // the GD pipeline plus dilation inversion must reproduce the stated
    // generating densities
    for (int r : {3, 4}) {
        CohFTModel rebuilt = rspin_model_from_gd(r, 2 * (r - 1));
        CohFTModel stated = builtin_rspin(r, rebuilt.ring->eps_cap());
        CHECK(functional_equal(LocalFunctional(rebuilt.gbar),
                               LocalFunctional(stated.gbar.in_ring(rebuilt.ring))));
        CHECK(check_homogeneity(rebuilt));
    }
}

TEST_CASE("eps embedding") {
    auto flat = make_ring(1, 0);
    auto target = make_ring(1, 6);
    DiffPoly p = DiffPoly::u_var(flat, 0, 0) * DiffPoly::u_var(flat, 0, 2);
    DiffPoly e = embed_eps(p, target);
    CHECK(e == (DiffPoly::u_var(target, 0, 0) * DiffPoly::u_var(target, 0, 2)).multiplied_by_eps(2));
}
