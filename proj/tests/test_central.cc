#include "drham/central.hpp"
#include "drham/models.hpp"

#include <doctest.h>

using namespace drham;

TEST_CASE("scalar central invariant of the KdV pencil") {
    auto m = builtin_trivial(6);
    MatDiffOp K1 = k1_operator(m.ring, m.h.eta_inv());
    MatDiffOp K2 = build_K2(m);
    CHECK(central_invariant_scalar(K1, K2).equals_constant(Rat(1, 24)));
    // no dispersion: invariant 0
    MatDiffOp nod = K2;
    nod.at(0, 0) = ScalarDiffOp(m.ring);
    nod.at(0, 0).add(1, DiffPoly::u_var(m.ring, 0, 0));
    nod.at(0, 0).add(0, DiffPoly::u_var(m.ring, 0, 1).scaled(Rat(1, 2)));
    CHECK(central_invariant_scalar(K1, nod).equals_constant(Rat(0)));
    // scaled dispersion: invariant s
    MatDiffOp scaled = nod;
    scaled.at(0, 0).add(3, DiffPoly::eps_pow(m.ring, 2).scaled(Rat(3) * Rat(5, 7)));
    CHECK(central_invariant_scalar(K1, scaled).equals_constant(Rat(5, 7)));
}

TEST_CASE("eps^2 tensor identity for the builtin models") {
    CHECK(eps2_tensor_check(builtin_trivial(2)));
    CHECK(eps2_tensor_check(builtin_rspin(3, 2)));
}
