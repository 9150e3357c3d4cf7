#include "drham/diffpoly.hpp"

#include <doctest.h>

using namespace drham;

namespace {

RingPtr ring2() { return make_ring(2, 6); }

DiffPoly u(const RingPtr &r, int a, int j) { return DiffPoly::u_var(r, a, j); }
DiffPoly th(const RingPtr &r, int a, int k) { return DiffPoly::theta_var(r, a, k); }

} // namespace

TEST_CASE("products and Koszul signs") {
    auto r = ring2();
    DiffPoly u1 = u(r, 0, 0);
    CHECK(u1 * u1 == DiffPoly::from_terms(r, {{[&] {
                                                   Mono m;
                                                   m.u = {{jet_id(0, 0), 2}};
                                                   return m;
                                               }(),
                                               Rat(1)}}));
    CHECK((th(r, 0, 0) * th(r, 0, 0)).is_zero());

    // (th_{1,0} th_{2,1}) th_{1,1} and th_{1,1} (th_{1,0} th_{2,1}) agree:
    // two transpositions give sign +1; both equal the sorted product
    DiffPoly a = th(r, 0, 0) * th(r, 1, 1);
    DiffPoly left = a * th(r, 0, 1);
    DiffPoly right = th(r, 0, 1) * a;
    CHECK(left == right);
    DiffPoly sorted = th(r, 0, 0) * th(r, 0, 1) * th(r, 1, 1);
    CHECK(left == -sorted); // moving th_{1,1} into place costs one transposition
    CHECK(th(r, 0, 0) * th(r, 1, 0) == -(th(r, 1, 0) * th(r, 0, 0)));
}

TEST_CASE("total x-derivative") {
    auto r = ring2();
    CHECK((u(r, 0, 0) * u(r, 0, 1)).dx() ==
          u(r, 0, 1) * u(r, 0, 1) + u(r, 0, 0) * u(r, 0, 2));
    CHECK((th(r, 0, 0) * u(r, 0, 0)).dx() ==
          th(r, 0, 1) * u(r, 0, 0) + th(r, 0, 0) * u(r, 0, 1));
    // theta clash: dx(th0 th1) keeps only the second bump
    CHECK((th(r, 0, 0) * th(r, 0, 1)).dx() == th(r, 0, 0) * th(r, 0, 2));
}

TEST_CASE("generator chain rule") {
    auto raw = std::make_shared<Ring>(2, 6);
    int e = raw->add_generator("E");
    Mono em;
    em.gen.emplace_back(uint16_t(e), 1);
    raw->set_generator_derivative(e, 1, {{em, Rat(1)}});
    RingPtr r = raw;
    DiffPoly E = DiffPoly::generator(r, 0);
    CHECK(E.dx() == E * u(r, 1, 1));
    CHECK((E * E).dx() == (E * E * u(r, 1, 1)).scaled(Rat(2)));
    CHECK(E.partial_u(1, 0) == E);
    CHECK(E.partial_u(0, 0).is_zero());
    // integration through the exponential factor
    DiffPoly p = E * u(r, 1, 0);
    DiffPoly q = p.integrate_u(1);
    CHECK(q.partial_u(1, 0) == p);
}

TEST_CASE("gradations") {
    auto r = ring2();
    DiffPoly a = (u(r, 0, 0) * u(r, 0, 2)).multiplied_by_eps(2);
    REQUIRE(a.standard_degree());
    CHECK(*a.standard_degree() == 0);
    DiffPoly b = th(r, 0, 0) * th(r, 1, 3);
    REQUIRE(b.standard_degree());
    CHECK(*b.standard_degree() == 3);
    CHECK(b.theta_degree_max() == 2);
    CHECK(*u(r, 0, 0).standard_degree() == 0);
    CHECK(!(u(r, 0, 0) + u(r, 0, 1)).standard_degree());
    // the eps-free theta monomial sorts first
    auto per_term = (a + b).gradations();
    REQUIRE(per_term.size() == 2);
    CHECK(per_term[0] == std::pair<long, int>{3, 2});
    CHECK(per_term[1] == std::pair<long, int>{0, 0});
}

TEST_CASE("scaling derivations") {
    auto r = make_ring(1, 6);
    DiffPoly u3 = (u(r, 0, 0) * u(r, 0, 0) * u(r, 0, 0)).scaled(Rat(1, 6));
    // trivial theory weights: c = 1, shift = 0, eps weight 1/2
    std::vector<Rat> c{Rat(1)}, s{Rat(0)};
    CHECK(scaling_derivation(u3, c, s, Rat(1, 2)) == u3.scaled(Rat(3)));
    DiffPoly disp = (u(r, 0, 0) * u(r, 0, 2)).multiplied_by_eps(2).scaled(Rat(1, 48));
    CHECK(scaling_derivation(disp, c, s, Rat(1, 2)) == disp.scaled(Rat(3)));
    // dilation weights n+1
    CHECK(dilation_D(u(r, 0, 0) * u(r, 0, 2)) == (u(r, 0, 0) * u(r, 0, 2)).scaled(Rat(4)));
}

TEST_CASE("epsilon truncation") {
    auto big = make_ring(1, 6), small = make_ring(1, 2);
    DiffPoly a = u(big, 0, 0).multiplied_by_eps(2) + u(big, 0, 1).multiplied_by_eps(4);
    CHECK(a.in_ring(small) == u(small, 0, 0).multiplied_by_eps(2));
    DiffPoly e2 = DiffPoly::eps_pow(big, 2);
    CHECK(e2.exp_truncated() ==
          DiffPoly::constant(big, Rat(1)) + DiffPoly::eps_pow(big, 2) +
              DiffPoly::eps_pow(big, 4).scaled(Rat(1, 2)) +
              DiffPoly::eps_pow(big, 6).scaled(Rat(1, 6)));
}

TEST_CASE("substitution") {
    auto r = make_ring(1, 4);
    Subst s;
    s.target = r;
    s.comp = {u(r, 0, 0) + u(r, 0, 2).multiplied_by_eps(2)};
    DiffPoly p = u(r, 0, 0) * u(r, 0, 1);
    DiffPoly got = substitute(p, s);
    DiffPoly v = s.comp[0];
    CHECK(got == v * v.dx());
}
