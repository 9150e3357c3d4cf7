#include "drham/random.hpp"

namespace drham {

uint64_t Rng::next() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t Rng::below(uint64_t n) { return n == 0 ? 0 : next() % n; }

long Rng::range(long lo, long hi) { return lo + long(below(uint64_t(hi - lo + 1))); }

Rat Rng::rat(long max_abs_num, long max_den) {
    long num = range(-max_abs_num, max_abs_num);
    long den = range(1, max_den);
    return Rat(num, den);
}

Rat Rng::nonzero_rat(long max_abs_num, long max_den) {
    Rat r = rat(max_abs_num, max_den);
    return r.is_zero() ? Rat(1) : r;
}

DiffPoly random_poly(Rng &rng, const RingPtr &ring, const RandomSpec &spec) {
    DiffPoly p(ring);
    for (int t = 0; t < spec.terms; ++t) {
        Mono m;
        m.eps = int(rng.below(uint64_t(std::min(spec.max_eps, ring->eps_cap()) + 1)));
        int nvars = int(rng.below(uint64_t(spec.max_vars_per_term + 1)));
        std::vector<std::pair<uint32_t, int>> u;
        for (int v = 0; v < nvars; ++v) {
            uint32_t id = jet_id(int(rng.below(uint64_t(ring->n()))),
                                 int(rng.below(uint64_t(spec.max_jet + 1))));
            bool merged = false;
            for (auto &pr : u)
                if (pr.first == id) {
                    pr.second += 1;
                    merged = true;
                }
            if (!merged) u.emplace_back(id, 1);
        }
        std::sort(u.begin(), u.end());
        m.u = std::move(u);
        // distinct theta factors, kept sorted (canonical sign absorbed)
        std::vector<uint32_t> th;
        for (int k = 0; k < spec.theta_degree; ++k) {
            uint32_t id = jet_id(int(rng.below(uint64_t(ring->n()))),
                                 int(rng.below(uint64_t(spec.max_theta_order + 1))));
            if (std::find(th.begin(), th.end(), id) == th.end()) th.push_back(id);
        }
        if (int(th.size()) != spec.theta_degree) continue; // collision, drop the term
        std::sort(th.begin(), th.end());
        m.th = std::move(th);
        p.add_term(m, rng.rat());
    }
    if (spec.theta_degree > 0) {
        // keep the result theta-homogeneous even if all draws collided
        DiffPoly q(ring);
        for (auto &[m, c] : p.terms())
            if (m.theta_degree() == spec.theta_degree) q.add_term(m, c);
        return q;
    }
    return p;
}

ScalarDiffOp random_scalar_op(Rng &rng, const RingPtr &ring, const RandomSpec &spec, int max_order) {
    ScalarDiffOp op(ring);
    int nterms = int(rng.below(3)) + 1;
    for (int t = 0; t < nterms; ++t)
        op.add(int(rng.below(uint64_t(max_order + 1))), random_poly(rng, ring, spec));
    return op;
}

MatDiffOp random_mat_op(Rng &rng, const RingPtr &ring, const RandomSpec &spec, int max_order) {
    MatDiffOp k(ring, ring->n());
    for (int i = 0; i < k.n(); ++i)
        for (int j = 0; j < k.n(); ++j) k.at(i, j) = random_scalar_op(rng, ring, spec, max_order);
    return k;
}

MatDiffOp random_skew_op(Rng &rng, const RingPtr &ring, const RandomSpec &spec, int max_order) {
    MatDiffOp a = random_mat_op(rng, ring, spec, max_order);
    return a - a.adjoint();
}

MiuraMap random_miura(Rng &rng, const RingPtr &ring) {
    MiuraMap m;
    m.ring = ring;
    RandomSpec spec;
    spec.max_jet = 2;
    spec.max_eps = std::min(2, ring->eps_cap());
    spec.terms = 2;
    spec.max_vars_per_term = 2;
    for (int a = 0; a < ring->n(); ++a) {
        DiffPoly corr = random_poly(rng, ring, spec);
        // strip the eps^0 slice so the map is close to identity
        corr -= corr.eps_coefficient(0);
        m.expr.push_back(DiffPoly::u_var(ring, a, 0) + corr);
    }
    return m;
}

HomogeneityData random_homogeneity(Rng &rng, int n) {
    HomogeneityData h;
    h.n = n;
    h.eta.assign(n, std::vector<Rat>(n, Rat(0)));
    h.a_matrix.assign(n, std::vector<Rat>(n, Rat(0)));
    h.unit.assign(n, Rat(0));
    h.unit[0] = Rat(1);
    bool antidiag = n > 1 && rng.below(2) == 0;
    std::vector<Rat> mu(n, Rat(0));
    if (antidiag) {
        for (int a = 0; 2 * a < n; ++a) {
            Rat v = rng.nonzero_rat(3, 2);
            h.eta[a][n - 1 - a] = v;
            h.eta[n - 1 - a][a] = v;
            Rat w = rng.rat(3, 2);
            mu[a] = w;
            mu[n - 1 - a] = -w;
        }
        if (n % 2 == 1) mu[n / 2] = Rat(0);
    } else {
        for (int a = 0; a < n; ++a) h.eta[a][a] = rng.nonzero_rat(3, 2);
        // diagonal eta forces mu = 0
    }
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Rat v = rng.rat(3, 2);
            h.a_matrix[a][b] = v;
            h.a_matrix[b][a] = v;
        }
    // encode mu through q with delta = 0
    h.delta = Rat(0);
    for (int a = 0; a < n; ++a) {
        h.q.push_back(mu[a]);
        h.r.push_back(rng.rat(2, 2));
    }
    h.validate();
    return h;
}

} // namespace drham
