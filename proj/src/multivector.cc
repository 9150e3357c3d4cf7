#include "drham/multivector.hpp"

namespace drham {

MultiVector bivector_of_op(const MatDiffOp &K, bool check_skew) {
    if (check_skew && !K.is_skew()) throw std::invalid_argument("bivector_of_op: operator is not skew");
    const auto ring = K.ring();
    DiffPoly d(ring);
    for (int a = 0; a < K.n(); ++a)
        for (int b = 0; b < K.n(); ++b)
            for (auto &[s, c] : K.at(a, b).coeffs())
                d += (c * DiffPoly::theta_var(ring, a, 0) * DiffPoly::theta_var(ring, b, s))
                         .scaled(Rat(1, 2));
    return MultiVector(d);
}

MatDiffOp op_of_bivector(const MultiVector &B) {
    if (B.theta_degree() != 2) throw std::invalid_argument("op_of_bivector: theta degree must be 2");
    const auto ring = B.ring();
    MatDiffOp K(ring, ring->n());
    for (int a = 0; a < ring->n(); ++a) {
        DiffPoly q = B.var_theta(a); // sum_s K^{ab}_s theta_{b,s}
        for (auto &[m, c] : q.terms()) {
            if (m.th.size() != 1) throw std::logic_error("op_of_bivector: unexpected theta structure");
            Mono rest = m;
            uint32_t id = rest.th[0];
            rest.th.clear();
            DiffPoly coeff(ring);
            coeff.add_term(rest, c);
            K.at(a, id_alpha(id)).add(id_jet(id), coeff);
        }
    }
    return K;
}

MultiVector vector_field_of(const std::vector<DiffPoly> &Q) {
    const auto ring = Q.at(0).ring();
    DiffPoly d(ring);
    for (int a = 0; a < int(Q.size()); ++a) d += Q[a] * DiffPoly::theta_var(ring, a, 0);
    return MultiVector(d);
}

std::vector<DiffPoly> tuple_of_vector_field(const MultiVector &V) {
    if (V.theta_degree() != 1) throw std::invalid_argument("tuple_of_vector_field: theta degree must be 1");
    const auto ring = V.ring();
    std::vector<DiffPoly> Q(ring->n(), DiffPoly(ring));
    for (int a = 0; a < ring->n(); ++a) Q[a] = V.var_theta(a);
    return Q;
}

MultiVector schouten(const MultiVector &P, const MultiVector &Q) {
    const auto ring = P.ring();
    DiffPoly d(ring);
    const bool odd = P.theta_degree() % 2 == 1;
    for (int a = 0; a < ring->n(); ++a) {
        d += P.var_theta(a) * Q.var_u(a);
        DiffPoly second = P.var_u(a) * Q.var_theta(a);
        d += odd ? -second : second;
    }
    return MultiVector(d);
}

bool is_poisson(const MatDiffOp &K) {
    if (!K.is_skew()) throw std::invalid_argument("is_poisson: operator is not skew");
    MultiVector B = bivector_of_op(K, false);
    return is_zero_functional(schouten(B, B));
}

bool schouten_commute(const MatDiffOp &K1, const MatDiffOp &K2) {
    MultiVector B1 = bivector_of_op(K1);
    MultiVector B2 = bivector_of_op(K2);
    return is_zero_functional(schouten(B1, B2));
}

bool compatible(const MatDiffOp &K1, const MatDiffOp &K2, bool check_poisson) {
    if (check_poisson && !(is_poisson(K1) && is_poisson(K2)))
        throw std::invalid_argument("compatible: both operators must be Poisson");
    return schouten_commute(K1, K2);
}

MatDiffOp commutator_VQ_BK(const std::vector<DiffPoly> &Q, const MatDiffOp &K) {
    const auto ring = K.ring();
    const int n = K.n();
    // Frechet derivatives of Q, shared across entries
    std::vector<std::vector<ScalarDiffOp>> L(n);
    for (int a = 0; a < n; ++a)
        for (int mu = 0; mu < n; ++mu) L[a].push_back(frechet_L(Q[a], mu, 0));
    MatDiffOp out(ring, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ScalarDiffOp acc(ring);
            for (int mu = 0; mu < n; ++mu) {
                acc += compose(L[a][mu], K.at(mu, b));
                acc += compose(K.at(a, mu), L[b][mu].adjoint());
            }
            // - sum_{p,s} (dx^p Q^gamma) dK^{ab}_s/du^gamma_p dx^s
            for (auto &[s, c] : K.at(a, b).coeffs()) {
                const int top = c.max_jet();
                for (int gamma = 0; gamma < n; ++gamma) {
                    DiffPoly qd = Q[gamma];
                    for (int p = 0; p <= top; ++p) {
                        if (p > 0) qd = qd.dx();
                        DiffPoly dc = c.partial_u(gamma, p);
                        if (dc.is_zero()) continue;
                        ScalarDiffOp t(ring);
                        t.add(s, qd * dc);
                        acc -= t;
                    }
                }
            }
            out.at(a, b) = acc;
        }
    return out;
}

} // namespace drham
