#include "drham/central.hpp"

namespace drham {

RationalOfU central_invariant_scalar(const MatDiffOp &P1, const MatDiffOp &P2) {
    if (P1.n() != 1 || P2.n() != 1)
        throw std::invalid_argument("central_invariant_scalar: scalar pencils only");
    DiffPoly g1 = P1.at(0, 0).coeff(1).eps_coefficient(0);
    DiffPoly g2 = P2.at(0, 0).coeff(1).eps_coefficient(0);
    if (g1.is_zero()) throw std::domain_error("central_invariant_scalar: degenerate leading symbol");
    DiffPoly p13 = P1.at(0, 0).coeff(3).eps_coefficient(2);
    DiffPoly p23 = P2.at(0, 0).coeff(3).eps_coefficient(2);
    // c = (P2_3 - (g2/g1) P1_3) / (3 g1^2) = (g1 P2_3 - g2 P1_3) / (3 g1^3)
    RationalOfU c;
    c.num = g1 * p23 - g2 * p13;
    c.den = (g1 * g1 * g1).scaled(Rat(3));
    return c;
}

bool eps2_tensor_check(const CohFTModel &m) {
    if (!m.potential) throw std::invalid_argument("eps2_tensor_check: model has no potential");
    if (m.ring->eps_cap() < 2) throw std::invalid_argument("eps2_tensor_check: eps cap below 2");
    const auto ring = m.ring;
    const int n = m.h.n;
    const DiffPoly &F = *m.potential;
    auto ei = m.h.eta_inv();
    auto mu = m.h.mu();

    MatDiffOp K2 = build_K2(m, K2Form::alternative);

    // c^{xi a b} = eta^{a i} eta^{b j} c^xi_{i j}; trace c^t_{t xi}
    std::vector<std::vector<std::vector<DiffPoly>>> c_low(
        n, std::vector<std::vector<DiffPoly>>(n, std::vector<DiffPoly>(n, DiffPoly(ring))));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int g = 0; g < n; ++g)
                c_low[a][b][g] = F.partial_u(a, 0).partial_u(b, 0).partial_u(g, 0);
    std::vector<DiffPoly> trace(n, DiffPoly(ring)); // c^t_{t xi}
    for (int xi = 0; xi < n; ++xi)
        for (int t = 0; t < n; ++t)
            for (int mu2 = 0; mu2 < n; ++mu2)
                if (!ei[t][mu2].is_zero()) trace[xi] += c_low[mu2][t][xi].scaled(ei[t][mu2]);

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            DiffPoly lhs = K2.at(a, b).coeff(3).eps_coefficient(2);
            DiffPoly rhs(ring);
            for (int xi = 0; xi < n; ++xi) {
                DiffPoly c_up(ring); // c^{xi a b}: all three indices raised
                for (int mm = 0; mm < n; ++mm)
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) {
                            Rat w = ei[xi][mm] * ei[a][i] * ei[b][j];
                            if (!w.is_zero()) c_up += c_low[mm][i][j].scaled(w);
                        }
                rhs += trace[xi] * c_up;
            }
            rhs = rhs.scaled((Rat(3) - mu[a] - mu[b]) * Rat(1, 24));
            if (!(lhs == rhs)) return false;
        }
    return true;
}

} // namespace drham
