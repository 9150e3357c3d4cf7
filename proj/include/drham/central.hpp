#ifndef DRHAM_CENTRAL_HPP
#define DRHAM_CENTRAL_HPP

#include "drham/drk2.hpp"

namespace drham {

/// Exact ratio of jet-order-0 differential polynomials.
struct RationalOfU {
    DiffPoly num, den;
    bool equals_constant(const Rat &c) const { return num == den.scaled(c); }
    std::string str() const { return "(" + num.str() + ") / (" + den.str() + ")"; }
};

/// Central invariant of a scalar (N = 1) pencil (P1, P2) of degree-1 Poisson
/// operators: c(u-hat) = (P2^{[2]}_3 - u-hat P1^{[2]}_3) / (3 f^2) with
/// u-hat = g2/g1 and f = g1 the dispersionless leading coefficients.
RationalOfU central_invariant_scalar(const MatDiffOp &P1, const MatDiffOp &P2);

/// The eps^2 dx^3 coefficient identity of the pencil:
/// K^{[2],ab}_{2;3} = (1/24)(3 - mu_a - mu_b) c^t_{t xi} c^{xi a b},
/// with the c-tensor built from the model potential. Exact comparison.
bool eps2_tensor_check(const CohFTModel &m);

} // namespace drham

#endif
