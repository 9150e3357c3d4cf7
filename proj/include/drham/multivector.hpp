#ifndef DRHAM_MULTIVECTOR_HPP
#define DRHAM_MULTIVECTOR_HPP

#include "drham/variational.hpp"

namespace drham {

/// B_K = 1/2 int sum K^{ab}_s theta_{a,0} theta_{b,s} dx for skew K.
MultiVector bivector_of_op(const MatDiffOp &K, bool check_skew = true);

/// Inverse of the bijection: reads K off delta B / delta theta_a. The result
/// is the unique skew representative.
MatDiffOp op_of_bivector(const MultiVector &B);

/// Local vector field V_Q = int Q^a theta_a dx of an N-tuple Q.
MultiVector vector_field_of(const std::vector<DiffPoly> &Q);
/// N-tuple of a local vector field (coefficients of theta after reduction).
std::vector<DiffPoly> tuple_of_vector_field(const MultiVector &V);

/// Schouten-Nijenhuis bracket on local multivector fields.
MultiVector schouten(const MultiVector &P, const MultiVector &Q);

/// [B_K, B_K] = 0 test. Rejects non-skew input.
bool is_poisson(const MatDiffOp &K);

/// Mixed bracket test [B_{K1}, B_{K2}] = 0 (callers ensure both are Poisson
/// when the pencil statement is wanted).
bool schouten_commute(const MatDiffOp &K1, const MatDiffOp &K2);
bool compatible(const MatDiffOp &K1, const MatDiffOp &K2, bool check_poisson = true);

/// Closed form of [V_Q, B_K] = -B_{Ktilde}: returns Ktilde.
MatDiffOp commutator_VQ_BK(const std::vector<DiffPoly> &Q, const MatDiffOp &K);

} // namespace drham

#endif
