#ifndef DRHAM_MODELS_HPP
#define DRHAM_MODELS_HPP

#include "drham/drk2.hpp"

#include <string>

namespace drham {

/// Bernoulli numbers B_0..B_n by the defining recurrence (B_1 = -1/2).
std::vector<Rat> bernoulli(int n);

/// Formal shift operator e^{a eps dx} truncated at the ring's eps cap.
ScalarDiffOp shift_exp(const RingPtr &ring, const Rat &a);
/// Power series c_0 + c_1 (eps dx) + ... as a constant-coefficient operator.
ScalarDiffOp series_op(const RingPtr &ring, const std::vector<Rat> &c);
/// Coefficients of S(z) = (e^{z/2}-e^{-z/2})/z and of S~(z) = (e^{z/2}+e^{-z/2})/2.
std::vector<Rat> s_series(int order);
std::vector<Rat> s_tilde_series(int order);
std::vector<Rat> invert_series(const std::vector<Rat> &c);

/// Built-in models. `two_g_max` is the eps truncation order of the ring.
CohFTModel builtin_trivial(int two_g_max = 6);
CohFTModel builtin_rspin(int r, int two_g_max = 6); // r = 3, 4
CohFTModel builtin_cp1(int two_g_max = 6);
CohFTModel builtin_model(const std::string &name, int two_g_max = 6);

/// The r-spin homogeneity data alone (also used for r = 5 ingestion).
HomogeneityData rspin_homogeneity(int r);

/// Generating density of the r-spin theory reconstructed from the level (1,1)
/// Hamiltonian of the normalised GD pipeline, expressed in the DR coordinates.
/// For r = 3, 4 this reproduces the stated builtin densities; for r = 5 it
/// produces the density that is otherwise ingested from a file.
CohFTModel rspin_model_from_gd(int r, int two_g_max);

/// Expected operators transcribed from the closed-form displays.
MatDiffOp expected_k2_kdv(const RingPtr &ring);
MatDiffOp expected_k2_3spin(const RingPtr &ring);
MatDiffOp expected_k2_4spin(const RingPtr &ring);
MatDiffOp expected_k2_cp1(const RingPtr &ring);

/// Extended Toda pair in the v-variables (same layout as the cp1 ring).
struct TodaPair {
    RingPtr ring;
    MatDiffOp k1, k2;
};
TodaPair builtin_toda(int two_g_max = 6);
/// The map v -> u joining the Toda pair to (eta^{-1} dx, K2); returns the map
/// together with the inverse substitution into the cp1 ring.
std::pair<MiuraMap, Subst> toda_to_dr(const TodaPair &toda, const RingPtr &cp1_ring);

/// Genus <= 1 density from a Frobenius potential:
/// F - (eps^2/48) c^t_{t x} c^x_{a b} u^a_x u^b_x.
DiffPoly genus1_g_from_potential(const DiffPoly &F, const std::vector<std::vector<Rat>> &eta);

/// JSON model files, schema "drham-model/1".
CohFTModel load_model(const std::string &path, int two_g_max = 6);
void save_model(const CohFTModel &m, const std::string &path);

} // namespace drham

#endif
