#ifndef DRHAM_DRK2_HPP
#define DRHAM_DRK2_HPP

#include "drham/multivector.hpp"

#include <map>
#include <optional>
#include <string>

namespace drham {

/// Homogeneity data of a rank-N model: metric, unit coordinates, charges,
/// shifts, conformal dimension, and the derived diagonal mu.
struct HomogeneityData {
    int n = 0;
    std::vector<std::vector<Rat>> eta;
    std::vector<Rat> unit;   // coordinates of the unit vector
    std::vector<Rat> q;      // charges
    std::vector<Rat> r;      // shifts
    Rat delta;               // conformal dimension
    std::vector<std::vector<Rat>> a_matrix; // A_{alpha beta}

    std::vector<Rat> mu() const; // mu_alpha = q_alpha - delta/2
    std::vector<std::vector<Rat>> eta_inv() const;
    /// A^beta_alpha = eta^{beta nu} A_{nu alpha}.
    std::vector<std::vector<Rat>> a_upper() const;
    /// Checks symmetry of eta and A, invertibility, and mu eta + eta mu = 0.
    void validate() const;
};

struct CohFTModel {
    std::string name;
    HomogeneityData h;
    RingPtr ring;
    DiffPoly gbar;                      // density of the generating functional
    std::optional<DiffPoly> potential;  // F, in jet order 0 variables
    std::map<std::pair<int, int>, DiffPoly> known; // (alpha,d) -> known density
    bool eps_exact = true;              // false when gbar is a truncated series

    std::string scope() const;
};

/// Euler-type operator of the homogeneity data applied to a theta-free value.
DiffPoly euler_Ehat(const DiffPoly &p, const HomogeneityData &h);

/// E-hat gbar = (3 - delta) gbar + int 1/2 A_{ab} u^a u^b dx, as functionals.
bool check_homogeneity(const CohFTModel &m);

enum class K2Form { defining, alternative };

/// The conjectural second Poisson operator built from a density and
/// homogeneity data.
MatDiffOp build_K2(const DiffPoly &gbar, const HomogeneityData &h, K2Form form);
MatDiffOp build_K2(const CohFTModel &m, K2Form form = K2Form::alternative);

/// N-tuple R with B_{K2} = [V_R, B_{K1}] for the given density choice.
std::vector<DiffPoly> r_vector_field(const DiffPoly &g_density, const HomogeneityData &h);

/// Hamiltonian table indexed by (alpha, level).
using HamTable = std::map<std::pair<int, int>, LocalFunctional>;

/// The Casimirs int eta_{a b} u^b dx at level -1.
HamTable casimirs(const HomogeneityData &h, const RingPtr &ring);

struct RecursionStep {
    int alpha = 0;
    int d = 0;
    bool pass = false;
    std::string note;
};

/// Checks {., g_{a,d}}_{K2} = (d + 3/2 + mu_a) {., g_{a,d+1}}_{K1}
///                          + A^b_a {., g_{b,d}}_{K1}
/// for every level d with both levels present in the table.
std::vector<RecursionStep> recursion_check(const HomogeneityData &h, const MatDiffOp &K2,
                                           const HamTable &table);

struct GenerateResult {
    HamTable table;
    std::vector<RecursionStep> log;
    bool ok = true;
};

/// Solves the recursion upward from the Casimirs through level d_top,
/// checking exactness, integrability, and mutual commutativity.
GenerateResult recursion_generate(const HomogeneityData &h, const MatDiffOp &K2,
                                  const RingPtr &ring, int d_top,
                                  std::optional<HamTable> start = std::nullopt);

/// Two-point function tables of the genus-0 theory built from the potential.
struct Genus0Tables {
    // omega[d + 1][alpha][gamma] = Omega_{gamma,0;alpha,d}, d from -1
    std::vector<std::vector<std::vector<DiffPoly>>> omega;
};

Genus0Tables build_genus0_tables(const DiffPoly &F, const HomogeneityData &h, int d_max);

/// Dispersionless second operator g^{ab} dx + (dx Omega^{ab}) (1/2 - mu_b)
/// built from the potential.
MatDiffOp genus0_k2(const DiffPoly &F, const HomogeneityData &h);

struct Genus0Report {
    bool unit_axiom = false;
    std::vector<RecursionStep> recursion;
    std::vector<RecursionStep> homogeneity;
    bool ok() const;
};

/// Dispersionless recursion and the homogeneity identity on the tables.
Genus0Report genus0_check(const CohFTModel &m, int d_max);

} // namespace drham

#endif
