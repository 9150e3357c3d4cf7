#ifndef DRHAM_RANDOM_HPP
#define DRHAM_RANDOM_HPP

#include "drham/drk2.hpp"

#include <cstdint>

namespace drham {

/// Deterministic splitmix64 stream; identical across platforms for a seed.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}
    uint64_t next();
    /// Uniform in [0, n).
    uint64_t below(uint64_t n);
    long range(long lo, long hi); // inclusive
    Rat rat(long max_abs_num = 6, long max_den = 4);
    Rat nonzero_rat(long max_abs_num = 6, long max_den = 4);

  private:
    uint64_t state_;
};

struct RandomSpec {
    int max_jet = 3;
    int max_eps = 2;
    int max_theta_order = 2;
    int terms = 4;
    int max_vars_per_term = 3;
    int theta_degree = 0;
};

DiffPoly random_poly(Rng &rng, const RingPtr &ring, const RandomSpec &spec);
ScalarDiffOp random_scalar_op(Rng &rng, const RingPtr &ring, const RandomSpec &spec, int max_order);
MatDiffOp random_mat_op(Rng &rng, const RingPtr &ring, const RandomSpec &spec, int max_order);
MatDiffOp random_skew_op(Rng &rng, const RingPtr &ring, const RandomSpec &spec, int max_order);
/// Close-to-identity Miura map with polynomial corrections.
MiuraMap random_miura(Rng &rng, const RingPtr &ring);
/// Valid homogeneity data: an eta pattern with matching diagonal mu
/// (so that mu eta + eta mu = 0) and a random symmetric A.
HomogeneityData random_homogeneity(Rng &rng, int n);

} // namespace drham

#endif
