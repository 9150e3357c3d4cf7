#ifndef DRHAM_VARIATIONAL_HPP
#define DRHAM_VARIATIONAL_HPP

#include "drham/diffpoly.hpp"
#include "drham/operators.hpp"

#include <memory>
#include <mutex>
#include <vector>

namespace drham {

/// Variational derivative sum_i (-dx)^i d/du^alpha_i.
DiffPoly var_derivative_u(const DiffPoly &f, int alpha);
/// Variational derivative sum_i (-dx)^i d/dtheta_{alpha,i}.
DiffPoly var_derivative_theta(const DiffPoly &f, int alpha);

/// Higher Euler operator T_{alpha,k} = sum_{n>=k} binom(n,k) (-dx)^{n-k} d/du^alpha_n.
DiffPoly higher_euler(const DiffPoly &f, int alpha, int k);

/// L^k_alpha(f) = sum_{i>=k} binom(i,k) (df/du^alpha_i) dx^{i-k}.
ScalarDiffOp frechet_L(const DiffPoly &f, int alpha, int k);

/// A density considered modulo constants and total x-derivatives. For theta
/// degree 0 this is a local functional; for degree p a local p-vector field.
/// Variational derivatives are memoised behind a shared lock, so copies are
/// cheap and instances stay observably pure.
class MultiVector {
  public:
    MultiVector() = default;
    explicit MultiVector(DiffPoly density);

    const DiffPoly &density() const { return d_; }
    const RingPtr &ring() const { return d_.ring(); }
    int theta_degree() const { return p_; }

    DiffPoly var_u(int alpha) const;
    DiffPoly var_theta(int alpha) const;
    std::vector<DiffPoly> gradient() const; // all var_u components

  private:
    DiffPoly d_;
    int p_ = 0;
    struct Cache {
        std::mutex m;
        std::vector<std::pair<bool, DiffPoly>> vu, vth;
    };
    std::shared_ptr<Cache> cache_;
};

using LocalFunctional = MultiVector;

/// Zero test in the quotient space: all variational derivatives vanish.
bool is_zero_functional(const MultiVector &f);
bool functional_equal(const MultiVector &f, const MultiVector &g);

/// {f,g}_K = int (df/du^mu K^{mu nu} dg/du^nu) dx. Rejects non-skew K.
LocalFunctional poisson_bracket(const LocalFunctional &f, const LocalFunctional &g,
                                const MatDiffOp &K, bool check_skew = true);

/// Omega-hat^k matrix eta^{a mu} eta^{b nu} L^k_nu(delta h / delta u^mu).
MatDiffOp omega_hat(const LocalFunctional &h, int k, const std::vector<std::vector<Rat>> &eta);

/// Whether E is a variational gradient: L_mu(E_nu)^dagger = L_nu(E_mu).
bool helmholtz_ok(const std::vector<DiffPoly> &E);

/// Reconstructs h with delta h / delta u = E through the homotopy
/// h = int_0^1 u^mu E_mu(lambda u) dlambda, normalised to vanish at u = 0.
/// Rejects non-gradients and generator-bearing input.
LocalFunctional functional_from_variational(const std::vector<DiffPoly> &E);

/// Finds q with p - dx(q) constant in eps; throws if p is not in
/// C[[eps]] + Im dx. Input must be free of theta factors.
DiffPoly dx_invert(const DiffPoly &p);
bool is_dx_exact(const DiffPoly &p);

} // namespace drham

#endif
