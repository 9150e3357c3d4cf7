#ifndef DRHAM_RING_HPP
#define DRHAM_RING_HPP

#include "drham/monomial.hpp"
#include "drham/rational.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace drham {

/// A declared transcendental generator: a symbol that commutes with
/// everything and differentiates through a fixed table d(gen)/du^alpha.
/// Table values are raw term lists (monomial, coefficient) over the same
/// ring; they may involve jet-order-0 variables and generators only.
struct Generator {
    std::string name;
    std::map<int, std::vector<std::pair<Mono, Rat>>> du; // alpha -> d(gen)/du^alpha
    Rat origin = Rat(1);                                 // value at u = 0
};

/// Ring signature: number of dependent components, the global epsilon
/// truncation order, and the generator set. Shared immutably by all values.
class Ring {
  public:
    Ring(int n_components, int eps_cap) : n_(n_components), eps_cap_(eps_cap) {
        if (n_components < 1) throw std::invalid_argument("Ring: need at least one component");
        if (eps_cap < 0) throw std::invalid_argument("Ring: negative eps cap");
    }

    int n() const { return n_; }
    int eps_cap() const { return eps_cap_; }

    int add_generator(const std::string &name) {
        gens_.push_back(Generator{name, {}});
        return int(gens_.size()) - 1;
    }
    void set_generator_derivative(int g, int alpha, std::vector<std::pair<Mono, Rat>> terms) {
        gens_.at(g).du[alpha] = std::move(terms);
    }
    void set_generator_origin(int g, Rat origin) { gens_.at(g).origin = std::move(origin); }
    const std::vector<Generator> &generators() const { return gens_; }

    bool same_signature(const Ring &o) const {
        if (n_ != o.n_ || eps_cap_ != o.eps_cap_ || gens_.size() != o.gens_.size()) return false;
        for (size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name != o.gens_[i].name) return false;
        return true;
    }

  private:
    int n_;
    int eps_cap_;
    std::vector<Generator> gens_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(int n, int eps_cap) { return std::make_shared<Ring>(n, eps_cap); }

} // namespace drham

#endif
