// Seeded random generators for property tests: valid twisted objects (zero
// twist conjugated by a random unitriangular gauge), raw twist candidates
// that are shape-correct but may fail the nilpotency condition, and random
// closed morphisms drawn from a hom complex.
#pragma once

#include <optional>
#include <random>

#include "pdgcat/twisted.hpp"

namespace pdgcat {

/// A valid twisted object with at most `max_gens` generators: random
/// generators and even shifts in [0, shift_span], twist obtained by gauging
/// the zero twist with a random unitriangular degree-0 map
/// (alpha' = h d(h^-1) + h alpha h^-1).  Always validates.
TwistedObject random_twisted_object(AlgebraPtr A, std::mt19937& rng, int max_gens = 4,
                                    int shift_span = 6);

/// A shape-correct candidate: random generators and a random homogeneous
/// strictly upper-triangular degree-2 twist, built without the nilpotency
/// check; validate_object may accept or reject it.
TwistedObject random_twist_candidate(AlgebraPtr A, std::mt19937& rng, int max_gens = 4,
                                     int shift_span = 6);

/// A random element of the closed degree-`degree` morphisms X -> Y; nullopt
/// when that space is zero.
std::optional<TwistedMorphism> random_closed_morphism(const TwistedObject& x,
                                                      const TwistedObject& y, int degree,
                                                      std::mt19937& rng);

}  // namespace pdgcat
