#ifndef NEWTONARC_RNG_HPP
#define NEWTONARC_RNG_HPP

// Deterministic seeded RNG (splitmix64).  Standard-library distributions are
// implementation-defined, which would break the byte-identical replay
// contract of the fuzz campaigns, so bounded draws are done by hand.

#include <cstdint>

#include "newtonarc/scalar.hpp"

namespace newtonarc {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  long long int_in(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool one_in(std::uint64_t n) { return below(n) == 0; }

private:
  std::uint64_t s_;
};

// Small random element; coefficients stay tiny so fuzz values print readably.
inline Scalar random_scalar(Rng& rng, const RingPtr& ring) {
  switch (ring->kind()) {
    case Ring::Kind::rationals: {
      long long num = rng.int_in(-9, 9);
      long long den = rng.int_in(1, 4);
      return Scalar::of_rat(ring, BigRat(num, den));
    }
    case Ring::Kind::prime_field:
      return Scalar::of_int(ring, static_cast<long long>(rng.below(ring->prime())));
    case Ring::Kind::test_ring: {
      Scalar acc = Scalar::zero(ring);
      for (const auto& mono : ring->monomial_basis()) {
        if (rng.below(3) == 0) continue;  // keep elements sparse-ish
        Scalar c = random_scalar(rng, ring->base());
        if (c.is_zero()) continue;
        BigRat cr = ring->base()->kind() == Ring::Kind::rationals
                        ? c.rat()
                        : BigRat(static_cast<long long>(c.fp()));
        acc = acc + Scalar::monomial(ring, mono, cr);
      }
      return acc;
    }
  }
  return Scalar::zero(ring);
}

// Random element of the maximal ideal (zero residue).
inline Scalar random_nilpotent(Rng& rng, const RingPtr& ring) {
  if (ring->is_field()) return Scalar::zero(ring);
  Scalar s = random_scalar(rng, ring);
  return s - Scalar::embed(ring, s.residue());
}

// Random unit.
inline Scalar random_unit(Rng& rng, const RingPtr& ring) {
  for (;;) {
    Scalar s = random_scalar(rng, ring);
    if (s.is_unit()) return s;
  }
}

}  // namespace newtonarc

#endif
