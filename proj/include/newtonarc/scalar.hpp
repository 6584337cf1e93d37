#ifndef NEWTONARC_SCALAR_HPP
#define NEWTONARC_SCALAR_HPP

// Exact scalar arithmetic over the three coefficient rings used throughout:
// the rationals, prime fields F_p, and test rings k[e_1..e_s]/I where I is a
// monomial ideal containing every monomial of total degree >= a (so the
// maximal ideal m = (e_1..e_s) satisfies m^a = 0).  Elements are kept in
// normal form at all times: equality is representation equality.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "newtonarc/error.hpp"

namespace newtonarc {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Exponent vectors: shared by test-ring monomials and multivariate terms.
using ExpVec = std::vector<unsigned>;

inline unsigned total_degree(const ExpVec& e) {
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return d;
}

inline bool exp_divides(const ExpVec& a, const ExpVec& b) {
  // a | b componentwise
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline ExpVec exp_add(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// Graded lexicographic order; the global term order used for normal forms,
// printing and deterministic iteration.
struct GrlexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;  // lexicographic tie-break
  }
};

namespace detail {

inline std::uint64_t fp_reduce(const BigInt& v, std::uint64_t p) {
  BigInt r = v % static_cast<long long>(p);
  if (r < 0) r += static_cast<long long>(p);
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t fp_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::uint64_t fp_neg(std::uint64_t a, std::uint64_t p) {
  return a == 0 ? 0 : p - a;
}

inline std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a * b) % p;  // p < 2^31, so no overflow
}

inline std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
  if (a == 0) fail("not-a-unit", "0 is not invertible in F_p");
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a);
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) fail("not-a-unit", "element has no inverse mod p");
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
public:
  enum class Kind { rationals, prime_field, test_ring };

  static RingPtr rationals() {
    auto r = std::make_shared<Ring>();
    r->kind_ = Kind::rationals;
    return r;
  }

  static RingPtr prime_field(std::uint64_t p) {
    if (!detail::is_prime_u64(p) || p >= (1ull << 31))
      fail("invalid-ring", "prime field modulus must be prime and < 2^31");
    auto r = std::make_shared<Ring>();
    r->kind_ = Kind::prime_field;
    r->p_ = p;
    return r;
  }

  // Test ring base[e_1..e_s]/I, I generated by `ideal` plus all monomials of
  // total degree >= order.  order >= 2 and s >= 1, base a field.
  static RingPtr test_ring(const RingPtr& base, std::vector<std::string> gens,
                           std::vector<ExpVec> ideal, unsigned order) {
    if (!base || base->kind_ == Kind::test_ring)
      fail("invalid-ring", "test ring base must be Q or F_p");
    if (gens.empty()) fail("invalid-ring", "test ring needs at least one generator");
    if (order < 2) fail("invalid-ring", "nilpotency order must be >= 2");
    for (const auto& m : ideal) {
      if (m.size() != gens.size())
        fail("invalid-ring", "ideal monomial arity mismatch");
      if (total_degree(m) == 0)
        fail("invalid-ring", "ideal may not contain the unit monomial");
    }
    auto r = std::make_shared<Ring>();
    r->kind_ = Kind::test_ring;
    r->base_ = base;
    r->gens_ = std::move(gens);
    r->ideal_ = std::move(ideal);
    r->order_ = order;
    return r;
  }

  Kind kind() const { return kind_; }
  bool is_field() const { return kind_ != Kind::test_ring; }
  std::uint64_t prime() const { return p_; }
  const RingPtr& base() const { return base_; }
  const std::vector<std::string>& generators() const { return gens_; }
  const std::vector<ExpVec>& ideal() const { return ideal_; }
  // a with m^a = 0; fields report 1 (m = 0).
  unsigned nilpotency_order() const { return kind_ == Kind::test_ring ? order_ : 1; }

  std::uint64_t characteristic() const {
    switch (kind_) {
      case Kind::rationals: return 0;
      case Kind::prime_field: return p_;
      case Kind::test_ring: return base_->characteristic();
    }
    return 0;
  }

  // True iff the generator monomial e lies in the defining ideal.
  bool monomial_vanishes(const ExpVec& e) const {
    if (total_degree(e) >= order_) return true;
    for (const auto& g : ideal_)
      if (exp_divides(g, e)) return true;
    return false;
  }

  // All surviving monomials in the generators, grlex-ascending.  Finite since
  // degrees are bounded by the nilpotency order.
  std::vector<ExpVec> monomial_basis() const {
    std::vector<ExpVec> out;
    ExpVec cur(gens_.size(), 0);
    // iterate all exponent vectors with total degree < order_
    while (true) {
      if (!monomial_vanishes(cur)) out.push_back(cur);
      // odometer increment bounded by total degree
      std::size_t i = 0;
      for (; i < cur.size(); ++i) {
        ++cur[i];
        if (total_degree(cur) < order_) break;
        cur[i] = 0;
      }
      if (i == cur.size()) break;
    }
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
  }

  bool equals(const Ring& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
      case Kind::rationals: return true;
      case Kind::prime_field: return p_ == o.p_;
      case Kind::test_ring:
        return base_->equals(*o.base_) && gens_ == o.gens_ &&
               ideal_ == o.ideal_ && order_ == o.order_;
    }
    return false;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::rationals: return "QQ";
      case Kind::prime_field: return "F_" + std::to_string(p_);
      case Kind::test_ring: {
        std::string s = base_->describe() + "[";
        for (std::size_t i = 0; i < gens_.size(); ++i) {
          if (i) s += ",";
          s += gens_[i];
        }
        s += "]/(m^" + std::to_string(order_) + ")";
        return s;
      }
    }
    return "?";
  }

private:
  Kind kind_ = Kind::rationals;
  std::uint64_t p_ = 0;
  RingPtr base_;
  std::vector<std::string> gens_;
  std::vector<ExpVec> ideal_;
  unsigned order_ = 1;
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && a->equals(*b));
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b))
    fail("ring-mismatch", "operands belong to different rings");
}

namespace detail {

// Base-field coefficient of a test-ring element: rational or F_p residue.
using BaseCoeff = std::variant<BigRat, std::uint64_t>;

inline BaseCoeff bc_zero(const Ring& base) {
  if (base.kind() == Ring::Kind::rationals) return BaseCoeff(BigRat(0));
  return BaseCoeff(std::uint64_t{0});
}

inline bool bc_is_zero(const BaseCoeff& c) {
  if (std::holds_alternative<BigRat>(c)) return std::get<BigRat>(c) == 0;
  return std::get<std::uint64_t>(c) == 0;
}

inline BaseCoeff bc_add(const Ring& base, const BaseCoeff& a, const BaseCoeff& b) {
  if (base.kind() == Ring::Kind::rationals)
    return BaseCoeff(std::get<BigRat>(a) + std::get<BigRat>(b));
  return BaseCoeff(fp_add(std::get<std::uint64_t>(a), std::get<std::uint64_t>(b), base.prime()));
}

inline BaseCoeff bc_neg(const Ring& base, const BaseCoeff& a) {
  if (base.kind() == Ring::Kind::rationals) return BaseCoeff(-std::get<BigRat>(a));
  return BaseCoeff(fp_neg(std::get<std::uint64_t>(a), base.prime()));
}

inline BaseCoeff bc_mul(const Ring& base, const BaseCoeff& a, const BaseCoeff& b) {
  if (base.kind() == Ring::Kind::rationals)
    return BaseCoeff(std::get<BigRat>(a) * std::get<BigRat>(b));
  return BaseCoeff(fp_mul(std::get<std::uint64_t>(a), std::get<std::uint64_t>(b), base.prime()));
}

inline BaseCoeff bc_inv(const Ring& base, const BaseCoeff& a) {
  if (bc_is_zero(a)) fail("not-a-unit", "zero residue is not invertible");
  if (base.kind() == Ring::Kind::rationals)
    return BaseCoeff(BigRat(1) / std::get<BigRat>(a));
  return BaseCoeff(fp_inv(std::get<std::uint64_t>(a), base.prime()));
}

inline BaseCoeff bc_of_rat(const Ring& base, const BigRat& q) {
  if (base.kind() == Ring::Kind::rationals) return BaseCoeff(q);
  std::uint64_t p = base.prime();
  std::uint64_t num = fp_reduce(numerator(q), p);
  std::uint64_t den = fp_reduce(denominator(q), p);
  return BaseCoeff(fp_mul(num, fp_inv(den, p), p));
}

inline std::string bc_to_string(const BaseCoeff& c) {
  if (std::holds_alternative<BigRat>(c)) {
    const BigRat& q = std::get<BigRat>(c);
    std::ostringstream os;
    os << q;
    return os.str();
  }
  return std::to_string(std::get<std::uint64_t>(c));
}

}  // namespace detail

class Scalar {
public:
  using TestTerms = std::map<ExpVec, detail::BaseCoeff, GrlexLess>;

  Scalar() = default;  // detached zero; attach via factories before use

  static Scalar zero(const RingPtr& ring) {
    Scalar s;
    s.ring_ = ring;
    s.init_zero();
    return s;
  }

  static Scalar one(const RingPtr& ring) { return of_int(ring, 1); }

  static Scalar of_int(const RingPtr& ring, const BigInt& v) {
    return of_rat(ring, BigRat(v));
  }

  static Scalar of_rat(const RingPtr& ring, const BigRat& q) {
    Scalar s;
    s.ring_ = ring;
    switch (ring->kind()) {
      case Ring::Kind::rationals:
        s.rep_ = q;
        break;
      case Ring::Kind::prime_field: {
        std::uint64_t p = ring->prime();
        std::uint64_t num = detail::fp_reduce(numerator(q), p);
        std::uint64_t den = detail::fp_reduce(denominator(q), p);
        s.rep_ = detail::fp_mul(num, detail::fp_inv(den, p), p);
        break;
      }
      case Ring::Kind::test_ring: {
        TestTerms t;
        auto c = detail::bc_of_rat(*ring->base(), q);
        if (!detail::bc_is_zero(c)) t.emplace(ExpVec(ring->generators().size(), 0), c);
        s.rep_ = std::move(t);
        break;
      }
    }
    return s;
  }

  static Scalar generator(const RingPtr& ring, std::size_t i) {
    if (ring->kind() != Ring::Kind::test_ring)
      fail("invalid-ring", "only test rings have nilpotent generators");
    if (i >= ring->generators().size()) fail("invalid-ring", "generator index out of range");
    ExpVec e(ring->generators().size(), 0);
    e[i] = 1;
    Scalar s;
    s.ring_ = ring;
    TestTerms t;
    if (!ring->monomial_vanishes(e))
      t.emplace(std::move(e), detail::bc_of_rat(*ring->base(), BigRat(1)));
    s.rep_ = std::move(t);
    return s;
  }

  // Monomial c * e^exp in a test ring (normalizing away ideal monomials).
  static Scalar monomial(const RingPtr& ring, const ExpVec& exp, const BigRat& c) {
    if (ring->kind() != Ring::Kind::test_ring)
      fail("invalid-ring", "monomial constructor needs a test ring");
    Scalar s;
    s.ring_ = ring;
    TestTerms t;
    auto bc = detail::bc_of_rat(*ring->base(), c);
    if (!detail::bc_is_zero(bc) && !ring->monomial_vanishes(exp)) t.emplace(exp, bc);
    s.rep_ = std::move(t);
    return s;
  }

  // Constant embedding of a base-field element into a test ring (or identity
  // on matching rings).
  static Scalar embed(const RingPtr& target, const Scalar& v) {
    if (same_ring(target, v.ring())) return v;
    if (target->kind() == Ring::Kind::test_ring && same_ring(target->base(), v.ring())) {
      if (v.ring()->kind() == Ring::Kind::rationals)
        return of_rat(target, std::get<BigRat>(v.rep_));
      Scalar s;
      s.ring_ = target;
      TestTerms t;
      std::uint64_t u = std::get<std::uint64_t>(v.rep_);
      if (u != 0)
        t.emplace(ExpVec(target->generators().size(), 0), detail::BaseCoeff(u));
      s.rep_ = std::move(t);
      return s;
    }
    fail("ring-mismatch", "cannot embed " + v.ring()->describe() + " into " + target->describe());
  }

  const RingPtr& ring() const { return ring_; }

  bool is_zero() const {
    switch (ring_->kind()) {
      case Ring::Kind::rationals: return std::get<BigRat>(rep_) == 0;
      case Ring::Kind::prime_field: return std::get<std::uint64_t>(rep_) == 0;
      case Ring::Kind::test_ring: return std::get<TestTerms>(rep_).empty();
    }
    return true;
  }

  bool is_one() const { return *this == one(ring_); }

  // Image in the base field (identity on fields).
  Scalar residue() const {
    if (ring_->kind() != Ring::Kind::test_ring) return *this;
    const auto& t = std::get<TestTerms>(rep_);
    ExpVec unit(ring_->generators().size(), 0);
    auto it = t.find(unit);
    Scalar s;
    s.ring_ = ring_->base();
    if (it == t.end()) {
      s.init_zero();
    } else if (ring_->base()->kind() == Ring::Kind::rationals) {
      s.rep_ = std::get<BigRat>(it->second);
    } else {
      s.rep_ = std::get<std::uint64_t>(it->second);
    }
    return s;
  }

  // Unit test: nonzero for fields, unit residue for test rings.
  bool is_unit() const {
    if (ring_->kind() == Ring::Kind::test_ring) return !residue().is_zero();
    return !is_zero();
  }

  Scalar inverse() const {
    switch (ring_->kind()) {
      case Ring::Kind::rationals: {
        if (is_zero()) fail("not-a-unit", "division by zero");
        Scalar s;
        s.ring_ = ring_;
        s.rep_ = BigRat(1) / std::get<BigRat>(rep_);
        return s;
      }
      case Ring::Kind::prime_field: {
        Scalar s;
        s.ring_ = ring_;
        s.rep_ = detail::fp_inv(std::get<std::uint64_t>(rep_), ring_->prime());
        return s;
      }
      case Ring::Kind::test_ring: {
        Scalar c = residue();
        if (c.is_zero()) fail("not-a-unit", "residue of element is zero");
        Scalar cinv = embed(ring_, c.inverse());
        // x = c(1+n) with n nilpotent; x^-1 = c^-1 sum (-n)^j
        Scalar n = (*this) * cinv - one(ring_);
        Scalar acc = one(ring_);
        Scalar pw = one(ring_);
        for (unsigned j = 1; j < ring_->nilpotency_order(); ++j) {
          pw = pw * (-n);
          if (pw.is_zero()) break;
          acc = acc + pw;
        }
        return acc * cinv;
      }
    }
    fail("not-a-unit", "unreachable");
  }

  friend Scalar operator-(const Scalar& a) {
    Scalar s;
    s.ring_ = a.ring_;
    switch (a.ring_->kind()) {
      case Ring::Kind::rationals:
        s.rep_ = -std::get<BigRat>(a.rep_);
        break;
      case Ring::Kind::prime_field:
        s.rep_ = detail::fp_neg(std::get<std::uint64_t>(a.rep_), a.ring_->prime());
        break;
      case Ring::Kind::test_ring: {
        TestTerms t = std::get<TestTerms>(a.rep_);
        for (auto& [e, c] : t) c = detail::bc_neg(*a.ring_->base(), c);
        s.rep_ = std::move(t);
        break;
      }
    }
    return s;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    require_same_ring(a.ring_, b.ring_);
    Scalar s;
    s.ring_ = a.ring_;
    switch (a.ring_->kind()) {
      case Ring::Kind::rationals:
        s.rep_ = std::get<BigRat>(a.rep_) + std::get<BigRat>(b.rep_);
        break;
      case Ring::Kind::prime_field:
        s.rep_ = detail::fp_add(std::get<std::uint64_t>(a.rep_),
                                std::get<std::uint64_t>(b.rep_), a.ring_->prime());
        break;
      case Ring::Kind::test_ring: {
        const Ring& base = *a.ring_->base();
        TestTerms t = std::get<TestTerms>(a.rep_);
        for (const auto& [e, c] : std::get<TestTerms>(b.rep_)) {
          auto it = t.find(e);
          if (it == t.end()) {
            t.emplace(e, c);
          } else {
            it->second = detail::bc_add(base, it->second, c);
            if (detail::bc_is_zero(it->second)) t.erase(it);
          }
        }
        s.rep_ = std::move(t);
        break;
      }
    }
    return s;
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    require_same_ring(a.ring_, b.ring_);
    Scalar s;
    s.ring_ = a.ring_;
    switch (a.ring_->kind()) {
      case Ring::Kind::rationals:
        s.rep_ = std::get<BigRat>(a.rep_) * std::get<BigRat>(b.rep_);
        break;
      case Ring::Kind::prime_field:
        s.rep_ = detail::fp_mul(std::get<std::uint64_t>(a.rep_),
                                std::get<std::uint64_t>(b.rep_), a.ring_->prime());
        break;
      case Ring::Kind::test_ring: {
        const Ring& ring = *a.ring_;
        const Ring& base = *ring.base();
        TestTerms t;
        for (const auto& [ea, ca] : std::get<TestTerms>(a.rep_)) {
          for (const auto& [eb, cb] : std::get<TestTerms>(b.rep_)) {
            ExpVec e = exp_add(ea, eb);
            if (ring.monomial_vanishes(e)) continue;
            auto c = detail::bc_mul(base, ca, cb);
            auto it = t.find(e);
            if (it == t.end()) {
              if (!detail::bc_is_zero(c)) t.emplace(std::move(e), std::move(c));
            } else {
              it->second = detail::bc_add(base, it->second, c);
              if (detail::bc_is_zero(it->second)) t.erase(it);
            }
          }
        }
        s.rep_ = std::move(t);
        break;
      }
    }
    return s;
  }

  Scalar pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar acc = one(ring_);
    Scalar base = *this;
    unsigned long long n = static_cast<unsigned long long>(e);
    while (n) {
      if (n & 1) acc = acc * base;
      base = base * base;
      n >>= 1;
    }
    return acc;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (!same_ring(a.ring_, b.ring_)) return false;
    return a.rep_ == b.rep_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Normal-form printing; parses back through parse_scalar / the polynomial
  // grammar with the ring's generators as identifiers.
  std::string to_string() const {
    switch (ring_->kind()) {
      case Ring::Kind::rationals: {
        std::ostringstream os;
        os << std::get<BigRat>(rep_);
        return os.str();
      }
      case Ring::Kind::prime_field:
        return std::to_string(std::get<std::uint64_t>(rep_));
      case Ring::Kind::test_ring: {
        const auto& t = std::get<TestTerms>(rep_);
        if (t.empty()) return "0";
        std::string out;
        // grlex-descending, like polynomial printing
        for (auto it = t.rbegin(); it != t.rend(); ++it) {
          std::string coef = detail::bc_to_string(it->second);
          bool neg = !coef.empty() && coef[0] == '-';
          if (neg) coef = coef.substr(1);
          std::string mono;
          for (std::size_t i = 0; i < it->first.size(); ++i) {
            unsigned e = it->first[i];
            if (!e) continue;
            if (!mono.empty()) mono += "*";
            mono += ring_->generators()[i];
            if (e > 1) mono += "^" + std::to_string(e);
          }
          std::string term;
          if (mono.empty())
            term = coef;
          else if (coef == "1")
            term = mono;
          else
            term = coef + "*" + mono;
          if (out.empty())
            out = (neg ? "-" : "") + term;
          else
            out += (neg ? " - " : " + ") + term;
        }
        return out;
      }
    }
    return "?";
  }

  const TestTerms& test_terms() const { return std::get<TestTerms>(rep_); }
  const BigRat& rat() const { return std::get<BigRat>(rep_); }
  std::uint64_t fp() const { return std::get<std::uint64_t>(rep_); }

private:
  void init_zero() {
    switch (ring_->kind()) {
      case Ring::Kind::rationals: rep_ = BigRat(0); break;
      case Ring::Kind::prime_field: rep_ = std::uint64_t{0}; break;
      case Ring::Kind::test_ring: rep_ = TestTerms{}; break;
    }
  }

  RingPtr ring_;
  std::variant<BigRat, std::uint64_t, TestTerms> rep_;
};

inline Scalar one_like(const Scalar& s) { return Scalar::one(s.ring()); }

}  // namespace newtonarc

#endif
