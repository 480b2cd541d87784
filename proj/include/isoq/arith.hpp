#pragma once
// Exact integers and rationals, places of Q, valuations, Legendre and Hilbert
// symbols, local square tests and square classes.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isoq {

using Int = mpz_class;
using Rat = mpq_class;

/// Malformed or out-of-domain input supplied by a caller.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Valuation of zero was requested.
class InfiniteValuation : public std::domain_error {
public:
  InfiniteValuation() : std::domain_error("valuation of zero is infinite") {}
};

/// A place of Q: the real place or a finite prime.
class Place {
public:
  static Place real() { return Place{}; }
  static Place finite(const Int& p);
  static Place finite(long p) { return finite(Int(p)); }
  /// "inf" or a decimal prime.
  static Place parse(std::string_view text);

  bool is_real() const { return prime_ == 0; }
  const Int& prime() const;
  std::string to_string() const;

  friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
  /// The real place sorts first, then primes ascending.
  friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
    int c = cmp(a.prime_, b.prime_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

private:
  Int prime_ = 0;
};

/// Value of a Hilbert symbol, written multiplicatively.
enum class Symbol : int { plus = 1, minus = -1 };

inline Symbol operator*(Symbol a, Symbol b) {
  return static_cast<Symbol>(static_cast<int>(a) * static_cast<int>(b));
}
inline Symbol& operator*=(Symbol& a, Symbol b) { return a = a * b; }
inline bool is_minus(Symbol s) { return s == Symbol::minus; }

/// Element of Q*/Q*^2 held as a signed squarefree integer.
class SquareClass {
public:
  SquareClass() = default;
  explicit SquareClass(const Rat& a);
  static SquareClass from_rep(const Int& squarefree_rep);

  const Int& rep() const { return rep_; }
  SquareClass operator*(const SquareClass& o) const;
  bool is_square() const { return rep_ == 1; }
  std::string to_string() const { return rep_.get_str(); }

  friend bool operator==(const SquareClass& a, const SquareClass& b) { return a.rep_ == b.rep_; }

private:
  Int rep_ = 1;
};

// Rational text form "n" or "n/d" with d > 0 and gcd(n, d) = 1.
Rat parse_rational(std::string_view text);
std::string format_rational(const Rat& a);

bool is_prime(const Int& n);
/// Prime factorization of |n| (n != 0), primes ascending.
std::vector<std::pair<Int, int>> factor_integer(const Int& n);
/// Distinct primes dividing numerator or denominator of a.
std::vector<Int> prime_support(const Rat& a);
/// Pairwise coprime integers > 1 whose products give every |value|, found by
/// gcd refinement without factoring.
std::vector<Int> coprime_base(const std::vector<Int>& values);
/// First prime strictly above n.
Int next_prime(const Int& n);

int valuation(const Int& a, const Int& p);
int valuation(const Rat& a, const Int& p);
/// a / p^valuation(a, p).
Rat unit_part(const Rat& a, const Int& p);

/// Legendre symbol (a/p) for odd prime p.
int legendre(const Int& a, const Int& p);

Symbol hilbert(const Rat& a, const Rat& b, const Place& v);

bool is_local_square(const Rat& a, const Place& v);

/// Residue of a p-integral rational modulo m (gcd(den, m) = 1).
Int residue(const Rat& a, const Int& m);

}  // namespace isoq
