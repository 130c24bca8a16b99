#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reltutte/pivot_key.hpp"

namespace reltutte {

using Integer = mpz_class;

/// Weight kinds: x internally inactive, X internally active,
/// y externally inactive, Y externally active.
enum class VarKind : std::uint8_t { x = 0, X = 1, y = 2, Y = 3 };

using ColorId = std::uint32_t;
ColorId intern_color(std::string_view color);
const std::string& color_name(ColorId id);

/// Packed variable: color id * 4 + kind.
using VarCode = std::uint32_t;
constexpr VarCode var_code(ColorId color, VarKind kind) { return color * 4 + static_cast<VarCode>(kind); }
constexpr ColorId var_color(VarCode v) { return v / 4; }
constexpr VarKind var_kind(VarCode v) { return static_cast<VarKind>(v % 4); }
std::string var_name(VarCode v);

struct Monomial {
  std::vector<std::pair<VarCode, std::uint32_t>> powers;  // sorted by code, exponents > 0
  std::vector<KeyId> zs;                                   // sorted multiset of z-symbols

  std::uint32_t degree() const;
  Monomial operator*(const Monomial& other) const;
  auto operator<=>(const Monomial&) const = default;
};

/// Exact sparse polynomial over Z in the weight variables and z-symbols.
/// No zero coefficients are stored. Equality is structural.
class RelPolynomial {
 public:
  using Terms = std::map<Monomial, Integer>;

  RelPolynomial() = default;
  static RelPolynomial constant(const Integer& c);
  static RelPolynomial var(VarKind kind, std::string_view color);
  static RelPolynomial z(const PivotClassKey& key);
  static RelPolynomial z(KeyId key);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  void add_term(const Monomial& m, const Integer& c);

  RelPolynomial& operator+=(const RelPolynomial& o);
  RelPolynomial& operator-=(const RelPolynomial& o);
  RelPolynomial operator+(const RelPolynomial& o) const;
  RelPolynomial operator-(const RelPolynomial& o) const;
  RelPolynomial operator-() const;
  RelPolynomial operator*(const RelPolynomial& o) const;
  RelPolynomial scaled(const Integer& c) const;
  RelPolynomial pow(unsigned e) const;

  bool operator==(const RelPolynomial& o) const { return terms_ == o.terms_; }

  std::uint32_t total_degree() const;
  /// Every monomial carries exactly one z-symbol.
  bool is_z_linear() const;
  std::set<ColorId> colors() const;
  std::set<KeyId> z_keys() const;

  /// Canonical text: terms sorted by (z-key string, variable string).
  std::string str() const;

 private:
  Terms terms_;
};

inline RelPolynomial add(const RelPolynomial& p, const RelPolynomial& q) { return p + q; }
inline RelPolynomial mul(const RelPolynomial& p, const RelPolynomial& q) { return p * q; }
inline RelPolynomial scale(const RelPolynomial& p, const Integer& c) { return p.scaled(c); }

/// One rendered term, used by the text and json-lines writers.
struct RenderedTerm {
  std::string coeff;
  std::string vars;
  std::string zkey;
};
std::vector<RenderedTerm> rendered_terms(const RelPolynomial& p);

/// Replaces variables by polynomials; `image` returns nullptr for variables
/// that stay unchanged.
RelPolynomial substitute(const RelPolynomial& p, const std::function<const RelPolynomial*(VarCode)>& image);

/// For z-linear p, replaces each z-symbol by image(key). Throws NotLinearInZ.
RelPolynomial map_z_linear(const RelPolynomial& p, const std::function<RelPolynomial(KeyId)>& image);

/// psi specialization: each z-symbol replaced by a z-free polynomial.
/// Throws NotLinearInZ, MissingKey.
RelPolynomial specialize_psi(const RelPolynomial& p,
                             const std::function<std::optional<RelPolynomial>(const PivotClassKey&)>& psi);

/// Numeric point on which both families of determinant generators vanish:
/// Y = y + alpha x and X = x + beta y for every color.
struct EvaluationPoint {
  std::map<std::string, std::pair<Integer, Integer>> xy;  // color -> (x, y)
  Integer alpha = 0;
  Integer beta = 0;
  std::map<std::string, Integer> z_values;  // key string -> value
  /// Keys and colors missing above get a value from a seeded hash in [2, bound].
  std::uint64_t default_seed = 0;
  std::int64_t default_bound = 100;

  Integer value(VarCode v) const;
  Integer z(KeyId key) const;
};

Integer evaluate(const RelPolynomial& p, const EvaluationPoint& pt);

/// Randomized identity test modulo the determinant ideal: p - q is evaluated
/// at `trials` seeded points with coordinates in [-B, B],
/// B = 10 (1 + total degree). Deterministic in `seed`.
bool equal_mod_ideal(const RelPolynomial& p, const RelPolynomial& q, unsigned trials = 32, std::uint64_t seed = 0);

}  // namespace reltutte
