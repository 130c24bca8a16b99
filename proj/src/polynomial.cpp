#include "reltutte/polynomial.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>

#include "reltutte/error.hpp"
#include "reltutte/rng.hpp"

namespace reltutte {

namespace {

struct ColorRegistry {
  std::shared_mutex mu;
  std::unordered_map<std::string, ColorId> ids;
  std::deque<std::string> names;
};

ColorRegistry& colors_registry() {
  static ColorRegistry r;
  return r;
}

constexpr char kind_char(VarKind k) {
  switch (k) {
    case VarKind::x: return 'x';
    case VarKind::X: return 'X';
    case VarKind::y: return 'y';
    case VarKind::Y: return 'Y';
  }
  return '?';
}

}  // namespace

ColorId intern_color(std::string_view color) {
  auto& r = colors_registry();
  std::string key(color);
  {
    std::shared_lock lock(r.mu);
    if (auto it = r.ids.find(key); it != r.ids.end()) return it->second;
  }
  std::unique_lock lock(r.mu);
  if (auto it = r.ids.find(key); it != r.ids.end()) return it->second;
  const auto id = static_cast<ColorId>(r.names.size());
  r.names.push_back(key);
  r.ids.emplace(std::move(key), id);
  return id;
}

const std::string& color_name(ColorId id) {
  auto& r = colors_registry();
  std::shared_lock lock(r.mu);
  return r.names.at(id);
}

std::string var_name(VarCode v) {
  std::string s(1, kind_char(var_kind(v)));
  s += '[';
  s += color_name(var_color(v));
  s += ']';
  return s;
}

// ---------------------------------------------------------------------------
// Monomial

std::uint32_t Monomial::degree() const {
  std::uint32_t d = static_cast<std::uint32_t>(zs.size());
  for (const auto& [v, e] : powers) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.powers.reserve(powers.size() + o.powers.size());
  auto a = powers.begin();
  auto b = o.powers.begin();
  while (a != powers.end() || b != o.powers.end()) {
    if (b == o.powers.end() || (a != powers.end() && a->first < b->first)) {
      r.powers.push_back(*a++);
    } else if (a == powers.end() || b->first < a->first) {
      r.powers.push_back(*b++);
    } else {
      r.powers.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  r.zs.resize(zs.size() + o.zs.size());
  std::merge(zs.begin(), zs.end(), o.zs.begin(), o.zs.end(), r.zs.begin());
  return r;
}

// ---------------------------------------------------------------------------
// RelPolynomial

RelPolynomial RelPolynomial::constant(const Integer& c) {
  RelPolynomial p;
  p.add_term(Monomial{}, c);
  return p;
}

RelPolynomial RelPolynomial::var(VarKind kind, std::string_view color) {
  Monomial m;
  m.powers.emplace_back(var_code(intern_color(color), kind), 1);
  RelPolynomial p;
  p.add_term(m, 1);
  return p;
}

RelPolynomial RelPolynomial::z(const PivotClassKey& key) { return z(intern_key(key)); }

RelPolynomial RelPolynomial::z(KeyId key) {
  Monomial m;
  m.zs.push_back(key);
  RelPolynomial p;
  p.add_term(m, 1);
  return p;
}

void RelPolynomial::add_term(const Monomial& m, const Integer& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

RelPolynomial& RelPolynomial::operator+=(const RelPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

RelPolynomial& RelPolynomial::operator-=(const RelPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

RelPolynomial RelPolynomial::operator+(const RelPolynomial& o) const {
  RelPolynomial r = *this;
  r += o;
  return r;
}

RelPolynomial RelPolynomial::operator-(const RelPolynomial& o) const {
  RelPolynomial r = *this;
  r -= o;
  return r;
}

RelPolynomial RelPolynomial::operator-() const {
  RelPolynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

RelPolynomial RelPolynomial::operator*(const RelPolynomial& o) const {
  RelPolynomial r;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
  }
  return r;
}

RelPolynomial RelPolynomial::scaled(const Integer& c) const {
  if (sgn(c) == 0) return {};
  RelPolynomial r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

RelPolynomial RelPolynomial::pow(unsigned e) const {
  RelPolynomial r = constant(1);
  RelPolynomial base = *this;
  while (e > 0) {
    if (e & 1U) r = r * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return r;
}

std::uint32_t RelPolynomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool RelPolynomial::is_z_linear() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.zs.size() == 1; });
}

std::set<ColorId> RelPolynomial::colors() const {
  std::set<ColorId> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.powers) out.insert(var_color(v));
  }
  return out;
}

std::set<KeyId> RelPolynomial::z_keys() const {
  std::set<KeyId> out;
  for (const auto& [m, c] : terms_) out.insert(m.zs.begin(), m.zs.end());
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

constexpr std::string_view kDot = "\xC2\xB7";  // middle dot

std::string join(std::vector<std::string> parts) {
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty()) out += kDot;
    out += s;
  }
  return out;
}

}  // namespace

std::vector<RenderedTerm> rendered_terms(const RelPolynomial& p) {
  std::vector<RenderedTerm> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::string> vars;
    for (const auto& [v, e] : m.powers) {
      std::string f = var_name(v);
      if (e > 1) f += "^" + std::to_string(e);
      vars.push_back(std::move(f));
    }
    std::vector<std::string> zs;
    for (KeyId k : m.zs) zs.push_back(key_string(k));
    out.push_back({c.get_str(), join(std::move(vars)), join(std::move(zs))});
  }
  std::sort(out.begin(), out.end(), [](const RenderedTerm& a, const RenderedTerm& b) {
    return std::tie(a.zkey, a.vars) < std::tie(b.zkey, b.vars);
  });
  return out;
}

std::string RelPolynomial::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : rendered_terms(*this)) {
    const bool negative = t.coeff.front() == '-';
    const std::string magnitude = negative ? t.coeff.substr(1) : t.coeff;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string body = t.vars;
    if (!t.zkey.empty()) {
      if (!body.empty()) body += kDot;
      body += t.zkey;
    }
    if (body.empty()) {
      out += magnitude;
    } else {
      if (magnitude != "1") {
        out += magnitude;
        out += kDot;
      }
      out += body;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

RelPolynomial substitute(const RelPolynomial& p, const std::function<const RelPolynomial*(VarCode)>& image) {
  RelPolynomial out;
  for (const auto& [m, c] : p.terms()) {
    Monomial kept;
    kept.zs = m.zs;
    RelPolynomial factor = RelPolynomial::constant(c);
    for (const auto& [v, e] : m.powers) {
      if (const RelPolynomial* img = image(v)) {
        factor = factor * img->pow(e);
      } else {
        kept.powers.emplace_back(v, e);
      }
    }
    for (const auto& [fm, fc] : factor.terms()) out.add_term(fm * kept, fc);
  }
  return out;
}

RelPolynomial map_z_linear(const RelPolynomial& p, const std::function<RelPolynomial(KeyId)>& image) {
  if (!p.is_z_linear()) throw Error(Errc::NotLinearInZ, "polynomial is not linear in z-symbols");
  std::map<KeyId, RelPolynomial> cache;
  RelPolynomial out;
  for (const auto& [m, c] : p.terms()) {
    const KeyId k = m.zs.front();
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, image(k)).first;
    Monomial vars;
    vars.powers = m.powers;
    for (const auto& [im, ic] : it->second.terms()) out.add_term(vars * im, c * ic);
  }
  return out;
}

RelPolynomial specialize_psi(const RelPolynomial& p,
                             const std::function<std::optional<RelPolynomial>(const PivotClassKey&)>& psi) {
  return map_z_linear(p, [&](KeyId k) {
    auto img = psi(key_of(k));
    if (!img) throw Error(Errc::MissingKey, "no image for " + key_string(k));
    return *img;
  });
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Integer hashed_value(std::string_view s, std::uint64_t seed, std::int64_t bound) {
  const std::int64_t b = std::max<std::int64_t>(bound, 2);
  const auto span = static_cast<std::uint64_t>(b - 1);
  return Integer(static_cast<long>(2 + fnv1a64(s, seed) % span));
}

}  // namespace

Integer EvaluationPoint::value(VarCode v) const {
  const std::string& c = color_name(var_color(v));
  Integer x, y;
  if (auto it = xy.find(c); it != xy.end()) {
    x = it->second.first;
    y = it->second.second;
  } else {
    x = hashed_value(c + "#x", default_seed, default_bound);
    y = hashed_value(c + "#y", default_seed, default_bound);
  }
  switch (var_kind(v)) {
    case VarKind::x: return x;
    case VarKind::y: return y;
    case VarKind::X: return Integer(x + beta * y);
    case VarKind::Y: return Integer(y + alpha * x);
  }
  return 0;
}

Integer EvaluationPoint::z(KeyId key) const {
  const std::string& s = key_string(key);
  if (auto it = z_values.find(s); it != z_values.end()) return it->second;
  return hashed_value(s, default_seed, default_bound);
}

Integer evaluate(const RelPolynomial& p, const EvaluationPoint& pt) {
  std::unordered_map<VarCode, Integer> vars;
  std::unordered_map<KeyId, Integer> zs;
  Integer total = 0;
  Integer term, pw;
  for (const auto& [m, c] : p.terms()) {
    term = c;
    for (const auto& [v, e] : m.powers) {
      auto it = vars.find(v);
      if (it == vars.end()) it = vars.emplace(v, pt.value(v)).first;
      mpz_pow_ui(pw.get_mpz_t(), it->second.get_mpz_t(), e);
      term *= pw;
    }
    for (KeyId k : m.zs) {
      auto it = zs.find(k);
      if (it == zs.end()) it = zs.emplace(k, pt.z(k)).first;
      term *= it->second;
    }
    total += term;
  }
  return total;
}

bool equal_mod_ideal(const RelPolynomial& p, const RelPolynomial& q, unsigned trials, std::uint64_t seed) {
  const RelPolynomial d = p - q;
  if (d.is_zero()) return true;
  const std::int64_t bound = 10 * (1 + static_cast<std::int64_t>(std::max(p.total_degree(), q.total_degree())));
  std::vector<std::string> colors;
  for (ColorId c : d.colors()) colors.push_back(color_name(c));
  std::sort(colors.begin(), colors.end());
  for (unsigned t = 0; t < std::max(trials, 1U); ++t) {
    Rng rng(splitmix64(seed ^ splitmix64(t + 1)));
    EvaluationPoint pt;
    for (const auto& c : colors) {
      const auto x = rng.uniform(-bound, bound);
      const auto y = rng.uniform(-bound, bound);
      pt.xy[c] = {Integer(static_cast<long>(x)), Integer(static_cast<long>(y))};
    }
    pt.alpha = static_cast<long>(rng.uniform(-bound, bound));
    pt.beta = static_cast<long>(rng.uniform(-bound, bound));
    pt.default_seed = rng.next();
    pt.default_bound = bound;
    if (sgn(evaluate(d, pt)) != 0) return false;
  }
  return true;
}

}  // namespace reltutte
