#pragma once

#include <string>
#include <string_view>

#include "reltutte/graph.hpp"
#include "reltutte/graph_io.hpp"
#include "reltutte/polynomial.hpp"

namespace testing_helpers {

inline reltutte::ColoredMultigraph G(std::string_view text) { return reltutte::parse_graph_string(text); }

inline reltutte::RelPolynomial x(std::string_view c) { return reltutte::RelPolynomial::var(reltutte::VarKind::x, c); }
inline reltutte::RelPolynomial X(std::string_view c) { return reltutte::RelPolynomial::var(reltutte::VarKind::X, c); }
inline reltutte::RelPolynomial y(std::string_view c) { return reltutte::RelPolynomial::var(reltutte::VarKind::y, c); }
inline reltutte::RelPolynomial Y(std::string_view c) { return reltutte::RelPolynomial::var(reltutte::VarKind::Y, c); }

/// z-symbol from explicit block codes.
inline reltutte::RelPolynomial Z(std::initializer_list<std::string> codes) {
  return reltutte::RelPolynomial::z(reltutte::PivotClassKey(std::vector<std::string>(codes)));
}

/// z-symbol of the pivot class of a parsed zero-edge graph.
inline reltutte::RelPolynomial KZ(std::string_view text) {
  return reltutte::RelPolynomial::z(reltutte::pivot_class_key(G(text)));
}

inline reltutte::RelPolynomial C(long c) { return reltutte::RelPolynomial::constant(c); }

}  // namespace testing_helpers
