#pragma once

// JSON encodings of the input objects and the reports. Every document carries
// "schema": "endotorsion/1"; scalars, polynomials and rational functions are
// strings in the text syntax of parse.hpp. Emitting, parsing and emitting again
// gives the same bytes.

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "endotorsion/attach.hpp"
#include "endotorsion/cover.hpp"
#include "endotorsion/k_low.hpp"

namespace endotorsion {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "endotorsion/1";

/// Syntax errors become ParseError with the byte offset of the problem.
Json parse_json(std::string_view text);
/// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

/// Wraps nlohmann type and lookup errors in ParseError so that malformed
/// documents surface uniformly. The position is 0 for structural errors.
template <class F>
auto decode(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid document: ") + e.what(), 0);
  }
}

// Matrices: {"rows": r, "cols": c, "entries": [["1", "-1"], ...]}.
Json matrix_to_json(const FMatrix& m);
Json matrix_to_json(const ZMatrix& m);
FMatrix fmatrix_from_json(const Json& j, const Field& field);
ZMatrix zmatrix_from_json(const Json& j);

// Endomorphisms: {"schema", "field": "Q", "endo": {"n": 2, "f": [["0", "-1"], ["1", "1"]]},
// "S": ["t", "t^2 - t + 1"]}. "field" defaults to Q and "S" is optional.
struct EndoInput {
  Endo endo{FMatrix(Field::rationals(), 0, 0)};
  std::optional<MultSet> S;
};
Json endo_to_json(const Endo& e, const std::optional<MultSet>& S = std::nullopt);
EndoInput endo_from_json(const Json& j);

// Complexes: {"schema", "ring": "Q", "lo": 0, "hi": 1, "dims": [1, 2], "d": [matrix], "f": [matrix, matrix]}.
// d[k] is the differential out of degree lo + k + 1; f is optional.
struct ComplexInput {
  FChain complex;
  std::optional<ChainEndo> endo;
};
Json complex_to_json(const FChain& c);
Json complex_to_json(const ChainEndo& e);
Json complex_to_json(const ZChain& c);
ComplexInput complex_from_json(const Json& j);
/// "ring": "Z".
ZChain zcomplex_from_json(const Json& j);

/// True when the document describes a chain complex rather than one endomorphism.
bool is_complex_document(const Json& j);

// Self-maps of a fiber: {"schema", "fiber": <complex over Z>, "theta": [matrices],
// "label": "trefoil", "reduced": false}.
Json cover_to_json(const CellularSelfMap& s);
CellularSelfMap cover_from_json(const Json& j);

// Tame symbols: {"schema", "field": "Q", "symbol": [{"f": "t", "g": "t", "sign": 1}], "pi": "t"}.
struct TameInput {
  K2Symbol symbol;
  Poly pi;
};
Json tame_to_json(const K2Symbol& s, const Poly& pi);
TameInput tame_from_json(const Json& j);

// Witness: {"schema", "p": "t^2 - t + 1", "u": "theta"}; u is read in Q[theta]/(p).
struct WitnessInput {
  Poly p;
  FieldElem u;
};
Json witness_to_json(const Poly& p, const FieldElem& u);
WitnessInput witness_from_json(const Json& j);

// Maps to factor: {"schema", "source": <complex>, "target": <complex>, "map": [matrices], "m": 1}.
// map[k] acts on degree source.lo + k.
struct FactorMapInput {
  FChainMap map;
  int m = 0;
};
Json factor_map_to_json(const FChainMap& g, int m);
FactorMapInput factor_map_from_json(const Json& j);

// Reports.
Json series_to_json(const TruncSeries& s);
TruncSeries series_from_json(const Json& j, const Field& field);
Json milnor_to_json(const MilnorReport& r);
MilnorReport milnor_from_json(const Json& j, const Field& field = Field::rationals());
Json divisor_to_json(const Divisor& d);
Divisor divisor_from_json(const Json& j, const Field& field = Field::rationals());
Json homology_to_json(const HomologyReport<Integer>& h);
Json homology_to_json(const HomologyReport<FieldElem>& h);
Json homology_to_json(const HomologyReport<Poly>& h);

/// The text of a polynomial over the base field of an extension, in its symbol.
std::string ext_element_string(const FieldElem& u);

}  // namespace endotorsion
