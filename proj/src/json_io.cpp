#include "endotorsion/json_io.hpp"

#include "endotorsion/errors.hpp"
#include "endotorsion/parse.hpp"

namespace endotorsion {

namespace {

std::string scalar_string(const FieldElem& x) {
  return x.field().is_extension() ? ext_element_string(x) : x.to_string();
}

Json stamped() {
  Json j;
  j["schema"] = kSchema;
  return j;
}

void check_schema(const Json& j) {
  if (!j.is_object()) throw ParseError("expected a JSON object", 0);
  auto it = j.find("schema");
  if (it != j.end() && *it != kSchema)
    throw ParseError("unsupported schema " + it->dump() + ", expected \"" + kSchema + "\"", 0);
}

std::size_t as_size(const Json& j, const char* key) {
  const long long v = j.at(key).get<long long>();
  if (v < 0) throw ParseError(std::string("\"") + key + "\" must be nonnegative", 0);
  return static_cast<std::size_t>(v);
}

template <class M, class Entry>
Json matrix_json(const M& m, Entry entry) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(entry(m(i, j)));
    rows.push_back(std::move(row));
  }
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = std::move(rows);
  return j;
}

template <class M, class Read>
M matrix_from(const Json& j, M out, Read read) {
  const Json& rows = j.at("entries");
  if (!rows.is_array() || rows.size() != out.rows()) throw ParseError("matrix has the wrong number of rows", 0);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    const Json& row = rows.at(i);
    if (!row.is_array() || row.size() != out.cols()) throw ParseError("matrix row has the wrong length", 0);
    for (std::size_t c = 0; c < out.cols(); ++c) out(i, c) = read(row.at(c).get<std::string>());
  }
  return out;
}

/// Rows of strings without the rows/cols wrapper, as used for "f" in endo files.
FMatrix square_from_rows(const Json& rows, std::size_t n, const Field& field) {
  Json wrapped;
  wrapped["entries"] = rows;
  return matrix_from(wrapped, FMatrix(field, n, n), [&](const std::string& s) { return parse_scalar(s, field); });
}

template <class Chain>
Json complex_json(const Chain& c, const std::string& ring) {
  Json j = stamped();
  j["ring"] = ring;
  j["lo"] = c.lo();
  j["hi"] = c.hi();
  j["dims"] = c.dims();
  Json d = Json::array();
  for (int i = c.lo() + 1; i <= c.hi(); ++i) d.push_back(matrix_to_json(c.d(i)));
  j["d"] = std::move(d);
  return j;
}

struct ComplexShape {
  int lo = 0;
  std::vector<std::size_t> dims;
};

ComplexShape complex_shape(const Json& j) {
  ComplexShape s;
  s.lo = j.at("lo").get<int>();
  s.dims = j.at("dims").get<std::vector<std::size_t>>();
  if (j.contains("hi") && j.at("hi").get<int>() != s.lo + static_cast<int>(s.dims.size()) - 1)
    throw ParseError("\"hi\" does not match \"lo\" and \"dims\"", 0);
  const std::size_t expected = s.dims.empty() ? 0 : s.dims.size() - 1;
  if (j.at("d").size() != expected) throw ParseError("\"d\" needs one matrix per degree above lo", 0);
  return s;
}

template <class Mat, class Read>
std::vector<Mat> differentials(const Json& j, const ComplexShape& s, Read read) {
  std::vector<Mat> d;
  for (std::size_t k = 1; k < s.dims.size(); ++k) {
    const Json& m = j.at("d").at(k - 1);
    if (as_size(m, "rows") != s.dims[k - 1] || as_size(m, "cols") != s.dims[k])
      throw ParseError("differential d_" + std::to_string(s.lo + static_cast<int>(k)) + " has the wrong shape", 0);
    d.push_back(read(m));
  }
  return d;
}

Json string_array(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

template <class R>
Json homology_json(const HomologyReport<R>& h) {
  Json degrees = Json::array();
  for (const auto& d : h.degrees) {
    Json e;
    e["degree"] = d.degree;
    e["free_rank"] = d.free_rank;
    Json t = Json::array();
    for (const auto& x : d.torsion) t.push_back(RingTraits<R>::str(x));
    e["torsion"] = std::move(t);
    degrees.push_back(std::move(e));
  }
  return degrees;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string ext_element_string(const FieldElem& u) {
  const Field E = u.field();
  if (!E.is_extension()) return u.to_string();
  return Poly(E.base(), u.ext_coeffs(), E.symbol()).to_string();
}

Json matrix_to_json(const FMatrix& m) {
  return matrix_json(m, [](const FieldElem& x) { return scalar_string(x); });
}

Json matrix_to_json(const ZMatrix& m) {
  return matrix_json(m, [](const Integer& x) { return x.get_str(); });
}

FMatrix fmatrix_from_json(const Json& j, const Field& field) {
  return decode([&] {
    return matrix_from(j, FMatrix(field, as_size(j, "rows"), as_size(j, "cols")),
                       [&](const std::string& s) { return parse_scalar(s, field); });
  });
}

ZMatrix zmatrix_from_json(const Json& j) {
  return decode([&] {
    return matrix_from(j, ZMatrix(IntegerRing{}, as_size(j, "rows"), as_size(j, "cols")),
                       [](const std::string& s) { return parse_integer(s); });
  });
}

Json endo_to_json(const Endo& e, const std::optional<MultSet>& S) {
  Json j = stamped();
  j["field"] = e.field().name();
  Json endo;
  endo["n"] = e.n();
  endo["f"] = matrix_to_json(e.f())["entries"];
  j["endo"] = std::move(endo);
  if (S) {
    std::vector<std::string> gens;
    for (const auto& g : S->generators()) gens.push_back(g.to_string());
    j["S"] = string_array(gens);
  }
  return j;
}

EndoInput endo_from_json(const Json& j) {
  return decode([&] {
    check_schema(j);
    const Field F = j.contains("field") ? parse_field(j.at("field").get<std::string>()) : Field::rationals();
    const Json& e = j.at("endo");
    EndoInput out;
    out.endo = Endo(square_from_rows(e.at("f"), as_size(e, "n"), F));
    if (j.contains("S")) {
      std::vector<Poly> gens;
      for (const auto& g : j.at("S")) gens.push_back(parse_poly(g.get<std::string>(), F));
      out.S = MultSet(gens);
    }
    return out;
  });
}

Json complex_to_json(const FChain& c) { return complex_json(c, c.ring().name()); }

Json complex_to_json(const ChainEndo& e) {
  Json j = complex_json(e.base(), e.field().name());
  Json f = Json::array();
  for (int i = e.base().lo(); i <= e.base().hi(); ++i) f.push_back(matrix_to_json(e.f(i)));
  j["f"] = std::move(f);
  return j;
}

Json complex_to_json(const ZChain& c) { return complex_json(c, "Z"); }

bool is_complex_document(const Json& j) { return j.is_object() && j.contains("dims"); }

ComplexInput complex_from_json(const Json& j) {
  return decode([&] {
    check_schema(j);
    const std::string ring = j.contains("ring") ? j.at("ring").get<std::string>() : "Q";
    if (ring == "Z") throw ParseError("expected a complex over a field, got ring Z", 0);
    const Field F = parse_field(ring);
    const ComplexShape s = complex_shape(j);
    ComplexInput out;
    out.complex = FChain(F, s.lo, s.dims,
                         differentials<FMatrix>(j, s, [&](const Json& m) { return fmatrix_from_json(m, F); }));
    if (j.contains("f")) {
      if (j.at("f").size() != s.dims.size()) throw ParseError("\"f\" needs one matrix per degree", 0);
      std::vector<FMatrix> f;
      for (std::size_t k = 0; k < s.dims.size(); ++k) {
        const Json& m = j.at("f").at(k);
        if (as_size(m, "rows") != s.dims[k] || as_size(m, "cols") != s.dims[k])
          throw ParseError("f_" + std::to_string(s.lo + static_cast<int>(k)) + " has the wrong shape", 0);
        f.push_back(fmatrix_from_json(m, F));
      }
      out.endo = ChainEndo(out.complex, std::move(f));
    }
    return out;
  });
}

ZChain zcomplex_from_json(const Json& j) {
  return decode([&] {
    check_schema(j);
    if (j.contains("ring") && j.at("ring") != "Z") throw ParseError("fiber complex must have ring Z", 0);
    const ComplexShape s = complex_shape(j);
    return ZChain(IntegerRing{}, s.lo, s.dims,
                  differentials<ZMatrix>(j, s, [](const Json& m) { return zmatrix_from_json(m); }));
  });
}

Json cover_to_json(const CellularSelfMap& s) {
  Json j = stamped();
  Json fiber = complex_to_json(s.complex());
  fiber.erase("schema");
  j["fiber"] = std::move(fiber);
  Json theta = Json::array();
  for (int i = s.complex().lo(); i <= s.complex().hi(); ++i) theta.push_back(matrix_to_json(s.theta(i)));
  j["theta"] = std::move(theta);
  j["label"] = s.label();
  j["reduced"] = s.reduced();
  return j;
}

CellularSelfMap cover_from_json(const Json& j) {
  return decode([&] {
    check_schema(j);
    const ZChain fiber = zcomplex_from_json(j.at("fiber"));
    std::vector<ZMatrix> theta;
    for (const auto& m : j.at("theta")) theta.push_back(zmatrix_from_json(m));
    const std::string label = j.contains("label") ? j.at("label").get<std::string>() : "";
    const bool reduced = j.contains("reduced") && j.at("reduced").get<bool>();
    return CellularSelfMap(fiber, std::move(theta), label, reduced);
  });
}

Json tame_to_json(const K2Symbol& s, const Poly& pi) {
  Json j = stamped();
  j["field"] = pi.field().name();
  Json terms = Json::array();
  for (const auto& t : s.terms()) {
    Json e;
    e["f"] = t.f.to_string();
    e["g"] = t.g.to_string();
    e["sign"] = t.sign;
    terms.push_back(std::move(e));
  }
  j["symbol"] = std::move(terms);
  j["pi"] = pi.to_string();
  return j;
}

TameInput tame_from_json(const Json& j) {
  return decode([&] {
    check_schema(j);
    const Field F = j.contains("field") ? parse_field(j.at("field").get<std::string>()) : Field::rationals();
    TameInput out;
    for (const auto& t : j.at("symbol")) {
      const int sign = t.contains("sign") ? t.at("sign").get<int>() : 1;
      out.symbol.add(parse_ratfunc(t.at("f").get<std::string>(), F), parse_ratfunc(t.at("g").get<std::string>(), F),
                     sign);
    }
    out.pi = parse_poly(j.at("pi").get<std::string>(), F);
    return out;
  });
}

Json witness_to_json(const Poly& p, const FieldElem& u) {
  Json j = stamped();
  j["p"] = p.to_string();
  j["u"] = ext_element_string(u);
  return j;
}

WitnessInput witness_from_json(const Json& j) {
  return decode([&] {
    check_schema(j);
    const Poly p = parse_poly(j.at("p").get<std::string>());
    const Field E = Field::extension(p);
    return WitnessInput{p, parse_scalar(j.at("u").get<std::string>(), E)};
  });
}

Json factor_map_to_json(const FChainMap& g, int m) {
  Json j = stamped();
  Json source = complex_to_json(g.source());
  Json target = complex_to_json(g.target());
  source.erase("schema");
  target.erase("schema");
  j["source"] = std::move(source);
  j["target"] = std::move(target);
  Json comps = Json::array();
  for (int i = g.source().lo(); i <= g.source().hi(); ++i) comps.push_back(matrix_to_json(g.g(i)));
  j["map"] = std::move(comps);
  j["m"] = m;
  return j;
}

FactorMapInput factor_map_from_json(const Json& j) {
  return decode([&] {
    check_schema(j);
    const FChain X = complex_from_json(j.at("source")).complex;
    const FChain Y = complex_from_json(j.at("target")).complex;
    if (!(X.ring() == Y.ring())) throw ParseError("source and target are over different fields", 0);
    const Json& comps = j.at("map");
    if (comps.size() != X.dims().size()) throw ParseError("\"map\" needs one matrix per degree of the source", 0);
    std::map<int, FMatrix> g;
    for (std::size_t k = 0; k < comps.size(); ++k) {
      const int i = X.lo() + static_cast<int>(k);
      FMatrix m = fmatrix_from_json(comps.at(k), X.ring());
      if (m.rows() != Y.dim(i) || m.cols() != X.dim(i))
        throw ParseError("map component in degree " + std::to_string(i) + " has the wrong shape", 0);
      g.emplace(i, std::move(m));
    }
    return FactorMapInput{FChainMap(X, Y, std::move(g)), j.at("m").get<int>()};
  });
}

Json series_to_json(const TruncSeries& s) {
  Json j;
  j["order"] = s.order();
  std::vector<std::string> c;
  for (std::size_t k = 0; k < s.order(); ++k) c.push_back(s.coeff(k).to_string());
  j["coeffs"] = string_array(c);
  j["text"] = s.to_string();
  return j;
}

TruncSeries series_from_json(const Json& j, const Field& field) {
  return decode([&] {
    std::vector<FieldElem> c;
    for (const auto& x : j.at("coeffs")) c.push_back(parse_scalar(x.get<std::string>(), field));
    return TruncSeries(field, as_size(j, "order"), std::move(c));
  });
}

Json milnor_to_json(const MilnorReport& r) {
  Json j;
  j["tau"] = r.tau.to_string();
  j["zeta"] = r.zeta.to_string();
  j["zeta_at_inverse"] = r.zeta_at_inverse.to_string();
  j["product"] = r.product.to_string();
  j["expected"] = r.expected.to_string();
  j["chi"] = r.chi;
  j["holds"] = r.holds;
  return j;
}

MilnorReport milnor_from_json(const Json& j, const Field& field) {
  return decode([&] {
    const RatFunc tau = parse_ratfunc(j.at("tau").get<std::string>(), field);
    const RatFunc zeta = parse_ratfunc(j.at("zeta").get<std::string>(), field);
    MilnorReport r = make_milnor_report(tau, zeta, j.at("chi").get<int>());
    if (r.product.to_string() != j.at("product").get<std::string>() || r.holds != j.at("holds").get<bool>())
      throw ParseError("Milnor report is inconsistent with its tau and zeta", 0);
    return r;
  });
}

Json divisor_to_json(const Divisor& d) {
  Json a = Json::array();
  for (auto it = d.support().rbegin(); it != d.support().rend(); ++it) {
    Json e;
    e["p"] = it->first.to_string();
    e["ord"] = it->second;
    a.push_back(std::move(e));
  }
  return a;
}

Divisor divisor_from_json(const Json& j, const Field& field) {
  return decode([&] {
    Divisor d;
    for (const auto& e : j) d.add(parse_poly(e.at("p").get<std::string>(), field), e.at("ord").get<int>());
    return d;
  });
}

Json homology_to_json(const HomologyReport<Integer>& h) { return homology_json(h); }
Json homology_to_json(const HomologyReport<FieldElem>& h) { return homology_json(h); }
Json homology_to_json(const HomologyReport<Poly>& h) { return homology_json(h); }

}  // namespace endotorsion
