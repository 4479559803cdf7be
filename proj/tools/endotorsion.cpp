// endotorsion: command-line front end.
//
// Exit codes: 0 success, 1 a verified identity failed, 2 the input was
// rejected (malformed JSON, bad syntax, unmet precondition), 3 the
// factorization cap was hit.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "endotorsion/attach.hpp"
#include "endotorsion/cover.hpp"
#include "endotorsion/errors.hpp"
#include "endotorsion/json_io.hpp"
#include "endotorsion/k_low.hpp"
#include "endotorsion/parse.hpp"

using namespace endotorsion;

namespace {

struct RunConfig {
  std::string command;
  std::string input;
  std::size_t order = 16;
  int cap = 8;
  std::string format = "text";
  std::string example;
  int n = 2;
  std::uint64_t seed = 1;
  int trials = 200;

  FactorOptions factor() const { return FactorOptions{cap}; }
};

struct Output {
  std::string text;
  Json json;
};

Json header(const RunConfig& cfg) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = cfg.command;
  return j;
}

Json load(const std::string& input) {
  const auto first = input.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (input[first] == '{' || input[first] == '[')) return parse_json(input);
  std::ifstream in(input, std::ios::binary);
  if (!in) throw ParseError("cannot read input file " + input, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

MultSet require_S(const std::optional<MultSet>& S) {
  if (!S) throw ParseError("this command needs a multiplicative set \"S\"", 0);
  return *S;
}

// ---- torsion, zeta, milnor -------------------------------------------------

/// Either a single endomorphism or a chain complex with one.
struct Subject {
  std::optional<Endo> endo;
  std::optional<ChainEndo> chain;
  std::optional<MultSet> S;

  const Field& field() const { return endo ? endo->field() : chain->field(); }
};

Subject subject(const Json& doc) {
  Subject s;
  if (is_complex_document(doc)) {
    ComplexInput c = complex_from_json(doc);
    if (!c.endo) throw ParseError("complex document needs \"f\"", 0);
    s.chain = std::move(c.endo);
    if (doc.contains("S")) {
      s.S = decode([&] {
        std::vector<Poly> gens;
        for (const auto& g : doc.at("S")) gens.push_back(parse_poly(g.get<std::string>(), s.chain->field()));
        return MultSet(gens);
      });
    }
  } else {
    EndoInput e = endo_from_json(doc);
    s.endo = std::move(e.endo);
    s.S = std::move(e.S);
  }
  return s;
}

RatFunc subject_torsion(const Subject& s) {
  if (s.endo) return torsion(*s.endo);
  const RatFunc tau = graded_torsion(*s.chain);
  if (!(tau == homology_torsion(*s.chain))) throw IdentityViolation("chain and homology torsion disagree");
  return tau;
}

RatFunc subject_zeta(const Subject& s) {
  if (s.endo) return zeta_det(*s.endo);
  const RatFunc z = graded_zeta(*s.chain);
  if (!(z == homology_zeta(*s.chain))) throw IdentityViolation("chain and homology zeta functions disagree");
  return z;
}

/// Empty in positive characteristic, where the exponential is undefined.
std::optional<TruncSeries> subject_series(const Subject& s, const RatFunc& closed, std::size_t order) {
  if (s.field().characteristic() != 0) return std::nullopt;
  const TruncSeries series = s.endo ? zeta_series(*s.endo, order) : lefschetz_zeta_series(*s.chain, order);
  if (!(series == ratfunc_to_series(closed, order)))
    throw IdentityViolation("trace series disagrees with the determinant");
  return series;
}

void add_series(Output& out, const std::optional<TruncSeries>& series) {
  if (series) {
    out.text += "zeta series = " + series->to_string() + "\n";
    out.json["zeta_series"] = series_to_json(*series);
  } else {
    out.text += "zeta series = undefined in positive characteristic\n";
    out.json["zeta_series"] = nullptr;
  }
}

Output cmd_torsion(const RunConfig& cfg) {
  const Subject s = subject(load(cfg.input));
  const RatFunc tau = subject_torsion(s);
  Output out{"tau = " + tau.to_string() + "\n", header(cfg)};
  out.json["tau"] = tau.to_string();
  return out;
}

Output cmd_zeta(const RunConfig& cfg) {
  const Subject s = subject(load(cfg.input));
  const RatFunc z = subject_zeta(s);
  Output out{"zeta = " + z.to_string() + "\n", header(cfg)};
  out.json["zeta"] = z.to_string();
  add_series(out, subject_series(s, z, cfg.order));
  return out;
}

Output cmd_milnor(const RunConfig& cfg) {
  const Subject s = subject(load(cfg.input));
  const RatFunc tau = subject_torsion(s);
  const RatFunc z = subject_zeta(s);
  const int chi = s.endo ? static_cast<int>(s.endo->n()) : s.chain->base().euler_characteristic();
  const MilnorReport r = make_milnor_report(tau, z, chi);
  Output out{r.to_string(), header(cfg)};
  out.json["milnor"] = milnor_to_json(r);
  add_series(out, subject_series(s, z, cfg.order));
  require_holds(r);
  return out;
}

// ---- S-torsion, decomposition, boundary ------------------------------------

Output cmd_storsion(const RunConfig& cfg) {
  const Subject s = subject(load(cfg.input));
  const MultSet S = require_S(s.S);
  const ChainEndo e = s.endo ? one_term(*s.endo) : *s.chain;
  const TorsionConditions c = torsion_conditions(e, S, cfg.factor());
  const bool yes = c.annihilates.has_value();
  Output out{"S = " + S.to_string() + "\nS-torsion: " + (yes ? "yes" : "no") + "\n", header(cfg)};
  out.json["S"] = S.to_string();
  out.json["s_torsion"] = yes;
  if (yes) {
    out.text += "locally nilpotent: " + c.locally_nilpotent->to_string() + "\n";
    out.text += "exponent N = " + std::to_string(c.exponent) + "\n";
    out.text += "annihilator p^N = " + c.annihilates->to_string() + "\n";
    out.json["locally_nilpotent"] = c.locally_nilpotent->to_string();
    out.json["exponent"] = c.exponent;
    out.json["annihilates"] = c.annihilates->to_string();
    if (s.endo) {
      zeta_unit_check(*s.endo, S, cfg.factor());
      out.text += "det(I - t f) is a unit after inverting " + multset_dual(S).to_string() + "\n";
      out.json["zeta_unit"] = true;
    }
  }
  return out;
}

Endo require_endo(const Subject& s) {
  if (!s.endo) throw ParseError("this command needs a single endomorphism, not a complex", 0);
  return *s.endo;
}

Output cmd_decompose(const RunConfig& cfg) {
  const Endo e = require_endo(subject(load(cfg.input)));
  Output out{"", header(cfg)};
  Json comps = Json::array();
  for (const auto& c : primary_decompose(e, cfg.factor())) {
    out.text += "p = " + c.p.to_string() + ", multiplicity " + std::to_string(c.multiplicity) + ", dimension " +
                std::to_string(c.basis.cols()) + "\n";
    out.text += "  f on component = " + c.restricted.to_string() + "\n";
    Json j;
    j["p"] = c.p.to_string();
    j["multiplicity"] = c.multiplicity;
    j["basis"] = matrix_to_json(c.basis);
    j["restricted"] = matrix_to_json(c.restricted);
    comps.push_back(std::move(j));
  }
  if (comps.empty()) out.text = "no components (zero module)\n";
  out.json["components"] = std::move(comps);
  return out;
}

Output cmd_boundary(const RunConfig& cfg) {
  const Subject s = subject(load(cfg.input));
  const BoundaryReport r = boundary_report(require_endo(s), require_S(s.S), cfg.factor());
  Output out{r.to_string(), header(cfg)};
  out.json["divisor_of_tau"] = divisor_to_json(r.from_torsion);
  out.json["primary_decomposition"] = divisor_to_json(r.from_decomposition);
  out.json["holds"] = r.holds;
  return out;
}

// ---- symbols -----------------------------------------------------------------

Output cmd_tame(const RunConfig& cfg) {
  const TameInput in = tame_from_json(load(cfg.input));
  const FieldElem r = tame_symbol(in.symbol, in.pi, cfg.factor());
  Output out{"symbol = " + in.symbol.to_string() + "\npi = " + in.pi.to_string() + "\nresidue field = " +
                 residue_field(in.pi).name() + "\ntame symbol = " + r.to_string() + "\n",
             header(cfg)};
  out.json["symbol"] = in.symbol.to_string();
  out.json["pi"] = in.pi.to_string();
  out.json["residue_field"] = residue_field(in.pi).name();
  out.json["tame_symbol"] = r.to_string();
  return out;
}

Output cmd_witness(const RunConfig& cfg) {
  const WitnessInput in = witness_from_json(load(cfg.input));
  const K2Symbol s = torsion_loop_symbol(in.p, in.u, cfg.factor());
  const bool nontrivial = nontriviality_witness(in.p, in.u, cfg.factor());
  Output out{"symbol = " + s.to_string() + "\ntame symbol at t - theta = " + ext_element_string(in.u) +
                 "\nnon-trivial: " + (nontrivial ? "yes" : "no") + "\n",
             header(cfg)};
  out.json["symbol"] = s.to_string();
  out.json["boundary"] = ext_element_string(in.u);
  out.json["nontrivial"] = nontrivial;
  return out;
}

// ---- chain maps and covers ---------------------------------------------------

std::string dims_string(const FChain& c) {
  std::string s = "lo " + std::to_string(c.lo()) + ", dims [";
  for (std::size_t k = 0; k < c.dims().size(); ++k) s += (k ? ", " : "") + std::to_string(c.dims()[k]);
  return s + "]";
}

Output cmd_factor_map(const RunConfig& cfg) {
  const FactorMapInput in = factor_map_from_json(load(cfg.input));
  const ConnectiveFactorization f = connective_factorization(in.map, in.m);
  Output out{"source: " + dims_string(in.map.source()) + "\ntarget: " + dims_string(in.map.target()) + "\n",
             header(cfg)};
  Json stages = Json::array();
  for (std::size_t k = 0; k < f.stages.size(); ++k) {
    const auto& s = f.stages[k];
    out.text += "stage " + std::to_string(k + 1) + ": " + std::to_string(s.rank) + " cell(s) in degree " +
                std::to_string(s.degree) + ", complex " + dims_string(s.complex) + "\n";
    Json j;
    j["degree"] = s.degree;
    j["rank"] = s.rank;
    Json c = complex_to_json(s.complex);
    c.erase("schema");
    j["complex"] = std::move(c);
    stages.push_back(std::move(j));
  }
  out.text += "final map is a quasi-isomorphism\n";
  out.json["m"] = in.m;
  out.json["stages"] = std::move(stages);
  return out;
}

Json cover_summary(const CellularSelfMap& s, std::size_t order) {
  Json j;
  j["torus_homology"] = homology_to_json(homology(mapping_torus(s)));
  j["cover_homology"] = homology_to_json(cover_complex(s).cover_homology);
  j["milnor"] = milnor_to_json(milnor_check_cover(s));
  j["zeta_series"] = series_to_json(deck_zeta(s, order).series);
  return j;
}

Output cmd_cover(const RunConfig& cfg) {
  const CellularSelfMap s = cover_from_json(load(cfg.input));
  Output out{cover_report(s, cfg.order), header(cfg)};
  out.json["label"] = s.label();
  out.json["report"] = cover_summary(s, cfg.order);
  return out;
}

Output gallery_entry(const RunConfig& cfg, const std::string& name, int n) {
  Output out{gallery_report(name, n, cfg.order), header(cfg)};
  out.json["name"] = name;
  if (name != "trefoil") out.json["n"] = n;
  out.json["report"] = cover_summary(builtin_example(name, n), cfg.order);
  out.json["text"] = out.text;
  return out;
}

Output cmd_example(const RunConfig& cfg) { return gallery_entry(cfg, cfg.example, cfg.n); }

Output cmd_gallery(const RunConfig& cfg) {
  Output out{"", header(cfg)};
  Json entries = Json::array();
  const std::vector<std::pair<std::string, int>> all = {
      {"prototype", 2}, {"prototype", 3}, {"reflection", 2}, {"reflection", 3}, {"trefoil", 1}, {"closed", 2}};
  for (const auto& [name, n] : all) {
    Output e = gallery_entry(cfg, name, n);
    if (!out.text.empty()) out.text += "\n";
    out.text += e.text;
    e.json.erase("schema");
    e.json.erase("command");
    entries.push_back(std::move(e.json));
  }
  out.json["examples"] = std::move(entries);
  return out;
}

// ---- randomized self test ----------------------------------------------------

Output cmd_selftest(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  auto between = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
  const Field Q = Field::rationals();
  int endos = 0, covers = 0;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const auto n = static_cast<std::size_t>(between(0, 6));
    FMatrix f(Q, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) f(i, j) = Q.from_int(between(-10, 10));
    const Endo e(f);
    require_holds(milnor_identity(e));
    if (!(zeta_series(e, cfg.order) == ratfunc_to_series(zeta_det(e), cfg.order)))
      throw IdentityViolation("trace series disagrees with the determinant");
    ++endos;

    // A fiber with zero differential and random integral monodromy.
    std::vector<std::size_t> dims(static_cast<std::size_t>(between(1, 3)));
    for (auto& d : dims) d = static_cast<std::size_t>(between(0, 3));
    std::vector<ZMatrix> theta;
    for (auto d : dims) {
      ZMatrix m(IntegerRing{}, d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = Integer(static_cast<long>(between(-3, 3)));
      theta.push_back(std::move(m));
    }
    const CellularSelfMap s(ZChain::discrete(IntegerRing{}, 0, dims), std::move(theta));
    if (mapping_torus(s).euler_characteristic() != 0) throw IdentityViolation("mapping torus has nonzero Euler characteristic");
    if (!s.is_rational_equivalence()) continue;
    milnor_check_cover(s);
    deck_zeta(s, cfg.order);
    ++covers;
  }
  Output out{"seed " + std::to_string(cfg.seed) + ": " + std::to_string(endos) + " endomorphisms, " +
                 std::to_string(covers) + " mapping tori; all identities hold\n",
             header(cfg)};
  out.json["seed"] = cfg.seed;
  out.json["endomorphisms"] = endos;
  out.json["mapping_tori"] = covers;
  out.json["ok"] = true;
  return out;
}

int run(const RunConfig& cfg) {
  static const std::map<std::string, Output (*)(const RunConfig&)> commands = {
      {"torsion", cmd_torsion}, {"zeta", cmd_zeta},       {"milnor", cmd_milnor},         {"storsion", cmd_storsion},
      {"decompose", cmd_decompose}, {"boundary", cmd_boundary}, {"tame", cmd_tame},     {"witness", cmd_witness},
      {"factor-map", cmd_factor_map}, {"cover", cmd_cover},   {"example", cmd_example},  {"gallery", cmd_gallery},
      {"selftest", cmd_selftest}};
  try {
    const Output out = commands.at(cfg.command)(cfg);
    std::cout << (cfg.format == "json" ? dump(out.json) : out.text);
    return 0;
  } catch (const IdentityViolation& e) {
    std::cerr << "identity violation: " << e.what() << "\n";
    return 1;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Endomorphism torsion, zeta functions and Milnor's identity"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--order", cfg.order, "series order N")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--cap", cfg.cap, "largest degree factored over Q")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json"}));

  const std::vector<std::pair<std::string, std::string>> with_input = {
      {"torsion", "det(tI - f), or the graded torsion of a complex"},
      {"zeta", "zeta function, closed form and series"},
      {"milnor", "check zeta(1/t) tau(t) = t^chi"},
      {"storsion", "decide S-torsion and find the annihilating power"},
      {"decompose", "primary decomposition"},
      {"boundary", "compare the divisor of tau with the primary decomposition"},
      {"tame", "tame symbol of a sum of Steinberg symbols at pi"},
      {"witness", "boundary of {u, t - theta} and the non-triviality verdict"},
      {"factor-map", "factor an m-connected chain map by cell attachments"},
      {"cover", "mapping torus, infinite cyclic cover and Milnor check of a self-map"}};
  for (const auto& [name, help] : with_input) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", cfg.input, "JSON file or inline JSON")->required();
  }
  auto* example = app.add_subcommand("example", "run a built-in example end to end");
  example->add_option("name", cfg.example, "example name")
      ->required()
      ->check(CLI::IsMember({"prototype", "reflection", "trefoil", "closed"}));
  example->add_option("--n", cfg.n, "sphere dimension")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_subcommand("gallery", "run every built-in example");
  auto* selftest = app.add_subcommand("selftest", "randomized identity checks");
  selftest->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  selftest->add_option("--trials", cfg.trials, "number of trials")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run(cfg);
}
