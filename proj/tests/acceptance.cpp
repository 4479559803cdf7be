// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// All comparisons are exact; the only numeric tolerance is the time budget.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "chain_support.hpp"
#include "endotorsion/attach.hpp"
#include "endotorsion/cover.hpp"
#include "endotorsion/errors.hpp"
#include "endotorsion/k_low.hpp"
#include "generators.hpp"

using namespace endotorsion;
using namespace testing_support;

namespace {

constexpr int kModuleTrials = 1000;
constexpr double kModuleSeconds = 30.0;
constexpr int kGradedTrials = 200;
constexpr int kSeriesTrials = 200;
constexpr std::size_t kSeriesOrder = 16;
constexpr int kBoundaryTrials = 500;
constexpr int kDivisorPairs = 500;
constexpr int kSymbolTrials = 200;
constexpr int kFactorizationTrials = 100;
constexpr int kNilpotentTrials = 100;
constexpr int kBruteDegree = 12;

const Field Q = Field::rationals();
const PolyRing QT{Q, "t"};

struct Result {
  bool pass = true;
  std::string detail;
};

/// Collects failures; the first message is kept for the report line.
struct Check {
  int failures = 0;
  std::string first;

  void operator()(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  Result result(const std::string& ok_detail) const {
    if (failures == 0) return {true, ok_detail};
    return {false, std::to_string(failures) + " failure(s), first: " + first};
  }
};

FMatrix random_endo_matrix(Gen& g, std::size_t n, long long height) {
  FMatrix f(Q, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f(i, j) = Q.from_int(g.between(-height, height));
  return f;
}

/// det(a + b t) by cofactor expansion over Q[t].
Poly pencil_det(const FMatrix& a, const FMatrix& b) {
  PMatrix m(QT, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Poly(Q, {a(i, j), b(i, j)});
  return laplace_det(m);
}

/// p(f) by Horner's rule.
FMatrix horner(const Poly& p, const FMatrix& f) {
  FMatrix acc(Q, f.rows(), f.cols());
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * f;
    for (std::size_t i = 0; i < f.rows(); ++i) acc(i, i) = acc(i, i) + p.coeff(k);
  }
  return acc;
}

bool is_zero_matrix(const FMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

std::size_t rank_at(const HomologyReport<FieldElem>& h, int i) {
  const auto* d = h.at(i);
  return d ? d->free_rank : 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<std::string> run_command(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return std::nullopt;
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  if (pclose(pipe) != 0) return std::nullopt;
  return out;
}

// 1 ------------------------------------------------------------------------

Result module_milnor() {
  Gen g(1001);
  Check check;
  const auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < kModuleTrials; ++trial) {
    const auto n = static_cast<std::size_t>(g.between(0, 6));
    const FMatrix f = random_endo_matrix(g, n, 10);
    const Endo e(f);
    const MilnorReport r = milnor_identity(e);
    const FMatrix I = FMatrix::identity(Q, n);
    const Poly char_poly = pencil_det(-f, I);  // det(tI - f)
    const RatFunc tn = RatFunc::t_power(Q, static_cast<int>(n));
    check(r.tau == RatFunc(char_poly), "tau differs from det(tI - f)");
    check(r.zeta == RatFunc(pencil_det(I, -f)).inverse(), "zeta differs from 1/det(I - tf)");
    check(r.zeta_at_inverse == tn / RatFunc(char_poly), "zeta(1/t) differs from t^n/det(tI - f)");
    check(r.product == tn && r.holds && r.chi == static_cast<int>(n), "product is not t^n");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check(secs < kModuleSeconds, "time budget exceeded");
  std::ostringstream d;
  d.precision(2);
  d << std::fixed << kModuleTrials << " endomorphisms in " << secs << " s (budget " << kModuleSeconds << " s)";
  return check.result(d.str());
}

// 2 ------------------------------------------------------------------------

Result graded_milnor_check() {
  Gen g(1002);
  Check check;
  for (int trial = 0; trial < kGradedTrials; ++trial) {
    const ChainEndo e = random_chain_endo(g, Q, 4, 4);
    const MilnorReport r = graded_milnor(e);
    const int chi = e.base().euler_characteristic();
    check(r.holds && r.product == RatFunc::t_power(Q, chi), "graded product is not t^chi");
    check(graded_torsion(e) == homology_torsion(e), "chain torsion differs from homology torsion");
    check(graded_zeta(e) == homology_zeta(e), "chain zeta differs from homology zeta");
  }
  return check.result(std::to_string(kGradedTrials) + " chain endomorphisms");
}

// 3 ------------------------------------------------------------------------

Result trace_determinant() {
  Gen g(1003);
  Check check;
  for (int trial = 0; trial < kSeriesTrials; ++trial) {
    const Endo e(random_endo_matrix(g, static_cast<std::size_t>(g.between(0, 6)), 10));
    check(zeta_series(e, kSeriesOrder) == ratfunc_to_series(zeta_det(e), kSeriesOrder),
          "trace exponential differs from the determinant expansion");
  }
  return check.result(std::to_string(kSeriesTrials) + " endomorphisms, mod t^" + std::to_string(kSeriesOrder));
}

// 4 ------------------------------------------------------------------------

ZMatrix zpower(const ZMatrix& m, int k) {
  ZMatrix acc = ZMatrix::identity(IntegerRing{}, m.rows());
  for (int i = 0; i < k; ++i) acc = acc * m;
  return acc;
}

Result examples(const std::string& golden_dir) {
  Check check;
  const ZMatrix Qz = monodromy_q(), Rz = monodromy_r();
  const ZMatrix I2 = ZMatrix::identity(IntegerRing{}, 2);

  // prototype
  check(charpoly(to_field(Qz, Q)) == parse_poly("t^2 - t + 1"), "charpoly(Q)");
  check(det(to_field(I2 - Qz, Q)).is_one() || (-det(to_field(I2 - Qz, Q))).is_one(), "I - Q not unimodular");
  for (int n : {2, 3}) {
    const auto h = homology(mapping_torus(builtin_example("prototype", n)));
    check(h.at(0)->free_rank == 1 && h.at(1)->free_rank == 1, "prototype: H_0, H_1");
    for (const auto& d : h.degrees)
      if (d.degree > 1) check(d.free_rank == 0 && d.torsion.empty(), "prototype: not a homology circle");
  }

  // reflection
  check(zpower(Rz, 4) == I2 && !(zpower(Rz, 2) == I2), "R has order 4");
  for (int n : {2, 3, 4}) {
    const auto h = homology(mapping_torus(builtin_example("reflection", n)));
    for (const auto& d : h.degrees) {
      if (d.degree == 0 || d.degree == 1)
        check(d.free_rank == 1 && d.torsion.empty(), "reflection: H_0, H_1 = Z");
      else if (d.degree == n)
        check(d.free_rank == 0 && d.torsion == std::vector<Integer>{Integer(2)}, "reflection: H_n = Z/2");
      else
        check(d.free_rank == 0 && d.torsion.empty(), "reflection: stray homology");
    }
  }

  // trefoil
  check(zpower(Qz, 6) == I2 && !(zpower(Qz, 3) == I2) && !(zpower(Qz, 2) == I2), "Q has order 6");
  const CellularSelfMap trefoil = builtin_example("trefoil");
  const MilnorReport tr = milnor_check_cover(trefoil);
  check(reidemeister_torsion(trefoil) == parse_ratfunc("(t - 1)/(t^2 - t + 1)"), "trefoil tau");
  check(tr.tau == parse_ratfunc("(t - 1)/(t^2 - t + 1)"), "trefoil tau in the report");
  check(tr.zeta == parse_ratfunc("(t^2 - t + 1)/(1 - t)"), "trefoil zeta");
  check(tr.chi == -1 && tr.product == RatFunc::t_power(Q, -1) && tr.holds, "trefoil product t^-1");

  // closed
  for (int n : {1, 2, 3}) check(milnor_check_cover(builtin_example("closed", n)).holds, "closed: Milnor check");

  // Byte-stable reports.
  for (const auto& [name, n, file] : std::vector<std::tuple<std::string, int, std::string>>{
           {"trefoil", 1, "example_trefoil.txt"}, {"reflection", 3, "example_reflection_3.txt"}}) {
    check(gallery_report(name, n, 16) == read_file(golden_dir + "/" + file), name + ": golden report differs");
  }
  return check.result("prototype, reflection, trefoil, closed; golden reports match");
}

// 5 and 9 ------------------------------------------------------------------

std::vector<STorsionCase> boundary_inputs() {
  Gen g(1005);
  std::vector<STorsionCase> out;
  for (int trial = 0; trial < kBoundaryTrials; ++trial) out.push_back(random_s_torsion(g));
  STorsionCase proto;
  proto.e = Endo(to_field(monodromy_q(), Q));
  proto.S = MultSet({parse_poly("t^2 - t + 1")});
  proto.multiplicity[parse_poly("t^2 - t + 1")] = 1;
  out.push_back(proto);
  STorsionCase refl;
  refl.e = Endo(to_field(monodromy_r(), Q));
  refl.S = MultSet({parse_poly("t^2 + 1")});
  refl.multiplicity[parse_poly("t^2 + 1")] = 1;
  out.push_back(refl);
  return out;
}

Result boundary(const std::vector<STorsionCase>& inputs) {
  Check check;
  for (const auto& c : inputs) {
    try {
      check(boundary_tau_check(c.e, c.S), "boundary check returned false");
      Divisor expected;
      for (const auto& [p, m] : c.multiplicity) expected.add(p, m);
      check(divisor_of(torsion(c.e)) == expected, "divisor of tau differs from the construction");
    } catch (const std::exception& e) {
      check(false, e.what());
    }
  }
  Gen g(1055);
  for (int trial = 0; trial < kDivisorPairs; ++trial) {
    const RatFunc f = g.nonzero_ratfunc(Q, 3, 4), h = g.nonzero_ratfunc(Q, 3, 4);
    check(divisor_of(f * h) == divisor_of(f) + divisor_of(h), "divisor is not additive");
    // Independent: reassemble f up to a constant from its divisor.
    RatFunc rebuilt(Poly::constant(Q.one()));
    const Divisor df = divisor_of(f);
    for (const auto& [p, k] : df.support()) rebuilt *= RatFunc(p).pow(k);
    const RatFunc ratio = f / rebuilt;
    check(ratio.num().degree() == 0 && ratio.den().degree() == 0, "divisor does not determine f up to units");
  }
  return check.result(std::to_string(inputs.size()) + " S-torsion endomorphisms, " + std::to_string(kDivisorPairs) +
                      " divisor pairs");
}

Result zeta_units(const std::vector<STorsionCase>& inputs) {
  Check check;
  for (const auto& c : inputs) check(zeta_unit_check(c.e, c.S), "zeta is not a unit after inverting the dual set");
  return check.result(std::to_string(inputs.size()) + " inputs from criterion 5");
}

// 6 ------------------------------------------------------------------------

K2Symbol sym(const RatFunc& f, const RatFunc& g) {
  K2Symbol s;
  s.add(f, g, 1);
  return s;
}

Result k2_witness() {
  Check check;
  for (const char* p : {"t^2 - t + 1", "t^2 + 1"}) {
    const Field E = Field::extension(parse_poly(p));
    check(nontriviality_witness(parse_poly(p), E.generator()), std::string("witness at ") + p);
    check(!nontriviality_witness(parse_poly(p), E.one()), std::string("u = 1 at ") + p);
  }
  Gen g(1006);
  const std::vector<Poly> places = {parse_poly("t"), parse_poly("t - 1"), parse_poly("t + 2"), parse_poly("t^2 + 1"),
                                    parse_poly("t^2 - t + 1")};
  for (int trial = 0; trial < kSymbolTrials; ++trial) {
    const Poly& pi = places[static_cast<std::size_t>(g.between(0, 4))];
    auto with_pi = [&](RatFunc f) { return f * RatFunc(pi).pow(g.between(-2, 2)); };
    const RatFunc f1 = with_pi(g.nonzero_ratfunc(Q, 2, 4)), f2 = with_pi(g.nonzero_ratfunc(Q, 2, 4));
    const RatFunc h1 = with_pi(g.nonzero_ratfunc(Q, 2, 4));
    check(tame_symbol(sym(f1 * f2, h1), pi) == tame_symbol(sym(f1, h1), pi) * tame_symbol(sym(f2, h1), pi),
          "not multiplicative in the first entry");
    check(tame_symbol(sym(h1, f1 * f2), pi) == tame_symbol(sym(h1, f1), pi) * tame_symbol(sym(h1, f2), pi),
          "not multiplicative in the second entry");
    check(tame_symbol(sym(f1, -f1), pi).is_one(), "{f, -f} is not trivial");
  }
  return check.result("both witnesses non-trivial, " + std::to_string(kSymbolTrials) + " random symbols");
}

// 7 ------------------------------------------------------------------------

/// q divides some power of the product of the generators of S.
bool divides_power_of(Poly q, const MultSet& S) {
  Poly all = Poly::constant(Q.one());
  for (const auto& s : S.generators()) all *= s;
  for (Poly h = gcd(q, all); h.degree() > 0; h = gcd(q, all)) q = q / h;
  return q.degree() == 0;
}

Result factorization() {
  Check check;
  Gen g(1007);
  int stages = 0;
  for (int trial = 0; trial < kFactorizationTrials; ++trial) {
    // X includes into X + Z with Z concentrated above m, then a change of basis.
    const int m = static_cast<int>(g.between(0, 2));
    const FChain X = random_complex(g, Q, 0, random_dims(g, 3, 3), 2);
    const FChain Z = random_complex(g, Q, m + 1, random_dims(g, 2, 3), 2);
    const FChain XZ = direct_sum(X, Z);
    std::map<int, FMatrix> incl, A;
    for (int i = XZ.lo(); i <= XZ.hi(); ++i) {
      incl.emplace(i, vstack(FMatrix::identity(Q, X.dim(i)), FMatrix(Q, Z.dim(i), X.dim(i))));
      A.emplace(i, random_invertible(g, Q, XZ.dim(i)));
    }
    std::vector<FMatrix> d;
    for (int i = XZ.lo() + 1; i <= XZ.hi(); ++i) d.push_back(A.at(i - 1) * XZ.d(i) * inverse(A.at(i)));
    const FChain Y(Q, XZ.lo(), XZ.dims(), d);
    std::map<int, FMatrix> comp;
    for (int i = XZ.lo(); i <= XZ.hi(); ++i) comp.emplace(i, A.at(i) * incl.at(i));
    const FChainMap map(X, Y, comp);

    const ConnectiveFactorization f = connective_factorization(map, m);
    FChainMap composite = FChainMap::identity(X);
    int prev = m;
    for (const auto& s : f.stages) {
      ++stages;
      check(s.degree > prev, "stage degrees do not increase");
      prev = s.degree;
      composite = s.inclusion.compose_after(composite);
      for (const auto& hd : homology(cone(s.inclusion)).degrees)
        check(hd.free_rank == (hd.degree == s.degree ? s.rank : 0) && hd.torsion.empty(),
              "relative homology not free and concentrated");
    }
    check(f.final_map.compose_after(composite) == map, "composition differs from the map");
    check(homology(cone(f.final_map)).acyclic(), "final map is not a quasi-isomorphism");
  }

  // Depth one over Q[t]: characteristic-sequence resolutions.
  int depth_one = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const ChainEndo y = random_chain_endo(g, Q, 2, 3);
    const ChainEndo x(FChain(), {});
    const FChainMap zero = FChainMap::zero(x.base(), y.base());
    const auto h = homology(y.base());
    for (int n = y.base().lo(); n <= y.base().hi(); ++n) {
      const std::size_t dim = rank_at(h, n);
      if (dim == 0) continue;
      ++depth_one;
      const LinearDepthOne l = kill_one_linear(x, y, zero, n, FMatrix::identity(Q, dim));
      check(l.resolution == char_matrix(l.alpha), "resolution is not tI - alpha");
      // Smith form of the relative homology: invariant factors multiply to charpoly(alpha).
      const auto rel = homology(cone(l.step.inclusion));
      Poly prod = Poly::constant(Q.one());
      for (const auto& q : rel.at(n)->torsion) prod *= q;
      check(rel.at(n)->free_rank == 0 && prod == charpoly(l.alpha), "relative homology is not Q[t]/charpoly");
      for (const auto& hd : rel.degrees)
        if (hd.degree != n) check(hd.free_rank == 0 && hd.torsion.empty(), "relative homology outside degree n");
    }
  }
  // S-torsion instance.
  {
    const ChainEndo y = one_term(Endo(block_diag(block_jordan(parse_poly("t"), 2), to_field(monodromy_q(), Q))));
    const ChainEndo x(FChain(), {});
    const MultSet S({parse_poly("t"), parse_poly("t^2 - t + 1")});
    const TorsionDepthOne s = kill_one_s_torsion(x, y, FChainMap::zero(x.base(), y.base()), 0, S);
    check(s.p == parse_poly("(t(t^2 - t + 1))^2"), "S-torsion resolution polynomial");
    const auto rel = homology(cone(s.step.inclusion));
    check(rel.at(0)->free_rank == 0, "S-torsion relative homology has a free part");
    for (const auto& q : rel.at(0)->torsion) check(divides_power_of(q, S), "relative torsion outside S");
  }
  return check.result(std::to_string(kFactorizationTrials) + " factorizations (" + std::to_string(stages) +
                      " stages), " + std::to_string(depth_one) + " depth-one attachments, one S-torsion instance");
}

// 8 ------------------------------------------------------------------------

/// Products of generators with total degree at most `bound`.
std::vector<Poly> products_up_to(const std::vector<Poly>& gens, int bound) {
  std::vector<Poly> out = {Poly::constant(Q.one())};
  std::function<void(std::size_t, const Poly&)> grow = [&](std::size_t from, const Poly& acc) {
    for (std::size_t i = from; i < gens.size(); ++i) {
      if (acc.degree() + gens[i].degree() > bound) continue;
      const Poly next = acc * gens[i];
      out.push_back(next);
      grow(i, next);
    }
  };
  grow(0, Poly::constant(Q.one()));
  return out;
}

bool brute_s_torsion(const Endo& e, const MultSet& S) {
  for (const auto& p : products_up_to(S.generators(), kBruteDegree))
    if (is_zero_matrix(horner(p, e.f()))) return true;
  return false;
}

Result s_torsion_lemma() {
  Check check;
  Gen g(1008);
  int agree = 0, positive = 0;
  for (int trial = 0; trial < kNilpotentTrials; ++trial) {
    STorsionCase c = random_s_torsion(g, 5);
    // Sometimes add a semisimple block outside S.
    const bool outside = g.coin();
    if (outside) {
      c.e = Endo(block_diag(c.e.f(), companion(parse_poly("t - 5"))));
    }
    const TorsionConditions tc = torsion_conditions(one_term(c.e), c.S);
    const bool expect = !outside;
    check(tc.annihilates.has_value() == expect, "torsion conditions disagree with the construction");
    if (tc.annihilates) {
      ++positive;
      const Poly& p = *tc.locally_nilpotent;
      check(is_zero_matrix(horner(*tc.annihilates, c.e.f())), "p^N does not annihilate");
      FMatrix pf = horner(p, c.e.f());
      bool nilpotent_within = false;
      FMatrix power = pf;
      for (int k = 1; k <= static_cast<int>(c.e.n()); ++k, power = power * pf)
        if (is_zero_matrix(power)) {
          nilpotent_within = true;
          check(k == tc.exponent, "exponent N is not minimal");
          break;
        }
      check(nilpotent_within, "p(f) is not nilpotent");
      check(tc.exponent <= c.nilpotency, "exponent exceeds the largest Jordan block");
    }
    const bool brute = brute_s_torsion(c.e, c.S);
    check(is_s_torsion(c.e, c.S) == brute, "is_s_torsion disagrees with brute force");
    agree += is_s_torsion(c.e, c.S) == brute ? 1 : 0;
  }
  return check.result(std::to_string(kNilpotentTrials) + " cases (" + std::to_string(positive) +
                      " S-torsion), brute force to degree " + std::to_string(kBruteDegree) + " agrees on " +
                      std::to_string(agree));
}

// 10 -----------------------------------------------------------------------

Result determinism(const std::string& cli, const std::string& golden_dir) {
  Check check;
  const auto a = run_command("\"" + cli + "\" gallery");
  const auto b = run_command("\"" + cli + "\" gallery");
  check(a.has_value() && b.has_value(), "gallery run failed");
  if (a && b) {
    check(*a == *b, "two gallery runs differ");
    check(*a == read_file(golden_dir + "/gallery.txt"), "gallery differs from the golden file");
  }
  const auto ja = run_command("\"" + cli + "\" --format json gallery");
  const auto jb = run_command("\"" + cli + "\" --format json gallery");
  check(ja && jb && *ja == *jb, "two JSON gallery runs differ");
  return check.result("text and JSON gallery byte-identical across runs and equal to the golden file");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : ENDOTORSION_CLI;
  const std::string golden = argc > 2 ? argv[2] : GOLDEN_DIR;

  const std::vector<STorsionCase> boundary_cases = boundary_inputs();
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"Milnor identity, module level", module_milnor},
      {"Milnor identity, graded level", graded_milnor_check},
      {"trace-determinant zeta identity", trace_determinant},
      {"worked examples", [&] { return examples(golden); }},
      {"boundary splitting", [&] { return boundary(boundary_cases); }},
      {"K_2 witness and tame symbols", k2_witness},
      {"connective factorization", factorization},
      {"S-torsion conditions", s_torsion_lemma},
      {"zeta unit after inverting the dual set", [&] { return zeta_units(boundary_cases); }},
      {"determinism", [&] { return determinism(cli, golden); }},
  };
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Result r;
    try {
      r = criteria[k].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    all = all && r.pass;
    std::cout << "criterion " << (k + 1) << ": " << (r.pass ? "PASS" : "FAIL") << "  " << criteria[k].first << " -- "
              << r.detail << "\n";
  }
  return all ? 0 : 1;
}
