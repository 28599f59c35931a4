// siegel: command-line front end.
//
// Exit codes: 0 success, 1 domain error (or failed checks), 2 usage error.

#include "siegel/siegel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace {

using namespace siegel;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  long level = 1;
  long weight = 4;
  std::string chi = "1";
  bool forced = false;
  std::string op;
  std::string output;
  std::string format = "json";
  long prime_max = 13;
  std::string provider;
  long det_bound = 30;
  long sample_bound = 4;
  bool spectral = false;
  bool calibrate = false;
  bool project = false;
  std::string preset = "desk";
  VerifyConfig config;
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw std::runtime_error("cannot write " + o.output);
  out << text;
}

void emit(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

EisSpace make_space(const Options& o) {
  return EisSpace(o.level, o.weight, parse_character(o.level, o.chi), o.forced);
}

long parse_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("bad " + what + " '" + s + "'");
  }
}

using OpToken = std::variant<HeckeOp, std::pair<SKind, long>, UOperator>;

/// Grammar: T:p | T1:p | S1:q | S2:q | U:Q,P, joined by ';'.
std::vector<OpToken> parse_ops(const std::string& text) {
  std::vector<OpToken> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("operator '" + item + "' is not KIND:ARG");
    const std::string kind = item.substr(0, colon), arg = item.substr(colon + 1);
    if (kind == "U") {
      auto comma = arg.find(',');
      if (comma == std::string::npos) throw UsageError("U operator needs U:Q,P");
      out.emplace_back(UOperator(parse_long(arg.substr(0, comma), "Q"), parse_long(arg.substr(comma + 1), "P")));
      continue;
    }
    const long p = parse_long(arg, "prime");
    if (kind == "T") out.emplace_back(HeckeOp::T(p));
    else if (kind == "T1") out.emplace_back(HeckeOp::T1(p));
    else if (kind == "S1") out.emplace_back(std::make_pair(SKind::S1, p));
    else if (kind == "S2") out.emplace_back(std::make_pair(SKind::S2, p));
    else throw UsageError("unknown operator kind '" + kind + "'");
  }
  if (out.empty()) throw UsageError("empty operator word");
  return out;
}

int cmd_basis(const Options& o) {
  emit(o, space_json(make_space(o)));
  return 0;
}

int cmd_hecke(const Options& o) {
  const auto word = parse_ops(o.op);
  EisSpace space = make_space(o);
  HeckeAlgebra alg(space);
  CycMatrix m = CycMatrix::identity(space.dimension());
  for (const auto& t : word) {
    if (std::holds_alternative<UOperator>(t)) throw UsageError("U operators act on Fourier expansions; use the fourier command");
    if (const auto* h = std::get_if<HeckeOp>(&t)) m = m * alg(*h);
    else {
      const auto& [kind, q] = std::get<std::pair<SKind, long>>(t);
      m = m * s_operator(alg, q, kind);
    }
  }
  emit(o, Json{{"space", space_json(space)}, {"op", o.op}, {"matrix", to_json(m)}});
  return 0;
}

int cmd_eigen(const Options& o) {
  EisSpace space = make_space(o);
  HeckeAlgebra alg(space);
  const auto sys = eigenbasis(alg, o.prime_max);
  if (o.format == "json") {
    emit(o, to_json(sys));
    return 0;
  }
  std::ostringstream os;
  os << "N0,N1,N2,op,matrix_value,closed_form,match\n";
  for (const auto& c : compare_eigenvalues(sys))
    os << c.partition.n0 << "," << c.partition.n1 << "," << c.partition.n2 << "," << c.op.name() << "," << c.matrix_value.to_string()
       << "," << c.closed_form.to_string() << "," << (c.match ? "true" : "false") << "\n";
  emit(o, os.str());
  return 0;
}

int cmd_relations(const Options& o) {
  EisSpace space = make_space(o);
  if (!space.character().is_trivial()) throw std::domain_error("relations: the S-word identities need the trivial character");
  HeckeAlgebra alg(space);
  const std::size_t n = space.dimension();
  const CycVector corner = unit_vector(n, space.require_index({space.level(), 1, 1}));
  Json cq = Json::object();
  for (long q : space.primes()) {
    const CycNum c = CycNum(Rational(q * q)) /
                     (CycNum(Rational(q - 1)) * (space.chi_at(space.level() / q, q) * CycNum(detail::rpow(q, o.weight)) - CycNum(1)));
    cq[std::to_string(q)] = to_json(c);
  }
  Json ids = Json::array();
  bool all = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = space[i];
    const CycVector img = vec_mat(corner, s_word(alg, r.n1, r.n2));
    const bool ok = img == unit_vector(n, i);
    all = all && ok;
    ids.push_back(Json{{"partition", to_json(r)}, {"word", "S1(" + std::to_string(r.n1) + ")S2(" + std::to_string(r.n2) + ")"},
                       {"image", to_json(img)}, {"pass", ok}});
  }
  emit(o, Json{{"level", o.level}, {"weight", o.weight}, {"c", std::move(cq)}, {"identities", std::move(ids)}, {"all_pass", all}});
  return all ? 0 : 1;
}

int cmd_fourier(const Options& o) {
  if (o.provider.empty()) throw UsageError("fourier needs --provider");
  if (!o.calibrate && !o.project && o.op.empty()) throw UsageError("fourier needs --op, --level or --calibrate");
  const auto prov = provider_load(o.provider);
  auto clip = [&o](const FourierExpansion& f) { return f.truncated(o.det_bound, o.det_bound); };
  if (o.calibrate) {
    emit(o, to_json(calibrate_normalization(prov, o.level, o.weight, o.sample_bound)));
    return 0;
  }
  if (o.project) {
    const auto pr = project_eisenstein(prov, o.level, o.weight, o.sample_bound);
    Json comps = Json::array();
    for (const auto& c : pr.components) {
      Json ev = Json::object();
      for (std::size_t i = 0; i < pr.ops.size() && i < c.eigenvalues.size(); ++i) ev[pr.ops[i].name()] = to_json(c.eigenvalues[i]);
      comps.push_back(Json{{"partition", to_json(c.label)}, {"eigenvalues", std::move(ev)}});
    }
    Json es = Json::array();
    for (const auto& c : pr.components)
      es.push_back(Json{{"partition", to_json(c.label)}, {"expansion", to_json(clip(pr.eisenstein.at(c.label)), o.weight)}});
    emit(o, Json{{"level", pr.level}, {"weight", pr.weight}, {"components", std::move(comps)}, {"sums_to_input", pr.sums_to_input},
                 {"eisenstein", std::move(es)}});
    return 0;
  }
  std::vector<UOperator> ops;
  for (const auto& t : parse_ops(o.op)) {
    if (!std::holds_alternative<UOperator>(t)) throw UsageError("fourier accepts only U:Q,P operators");
    ops.push_back(std::get<UOperator>(t));
  }
  if (o.spectral) {
    const auto kr = krylov_spectral(prov.expansion, ops, o.sample_bound);
    Json comps = Json::array();
    for (const auto& c : kr.components) {
      Json ev = Json::object();
      for (std::size_t i = 0; i < ops.size(); ++i) ev[ops[i].name()] = to_json(c.eigenvalues[i]);
      comps.push_back(Json{{"eigenvalues", std::move(ev)}, {"expansion", to_json(clip(c.expansion), prov.weight)}});
    }
    emit(o, Json{{"krylov_rank", kr.rank}, {"components", std::move(comps)}});
    return 0;
  }
  emit(o, Json{{"op", o.op}, {"expansion", to_json(clip(apply_word(prov.expansion, ops)), prov.weight)}});
  return 0;
}

int cmd_verify(const Options& o, const std::vector<CLI::Option*>& given) {
  VerifyConfig cfg = preset(o.preset);
  if (given[0]->count()) cfg.N_max = o.config.N_max;
  if (given[1]->count()) cfg.k_set = o.config.k_set;
  if (given[2]->count()) cfg.prime_max = o.config.prime_max;
  if (given[3]->count()) cfg.char_orders = o.config.char_orders;
  if (given[4]->count()) cfg.trials = o.config.trials;
  if (given[5]->count()) cfg.seed = o.config.seed;
  const auto rep = run_suite(cfg);
  emit(o, to_json(rep));
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* cap = std::getenv("SIEGEL_CONDUCTOR_CAP")) {
    try {
      set_conductor_cap(std::stoi(cap));
    } catch (const std::exception&) {
      std::cerr << "error: SIEGEL_CONDUCTOR_CAP must be a positive integer\n";
      return 2;
    }
  }

  Options o;
  CLI::App app{"Hecke operators on degree-2 Siegel Eisenstein series of square-free level"};
  app.require_subcommand(1);

  auto space_opts = [&o](CLI::App* sc) {
    sc->add_option("--level,-N", o.level, "square-free level")->required();
    sc->add_option("--weight,-k", o.weight, "weight (>= 4)")->required();
    sc->add_option("--char", o.chi, "character: 1 or q1:j1,q2:j2 (chi_q(g_q) = zeta_{q-1}^j)");
    sc->add_flag("--forced", o.forced, "build the matrices even when chi(-1) != (-1)^k");
  };
  auto out_opt = [&o](CLI::App* sc) { sc->add_option("--output,-o", o.output, "write to file instead of stdout"); };

  auto* basis = app.add_subcommand("basis", "ordered Eisenstein basis");
  space_opts(basis);
  out_opt(basis);

  auto* hecke = app.add_subcommand("hecke", "Hecke matrix of an operator word");
  space_opts(hecke);
  hecke->add_option("--op", o.op, "word of T:p, T1:p, S1:q, S2:q joined by ';'")->required();
  out_opt(hecke);

  auto* eigen = app.add_subcommand("eigen", "eigenbasis, eigenvalues and closed-form comparison");
  space_opts(eigen);
  eigen->add_option("--prime-max", o.prime_max, "operators T(p), T1(p^2) for p up to this bound")->capture_default_str();
  eigen->add_option("--format", o.format, "json or csv (csv: eigenvalue table)")->check(CLI::IsMember({"json", "csv"}));
  out_opt(eigen);

  auto* relations = app.add_subcommand("relations", "S-word identities e_(N,1,1) S1(N1) S2(N2) = e_rho");
  relations->add_option("--level,-N", o.level, "square-free level")->required();
  relations->add_option("--weight,-k", o.weight, "weight")->required();
  out_opt(relations);

  auto* fourier = app.add_subcommand("fourier", "sublattice operators on a level-1 coefficient table");
  fourier->add_option("--provider", o.provider, "coefficient file")->required();
  fourier->add_option("--op", o.op, "word of U:Q,P joined by ';'");
  auto* lvl = fourier->add_option("--level,-N", o.level, "split into the E_rho of this level");
  fourier->add_option("--weight,-k", o.weight, "weight of the table (for --level)");
  fourier->add_flag("--spectral", o.spectral, "joint eigencomponents of the --op operators");
  fourier->add_flag("--calibrate", o.calibrate, "measured U eigenvalues against the Hecke eigenvalues (needs --level)");
  fourier->add_option("--det-bound", o.det_bound, "largest det (and rank-1 minimum) printed")->capture_default_str();
  fourier->add_option("--sample-bound", o.sample_bound, "Krylov sample bound")->capture_default_str();
  out_opt(fourier);

  auto* verify = app.add_subcommand("verify", "oracle suite");
  verify->add_option("--preset", o.preset, "base configuration; the options below override it")
      ->capture_default_str()
      ->check(CLI::IsMember({"desk", "quick", "tiny"}));
  const std::vector<CLI::Option*> overrides{
      verify->add_option("--n-max", o.config.N_max, "largest level"),
      verify->add_option("--k-set", o.config.k_set, "weights")->delimiter(','),
      verify->add_option("--prime-max", o.config.prime_max, "largest operator prime"),
      verify->add_option("--char-orders", o.config.char_orders, "allowed local character orders")->delimiter(','),
      verify->add_option("--trials", o.config.trials, "random trials"),
      verify->add_option("--seed", o.config.seed, "random seed")};
  out_opt(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*basis) return cmd_basis(o);
    if (*hecke) return cmd_hecke(o);
    if (*eigen) return cmd_eigen(o);
    if (*relations) return cmd_relations(o);
    if (*fourier) {
      if (o.calibrate && lvl->count() == 0) throw UsageError("--calibrate needs --level");
      o.project = lvl->count() > 0 && !o.calibrate;
      return cmd_fourier(o);
    }
    if (*verify) return cmd_verify(o, overrides);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
