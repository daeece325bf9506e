#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "gaudin/cache.hpp"
#include "gaudin/errors.hpp"
#include "gaudin/verify.hpp"

using namespace gaudin;

namespace {

struct Common {
  std::uint64_t seed = 7;
  double tol = 1e-8;
  int threads = 1;
  std::string json_path;
};

// Tensor factors and the target weight, shared by most subcommands.
struct SpaceSpec {
  std::string flavor = "super";
  int q = 0, m = 1, p = 0, n = 1, k = 0;
  bool central = false;
  std::string partitions;
  int natural = 0;
  std::string mu;
  std::string weight;

  void add_options(CLI::App* app, bool with_weight = true) {
    app->add_option("--flavor", flavor, "super | classical | wide")->check(CLI::IsMember({"super", "classical", "wide"}));
    app->add_option("--q", q, "odd indices left of the even block");
    app->add_option("--m", m, "positive even indices");
    app->add_option("--p", p, "negative integer indices");
    app->add_option("--n", n, "positive half-integer indices");
    app->add_option("--rank", k, "rank of the classical side (defaults to n)");
    app->add_flag("--central", central, "use the centrally extended algebra");
    app->add_option("--partitions", partitions, "factor labels, e.g. \"1;1,1;2\"");
    app->add_option("--natural", natural, "tensor power of the natural module instead of --partitions");
    if (with_weight) {
      app->add_option("--mu", mu, "target weight as a partition, e.g. \"2,1\"");
      app->add_option("--weight", weight, "target weight as JSON {\"level\",\"coeffs\"}");
    }
  }

  int rank_k() const { return k > 0 ? k : n; }

  Algebra algebra() const {
    for (int v : {q, m, p, n, k})
      if (v < 0) throw PreconditionError("index counts must be nonnegative");
    if (flavor == "super") return {IndexSet::super(q, m, p, n), central};
    if (flavor == "classical") return {IndexSet::classical(p, rank_k()), central};
    return {IndexSet::wide(p, n), central};
  }
};

Partition parse_partition(const std::string& s) {
  std::vector<int> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      if (v != 0) parts.push_back(v);
    } catch (const std::logic_error&) {
      throw PreconditionError("bad partition entry '" + tok + "'");
    }
  }
  return Partition(parts);
}

std::vector<Partition> parse_partitions(const std::string& s) {
  std::vector<Partition> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';')) out.push_back(parse_partition(tok));
  return out;
}

std::vector<Rational> parse_points(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok));
  return out;
}

Json parse_json_arg(const std::string& s) {
  std::string text = s;
  if (!s.empty() && s[0] == '@') {
    std::ifstream in(s.substr(1));
    if (!in) throw PreconditionError("cannot read " + s.substr(1));
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw PreconditionError(std::string("invalid JSON: ") + e.what());
  }
}

cplx parse_kappa(const std::string& s) {
  auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return parse_rational(s).get_d();
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw PreconditionError("bad kappa '" + s + "'");
  }
}

std::vector<ModulePtr> build_factors(const SpaceSpec& s) {
  Algebra alg = s.algebra();
  std::vector<ModulePtr> out;
  if (s.natural > 0) {
    if (!s.partitions.empty()) throw PreconditionError("give either --natural or --partitions");
    auto nat = std::make_shared<const WeightModule>(natural_module(alg));
    return std::vector<ModulePtr>(s.natural, nat);
  }
  if (s.partitions.empty()) throw PreconditionError("tensor factors need --partitions or --natural");
  for (const auto& la : parse_partitions(s.partitions)) {
    if (s.flavor == "super") {
      if (s.p || s.q) throw PreconditionError("polynomial factors need p = q = 0; use --natural otherwise");
      out.push_back(std::make_shared<const WeightModule>(polynomial_module(la, s.m, s.n)));
    } else if (s.flavor == "classical") {
      if (s.p) throw PreconditionError("classical factors from partitions need p = 0");
      out.push_back(std::make_shared<const WeightModule>(classical_module(la, s.rank_k())));
    } else {
      throw PreconditionError("wide flavor supports --natural factors only");
    }
  }
  if (s.central) {
    // factors carry the plain action; the flag selects the central Casimir and shifts
    for (auto& f : out) {
      WeightModule copy = *f;
      copy.algebra.central = true;
      f = std::make_shared<const WeightModule>(std::move(copy));
    }
  }
  return out;
}

Weight target_weight(const SpaceSpec& s) {
  if (!s.weight.empty()) {
    if (!s.mu.empty()) throw PreconditionError("give either --mu or --weight");
    return weight_from_json(parse_json_arg(s.weight));
  }
  if (s.mu.empty()) throw PreconditionError("a target weight (--mu or --weight) is required");
  Partition mu = parse_partition(s.mu);
  if (s.flavor == "super") return weight_super(mu, Partition(), 0, s.q, s.m, s.p, s.n);
  if (s.flavor == "classical") return weight_classical(mu, Partition(), 0, s.p, s.rank_k());
  return weight_wide(mu, Partition(), 0, s.p, s.n);
}

std::vector<Rational> points_or_sample(const std::string& z, int ell, std::mt19937_64& rng) {
  std::vector<Rational> out = z.empty() ? sample_points(ell, rng) : parse_points(z);
  if (static_cast<int>(out.size()) != ell) throw PreconditionError("need one point per tensor factor");
  check_points(out);
  return out;
}

Json points_json(const std::vector<Rational>& z) {
  Json out = Json::array();
  for (const auto& x : z) out.push_back(to_json(x));
  return out;
}

Json blocks_json(const TensorSpace& t) {
  Json ws = Json::array();
  for (const Weight& w : t.all_weights()) ws.push_back({{"weight", to_json(w)}, {"dim", static_cast<int>(t.weight_basis(w).size())}});
  return ws;
}

void emit(const Json& j, const Common& c) {
  std::string text = dump(j);
  std::cout << text;
  if (!c.json_path.empty()) {
    std::ofstream out(c.json_path, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + c.json_path);
  }
}

// Cached computation keyed by the canonical command description.
Json cached(const Json& key, const std::function<Json()>& compute) {
  auto cache = Cache::from_env();
  std::string k = key.dump();
  if (cache)
    if (auto hit = cache->lookup(k)) return *hit;
  Json value = compute();
  if (cache) cache->store(k, value);
  return value;
}

Json space_key(const SpaceSpec& s) {
  return Json{{"flavor", s.flavor}, {"q", s.q}, {"m", s.m}, {"p", s.p}, {"n", s.n}, {"k", s.rank_k()}, {"central", s.central},
              {"partitions", s.partitions}, {"natural", s.natural}, {"mu", s.mu}, {"weight", s.weight}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaudin Hamiltonians, super duality and KZ equations for gl(m|n)"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--tol", common.tol, "numerical tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--threads", common.threads, "worker threads (computations currently run on one)")->check(CLI::PositiveNumber);
  app.add_option("--json", common.json_path, "also write the JSON document to this file");
  app.fallthrough();

  std::function<int()> action;
  auto set = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };

  // module build
  auto* module = app.add_subcommand("module", "module realizations");
  module->require_subcommand(1);
  auto* mbuild = module->add_subcommand("build", "build one module");
  SpaceSpec mspec;
  std::string mkind = "polynomial", mpart, mweight;
  std::string mlevel = "0";
  int mdepth = -1;
  bool maction = false;
  mbuild->add_option("--kind", mkind, "natural | polynomial | classical | irreducible | verma")
      ->check(CLI::IsMember({"natural", "polynomial", "classical", "irreducible", "verma"}));
  mbuild->add_option("--partition", mpart, "label for polynomial and classical modules");
  mbuild->add_option("--weight", mweight, "highest weight JSON for irreducible and verma modules");
  mbuild->add_option("--level", mlevel, "level d of the central element");
  mbuild->add_option("--depth", mdepth, "truncation depth (-1: complete)");
  mbuild->add_flag("--action", maction, "include sparse action matrices");
  mspec.add_options(mbuild, false);
  set(mbuild, [&] {
    Json key{{"command", "module build"}, {"kind", mkind}, {"partition", mpart}, {"weight", mweight}, {"level", mlevel},
             {"depth", mdepth}, {"action", maction}, {"space", space_key(mspec)}};
    emit(cached(key, [&] {
           Algebra alg = mspec.algebra();
           if ((mkind == "polynomial" || mkind == "classical") && mpart.empty())
             throw PreconditionError("--partition is required for " + mkind + " modules");
           WeightModule mod;
           if (mkind == "natural") mod = natural_module(alg);
           else if (mkind == "polynomial") mod = polynomial_module(parse_partition(mpart), mspec.m, mspec.n);
           else if (mkind == "classical") mod = classical_module(parse_partition(mpart), mspec.rank_k());
           else {
             if (mweight.empty()) throw PreconditionError("--weight is required for " + mkind + " modules");
             Weight xi = weight_from_json(parse_json_arg(mweight));
             Rational d = parse_rational(mlevel);
             if (mkind == "verma") {
               if (mdepth < 0) throw PreconditionError("Verma modules need a finite --depth");
               mod = verma_truncated(alg, xi, d, mdepth);
             } else {
               mod = irreducible_truncated(alg, xi, d, mdepth);
             }
           }
           return to_json(mod, maction);
         }),
         common);
    return 0;
  });

  // tensor
  auto* tensor_cmd = app.add_subcommand("tensor", "weights and dimensions of a tensor product");
  SpaceSpec tspec;
  tspec.add_options(tensor_cmd, false);
  set(tensor_cmd, [&] {
    TensorSpace t(build_factors(tspec));
    Json factors = Json::array();
    for (const auto& f : t.factors()) factors.push_back({{"top", to_json(f->top)}, {"dim", f->dim()}});
    emit(Json{{"algebra", to_json(t.algebra())}, {"factors", factors}, {"dim", static_cast<long>(t.total_dim())}, {"weights", blocks_json(t)}}, common);
    return 0;
  });

  // singular
  auto* singular_cmd = app.add_subcommand("singular", "singular vectors of a given weight");
  SpaceSpec sspec;
  sspec.add_options(singular_cmd);
  set(singular_cmd, [&] {
    TensorSpace t(build_factors(sspec));
    emit(to_json(singular_space(t, target_weight(sspec))), common);
    return 0;
  });

  // hamiltonian / spectrum
  SpaceSpec hspec;
  std::string hkind = "quadratic", hz;
  bool hsingular = false;
  auto family = [&](std::mt19937_64& rng) {
    TensorSpace t(build_factors(hspec));
    Weight mu = target_weight(hspec);
    std::vector<Rational> z = points_or_sample(hz, t.length(), rng);
    SingularSpace s = singular_space(t, mu);
    WeightBlock b = hsingular ? s.block : make_block(t, mu);
    return build_family(t, t.algebra(), b, hsingular ? &s.basis : nullptr, z, parse_kind(hkind));
  };
  auto add_ham_options = [&](CLI::App* sub) {
    hspec.add_options(sub);
    sub->add_option("--kind", hkind, "quadratic | cubicC | cubicD")->check(CLI::IsMember({"quadratic", "cubicC", "cubicD"}));
    sub->add_option("--z", hz, "points, e.g. \"0,1,5/2\" (sampled from the seed when absent)");
    sub->add_flag("--singular", hsingular, "restrict to the singular subspace");
  };
  auto* ham = app.add_subcommand("hamiltonian", "Gaudin Hamiltonian matrices on a weight space");
  add_ham_options(ham);
  set(ham, [&] {
    Json key{{"command", "hamiltonian"}, {"kind", hkind}, {"z", hz}, {"seed", common.seed}, {"singular", hsingular}, {"space", space_key(hspec)}};
    Json out = cached(key, [&] {
      std::mt19937_64 rng(common.seed);
      HamiltonianFamily f = family(rng);
      Json mats = Json::array();
      for (const auto& m : f.matrices) mats.push_back(to_json(m));
      bool squarefree = true;
      for (const auto& m : f.matrices) squarefree = squarefree && (m.rows() == 0 || diagonalizability(m).diagonalizable);
      return Json{{"z", points_json(f.z)},
                  {"weight", to_json(f.weight)},
                  {"kind", kind_name(f.kind)},
                  {"matrices", mats},
                  {"certificates", {{"squarefree", squarefree}, {"commutators_zero", commutator_residual(f.matrices, f.matrices) == 0}}}};
    });
    emit(out, common);
    return out["certificates"]["commutators_zero"].get<bool>() ? 0 : 1;
  });
  auto* spec_cmd = app.add_subcommand("spectrum", "joint spectrum of the Gaudin Hamiltonians");
  add_ham_options(spec_cmd);
  set(spec_cmd, [&] {
    std::mt19937_64 rng(common.seed);
    HamiltonianFamily f = family(rng);
    JointSpectrum js = joint_diagonalize(f.matrices, common.tol, rng);
    Json out{{"z", points_json(f.z)}, {"weight", to_json(f.weight)}, {"kind", kind_name(f.kind)}, {"dim", f.matrices.empty() ? 0 : f.matrices[0].rows()}};
    Json parts = to_json(js);
    for (auto& [k, v] : parts.items()) out[k] = v;
    emit(out, common);
    return js.commuting ? 0 : 1;
  });

  // duality
  auto* duality = app.add_subcommand("duality", "super duality comparisons");
  duality->require_subcommand(1);
  std::string dparts, dmu, dz;
  int dm = 1, dn = 1, dpoints = 1;
  auto add_duality_options = [&](CLI::App* sub) {
    sub->add_option("--partitions", dparts, "factor labels, e.g. \"1;1\"")->required();
    sub->add_option("--mu", dmu, "target partition (all admissible ones when absent)");
    sub->add_option("--m", dm);
    sub->add_option("--n", dn);
    sub->add_option("--z", dz, "points (sampled from the seed when absent)");
    sub->add_option("--points", dpoints, "number of sampled z when --z is absent")->check(CLI::PositiveNumber);
  };
  auto run_duality = [&](std::vector<HamKind> kinds) {
    std::mt19937_64 rng(common.seed);
    std::vector<Partition> las = parse_partitions(dparts);
    std::vector<Partition> mus = dmu.empty() ? candidate_weights(las, dm, dn) : std::vector<Partition>{parse_partition(dmu)};
    Json setups = Json::array();
    bool all = true;
    for (const auto& mu : mus) {
      DualitySetup s = build_setup(las, dm, dn, mu);
      Json reports = Json::array();
      int runs = dz.empty() ? dpoints : 1;
      for (int r = 0; r < runs; ++r) {
        std::vector<Rational> z = points_or_sample(dz, static_cast<int>(las.size()), rng);
        for (HamKind kind : kinds) {
          SpectrumReport rep = spectrum_match(s, z, kind);
          all = all && rep.passed;
          reports.push_back(to_json(rep));
        }
      }
      Json parts = Json::array();
      for (const auto& la : las) parts.push_back(to_json(la));
      setups.push_back({{"setup", {{"partitions", parts}, {"m", dm}, {"n", dn}, {"k", s.k}, {"mu", to_json(mu)},
                                   {"super_weight", to_json(s.super_weight)}, {"classical_weight", to_json(s.classical_weight)}}},
                        {"reports", reports}});
    }
    emit(Json{{"passed", all}, {"setups", setups}}, common);
    return all ? 0 : 1;
  };
  auto* dcheck = duality->add_subcommand("check", "quadratic spectra on both sides");
  add_duality_options(dcheck);
  set(dcheck, [&] { return run_duality({HamKind::quadratic}); });
  auto* dcubic = duality->add_subcommand("cubic", "cubic spectra on both sides");
  add_duality_options(dcubic);
  set(dcubic, [&] { return run_duality({HamKind::cubicC, HamKind::cubicD}); });

  // lax expand
  auto* lax = app.add_subcommand("lax", "Lax matrix supertrace expansion");
  lax->require_subcommand(1);
  auto* lexpand = lax->add_subcommand("expand", "coefficients of Str L(u)^k");
  SpaceSpec lspec;
  int lk = 2;
  std::string lz;
  lspec.add_options(lexpand, false);
  lexpand->add_option("--k", lk, "power")->check(CLI::Range(1, 3));
  lexpand->add_option("--z", lz, "points (sampled from the seed when absent)");
  set(lexpand, [&] {
    std::mt19937_64 rng(common.seed);
    TensorSpace t(build_factors(lspec));
    std::vector<Rational> z = points_or_sample(lz, t.length(), rng);
    auto coeffs = lax_str_expansion(t, z, lk);
    Json cs = Json::array();
    for (const auto& f : coeffs) cs.push_back(to_json(f));
    bool match = coeffs.back() == lax_closed_form(t, z, lk);
    emit(Json{{"k", lk}, {"z", points_json(z)}, {"coefficients", cs}, {"closed_form_matches", match}}, common);
    return match ? 0 : 1;
  });

  // kz
  auto* kz = app.add_subcommand("kz", "Knizhnik-Zamolodchikov equations");
  kz->require_subcommand(1);
  SpaceSpec kspec;
  std::string kkappa = "1", kpath, kpsi = "random", kz_points;
  bool ksingular = false;
  auto kz_system = [&](const TensorSpace& t, WeightBlock& b, SingularSpace& s) {
    Weight mu = target_weight(kspec);
    s = singular_space(t, mu);
    b = s.block;
    return make_kz(quadratic_data(t, casimir(t.algebra()), b), parse_kappa(kkappa), ksingular ? &s.basis : nullptr);
  };
  auto* ksolve = kz->add_subcommand("solve", "integrate along a piecewise-linear path");
  kspec.add_options(ksolve);
  ksolve->add_option("--kappa", kkappa, "re or re,im");
  ksolve->add_option("--path", kpath, "waypoints JSON (or @file)")->required();
  ksolve->add_option("--psi0", kpsi, "random | singular | JSON list of [re, im]");
  ksolve->add_flag("--singular", ksingular, "restrict to the singular subspace");
  set(ksolve, [&] {
    std::mt19937_64 rng(common.seed);
    TensorSpace t(build_factors(kspec));
    WeightBlock b;
    SingularSpace s;
    KZSystem sys = kz_system(t, b, s);
    CVec psi0;
    if (kpsi == "random") psi0 = random_vector(sys.dim, rng);
    else if (kpsi == "singular") {
      if (s.dim() == 0) throw PreconditionError("the singular space is zero");
      psi0 = ksingular ? random_vector(sys.dim, rng) : CVec(to_complex(s.basis) * random_vector(s.dim(), rng));
    } else {
      Json j = parse_json_arg(kpsi);
      if (!j.is_array()) throw PreconditionError("--psi0 must be a list");
      psi0.resize(static_cast<Eigen::Index>(j.size()));
      for (size_t i = 0; i < j.size(); ++i) psi0(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    }
    PathSolution sol = integrate_path(sys, path_from_json(parse_json_arg(kpath), t.length()), psi0, common.tol);
    Json out{{"kappa", to_json(sys.kappa)}, {"weight", to_json(b.mu)}, {"dim", sys.dim}, {"rel_tol", common.tol}};
    Json parts = to_json(sol);
    for (auto& [k, v] : parts.items()) out[k] = v;
    emit(out, common);
    return 0;
  });
  auto* kflat = kz->add_subcommand("flatness", "flatness residual at a point");
  SpaceSpec fspec;
  std::string fkappa = "1", fz;
  fspec.add_options(kflat);
  kflat->add_option("--kappa", fkappa, "nonzero rational");
  kflat->add_option("--z", fz, "rational points (sampled from the seed when absent)");
  set(kflat, [&] {
    std::mt19937_64 rng(common.seed);
    TensorSpace t(build_factors(fspec));
    WeightBlock b = make_block(t, target_weight(fspec));
    std::vector<Rational> z = points_or_sample(fz, t.length(), rng);
    Rational kappa = parse_rational(fkappa);
    CasimirTensor om = casimir(t.algebra());
    Rational exact = flatness_residual_exact(t, om, b, z, kappa);
    Point zc;
    for (const auto& x : z) zc.push_back(x.get_d());
    double numeric = flatness_residual_numeric(make_kz(quadratic_data(t, om, b), kappa.get_d()), zc);
    emit(Json{{"z", points_json(z)}, {"kappa", to_json(kappa)}, {"dim", b.dim()}, {"exact", to_json(exact)}, {"numeric", numeric}}, common);
    return exact == 0 ? 0 : 1;
  });
  auto* kmono = kz->add_subcommand("monodromy", "transport of a basis around a closed loop");
  SpaceSpec mospec;
  std::string mokappa = "1", moloop;
  bool mosingular = false;
  mospec.add_options(kmono);
  kmono->add_option("--kappa", mokappa, "re or re,im");
  kmono->add_option("--loop", moloop, "closed loop waypoints JSON (or @file)")->required();
  kmono->add_flag("--singular", mosingular, "restrict to the singular subspace");
  set(kmono, [&] {
    TensorSpace t(build_factors(mospec));
    SingularSpace s = singular_space(t, target_weight(mospec));
    KZSystem sys = make_kz(quadratic_data(t, casimir(t.algebra()), s.block), parse_kappa(mokappa), mosingular ? &s.basis : nullptr);
    CMat M = monodromy(sys, path_from_json(parse_json_arg(moloop), t.length()), common.tol);
    Eigen::ComplexEigenSolver<CMat> es(M);
    Json eig = Json::array();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) eig.push_back(to_json(es.eigenvalues()(i)));
    emit(Json{{"kappa", to_json(sys.kappa)}, {"dim", sys.dim}, {"matrix", to_json(M)}, {"eigenvalues", eig}, {"rank", solution_rank(M)}}, common);
    return 0;
  });

  // verify
  auto* verify = app.add_subcommand("verify", "invariant suite");
  std::vector<std::string> vtargets;
  VerifyOptions vopt;
  verify->add_option("targets", vtargets, "\"all\", \"list\" or check names")->required();
  verify->add_option("--m", vopt.m);
  verify->add_option("--n", vopt.n);
  verify->add_option("--ell", vopt.ell);
  set(verify, [&] {
    if (vtargets.size() == 1 && vtargets[0] == "list") {
      emit(Json(check_names()), common);
      return 0;
    }
    std::vector<std::string> only;
    for (const auto& t : vtargets)
      if (t != "all") only.push_back(t);
    vopt.seed = common.seed;
    vopt.tol = common.tol;
    auto results = run_verify(vopt, only);
    Json report = verify_report(vopt, results);
    emit(report, common);
    return report["failed"].get<int>() == 0 ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << dump(Json{{"error", "validation"}, {"message", e.what()}});
    return 2;
  } catch (const OutOfBandError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << dump(Json{{"error", "validation"}, {"message", e.what()}});
    return 2;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    std::cout << dump(Json{{"error", "verification"}, {"message", e.what()}});
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << dump(Json{{"error", "internal"}, {"message", e.what()}});
    return 1;
  }
}
