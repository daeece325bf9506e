#include "gaudin/verify.hpp"

#include <cmath>
#include <functional>

#include "gaudin/errors.hpp"
#include "gaudin/lax.hpp"

namespace gaudin {

namespace {

ModulePtr share(WeightModule m) { return std::make_shared<const WeightModule>(std::move(m)); }

std::vector<ModulePtr> natural_power(const Algebra& alg, int ell) { return std::vector<ModulePtr>(ell, share(natural_module(alg))); }

Json points_json(const std::vector<Rational>& z) {
  Json out = Json::array();
  for (const auto& x : z) out.push_back(to_json(x));
  return out;
}

std::string lists_str(const std::vector<Partition>& las) {
  std::string s;
  for (const auto& la : las) s += (s.empty() ? "" : " ") + la.str();
  return s;
}

AlgebraElement random_homogeneous(const IndexSet& idx, std::mt19937_64& rng, int parity) {
  const auto& ord = idx.ordered();
  std::uniform_int_distribution<int> pick(0, idx.size() - 1), coef(-3, 3);
  AlgebraElement x;
  for (int t = 0; t < 3; ++t) {
    HalfIndex a = ord[pick(rng)], b = ord[pick(rng)];
    if ((a.parity() ^ b.parity()) != parity) continue;
    x.add(BasisElement{a, b}, coef(rng));
  }
  return x;
}

void partition_lists(int ell, int max_total, std::vector<Partition>& cur, std::vector<std::vector<Partition>>& out) {
  if (static_cast<int>(cur.size()) == ell) {
    out.push_back(cur);
    return;
  }
  int used = 0;
  for (const auto& p : cur) used += p.size();
  for (int s = 1; used + s + (ell - static_cast<int>(cur.size()) - 1) <= max_total; ++s)
    for (const auto& la : partitions_of(s)) {
      cur.push_back(la);
      partition_lists(ell, max_total, cur, out);
      cur.pop_back();
    }
}

// Weights with nonnegative coefficients summing to `total` over the given indices.
void compositions(const std::vector<HalfIndex>& idx, size_t pos, int left, Weight& cur, std::vector<Weight>& out) {
  if (pos + 1 == idx.size()) {
    Weight w = cur;
    if (left) w.add(idx[pos], left);
    out.push_back(w);
    return;
  }
  for (int c = 0; c <= left; ++c) {
    Weight w = cur;
    if (c) w.add(idx[pos], c);
    compositions(idx, pos + 1, left - c, w, out);
  }
}

std::vector<Point> default_path(int ell) {
  std::vector<Point> path(3, Point(ell));
  for (int i = 0; i < ell; ++i) {
    path[0][i] = cplx(i, 0);
    path[1][i] = cplx(i + 0.25 * i, i % 2 ? 0.6 : -0.6);
    path[2][i] = cplx(1.5 * i, 0.4 * i + 0.3);
  }
  return path;
}

}  // namespace

CheckResult check_structure(const std::vector<Algebra>& algebras, int samples, std::mt19937_64& rng) {
  CheckResult r{"structure", true, Json::object()};
  Json per = Json::array();
  std::uniform_int_distribution<int> bit(0, 1);
  auto sgn = [](int e) { return Rational(e % 2 ? -1 : 1); };
  for (const Algebra& alg : algebras) {
    int failures = 0;
    auto br = [&](const AlgebraElement& a, const AlgebraElement& b) { return supercommutator(alg, a, b); };
    auto om = [&](const AlgebraElement& a) { return star_omega(alg.indices, a); };
    for (int t = 0; t < samples; ++t) {
      int px = bit(rng), py = bit(rng), pz = bit(rng);
      AlgebraElement x = random_homogeneous(alg.indices, rng, px);
      AlgebraElement y = random_homogeneous(alg.indices, rng, py);
      AlgebraElement z = random_homogeneous(alg.indices, rng, pz);
      AlgebraElement jac = br(x, br(y, z)) * sgn(px * pz) + br(y, br(z, x)) * sgn(py * px) + br(z, br(x, y)) * sgn(pz * py);
      bool ok = jac.is_zero() && (br(x, y) + br(y, x) * sgn(px * py)).is_zero();
      ok = ok && om(om(x)) == x && om(br(x, y)) == br(om(y), om(x));
      if (alg.central) {
        Algebra plain{alg.indices, false};
        ok = ok && iota(alg, supercommutator(plain, x, y)) == br(iota(alg, x), iota(alg, y));
      }
      if (!ok) ++failures;
    }
    per.push_back({{"algebra", alg.indices.str()}, {"central", alg.central}, {"samples", samples}, {"failures", failures}});
    r.passed = r.passed && failures == 0;
  }
  r.detail["algebras"] = per;
  return r;
}

CheckResult check_hamiltonian_algebra(const std::vector<std::vector<ModulePtr>>& spaces, int points, bool cubic,
                                      std::mt19937_64& rng) {
  CheckResult r{"hamiltonian_algebra", true, Json::object()};
  Json per = Json::array();
  for (const auto& factors : spaces) {
    TensorSpace t(factors);
    const Algebra& alg = t.algebra();
    const int ell = t.length();
    CasimirTensor om = casimir(alg);
    bool with_cubic = cubic && !alg.central && alg.indices.p() == 0 && alg.indices.q() == 0 && alg.indices.flavor() != Flavor::wide;
    std::map<Weight, WeightBlock> blocks;
    std::map<Weight, QuadraticData> quad;
    std::map<Weight, CubicData> cub;
    for (const Weight& w : t.all_weights()) {
      blocks[w] = make_block(t, w);
      quad[w] = quadratic_data(t, om, blocks[w]);
      if (with_cubic) cub[w] = cubic_data(t, blocks[w]);
    }
    struct Edge {
      Weight from, to;
      Matrix d;
    };
    std::vector<Edge> edges;
    for (const auto& [w, b] : blocks)
      for (const auto& e : all_basis(alg.indices)) {
        Weight to = w + root_of(e);
        auto it = blocks.find(to);
        if (it == blocks.end()) continue;
        edges.push_back({w, to, diagonal_action(t, alg, e, b, it->second)});
      }
    Rational comm = 0, sum = 0, inv = 0, cub_comm = 0, cub_inv = 0;
    for (int p = 0; p < points; ++p) {
      std::vector<Rational> z = sample_points(ell, rng);
      std::map<Weight, std::vector<Matrix>> H, C;
      for (const auto& [w, q] : quad) {
        Matrix s(blocks[w].dim(), blocks[w].dim());
        for (int i = 0; i < ell; ++i) {
          H[w].push_back(quadratic_hamiltonian(q, z, i));
          s += H[w].back();
        }
        comm = std::max(comm, commutator_residual(H[w], H[w]));
        sum = std::max(sum, max_abs(s));
        if (with_cubic) {
          for (int i = 0; i < ell; ++i) C[w].push_back(cubic_hamiltonian(cub[w], z, i, HamKind::cubicC));
          for (int i = 0; i < ell; ++i) C[w].push_back(cubic_hamiltonian(cub[w], z, i, HamKind::cubicD));
          cub_comm = std::max({cub_comm, commutator_residual(C[w], C[w]), commutator_residual(C[w], H[w])});
        }
      }
      for (const auto& e : edges) {
        for (int i = 0; i < ell; ++i) inv = std::max(inv, max_abs(H[e.to][i] * e.d - e.d * H[e.from][i]));
        if (with_cubic)
          for (size_t i = 0; i < C[e.to].size(); ++i) cub_inv = std::max(cub_inv, max_abs(C[e.to][i] * e.d - e.d * C[e.from][i]));
      }
    }
    Json tops = Json::array();
    for (const auto& f : factors) tops.push_back(f->top.str());
    Json d{{"algebra", alg.indices.str()},
           {"factors", tops},
           {"dim", static_cast<long>(t.total_dim())},
           {"blocks", static_cast<int>(blocks.size())},
           {"points", points},
           {"commutator", to_json(comm)},
           {"sum_rule", to_json(sum)},
           {"invariance", to_json(inv)}};
    if (with_cubic) {
      d["cubic_commutator"] = to_json(cub_comm);
      d["cubic_invariance"] = to_json(cub_inv);
    }
    per.push_back(d);
    r.passed = r.passed && comm == 0 && sum == 0 && inv == 0 && cub_comm == 0 && cub_inv == 0;
  }
  r.detail["spaces"] = per;
  return r;
}

CheckResult check_module_oracle(const std::vector<RankPair>& ranks, int max_size) {
  CheckResult r{"module_oracle", true, Json::object()};
  Json per = Json::array();
  for (auto [m, n] : ranks) {
    Algebra alg{IndexSet::glmn(m, n), false};
    int count = 0, mismatches = 0;
    Json bad = Json::array();
    for (int s = 0; s <= max_size; ++s) {
      std::vector<Weight> weights;
      Weight w0;
      compositions(alg.indices.ordered(), 0, s, w0, weights);
      for (const auto& la : partitions_of(s)) {
        if (!hook_ok(la, m, n)) continue;
        ++count;
        WeightModule pm = polynomial_module(la, m, n);
        WeightModule lm = irreducible_truncated(alg, weight_super(la, Partition(), 0, 0, m, 0, n), 0, -1);
        auto pd = pm.dims(), ld = lm.dims();
        long covered = 0;
        for (const auto& w : weights) {
          long want = hook_multiplicity_oracle(la, m, n, w);
          long gp = pd.count(w) ? pd[w] : 0, gl = ld.count(w) ? ld[w] : 0;
          covered += want;
          if (gp != want || gl != want) {
            ++mismatches;
            if (bad.size() < 5) bad.push_back({{"partition", la.str()}, {"weight", w.str()}, {"oracle", want}, {"polynomial", gp}, {"irreducible", gl}});
          }
        }
        if (covered != pm.dim() || covered != lm.dim()) {
          ++mismatches;
          if (bad.size() < 5) bad.push_back({{"partition", la.str()}, {"total", covered}, {"polynomial", pm.dim()}, {"irreducible", lm.dim()}});
        }
      }
    }
    per.push_back({{"m", m}, {"n", n}, {"partitions", count}, {"mismatches", mismatches}, {"examples", bad}});
    r.passed = r.passed && mismatches == 0;
  }
  r.detail["ranks"] = per;
  r.detail["max_size"] = max_size;
  return r;
}

CheckResult check_duality(const std::vector<RankPair>& ranks, int max_ell, int max_total, HamKind kind, int points,
                          std::mt19937_64& rng) {
  CheckResult r{kind == HamKind::quadratic ? "duality_quadratic" : "duality_cubic", true, Json::object()};
  int setups = 0, nontrivial = 0, failures = 0;
  Json bad = Json::array();
  for (auto [m, n] : ranks)
    for (int ell = 2; ell <= max_ell; ++ell) {
      std::vector<std::vector<Partition>> all;
      std::vector<Partition> cur;
      partition_lists(ell, max_total, cur, all);
      for (const auto& las : all) {
        bool ok = true;
        for (const auto& la : las) ok = ok && hook_ok(la, m, n);
        if (!ok) continue;
        for (const auto& mu : candidate_weights(las, m, n)) {
          ++setups;
          DualitySetup s = build_setup(las, m, n, mu);
          bool passed = true, certified = false;
          int dim = 0;
          for (int p = 0; p < points; ++p) {
            SpectrumReport rep = spectrum_match(s, sample_points(ell, rng), kind);
            dim = rep.dim_super;
            passed = passed && rep.passed;
            certified = certified || (rep.super_diagonalizable && rep.classical_diagonalizable);
            if (!rep.passed && bad.size() < 5) bad.push_back({{"m", m}, {"n", n}, {"partitions", lists_str(las)}, {"mu", mu.str()}, {"report", to_json(rep)}});
          }
          if (dim > 0) ++nontrivial;
          if (!certified && bad.size() < 5)
            bad.push_back({{"m", m}, {"n", n}, {"partitions", lists_str(las)}, {"mu", mu.str()}, {"reason", "no diagonalizable sample"}});
          if (!passed || !certified) ++failures;
        }
      }
    }
  r.passed = failures == 0;
  r.detail = Json{{"kind", kind_name(kind)}, {"setups", setups}, {"nontrivial", nontrivial}, {"points", points}, {"failures", failures}, {"examples", bad}};
  return r;
}

CheckResult check_duality_closed_case() {
  CheckResult r{"duality_closed_case", true, Json::object()};
  DualitySetup s = build_setup({Partition({1}), Partition({1})}, 1, 1, Partition({1, 1}));
  Json per = Json::array();
  for (const auto& z : {std::vector<Rational>{0, 1}, std::vector<Rational>{3, -2}, std::vector<Rational>{Rational(1, 7), 2}}) {
    SpectrumReport rep = spectrum_match(s, z);
    // t - (-1/(z1 - z2))
    Polynomial want({1 / (z[0] - z[1]), 1});
    bool ok = rep.dim_super == 1 && rep.dim_classical == 1 && rep.per_i[0].super_charpoly == want && rep.per_i[0].classical_charpoly == want;
    per.push_back({{"z", points_json(z)}, {"eigenvalue", to_json(-1 / (z[0] - z[1]))}, {"ok", ok}});
    r.passed = r.passed && ok;
  }
  r.detail["cases"] = per;
  return r;
}

CheckResult check_lax(const std::vector<RankPair>& ranks, int points, std::mt19937_64& rng) {
  CheckResult r{"lax", true, Json::object()};
  Json per = Json::array();
  for (auto [m, n] : ranks) {
    Algebra alg{IndexSet::glmn(m, n), false};
    TensorSpace t(natural_power(alg, 2));
    for (int p = 0; p < points; ++p) {
      std::vector<Rational> z = sample_points(2, rng);
      Json ks = Json::array();
      for (int k = 1; k <= 3; ++k) {
        bool ok = lax_str_expansion(t, z, k)[k] == lax_closed_form(t, z, k);
        ks.push_back(ok);
        r.passed = r.passed && ok;
      }
      per.push_back({{"m", m}, {"n", n}, {"z", points_json(z)}, {"S11_S22_S33", ks}});
    }
  }
  r.detail["cases"] = per;
  return r;
}

CheckResult check_cyclic(const std::vector<std::tuple<int, int, int>>& cases, int points, std::mt19937_64& rng) {
  CheckResult r{"cyclic", true, Json::object()};
  Json per = Json::array();
  for (auto [m, n, ell] : cases) {
    Algebra alg{IndexSet::glmn(m, n), false};
    TensorSpace t(natural_power(alg, ell));
    std::vector<std::vector<Rational>> zs;
    std::vector<Rational> line;
    for (int i = 0; i < ell; ++i) line.push_back(i);
    zs.push_back(line);
    while (static_cast<int>(zs.size()) < points) zs.push_back(sample_points(ell, rng));
    for (const auto& mu : partitions_of(ell)) {
      if (!hook_ok(mu, m, n)) continue;
      SingularSpace s = singular_space(t, weight_super(mu, Partition(), 0, 0, m, 0, n));
      if (s.dim() == 0) continue;
      Json profiles = Json::array();
      bool all = true;
      for (const auto& z : zs) {
        HamiltonianFamily f = build_family(t, alg, s.block, &s.basis, z, HamKind::quadratic);
        CyclicReport c = cyclic_vector_test(f.matrices, 5, rng);
        profiles.push_back(to_json(c));
        all = all && c.cyclic;
      }
      per.push_back({{"m", m}, {"n", n}, {"ell", ell}, {"mu", mu.str()}, {"dim", s.dim()}, {"cyclic", all}, {"runs", profiles}});
      r.passed = r.passed && all;
    }
  }
  r.detail["cases"] = per;
  return r;
}

CheckResult check_central_shift(int points, std::mt19937_64& rng) {
  CheckResult r{"central_shift", true, Json::object()};
  const int p = 1, q = 0, m = 1, n = 1, max_height = 2;
  // Omega lowers one slot by up to rank - 1 steps, so factors are realized that much deeper
  const int depth = max_height + IndexSet::super(q, m, p, n).size() - 1;
  IndexSet idx = IndexSet::super(q, m, p, n);
  Algebra central{idx, true};
  // generalized partitions; the depth doubles as the level
  std::vector<std::vector<std::vector<int>>> cases = {
      {{0}, {0, 0}}, {{0}, {-1}}, {{1}, {0, 0}}, {{0, -1}, {1}}, {{0}, {0}, {0, 0}}};
  Json per = Json::array();
  for (const auto& c : cases) {
    std::vector<ModulePtr> factors;
    Weight top;
    Json labels = Json::array();
    for (const auto& gp : c) {
      GeneralizedPartition la(gp);
      Weight xi = unitarizable_weight(la, p, q, m, n);
      factors.push_back(share(irreducible_truncated(central, xi, la.depth(), depth)));
      top = top + xi;
      labels.push_back({{"parts", gp}, {"level", la.depth()}, {"weight", xi.str()}});
    }
    TensorSpace t(factors);
    int weights = 0;
    bool ok = true;
    for (const Weight& mu : t.all_weights()) {
      if (weight_height(idx, top, mu) > max_height) continue;
      ++weights;
      for (int k = 0; k < points; ++k) {
        ShiftReport s = central_shift_check(factors, mu, sample_points(t.length(), rng));
        ok = ok && s.matrices_match && s.charpolys_match;
      }
    }
    per.push_back({{"factors", labels}, {"weights", weights}, {"ok", ok}});
    r.passed = r.passed && ok && weights > 0;
  }
  r.detail["cases"] = per;
  return r;
}

CheckResult check_truncation() {
  CheckResult r{"truncation", true, Json::object()};
  struct Case {
    std::vector<int> la;
    int k, band;
    bool zero;
  };
  // la is the classical label before conjugation; zero marks a top weight outside the band
  std::vector<Case> cases = {{{1}, 3, 2, false},       {{1, 1}, 3, 2, false}, {{2}, 3, 2, false},
                             {{2, 1}, 3, 2, false},    {{3}, 3, 2, true},     {{1, 1, 1}, 3, 1, false},
                             {{2, 1}, 3, 1, true},     {{2, 2}, 4, 2, false}, {{1, 1}, 4, 3, false},
                             {{2, 1, 1}, 4, 2, false}};
  Json per = Json::array();
  for (const auto& c : cases) {
    WeightModule big = classical_module(Partition(c.la), c.k);
    TruncationReport t = truncation_check(big, IndexSet::classical(0, c.band));
    bool ok = t.passed && t.zero == c.zero;
    per.push_back({{"partition", Partition(c.la).str()}, {"k", c.k}, {"band", c.band}, {"report", to_json(t)}, {"ok", ok}});
    r.passed = r.passed && ok;
  }
  r.detail["cases"] = per;
  return r;
}

CheckResult check_kz_flatness(const RankPair& rank, int ell, std::mt19937_64& rng) {
  CheckResult r{"kz_flatness", true, Json::object()};
  Algebra alg{IndexSet::glmn(rank.first, rank.second), false};
  TensorSpace t(natural_power(alg, ell));
  CasimirTensor om = casimir(alg);
  WeightBlock full = full_block(t);
  Rational worst = 0;
  for (const Rational& kappa : {Rational(1), Rational(2), Rational(-1, 3)}) worst = std::max(worst, flatness_residual_exact(t, om, full, sample_points(ell, rng), kappa));
  KZSystem sys = make_kz(quadratic_data(t, om, full), 1.0);
  std::uniform_real_distribution<double> u(-2, 2);
  Point z(ell);
  for (auto& x : z) {
    double re = u(rng), im = u(rng);
    x = cplx(re, im);
  }
  double numeric = flatness_residual_numeric(sys, z);
  r.passed = worst == 0 && numeric <= 1e-10;
  r.detail = Json{{"exact", to_json(worst)}, {"numeric", numeric}, {"numeric_bound", 1e-10}};
  return r;
}

CheckResult check_kz_scalar(double rel_tol) {
  CheckResult r{"kz_scalar", true, Json::object()};
  Algebra alg{IndexSet::glmn(1, 1), false};
  TensorSpace t(natural_power(alg, 2));
  SingularSpace sing = singular_space(t, weight_super(Partition({1, 1}), Partition(), 0, 0, 1, 0, 1));
  QuadraticData q = quadratic_data(t, casimir(alg), sing.block);
  std::vector<Point> path;
  for (int k = 0; k <= 40; ++k) path.push_back({std::polar(1.0 + 0.5 * k / 40, 2.4 * M_PI * k / 40), 0.0});
  Json per = Json::array();
  for (cplx kappa : {cplx(1), cplx(2)}) {
    KZSystem sys = make_kz(q, kappa, &sing.basis);
    CVec psi0(1);
    psi0(0) = cplx(0.7, -0.2);
    PathSolution sol = integrate_path(sys, path, psi0, rel_tol * 1e-2);
    double worst = 0;
    for (const auto& s : sol.samples) {
      // branch of log(z1 - z2) accumulated over fine steps of the path
      double arg = 0;
      cplx prev = path[0][0] - path[0][1];
      for (int k = 1; k <= 2000; ++k) {
        Point z = point_on_path(path, s.t * k / 2000);
        cplx cur = z[0] - z[1];
        arg += std::arg(cur / prev);
        prev = cur;
      }
      cplx w0 = path[0][0] - path[0][1], w = s.z[0] - s.z[1];
      cplx exact = psi0(0) * std::exp(-cplx(std::log(std::abs(w) / std::abs(w0)), arg) / kappa);
      worst = std::max(worst, std::abs(s.psi(0) - exact) / std::abs(exact));
    }
    per.push_back({{"kappa", to_json(kappa)}, {"samples", sol.samples.size()}, {"max_relative_error", worst}});
    r.passed = r.passed && worst <= rel_tol;
  }
  r.detail = Json{{"omega", to_json(q.omega.at({0, 1}))}, {"singular_dim", sing.dim()}, {"bound", rel_tol}, {"runs", per}};
  r.passed = r.passed && sing.dim() == 1;
  return r;
}

CheckResult check_kz_monodromy(double rel_tol) {
  CheckResult r{"kz_monodromy", true, Json::object()};
  Algebra alg{IndexSet::glmn(1, 1), false};
  TensorSpace t(natural_power(alg, 2));
  SingularSpace sing = singular_space(t, weight_super(Partition({1, 1}), Partition(), 0, 0, 1, 0, 1));
  QuadraticData q = quadratic_data(t, casimir(alg), sing.block);
  std::vector<Point> loop, far;
  for (int j = 0; j <= 32; ++j) {
    loop.push_back({std::polar(1.0, 2 * M_PI * j / 32), 0.0});
    far.push_back({cplx(5, 0) + std::polar(1.0, 2 * M_PI * j / 32), 0.0});
  }
  loop.back() = loop.front();
  far.back() = far.front();
  std::vector<Point> rev(loop.rbegin(), loop.rend());
  Json per = Json::array();
  const double tol = rel_tol * 1e-2;
  for (double kappa : {1.0, 2.0}) {
    KZSystem sys = make_kz(q, kappa, &sing.basis);
    cplx m = monodromy(sys, loop, tol)(0, 0), back = monodromy(sys, rev, tol)(0, 0), trivial = monodromy(sys, far, tol)(0, 0);
    cplx expect = std::exp(cplx(0, -2 * M_PI / kappa));
    double e1 = std::abs(m - expect), e2 = std::abs(m * back - 1.0), e3 = std::abs(trivial - 1.0);
    per.push_back({{"kappa", kappa}, {"multiplier", to_json(m)}, {"expected", to_json(expect)}, {"inverse_error", e2}, {"non_winding", to_json(trivial)}});
    r.passed = r.passed && e1 <= rel_tol && e2 <= 10 * rel_tol && e3 <= rel_tol;
  }
  r.detail["runs"] = per;
  return r;
}

CheckResult check_kz_singular(const RankPair& rank, int ell, double rel_tol, std::mt19937_64& rng) {
  CheckResult r{"kz_singular", true, Json::object()};
  auto [m, n] = rank;
  Algebra alg{IndexSet::glmn(m, n), false};
  TensorSpace t(natural_power(alg, ell));
  CasimirTensor om = casimir(alg);
  std::vector<Point> path = default_path(ell);
  Json per = Json::array();
  for (const auto& mu : partitions_of(ell)) {
    if (!hook_ok(mu, m, n)) continue;
    Weight w = weight_super(mu, Partition(), 0, 0, m, 0, n);
    SingularSpace s = singular_space(t, w);
    if (s.dim() == 0) continue;
    std::vector<CMat> raising;
    for (const auto& e : simple_raising_ops(alg.indices)) {
      WeightBlock to = make_block(t, w + root_of(e));
      if (to.dim()) raising.push_back(to_complex(diagonal_action(t, alg, e, s.block, to)));
    }
    KZSystem sys = make_kz(quadratic_data(t, om, s.block), 2.0);
    CVec psi0 = to_complex(s.basis) * random_vector(s.dim(), rng);
    double pres = singular_preservation(integrate_path(sys, path, psi0, rel_tol * 1e-2), raising);
    Json d{{"mu", mu.str()}, {"weight_dim", s.block.dim()}, {"singular_dim", s.dim()}, {"preservation", pres}};
    bool ok = pres <= rel_tol;
    if (s.block.dim() > s.dim()) {
      double ctl = singular_preservation(integrate_path(sys, path, random_vector(sys.dim, rng), rel_tol * 1e-2), raising);
      d["control"] = ctl;
      ok = ok && ctl > 1e-2;
    }
    d["ok"] = ok;
    per.push_back(d);
    r.passed = r.passed && ok;
  }
  r.detail = Json{{"bound", rel_tol}, {"weights", per}};
  return r;
}

CheckResult check_kz_gauge(double rel_tol, std::mt19937_64& rng) {
  CheckResult r{"kz_gauge", true, Json::object()};
  const int p = 1, q = 0;
  IndexSet idx = IndexSet::super(q, 1, p, 1);
  Algebra plain{idx, false}, central{idx, true};
  std::vector<ModulePtr> factors;
  std::vector<Rational> levels;
  Weight top;
  for (const auto& gp : std::vector<std::vector<int>>{{0}, {0, 0}}) {
    GeneralizedPartition la(gp);
    Weight xi = unitarizable_weight(la, p, q, 1, 1);
    factors.push_back(share(irreducible_truncated(central, xi, la.depth(), 2 + idx.size() - 1)));
    levels.push_back(la.depth());
    top = top + xi;
  }
  TensorSpace t(factors);
  std::vector<Point> path{{0.0, 1.0}, {cplx(2, 1), 1.0}, {cplx(1, 2), cplx(0, -1)}, {cplx(-1, 0), 1.0}};
  Json per = Json::array();
  for (const Weight& mu : t.all_weights()) {
    if (weight_height(idx, top, mu) > 2) continue;
    WeightBlock b = make_block(t, mu);
    for (cplx kappa : {cplx(1), cplx(2)}) {
      KZSystem sp = make_kz(quadratic_data(t, casimir(plain), b), kappa);
      KZSystem sc = make_kz(quadratic_data(t, casimir(central), b), kappa);
      CVec psi0 = random_vector(b.dim(), rng);
      PathSolution ps = integrate_path(sp, path, psi0, rel_tol * 1e-2);
      PathSolution pc = integrate_path(sc, path, psi0, rel_tol * 1e-2);
      double c = q - p;
      PathSolution moved = gauge_transform(ps, c, levels, kappa);
      CVec a = moved.samples.back().psi, e = pc.samples.back().psi;
      double cross = (a - e).norm() / e.norm();
      PathSolution back = gauge_transform(moved, -c, levels, kappa);
      double round = 0;
      for (size_t k = 0; k < ps.samples.size(); ++k)
        round = std::max(round, (back.samples[k].psi - ps.samples[k].psi).norm() / ps.samples[k].psi.norm());
      bool ok = cross <= 10 * rel_tol && round <= 10 * rel_tol;
      per.push_back({{"weight", mu.str()}, {"dim", b.dim()}, {"kappa", to_json(kappa)}, {"plain_to_central", cross}, {"round_trip", round}, {"ok", ok}});
      r.passed = r.passed && ok;
    }
  }
  r.detail = Json{{"bound", 10 * rel_tol}, {"levels", points_json(levels)}, {"runs", per}};
  r.passed = r.passed && !per.empty();
  return r;
}

CheckResult check_kz_truncation(double rel_tol, std::mt19937_64& rng) {
  CheckResult r{"kz_truncation", true, Json::object()};
  std::vector<std::vector<Partition>> cases = {{Partition({1}), Partition({1, 1}), Partition({2})},
                                               {Partition({1}), Partition({1})},
                                               {Partition({2}), Partition({1}), Partition({1})}};
  Json per = Json::array();
  for (const auto& las : cases) {
    std::vector<ModulePtr> big, small;
    Weight top;
    for (const auto& la : las) {
      big.push_back(share(classical_module(la, 3)));
      small.push_back(share(classical_module(la, 2)));
      top = top + small.back()->top;
    }
    const auto& ord = small[0]->algebra.indices.ordered();
    Weight mu = top - (Weight::epsilon(ord[0]) - Weight::epsilon(ord[1]));
    std::vector<Point> path = default_path(static_cast<int>(las.size()));
    for (cplx kappa : {cplx(1), cplx(2)}) {
      KZTruncationReport rep = kz_truncation_stability(big, small, mu, path, kappa, rel_tol * 1e-2, rng);
      bool ok = rep.intertwines && rep.dim_big == rep.dim_small && rep.deviation <= 10 * rel_tol;
      per.push_back({{"partitions", lists_str(las)}, {"weight", mu.str()}, {"kappa", to_json(kappa)}, {"report", to_json(rep)}, {"ok", ok}});
      r.passed = r.passed && ok;
    }
  }
  r.detail = Json{{"bound", 10 * rel_tol}, {"runs", per}};
  return r;
}

CheckResult check_kz_rank(const RankPair& rank, int ell, double rel_tol) {
  CheckResult r{"kz_rank", true, Json::object()};
  auto [m, n] = rank;
  Algebra alg{IndexSet::glmn(m, n), false};
  TensorSpace t(natural_power(alg, ell));
  CasimirTensor om = casimir(alg);
  std::vector<Point> path = default_path(ell);
  Json per = Json::array();
  for (const auto& mu : partitions_of(ell)) {
    if (!hook_ok(mu, m, n)) continue;
    Weight w = weight_super(mu, Partition(), 0, 0, m, 0, n);
    SingularSpace s = singular_space(t, w);
    QuadraticData q = quadratic_data(t, om, s.block);
    int full = solution_rank(transport(make_kz(q, 1.0), path, rel_tol * 1e-2));
    int sing = s.dim() ? solution_rank(transport(make_kz(q, 1.0, &s.basis), path, rel_tol * 1e-2)) : 0;
    bool ok = full == s.block.dim() && sing == s.dim();
    per.push_back({{"mu", mu.str()}, {"weight_dim", s.block.dim()}, {"rank", full}, {"singular_dim", s.dim()}, {"singular_rank", sing}, {"ok", ok}});
    r.passed = r.passed && ok;
  }
  r.detail["weights"] = per;
  return r;
}

CheckResult check_kz_eigen(const RankPair& rank, int ell, double rel_tol, std::mt19937_64& rng) {
  CheckResult r{"kz_eigen", true, Json::object()};
  auto [m, n] = rank;
  Algebra alg{IndexSet::glmn(m, n), false};
  TensorSpace t(natural_power(alg, ell));
  CasimirTensor om = casimir(alg);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Json per = Json::array();
  double worst = 0;
  for (const auto& mu : partitions_of(ell)) {
    if (!hook_ok(mu, m, n)) continue;
    Weight w = weight_super(mu, Partition(), 0, 0, m, 0, n);
    WeightBlock b = make_block(t, w);
    if (b.dim() == 0) continue;
    QuadraticData q = quadratic_data(t, om, b);
    std::vector<Rational> z = sample_points(ell, rng);
    std::vector<Matrix> family;
    for (int i = 0; i < ell; ++i) family.push_back(quadratic_hamiltonian(q, z, i));
    JointSpectrum js = joint_diagonalize(family, 1e-9, rng);
    for (double kappa : {1.0, 2.0}) {
      KZSystem sys = make_kz(q, kappa);
      Point z0, dz;
      for (const auto& x : z) {
        z0.push_back(x.get_d());
        dz.push_back(cplx(unit(rng), unit(rng)));
      }
      // eigenvectors of a random combination, independent of joint_diagonalize
      CMat comb = CMat::Zero(b.dim(), b.dim());
      for (int i = 0; i < ell; ++i) comb += unit(rng) * to_complex(family[i]);
      Eigen::ComplexEigenSolver<CMat> es(comb);
      // central differences of the transport, two Richardson steps; h scales with the
      // distance between points and the integrator runs well below the compared tolerance
      double dmin = std::numeric_limits<double>::infinity(), speed = 0;
      for (int i = 0; i < ell; ++i)
        for (int j = i + 1; j < ell; ++j) {
          dmin = std::min(dmin, std::abs(z0[i] - z0[j]));
          speed = std::max(speed, std::abs(dz[i] - dz[j]));
        }
      auto derivative = [&](double h) {
        Point plus = z0, minus = z0;
        for (int i = 0; i < ell; ++i) {
          plus[i] += h * dz[i];
          minus[i] -= h * dz[i];
        }
        CMat tp = transport(sys, {z0, plus}, rel_tol * 1e-5), tm = transport(sys, {z0, minus}, rel_tol * 1e-5);
        return CMat((tp - tm) / (2 * h));
      };
      const double h = 0.05 * dmin / std::max(speed, 1.0);
      CMat d1 = derivative(h), d2 = derivative(h / 2), d4 = derivative(h / 4);
      CMat r1 = (4 * d2 - d1) / 3, r2 = (4 * d4 - d2) / 3;
      CMat d = (16 * r2 - r1) / 15;
      double scale = 0;
      for (const auto& row : js.joint) {
        cplx pred = 0;
        for (int i = 0; i < ell; ++i) pred += row[i] * dz[i] / kappa;
        scale = std::max(scale, std::abs(pred));
      }
      scale = std::max(scale, 1.0);
      double err = 0;
      for (int k = 0; k < es.eigenvectors().cols(); ++k) {
        CVec v = es.eigenvectors().col(k).normalized();
        CVec dv = d * v;
        cplx lam = v.dot(dv);
        double off = (dv - lam * v).norm();
        double best = std::numeric_limits<double>::infinity();
        for (const auto& row : js.joint) {
          cplx pred = 0;
          for (int i = 0; i < ell; ++i) pred += row[i] * dz[i] / kappa;
          best = std::min(best, std::abs(lam - pred));
        }
        err = std::max(err, std::max(off, best) / scale);
      }
      bool ok = js.diagonalizable && err <= 10 * rel_tol;
      worst = std::max(worst, err);
      per.push_back({{"mu", mu.str()}, {"kappa", kappa}, {"dim", b.dim()}, {"error", err}, {"ok", ok}});
      r.passed = r.passed && ok;
    }
  }
  r.detail["weights"] = per;
  r.detail["worst"] = worst;
  r.detail["bound"] = 10 * rel_tol;
  return r;
}

namespace {

using Runner = std::function<CheckResult(const VerifyOptions&, std::mt19937_64&)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> checks = {
      {"structure",
       [](const VerifyOptions& o, std::mt19937_64& rng) {
         IndexSet g = IndexSet::glmn(o.m, o.n);
         return check_structure({{g, false}, {g, true}, {IndexSet::classical(0, o.ell), false}, {IndexSet::super(0, o.m, 1, o.n), true}}, 200, rng);
       }},
      {"hamiltonian_algebra",
       [](const VerifyOptions& o, std::mt19937_64& rng) {
         return check_hamiltonian_algebra({natural_power({IndexSet::glmn(o.m, o.n), false}, o.ell)}, 2, o.m + o.n <= 3, rng);
       }},
      {"module_oracle", [](const VerifyOptions& o, std::mt19937_64&) { return check_module_oracle({{o.m, o.n}}, o.ell + 1); }},
      {"duality_quadratic",
       [](const VerifyOptions& o, std::mt19937_64& rng) {
         return check_duality({{o.m, o.n}}, std::min(o.ell, 3), o.ell, HamKind::quadratic, 2, rng);
       }},
      {"duality_closed_case", [](const VerifyOptions&, std::mt19937_64&) { return check_duality_closed_case(); }},
      {"duality_cubic",
       [](const VerifyOptions& o, std::mt19937_64& rng) {
         CheckResult c = check_duality({{o.m, o.n}}, std::min(o.ell, 3), std::min(o.ell, 3), HamKind::cubicC, 1, rng);
         CheckResult d = check_duality({{o.m, o.n}}, std::min(o.ell, 3), std::min(o.ell, 3), HamKind::cubicD, 1, rng);
         return CheckResult{"duality_cubic", c.passed && d.passed, Json{{"cubicC", c.detail}, {"cubicD", d.detail}}};
       }},
      {"lax", [](const VerifyOptions& o, std::mt19937_64& rng) { return check_lax({{o.m, o.n}}, 2, rng); }},
      {"cyclic", [](const VerifyOptions& o, std::mt19937_64& rng) { return check_cyclic({{o.m, o.n, o.ell}}, 3, rng); }},
      {"central_shift", [](const VerifyOptions&, std::mt19937_64& rng) { return check_central_shift(1, rng); }},
      {"truncation", [](const VerifyOptions&, std::mt19937_64&) { return check_truncation(); }},
      {"kz_flatness", [](const VerifyOptions& o, std::mt19937_64& rng) { return check_kz_flatness({o.m, o.n}, o.ell, rng); }},
      {"kz_scalar", [](const VerifyOptions& o, std::mt19937_64&) { return check_kz_scalar(o.tol); }},
      {"kz_monodromy", [](const VerifyOptions& o, std::mt19937_64&) { return check_kz_monodromy(o.tol); }},
      {"kz_singular", [](const VerifyOptions& o, std::mt19937_64& rng) { return check_kz_singular({o.m, o.n}, o.ell, o.tol, rng); }},
      {"kz_gauge", [](const VerifyOptions& o, std::mt19937_64& rng) { return check_kz_gauge(o.tol, rng); }},
      {"kz_truncation", [](const VerifyOptions& o, std::mt19937_64& rng) { return check_kz_truncation(o.tol, rng); }},
      {"kz_rank", [](const VerifyOptions& o, std::mt19937_64&) { return check_kz_rank({o.m, o.n}, o.ell, o.tol); }},
      {"kz_eigen", [](const VerifyOptions& o, std::mt19937_64& rng) { return check_kz_eigen({o.m, o.n}, o.ell, o.tol, rng); }},
  };
  return checks;
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& [name, run] : registry()) out.push_back(name);
  return out;
}

std::vector<CheckResult> run_verify(const VerifyOptions& opt, const std::vector<std::string>& only) {
  if (opt.m < 0 || opt.n < 0 || opt.m + opt.n < 1) throw PreconditionError("need m + n >= 1");
  if (opt.ell < 2 || opt.ell > 4) throw PreconditionError("ell must lie in [2, 4]");
  if (!(opt.tol > 0)) throw PreconditionError("tolerance must be positive");
  const auto& reg = registry();
  for (const auto& name : only) {
    bool known = false;
    for (const auto& [n, r] : reg) known = known || n == name;
    if (!known) throw PreconditionError("unknown check '" + name + "'");
  }
  std::vector<CheckResult> out;
  for (size_t k = 0; k < reg.size(); ++k) {
    const auto& [name, run] = reg[k];
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    // per-check stream, so a subset run reproduces the same numbers
    std::mt19937_64 rng(opt.seed * 1000003ULL + k);
    CheckResult r;
    try {
      r = run(opt, rng);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = Json{{"error", e.what()}};
    }
    r.name = name;
    out.push_back(std::move(r));
  }
  return out;
}

Json verify_report(const VerifyOptions& opt, const std::vector<CheckResult>& results) {
  int passed = 0, failed = 0;
  Json checks = Json::array();
  for (const auto& r : results) {
    (r.passed ? passed : failed)++;
    checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  return Json{{"m", opt.m}, {"n", opt.n}, {"ell", opt.ell}, {"seed", opt.seed}, {"tol", opt.tol},
              {"passed", passed}, {"failed", failed}, {"checks", checks}};
}

}  // namespace gaudin
