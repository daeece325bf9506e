#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>

#include "gaudin/verify.hpp"

using namespace gaudin;

namespace {

// Pinned tolerances.
constexpr double kRelTol = 1e-8;        // scalar KZ solution, singular preservation
constexpr double kGaugeTol = 1e-7;      // gauge round trip and truncation stability (10 * kRelTol)
constexpr std::uint64_t kSeed = 20261015;

ModulePtr share(WeightModule m) { return std::make_shared<const WeightModule>(std::move(m)); }

std::vector<std::vector<Partition>> triples(int max_total) {
  std::vector<std::vector<Partition>> out;
  for (int a = 1; a <= max_total; ++a)
    for (int b = 1; a + b <= max_total; ++b)
      for (int c = 1; a + b + c <= max_total; ++c)
        for (const auto& x : partitions_of(a))
          for (const auto& y : partitions_of(b))
            for (const auto& z : partitions_of(c)) out.push_back({x, y, z});
  return out;
}

std::string run_command(const std::string& cmd) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  return out;
}

struct Line {
  int id;
  std::string title;
  bool passed;
  std::string note;
};

std::string summary(const CheckResult& r) {
  std::string s = r.detail.dump();
  return s.size() > 240 ? s.substr(0, 240) + "..." : s;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "./gaudin";
  std::mt19937_64 rng(kSeed);
  std::vector<Line> lines;
  auto record = [&](int id, const std::string& title, bool ok, const std::string& note) {
    lines.push_back({id, title, ok, note});
    std::cout << (ok ? "PASS" : "FAIL") << "  " << id << ". " << title << "  " << note << std::endl;
  };
  auto timed = [](const std::function<std::string()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    std::string note = f();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.1fs)", s);
    return note + buf;
  };

  // 1
  {
    bool ok = false;
    std::string note = timed([&] {
      std::vector<Algebra> algs;
      for (bool central : {false, true}) {
        for (auto [m, n] : std::vector<RankPair>{{1, 1}, {2, 1}, {1, 2}}) algs.push_back({IndexSet::glmn(m, n), central});
        for (int k = 1; k <= 4; ++k) algs.push_back({IndexSet::classical(0, k), central});
      }
      CheckResult r = check_structure(algs, 200, rng);
      ok = r.passed;
      return "exact zero on 200 triples for " + std::to_string(algs.size()) + " algebras";
    });
    record(1, "structure exactness", ok, note);
  }
  // 2
  {
    bool ok = false;
    std::string note = timed([&] {
      std::vector<std::vector<ModulePtr>> spaces;
      for (auto [m, n] : std::vector<RankPair>{{1, 1}, {2, 1}})
        spaces.push_back(std::vector<ModulePtr>(3, share(natural_module({IndexSet::glmn(m, n), false}))));
      int mixed = 0;
      for (auto [m, n] : std::vector<RankPair>{{1, 1}, {2, 1}})
        for (const auto& t : triples(5)) {
          bool hook = true;
          for (const auto& la : t) hook = hook && hook_ok(la, m, n);
          if (!hook) continue;
          std::vector<ModulePtr> f;
          for (const auto& la : t) f.push_back(share(polynomial_module(la, m, n)));
          spaces.push_back(f);
          ++mixed;
        }
      CheckResult r = check_hamiltonian_algebra(spaces, 5, false, rng);
      ok = r.passed;
      return "exact zero commutators, sum rule and invariance on 2 natural + " + std::to_string(mixed) + " polynomial triples, 5 z each";
    });
    record(2, "Hamiltonian algebra", ok, note);
  }
  // 3
  {
    bool ok = false;
    std::string note = timed([&] {
      CheckResult r = check_module_oracle({{1, 1}, {2, 1}, {1, 2}, {2, 2}}, 6);
      ok = r.passed;
      return summary(r);
    });
    record(3, "module realization oracle", ok, note);
  }
  // 4
  {
    bool ok = false;
    std::string note = timed([&] {
      CheckResult r = check_duality({{1, 1}, {2, 1}}, 3, 5, HamKind::quadratic, 5, rng);
      CheckResult c = check_duality_closed_case();
      ok = r.passed && c.passed;
      return "setups " + r.detail["setups"].dump() + ", nontrivial " + r.detail["nontrivial"].dump() + ", failures " +
             r.detail["failures"].dump() + ", closed 1x1 case " + (c.passed ? "ok" : "FAILED");
    });
    record(4, "super duality, quadratic", ok, note);
  }
  // 5
  {
    bool ok = false;
    std::string note = timed([&] {
      Algebra a{IndexSet::glmn(1, 1), false};
      std::vector<std::vector<ModulePtr>> spaces;
      for (int ell : {2, 3}) spaces.push_back(std::vector<ModulePtr>(ell, share(natural_module(a))));
      spaces.push_back({share(polynomial_module(Partition({2}), 1, 1)), share(polynomial_module(Partition({1, 1}), 1, 1)),
                        share(natural_module(a))});
      CheckResult inv = check_hamiltonian_algebra(spaces, 3, true, rng);
      CheckResult c = check_duality({{1, 1}}, 3, 5, HamKind::cubicC, 3, rng);
      CheckResult d = check_duality({{1, 1}}, 3, 5, HamKind::cubicD, 3, rng);
      ok = inv.passed && c.passed && d.passed;
      return std::string("invariance ") + (inv.passed ? "ok" : "FAILED") + ", C setups " + c.detail["setups"].dump() + " failures " +
             c.detail["failures"].dump() + ", D failures " + d.detail["failures"].dump();
    });
    record(5, "cubic Hamiltonians", ok, note);
  }
  // 6
  {
    bool ok = false;
    std::string note = timed([&] {
      CheckResult r = check_lax({{1, 1}, {2, 1}}, 5, rng);
      ok = r.passed;
      return "S11, S22, S33 exact on gl(1|1) and gl(2|1) tensor squares at 5 z";
    });
    record(6, "Lax expansion", ok, note);
  }
  // 7
  {
    bool ok = false;
    std::string note = timed([&] {
      CheckResult r = check_cyclic({{1, 1, 2}, {1, 1, 3}, {1, 1, 4}, {2, 1, 3}}, 5, rng);
      ok = r.passed;
      return "Krylov spans on " + std::to_string(r.detail["cases"].size()) + " singular spaces, z = (0,1,...) plus 4 sampled";
    });
    record(7, "cyclic vector", ok, note);
  }
  // 8
  {
    bool ok = false;
    std::string note = timed([&] {
      CheckResult r = check_central_shift(5, rng);
      ok = r.passed;
      return std::to_string(r.detail["cases"].size()) + " factor lists with levels in {1,2}, char-poly shift identity exact";
    });
    record(8, "central shifts", ok, note);
  }
  // 9
  {
    bool ok = false;
    std::string note = timed([&] {
      std::vector<CheckResult> rs = {check_kz_flatness({1, 1}, 3, rng),  check_kz_flatness({2, 1}, 3, rng),
                                     check_kz_scalar(kRelTol),            check_kz_monodromy(kRelTol),
                                     check_kz_singular({1, 1}, 3, kRelTol, rng), check_kz_singular({2, 1}, 3, kRelTol, rng),
                                     check_kz_gauge(kGaugeTol / 10, rng), check_kz_truncation(kGaugeTol / 10, rng),
                                     check_kz_rank({1, 1}, 3, kRelTol),   check_kz_rank({2, 1}, 3, kRelTol)};
      std::string s;
      ok = true;
      for (const auto& r : rs) {
        ok = ok && r.passed;
        s += (s.empty() ? "" : ", ") + r.name + (r.passed ? " ok" : " FAILED");
      }
      return s;
    });
    record(9, "KZ equations", ok, note);
  }
  // 10
  {
    bool ok = false;
    std::string note = timed([&] {
      CheckResult r = check_truncation();
      ok = r.passed;
      return std::to_string(r.detail["cases"].size()) + " classical band restrictions";
    });
    record(10, "truncation", ok, note);
  }
  // 11
  {
    bool ok = false;
    std::string note = timed([&] {
      std::string cmd = cli + " verify all --seed 7 2>/dev/null";
      std::string a = run_command(cmd), b = run_command(cmd);
      ok = !a.empty() && a == b;
      return std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different");
    });
    record(11, "determinism", ok, note);
  }

  int failed = 0;
  for (const auto& l : lines) failed += !l.passed;
  std::cout << (failed ? "FAIL" : "PASS") << "  " << lines.size() - failed << "/" << lines.size() << " criteria" << std::endl;
  return failed ? 1 : 0;
}
