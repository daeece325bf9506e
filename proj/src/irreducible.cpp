#include <algorithm>
#include <map>

#include "gaudin/errors.hpp"
#include "gaudin/module.hpp"

namespace gaudin {

namespace {

struct Space {
  Weight w;
  int height = 0;
  int first = 0;  // global id of the first basis vector
  int size = 0;
  Matrix gram;
};

struct Candidate {
  int op;      // simple lowering index
  int parent;  // global id
};

// Fills every E_{a,b} from the simple raising/lowering matrices and the weights.
void complete_generators(WeightModule& mod, const std::vector<SparseMatrix>& raise,
                         const std::vector<SparseMatrix>& lower) {
  const IndexSet& idx = mod.algebra.indices;
  const auto& ord = idx.ordered();
  const int n = idx.size(), dim = mod.dim();
  std::map<std::pair<int, int>, SparseMatrix> byPos;
  for (int a = 0; a + 1 < n; ++a) {
    byPos[{a, a + 1}] = raise[a];
    byPos[{a + 1, a}] = lower[a];
  }
  for (int dist = 2; dist < n; ++dist)
    for (int a = 0; a + dist < n; ++a) {
      int c = a + dist;
      // E_{a,c} = [E_{a,a+1}, E_{a+1,c}],  E_{c,a} = [E_{c,a+1}, E_{a+1,a}]
      int pab = ord[a].parity() ^ ord[a + 1].parity(), pbc = ord[a + 1].parity() ^ ord[c].parity();
      byPos[{a, c}] = sparse_supercommutator(byPos[{a, a + 1}], pab, byPos[{a + 1, c}], pbc);
      byPos[{c, a}] = sparse_supercommutator(byPos[{c, a + 1}], pbc, byPos[{a + 1, a}], pab);
    }
  for (int a = 0; a < n; ++a) {
    SparseMatrix diag(dim);
    for (int wi = 0; wi < mod.num_weights(); ++wi) {
      long c = mod.weights[wi].coeff(ord[a]);
      if (c == 0) continue;
      for (int b = mod.offsets[wi]; b < mod.offsets[wi + 1]; ++b) diag[b][b] = c;
    }
    byPos[{a, a}] = std::move(diag);
  }
  for (auto& [k, m] : byPos) {
    m.resize(dim);
    mod.action[{ord[k.first].doubled, ord[k.second].doubled}] = std::move(m);
  }
}

bool dominant_classical(const IndexSet& idx, const Weight& xi) {
  if (idx.p() != 0) return false;
  long prev = 0;
  bool first = true;
  for (HalfIndex i : idx.ordered()) {
    long c = xi.coeff(i);
    if (c < 0 || (!first && c > prev)) return false;
    prev = c;
    first = false;
  }
  return true;
}

void check_class(const Algebra& alg, const Weight& xi, const Rational& level, bool* unitarizable) {
  const IndexSet& idx = alg.indices;
  for (const auto& [d, c] : xi.coeffs())
    if (!idx.contains(HalfIndex{d})) throw PreconditionError("highest weight has support outside " + idx.str());
  if (idx.flavor() == Flavor::classical) {
    if (!dominant_classical(idx, xi))
      throw PreconditionError("unsupported weight class: classical weights must be dominant integral over I_(0,k)");
    *unitarizable = true;
    return;
  }
  if (idx.flavor() == Flavor::super) {
    if (idx.p() + idx.q() > 0) {
      // The level is the depth of the generalized partition.
      if (level.get_den() == 1 && level > 0 &&
          unitarizable_at_depth(xi, idx.p(), idx.q(), idx.m(), idx.n(), static_cast<int>(level.get_num().get_si()),
                                nullptr)) {
        *unitarizable = true;
        return;
      }
    } else {
      long l1 = 0;
      for (const auto& [d, c] : xi.coeffs()) l1 += std::labs(c);
      int depth = 0;
      std::vector<int> parts;
      if (decompose_unitarizable(xi, 0, 0, idx.m(), idx.n(), static_cast<int>(l1) + 1, &depth, &parts)) {
        *unitarizable = true;
        return;
      }
    }
  }
  throw PreconditionError("unsupported weight class: " + xi.str() + " is neither unitarizable nor classical dominant");
}

}  // namespace

WeightModule irreducible_truncated(const Algebra& alg, const Weight& xi_in, const Rational& level, int depth) {
  Weight xi = xi_in;
  xi.set_level(0);
  bool unitarizable = false;
  check_class(alg, xi, level, &unitarizable);

  const IndexSet& idx = alg.indices;
  const auto raising = simple_raising_ops(idx);
  const int ns = static_cast<int>(raising.size());
  std::vector<BasisElement> lowering;
  std::vector<Weight> alpha;
  std::vector<Rational> sigma;
  for (const auto& e : raising) {
    lowering.push_back(BasisElement{e.col, e.row});
    alpha.push_back(root_of(e));
    sigma.push_back((tau_sign_exponent(e.row) + tau_sign_exponent(e.col)) % 2 ? -1 : 1);
  }
  Algebra plain = alg;
  plain.central = false;

  std::vector<Space> spaces;
  std::map<Weight, int> space_of;
  std::vector<int> space_of_id;
  std::vector<std::pair<int, int>> words;
  // Actions on global ids; lower[s][id] is filled once the next level exists.
  std::vector<std::map<int, SparseVec>> raise_act(ns), lower_act(ns);

  Space top;
  top.w = xi;
  top.size = 1;
  top.gram = Matrix::identity(1);
  spaces.push_back(top);
  space_of[xi] = 0;
  space_of_id.push_back(0);
  words.emplace_back(-1, -1);

  const int kCap = 400;
  const int limit = depth < 0 ? kCap : depth + 1;
  std::vector<int> level_spaces{0};
  bool exhausted = false;
  int built_height = 0;

  for (int h = 1; h <= limit; ++h) {
    std::map<Weight, std::vector<Candidate>> cands;
    for (int si : level_spaces) {
      const Space& sp = spaces[si];
      for (int s = 0; s < ns; ++s) {
        Weight nu = sp.w - alpha[s];
        for (int u = sp.first; u < sp.first + sp.size; ++u) cands[nu].push_back({s, u});
      }
    }
    for (auto& [nu, list] : cands)
      std::sort(list.begin(), list.end(), [](const Candidate& a, const Candidate& b) {
        return std::make_pair(a.op, a.parent) < std::make_pair(b.op, b.parent);
      });

    std::vector<int> new_spaces;
    std::vector<std::tuple<Weight, std::vector<Candidate>, std::vector<std::vector<SparseVec>>, Matrix>> pending;
    for (const auto& [nu, list] : cands) {
      const int nc = static_cast<int>(list.size());
      // phi[c][t] = e_t (f_s u) in the level h-1 basis.
      std::vector<std::vector<SparseVec>> phi(nc, std::vector<SparseVec>(ns));
      for (int c = 0; c < nc; ++c) {
        const auto [s, u] = list[c];
        const Weight& wu = spaces[space_of_id[u]].w;
        for (int t = 0; t < ns; ++t) {
          SparseVec out;
          AlgebraElement br = supercommutator(plain, AlgebraElement::basis(raising[t].row, raising[t].col),
                                              AlgebraElement::basis(lowering[s].row, lowering[s].col));
          Rational scalar = 0;
          for (const auto& [e, a] : br.terms()) {
            if (!(e.row == e.col)) throw VerificationError("unexpected non-Cartan bracket of simple generators");
            scalar += a * wu.coeff(e.row);
          }
          add_entry(out, u, scalar);
          auto it = raise_act[t].find(u);
          if (it != raise_act[t].end()) {
            int sign = (raising[t].parity() & lowering[s].parity()) ? -1 : 1;
            for (const auto& [w, a] : it->second) {
              const SparseVec& fw = lower_act[s].at(w);
              axpy(out, sign * a, fw);
            }
          }
          phi[c][t] = std::move(out);
        }
      }
      Matrix g(nc, nc);
      for (int c = 0; c < nc; ++c) {
        const auto [s, u] = list[c];
        const Space& su = spaces[space_of_id[u]];
        int lu = u - su.first;
        for (int c2 = 0; c2 < nc; ++c2) {
          Rational acc = 0;
          for (const auto& [w, a] : phi[c2][s]) acc += su.gram(lu, w - su.first) * a;
          g(c, c2) = sigma[s] * acc;
        }
      }
      pending.emplace_back(nu, list, std::move(phi), std::move(g));
    }

    bool any = false;
    for (auto& [nu, list, phi, g] : pending) {
      Echelon e = rref(g);
      if (e.pivots.empty()) {
        for (const Candidate& c : list) lower_act[c.op][c.parent] = SparseVec{};
        continue;
      }
      any = true;
      if (h == limit && depth >= 0) break;  // probe level: only emptiness matters
      const int r = static_cast<int>(e.pivots.size());
      Space sp;
      sp.w = nu;
      sp.height = h;
      sp.first = static_cast<int>(words.size());
      sp.size = r;
      std::vector<int> piv = e.pivots;
      sp.gram = Matrix(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) sp.gram(i, j) = g(piv[i], piv[j]);
      if (unitarizable && !is_positive_definite(sp.gram))
        throw VerificationError("contravariant form is not positive definite at weight " + nu.str());
      Matrix coords = *solve(sp.gram, g.rows_of(piv));
      const int sid = static_cast<int>(spaces.size());
      for (int i = 0; i < r; ++i) {
        words.emplace_back(list[piv[i]].op, list[piv[i]].parent);
        space_of_id.push_back(sid);
      }
      for (int c = 0; c < static_cast<int>(list.size()); ++c) {
        SparseVec v;
        for (int i = 0; i < r; ++i) add_entry(v, sp.first + i, coords(i, c));
        lower_act[list[c].op][list[c].parent] = std::move(v);
      }
      for (int i = 0; i < r; ++i)
        for (int t = 0; t < ns; ++t)
          if (!phi[piv[i]][t].empty()) raise_act[t][sp.first + i] = phi[piv[i]][t];
      space_of[nu] = sid;
      spaces.push_back(std::move(sp));
      new_spaces.push_back(sid);
    }
    if (!any) {
      exhausted = true;
      break;
    }
    if (h == limit && depth >= 0) break;
    built_height = h;
    level_spaces = std::move(new_spaces);
  }
  if (!exhausted && depth < 0)
    throw PreconditionError("module did not terminate within " + std::to_string(kCap) + " levels; give a depth");

  WeightModule mod;
  mod.algebra = alg;
  mod.level = level;
  mod.provenance = Provenance::irreducible;
  mod.depth = exhausted ? -1 : built_height;
  mod.top = xi;
  for (const Space& sp : spaces) {
    mod.weights.push_back(sp.w);
    mod.offsets.push_back(sp.first);
    mod.heights.push_back(sp.height);
    mod.parities.push_back(weight_parity(idx, sp.w, level));
  }
  mod.offsets.push_back(static_cast<int>(words.size()));
  mod.words = words;
  mod.index_weights();
  const int dim = mod.dim();
  std::vector<SparseMatrix> raise(ns, SparseMatrix(dim)), lower(ns, SparseMatrix(dim));
  for (int s = 0; s < ns; ++s) {
    for (auto& [id, v] : raise_act[s]) raise[s][id] = v;
    for (auto& [id, v] : lower_act[s]) lower[s][id] = v;
  }
  complete_generators(mod, raise, lower);
  return mod;
}

WeightModule classical_module(const Partition& la, int k) {
  Algebra alg{IndexSet::classical(0, k), false};
  Weight w = weight_classical(la, Partition(), 0, 0, k);
  return irreducible_truncated(alg, w, 0, -1);
}

WeightModule restrict_to_band(const WeightModule& mod, const IndexSet& band) {
  WeightModule out;
  out.algebra = Algebra{band, mod.algebra.central};
  out.level = mod.level;
  out.provenance = Provenance::restricted;
  out.depth = mod.depth;
  out.top = mod.top;
  std::map<int, int> newid;
  int next = 0;
  for (int wi = 0; wi < mod.num_weights(); ++wi) {
    bool inside = true;
    for (const auto& [d, c] : mod.weights[wi].coeffs())
      if (!band.contains(HalfIndex{d})) inside = false;
    if (!inside) continue;
    out.weights.push_back(mod.weights[wi]);
    out.offsets.push_back(next);
    out.heights.push_back(mod.heights[wi]);
    out.parities.push_back(mod.parities[wi]);
    for (int b = mod.offsets[wi]; b < mod.offsets[wi + 1]; ++b) newid[b] = next++;
  }
  out.offsets.push_back(next);
  if (!out.weights.empty()) out.top = out.weights.front();
  for (const BasisElement& e : all_basis(band)) {
    const SparseMatrix& m = mod.matrix(e);
    SparseMatrix r(next);
    for (const auto& [old, nw] : newid)
      for (const auto& [k, a] : m[old]) {
        auto it = newid.find(static_cast<int>(k));
        if (it != newid.end()) r[nw][it->second] = a;
      }
    out.action[{e.row.doubled, e.col.doubled}] = std::move(r);
  }
  out.index_weights();
  return out;
}

}  // namespace gaudin
