#include "slp/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "slp/clausal.hpp"

namespace slp {

std::vector<GroundClause> ground_clauses(const Program& p, Vocabulary& voc) {
  std::vector<GroundClause> out;
  for (const auto& cl : p.clauses) {
    if (!cl.ground())
      throw ContractError("oracle requires a variable-free program");
    GroundClause g;
    auto conv = [&](const PatAtom& a) {
      std::vector<SymId> args;
      for (const Term& t : a.args) args.push_back(t.sym());
      return voc.atoms.intern(a.pred, std::move(args));
    };
    for (const auto& a : cl.head) g.head.push_back(conv(a));
    for (const auto& a : cl.posBody) g.pos.push_back(conv(a));
    for (const auto& conj : cl.negBody) {
      std::vector<AtomId> atoms;
      for (const auto& a : conj) atoms.push_back(conv(a));
      g.neg.push_back(voc.defaults.intern_atoms(std::move(atoms)));
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<GroundClause> fact_clauses(const std::vector<ConditionalFact>& fs) {
  std::vector<GroundClause> out;
  for (const auto& f : fs) out.push_back(GroundClause{f.head, {}, f.cond});
  return out;
}

std::vector<AtomId> clause_atoms(std::span<const GroundClause> cs,
                                 const Vocabulary& voc) {
  std::set<AtomId> s;
  for (const auto& c : cs) {
    s.insert(c.head.begin(), c.head.end());
    s.insert(c.pos.begin(), c.pos.end());
    for (DefAtomId d : c.neg) {
      const auto& body = voc.defaults.def(d).body;
      s.insert(body.begin(), body.end());
    }
  }
  std::vector<AtomId> out(s.begin(), s.end());
  voc.atoms.canonical_sort(out);
  return out;
}

std::vector<DefAtomId> clause_defaults(std::span<const GroundClause> cs,
                                       const Vocabulary& voc) {
  std::set<DefAtomId> s;
  for (const auto& c : cs) s.insert(c.neg.begin(), c.neg.end());
  std::vector<DefAtomId> out(s.begin(), s.end());
  voc.defaults.canonical_sort(out, voc.atoms);
  return out;
}

namespace {

struct CompiledClause {
  uint64_t headMask = 0, posMask = 0, negMask = 0;
};

int index_of_atom(std::span<const AtomId> atoms, AtomId a) {
  for (size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i] == a) return static_cast<int>(i);
  return -1;
}

std::vector<CompiledClause> compile(std::span<const GroundClause> clauses,
                                    std::span<const AtomId> atoms,
                                    std::span<const DefAtomId> defAtoms) {
  std::vector<CompiledClause> out;
  for (const auto& c : clauses) {
    CompiledClause cc;
    for (AtomId a : c.head) {
      int i = index_of_atom(atoms, a);
      if (i < 0) throw ContractError("atom missing from oracle universe");
      cc.headMask |= uint64_t(1) << i;
    }
    for (AtomId a : c.pos) {
      int i = index_of_atom(atoms, a);
      if (i < 0) throw ContractError("atom missing from oracle universe");
      cc.posMask |= uint64_t(1) << i;
    }
    for (DefAtomId d : c.neg) {
      int i = -1;
      for (size_t j = 0; j < defAtoms.size(); ++j)
        if (defAtoms[j] == d) i = static_cast<int>(j);
      if (i < 0) throw ContractError("default atom missing from oracle universe");
      cc.negMask |= uint64_t(1) << i;
    }
    out.push_back(cc);
  }
  return out;
}

}  // namespace

std::vector<BruteModel> brute_minimal_models(
    std::span<const GroundClause> clauses, std::span<const AtomId> atoms,
    std::span<const DefAtomId> defAtoms, const Vocabulary& voc) {
  if (atoms.size() + defAtoms.size() > 26)
    throw GuardError("oracle interpretation space too large");
  auto cc = compile(clauses, atoms, defAtoms);

  uint64_t pinned = 0;  // not(true) is false in reduced interpretations
  for (size_t i = 0; i < defAtoms.size(); ++i)
    if (voc.defaults.is_false_literal(defAtoms[i])) pinned |= uint64_t(1) << i;

  const uint64_t defTotal = uint64_t(1) << defAtoms.size();
  const uint64_t objTotal = uint64_t(1) << atoms.size();
  std::vector<BruteModel> out;
  std::vector<uint64_t> models;
  for (uint64_t defBits = 0; defBits < defTotal; ++defBits) {
    if (defBits & pinned) continue;
    models.clear();
    for (uint64_t obj = 0; obj < objTotal; ++obj) {
      bool ok = true;
      for (const auto& c : cc) {
        bool sat = ((obj & c.posMask) != c.posMask) ||
                   ((defBits & c.negMask) != c.negMask) ||
                   ((obj & c.headMask) != 0);
        if (!sat) {
          ok = false;
          break;
        }
      }
      if (ok) models.push_back(obj);
    }
    for (uint64_t m : models) {
      bool minimal = true;
      for (uint64_t m2 : models)
        if (m2 != m && (m2 & m) == m2) {
          minimal = false;
          break;
        }
      if (minimal) out.push_back(BruteModel{defBits, m});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Syntactic fixed point

SyntacticFixpoint::SyntacticFixpoint(std::span<const GroundClause> clauses,
                                     std::vector<AtomId> atoms,
                                     const Vocabulary& voc)
    : atoms_(std::move(atoms)), k_(static_cast<int>(atoms_.size())) {
  if (k_ > kMaxAtoms)
    throw GuardError("syntactic fixed point limited to " +
                     std::to_string(kMaxAtoms) + " atoms, got " +
                     std::to_string(k_));
  deltaBits_ = (1 << k_) - 1;
  const uint32_t deltaTotal = uint32_t(1) << deltaBits_;
  const uint32_t objTotal = uint32_t(1) << k_;

  // Clause masks; default atoms map to the mask of their atom set.
  struct CC {
    uint32_t headMask = 0, posMask = 0;
    uint32_t negDelta = 0;  // bits e-1 for each not(E)
  };
  std::vector<CC> cc;
  for (const auto& c : clauses) {
    CC x;
    for (AtomId a : c.head) x.headMask |= 1u << index_of_atom(atoms_, a);
    for (AtomId a : c.pos) x.posMask |= 1u << index_of_atom(atoms_, a);
    for (DefAtomId d : c.neg) {
      uint32_t e = 0;
      for (AtomId a : voc.defaults.def(d).body)
        e |= 1u << index_of_atom(atoms_, a);
      if (e == 0) throw ContractError("not(true) cannot occur in a clause");
      x.negDelta |= 1u << (e - 1);
    }
    cc.push_back(x);
  }

  modelsByDelta_.assign(deltaTotal, 0);
  for (uint32_t delta = 0; delta < deltaTotal; ++delta) {
    uint16_t set = 0;
    for (uint32_t obj = 0; obj < objTotal; ++obj) {
      bool ok = true;
      for (const auto& x : cc) {
        bool sat = ((obj & x.posMask) != x.posMask) ||
                   ((delta & x.negDelta) != x.negDelta) ||
                   ((obj & x.headMask) != 0);
        if (!sat) {
          ok = false;
          break;
        }
      }
      if (ok) set |= uint16_t(1) << obj;
    }
    modelsByDelta_[delta] = set;
  }

  minObjByDelta_.assign(deltaTotal, 0);
  for (uint32_t delta = 0; delta < deltaTotal; ++delta) {
    uint16_t set = modelsByDelta_[delta];
    uint16_t mins = 0;
    for (uint32_t obj = 0; obj < objTotal; ++obj) {
      if (!((set >> obj) & 1)) continue;
      bool minimal = true;
      for (uint32_t o2 = 0; o2 < objTotal; ++o2)
        if (o2 != obj && ((set >> o2) & 1) && (o2 & obj) == o2) minimal = false;
      if (minimal) mins |= uint16_t(1) << obj;
    }
    minObjByDelta_[delta] = mins;
  }

  surv_.assign(deltaTotal, 0);
  for (uint32_t delta = 0; delta < deltaTotal; ++delta)
    surv_[delta] = modelsByDelta_[delta] != 0;

  // Induced default valuation of an objective part: not(E) iff E not true.
  auto induced = [&](uint32_t obj) {
    uint32_t r = 0;
    for (uint32_t e = 1; e < objTotal; ++e)
      if ((obj & e) != e) r |= 1u << (e - 1);
    return r;
  };

  // Iterate: a class survives iff for every consequent conjunction not yet
  // assumed, some minimal model of the current theory satisfies it while
  // falsifying everything the class assumes.
  std::vector<std::vector<char>> reach(objTotal);
  for (;;) {
    ++iterations_;
    // reach[e0][x]: some minimal model with E0 true has induced set >= x.
    for (uint32_t e0 = 0; e0 < objTotal; ++e0)
      reach[e0].assign(deltaTotal, 0);
    for (uint32_t delta = 0; delta < deltaTotal; ++delta) {
      if (!surv_[delta]) continue;
      uint16_t mins = minObjByDelta_[delta];
      for (uint32_t obj = 0; obj < objTotal; ++obj) {
        if (!((mins >> obj) & 1)) continue;
        uint32_t ind = induced(obj);
        for (uint32_t e0 = 0; e0 < objTotal; ++e0)
          if ((obj & e0) == e0) reach[e0][ind] = 1;
      }
    }
    for (uint32_t e0 = 0; e0 < objTotal; ++e0) {
      auto& arr = reach[e0];
      for (int b = 0; b < deltaBits_; ++b)
        for (uint32_t x = 0; x < deltaTotal; ++x)
          if (!((x >> b) & 1) && arr[x | (1u << b)]) arr[x] = 1;
    }
    bool changed = false;
    for (uint32_t delta = 0; delta < deltaTotal; ++delta) {
      if (!surv_[delta]) continue;
      bool keep = reach[0][delta] != 0;  // empty conjunction consequent
      for (uint32_t e0 = 1; keep && e0 < objTotal; ++e0) {
        if ((delta >> (e0 - 1)) & 1) continue;  // already assumed
        if (!reach[e0][delta]) keep = false;
      }
      if (!keep) {
        surv_[delta] = 0;
        changed = true;
      }
    }
    if (!changed) break;
  }
}

bool SyntacticFixpoint::consistent() const {
  for (char s : surv_)
    if (s) return true;
  return false;
}

bool SyntacticFixpoint::entails_not(uint32_t eMask) const {
  if (eMask == 0) return !consistent();  // not(true) only when inconsistent
  for (uint32_t delta = 0; delta < surv_.size(); ++delta)
    if (surv_[delta] && !((delta >> (eMask - 1)) & 1)) return false;
  return true;
}

bool SyntacticFixpoint::entails_implication(
    std::span<const uint32_t> antecedents, uint32_t consequent) const {
  for (uint32_t delta = 0; delta < surv_.size(); ++delta) {
    if (!surv_[delta]) continue;
    bool ante = true;
    for (uint32_t e : antecedents) {
      if (e == 0) {
        ante = false;  // not(true) never holds
        break;
      }
      if (!((delta >> (e - 1)) & 1)) {
        ante = false;
        break;
      }
    }
    if (!ante) continue;
    if (consequent == 0) return false;
    if (!((delta >> (consequent - 1)) & 1)) return false;
  }
  return true;
}

std::vector<uint32_t> SyntacticFixpoint::default_parts() const {
  std::vector<uint32_t> out;
  for (uint32_t delta = 0; delta < surv_.size(); ++delta)
    if (surv_[delta]) out.push_back(delta);
  return out;
}

SyntacticFixpoint syntactic_fixpoint(std::span<const GroundClause> clauses,
                                     const Vocabulary& voc) {
  return SyntacticFixpoint(clauses, clause_atoms(clauses, voc), voc);
}

// ---------------------------------------------------------------------------
// Well-founded model

WfsModel wfs_reference(std::span<const GroundClause> clauses,
                       const Vocabulary& voc) {
  for (const auto& c : clauses) {
    if (c.head.size() != 1)
      throw ContractError("well-founded reference requires normal programs");
    for (DefAtomId d : c.neg)
      if (!voc.defaults.singleton(d))
        throw ContractError(
            "well-founded reference requires singleton default atoms");
  }
  auto atoms = clause_atoms(clauses, voc);

  // Least model of the reduct: keep `not c` literals with c outside S.
  auto reduct_lfp = [&](const std::set<AtomId>& S) {
    std::set<AtomId> T;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& c : clauses) {
        bool fire = true;
        for (AtomId b : c.pos)
          if (!T.count(b)) {
            fire = false;
            break;
          }
        if (fire)
          for (DefAtomId d : c.neg)
            if (S.count(*voc.defaults.singleton(d))) {
              fire = false;
              break;
            }
        if (fire && !T.count(c.head[0])) {
          T.insert(c.head[0]);
          grew = true;
        }
      }
    }
    return T;
  };

  std::set<AtomId> T;
  std::set<AtomId> U = reduct_lfp(T);
  for (;;) {
    std::set<AtomId> T2 = reduct_lfp(U);
    if (T2 == T) break;
    T = std::move(T2);
    U = reduct_lfp(T);
  }

  WfsModel m;
  for (AtomId a : atoms) {
    if (T.count(a))
      m.trueAtoms.push_back(a);
    else if (!U.count(a))
      m.falseAtoms.push_back(a);
    else
      m.undefined.push_back(a);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Cross check

CrossCheckReport cross_check(const Program& prog, Vocabulary& voc,
                             const Limits& limits) {
  CrossCheckReport rep;
  auto gcs = ground_clauses(prog, voc);
  auto atoms = clause_atoms(gcs, voc);
  if (atoms.size() > SyntacticFixpoint::kMaxAtoms)
    throw GuardError("cross check limited to " +
                     std::to_string(SyntacticFixpoint::kMaxAtoms) +
                     " atoms, got " + std::to_string(atoms.size()));
  SyntacticFixpoint fix(gcs, atoms, voc);

  const uint32_t objTotal = uint32_t(1) << atoms.size();
  // Monitor every non-empty conjunction of program atoms.
  Program monitored = prog;
  monitored.monitored.clear();
  std::vector<DefAtomId> defByMask(objTotal, 0);
  for (uint32_t e = 1; e < objTotal; ++e) {
    std::vector<AtomId> conj;
    for (size_t i = 0; i < atoms.size(); ++i)
      if ((e >> i) & 1) conj.push_back(atoms[i]);
    defByMask[e] = voc.defaults.intern_atoms(std::move(conj));
    monitored.monitored.push_back(defByMask[e]);
  }

  std::vector<uint32_t> solverParts;
  bool solverRan = false;
  DefixResult defixRes;
  ResidualProgram* resPtr = nullptr;
  ResidualProgram resHolder{FactStore(&voc.atoms)};
  try {
    FactStore store = ground_fixpoint(monitored, voc, limits);
    resHolder = residual(std::move(store), monitored.monitored, voc);
    resPtr = &resHolder;
    defixRes = compute_defix(resHolder, voc, limits);
    solverRan = true;
    // Translate defix masks (over critNeg order) to atom-subset masks.
    std::vector<int> bitOfPos(defixRes.critNeg.size(), -1);
    for (size_t i = 0; i < defixRes.critNeg.size(); ++i) {
      for (uint32_t e = 1; e < objTotal; ++e)
        if (defByMask[e] == defixRes.critNeg[i])
          bitOfPos[i] = static_cast<int>(e - 1);
      if (bitOfPos[i] < 0) {
        rep.pass = false;
        rep.detail = "critical default atom outside the monitored space";
        return rep;
      }
    }
    for (uint64_t m : defixRes.defix) {
      uint32_t delta = 0;
      for (size_t i = 0; i < defixRes.critNeg.size(); ++i)
        if ((m >> i) & 1) delta |= 1u << bitOfPos[i];
      solverParts.push_back(delta);
    }
    std::sort(solverParts.begin(), solverParts.end());
  } catch (const InconsistentProgram&) {
    // No models at all; the solver side entails everything.
  }
  if (!solverRan && fix.consistent()) {
    rep.pass = false;
    rep.detail = "grounding reported inconsistency but the oracle has models";
    return rep;
  }

  // (a) entailed default atoms agree.
  for (uint32_t e = 1; e < objTotal; ++e) {
    bool oracleSays = fix.entails_not(e);
    bool solverSays =
        !solverRan || entails_default(defixRes, defByMask[e]);
    if (oracleSays != solverSays) {
      rep.pass = false;
      rep.detail = "entailment mismatch on " +
                   voc.defaults.text(defByMask[e], voc.atoms) + ": oracle " +
                   (oracleSays ? "yes" : "no") + ", solver " +
                   (solverSays ? "yes" : "no");
      return rep;
    }
  }

  // (b) implications of the fixed point hold in every surviving valuation.
  for (uint32_t delta : solverParts) {
    std::vector<uint32_t> antecedents;
    for (uint32_t e = 1; e < objTotal; ++e)
      if ((delta >> (e - 1)) & 1) antecedents.push_back(e);
    for (uint32_t e0 = 0; e0 < objTotal; ++e0) {
      bool holds = e0 != 0 && ((delta >> (e0 - 1)) & 1);
      if (!holds && fix.entails_implication(antecedents, e0)) {
        rep.pass = false;
        rep.detail = "surviving valuation violates an entailed implication";
        return rep;
      }
    }
  }

  // (c) surviving default valuations agree.
  auto oracleParts = fix.default_parts();
  std::sort(oracleParts.begin(), oracleParts.end());
  if (!solverRan) return rep;  // both sides inconsistent
  if (oracleParts.size() != solverParts.size() ||
      !std::equal(oracleParts.begin(), oracleParts.end(),
                  solverParts.begin())) {
    rep.pass = false;
    rep.detail = "surviving default valuations differ (oracle " +
                 std::to_string(oracleParts.size()) + ", solver " +
                 std::to_string(solverParts.size()) + ")";
    return rep;
  }
  (void)resPtr;
  return rep;
}

}  // namespace slp
