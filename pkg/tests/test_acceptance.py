"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import time

import numpy as np
import pytest

from weilrep.characters import find_character
from weilrep.cyclotomic import Cyclotomic
from weilrep.data import (canonical_data, compare_R_W, lemma_checks, scaled_f, trivial_alpha,
                          verify_axioms)
from weilrep.groups import (bruhat_generators, closure, enumerate_isometries, index_certificate,
                            notlocal_counterexample, reflection_T, weil_closure)
from weilrep.heisenberg import (SchrodingerModel, chi_beta, generating_set, h_mul, heisenberg_elements,
                                verify_schrodinger)
from weilrep.hermitian import ColumnSpace, HermitianSpace
from weilrep.rings import matrix_ring, ring
from weilrep.suites import character_invariance
from weilrep.weil import (Transversal, WeilConfig, classical_gauss_suite, gauss_sum, homomorphism_check,
                          mu, mu_independence, theorem_suite_mu, verify_intertwining, weil_bruhat,
                          weil_general, weil_relations)

from conftest import space


def line(tag, ok, detail=""):
    print(f"\n{'PASS' if ok else 'FAIL'}  {tag}  {detail}".rstrip())
    return ok


class Report:
    """Collects sub-verdicts; a crash in one part is recorded as that part's failure."""

    def __init__(self, tag):
        self.tag, self.parts, self.t0 = tag, [], time.perf_counter()

    def part(self, name, fn):
        try:
            ok, detail = fn()
        except Exception as exc:  # recorded, then the criterion fails
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        self.parts.append((name, bool(ok)))
        line(f"{self.tag} / {name}", ok, detail)
        return ok

    @property
    def seconds(self):
        return time.perf_counter() - self.t0

    def finish(self, budget=None):
        ok = all(p for _, p in self.parts)
        timing = budget is None or self.seconds < budget
        line(self.tag, ok and timing, f"{self.seconds:.1f}s" + (f" (budget {budget}s)" if budget else ""))
        failed = [n for n, p in self.parts if not p]
        assert not failed, f"failed parts: {failed}"
        assert timing, f"took {self.seconds:.1f}s, budget {budget}s"


def skew_cfg(sp):
    return WeilConfig(sp, find_character(sp.ring, sp.eps))


def bruhat_params(sp):
    return ([("omega", None), ("omega_inv", None)] + [("h", t) for t in sp.units]
            + [("u", r) for r in sp.eps_sym])


SEVEN = [("F3 m=1 eps=-1", ("prime_field", 3, 1, None, 1, -1)),
         ("F9 m=1 eps=-1", ("quadratic_frobenius", 3, 1, None, 1, -1)),
         ("F3 m=2 eps=+1", ("prime_field", 3, 1, None, 2, 1))]


def test_criterion_01_classical_gauss_sums():
    r = Report("criterion 1: classical Gauss sums")
    for p in (3, 5, 7, 13, 17):
        def check(p=p):
            s = classical_gauss_suite(p)
            sq = s["G1"] * s["G1"] == Cyclotomic.from_int(p, (-1) ** ((p - 1) // 2) * p)
            gaus2 = all(row["gaus2"] for row in s["rows"])
            return sq and s["embedding_ok"] and gaus2, f"G1 ~ {s['G1_embedded']:.6f}"
        r.part(f"p={p}", check)
    r.finish(budget=1)


def test_criterion_02_symmetric_gauss_sums_F3():
    r = Report("criterion 2: symmetric Gauss sums over F3")
    for m in (1, 2):
        def check(m=m):
            rep = theorem_suite_mu(skew_cfg(space("prime_field", 3, m=m)))
            return rep["pass_main"] and rep["qualifying"] > 0, f"{rep['qualifying']} symmetric units"
        r.part(f"m={m}", check)
    r.finish(budget=5)


def test_criterion_03_skew_gauss_sums_F3():
    r = Report("criterion 3: skew Gauss sums over F3, eps=+1, m=2")

    def check():
        sp = space("prime_field", 3, m=2, eps=1)
        beta = find_character(sp.ring, 1)
        I = Transversal(sp.X)
        Ts = sp.sym_units
        bad = [T for T in Ts if gauss_sum(T, beta) != Cyclotomic.from_int(beta.n, 3 * mu(T, I))]
        return len(Ts) > 0 and not bad, f"{len(Ts)} skew units"
    r.part("sum beta(b* T b) = 3 mu(T)", check)
    r.finish(budget=1)


def test_criterion_04_mu_adjoint():
    r = Report("criterion 4: mu(T) = mu(T*)")

    def gl2_f3():
        A = matrix_ring(ring("prime_field", 3), 2)
        I = Transversal(ColumnSpace(A.base, 2))
        U = A.units()
        return len(U) == 48 and all(mu(T, I) == mu(A.star(T), I) for T in U), f"{len(U)} elements"

    def gl2_z9():
        A = matrix_ring(ring("integers_mod_pk", 3, 2), 2)
        I = Transversal(ColumnSpace(A.base, 2))
        rng = np.random.default_rng(0)
        Ts = [A.random_unit(rng) for _ in range(1000)]
        return all(mu(T, I) == mu(A.star(T), I) for T in Ts), "1000 samples"
    r.part("GL(2,F3)", gl2_f3)
    r.part("GL(2,Z/9)", gl2_z9)
    r.finish(budget=5)


def test_criterion_05_mu_well_defined():
    r = Report("criterion 5: mu independent of transversal")
    for name, cfg, m in [("GL(2,F3)", ("prime_field", 3), 2), ("GL(1,F9)", ("quadratic_frobenius", 3), 1)]:
        def check(cfg=cfg, m=m):
            rep = mu_independence(matrix_ring(ring(*cfg), m))
            return rep["pass"] and rep["transversals_valid"], f"{rep['checked']} elements"
        r.part(name, check)
    r.finish()


def test_criterion_06_schrodinger_F3():
    r = Report("criterion 6: Schrodinger certificates, F3 m=1")
    sp = space("prime_field", 3)
    beta = find_character(sp.ring, -1)
    S = SchrodingerModel(sp, beta)

    def mult():
        H = heisenberg_elements(sp)
        ops = [S(x) for x in H]
        where = {x: i for i, x in enumerate(H)}
        ok = all(ops[i] @ ops[j] == ops[where[h_mul(sp, H[i], H[j])]] for i in range(27) for j in range(27))
        return ok and verify_schrodinger(sp, beta)["multiplicative"], "27^2 pairs"

    ch = chi_beta(sp, beta)
    r.part("multiplicative", mult)
    r.part("sum |chi|^2 = 27", lambda: (ch["norm"] == Cyclotomic.from_int(3, 27), str(ch["norm"].rational())))
    r.part("degree 3", lambda: (ch["degree"] == Cyclotomic.from_int(3, 3), ""))
    r.part("Bruhat invariance", lambda: (character_invariance(sp, ch)["pass"], ""))
    r.finish()


def test_criterion_07_intertwining():
    r = Report("criterion 7: intertwining on Bruhat generators")
    for name, cfg in SEVEN:
        def check(cfg=cfg):
            sp = space(*cfg)
            wc = skew_cfg(sp)
            bad, checked = 0, 0
            for kind, p in bruhat_params(sp):
                rep = verify_intertwining(wc, sp.bruhat(kind, p).matrix, weil_bruhat(wc, (kind, p)))
                bad += not (rep["pass"] and rep["mode"] == "exhaustive")
                checked += 1
            return bad == 0, f"{checked} generators, all of H"
        r.part(name, check)
    r.finish()


def test_criterion_08_relations():
    r = Report("criterion 8: relations R1-R6 for W")
    for name, cfg in SEVEN:
        def check(cfg=cfg):
            rep = weil_relations(skew_cfg(space(*cfg)), exhaustive_limit=10 ** 9)
            ok = all(v["pass"] and v["mode"] == "exhaustive" for v in rep.values())
            return ok, ", ".join(f"{k}:{v['checked']}" for k, v in rep.items())
        r.part(name, check)
    r.finish(budget=60)


def _ssl_homomorphism(sp):
    wc = skew_cfg(sp)
    C = closure(sp)
    ops = [weil_general(wc, X) for X in C.elements]
    rep = homomorphism_check(sp.A2, C.elements, ops)
    return C, wc, rep


def test_criterion_09_full_homomorphism():
    r = Report("criterion 9: W(g1 g2) = W(g1) W(g2) via weil_general")

    def sp2():
        sp = space("prime_field", 3)
        SL = enumerate_isometries(sp)
        wc = skew_cfg(sp)
        rep = homomorphism_check(sp.A2, SL, [weil_general(wc, X) for X in SL])
        return rep["pass"] and len(SL) == 24, f"{rep['checked']} pairs"

    def o4_ssl():
        C, _, rep = _ssl_homomorphism(space("prime_field", 3, m=2, eps=1))
        return rep["pass"] and C.order == 576, f"{rep['checked']} pairs"

    def o4_full():
        sp = space("prime_field", 3, m=2, eps=1)
        wc = skew_cfg(sp)
        SL = enumerate_isometries(sp)
        rep = homomorphism_check(sp.A2, SL, [weil_general(wc, X) for X in SL])
        return rep["pass"], f"{len(SL)} elements, failures={rep['failures']}"

    r.part("Sp2(F3), 24^2", sp2)
    r.part("SSL of O4(F3), 576^2", o4_ssl)
    r.part("O4(F3), 1152^2 (reported)", o4_full)
    r.finish(budget=600)


def test_criterion_10_bfs_well_defined():
    r = Report("criterion 10: BFS rediscovery edges agree")
    for name, cfg in [("Sp2(F3)", ("prime_field", 3, 1, None, 1, -1)),
                      ("SSL(O4(F3))", ("prime_field", 3, 1, None, 2, 1))]:
        def check(cfg=cfg):
            sp = space(*cfg)
            wc = skew_cfg(sp)
            gens = bruhat_generators(sp)
            C, _, state = weil_closure(sp, [weil_bruhat(wc, (g.kind, g.param)) for g in gens], generators=gens)
            return state["conflicts"] == 0 and state["checked"] > 0, \
                f"order {C.order}, {state['checked']} rediscoveries, {state['conflicts']} conflicts"
        r.part(name, check)
    r.finish()


def test_criterion_11_index_certificates():
    r = Report("criterion 11: index certificates")

    def sp2():
        sp = space("prime_field", 3)
        rep = index_certificate(sp)
        return rep["index"] == 1 and rep["ssl_order"] == 24 == len(enumerate_isometries(sp)), ""

    def gu2():
        sp = space("quadratic_frobenius", 3, eps=1)
        rep = index_certificate(sp)
        return rep["index"] == 1 and rep["ssl_order"] == 96 == rep["sl_order"], ""

    def o4():
        sp = space("prime_field", 3, m=2, eps=1)
        rep = index_certificate(sp)
        full = len(enumerate_isometries(sp))
        ok = (rep["ssl_order"] == 576 and rep["T_in_ssl"] is False and rep["ssl_T_order"] == 1152 == full
              and rep["T_normalises_ssl"] and rep["index"] == 2)
        return ok, f"|SSL|={rep['ssl_order']}, |<SSL,T>|={rep['ssl_T_order']}, |SL|={full}"
    r.part("Sp2(F3)", sp2)
    r.part("GU2(F9)", gu2)
    r.part("O4(F3)", o4)
    r.finish(budget=120)


def test_criterion_12_notlocal():
    r = Report("criterion 12: non-local counterexample")

    def check():
        rep = notlocal_counterexample()
        ok = (rep["eqelements"] and rep["det_X"] == -1 and rep["generator_dets"] == [1]
              and rep["eps_sym_size"] == 3 and rep["eps_sym_scalar"] and rep["unit_a_plus_rc"] == 0)
        return ok, f"det X = {rep['det_X']}"
    r.part("M(2,F3) adjugate", check)
    r.finish(budget=1)


AXIOMS = ("chi1", "chi2", "chi3", "gamma1", "gamma2", "gamma3", "cez", "c")


def test_criterion_13_data_axioms():
    r = Report("criterion 13: data axioms and R = W")
    for name, cfg in [("F3 m=1 eps=-1", ("prime_field", 3, 1, None, 1, -1)),
                      ("F3 m=2 eps=+1", ("prime_field", 3, 1, None, 2, 1))]:
        def axioms(cfg=cfg):
            d = canonical_data(space(*cfg))
            rep = verify_axioms(d)
            ok = all(rep[a]["pass"] and rep[a]["mode"] == "exhaustive" for a in AXIOMS)
            return ok and lemma_checks(d)["pass"], ""

        def cmp(cfg=cfg):
            rep = compare_R_W(space(*cfg))
            return rep["pass"] and rep["mode"] == "exhaustive", f"{rep['checked']} generators"
        r.part(f"{name} axioms+lemmas", axioms)
        r.part(f"{name} compare", cmp)
    r.finish(budget=30)


def test_criterion_14_stretch_skew_quotient():
    r = Report("criterion 14: F9[t;Frob]/(t^3), dim X = 729")
    sp = space("skew_poly_quotient", 3, 1, 3, 1, -1)
    wc = skew_cfg(sp)

    def rel():
        rep = weil_relations(wc, exhaustive_limit=1000, samples=1000, seed=0)
        return all(v["pass"] for v in rep.values()), ", ".join(f"{k}:{v['mode']}" for k, v in rep.items())

    def inter():
        rng = np.random.default_rng(0)
        xs = generating_set(sp)
        params = [("omega", None), ("omega_inv", None)]
        params += [("h", sp.units[i]) for i in rng.integers(len(sp.units), size=20)]
        params += [("u", r_) for r_ in sp.eps_sym]
        bad = 0
        for kind, p in params:
            rep = verify_intertwining(wc, sp.bruhat(kind, p).matrix, weil_bruhat(wc, (kind, p)), elements=xs)
            bad += not rep["pass"]
        return bad == 0, f"{len(params)} generators x {len(xs)} Heisenberg generators"
    assert wc.d == 729
    r.part("relations", rel)
    r.part("intertwining", inter)
    r.finish(budget=600)


def test_criterion_15_mutation_sensitivity():
    r = Report("criterion 15: mutation sensitivity")
    sp = space("prime_field", 3)
    d = canonical_data(sp)
    wc = skew_cfg(sp)

    def f_mut():
        rep = verify_axioms(scaled_f(d, Cyclotomic.root(3, 1)))
        return not rep["cez"]["pass"] and not rep["c"]["pass"], ""

    def op_mut():
        W = weil_bruhat(wc, ("omega", None)).perturbed(1, 2)
        return not verify_intertwining(wc, sp.omega().matrix, W)["pass"], ""

    def alpha_mut():
        return not compare_R_W(sp, data=trivial_alpha(d))["pass"], ""
    r.part("perturbed f", f_mut)
    r.part("perturbed operator entry", op_mut)
    r.part("trivialised alpha", alpha_mut)
    r.finish()


# --- supplements: valid configurations standing in for the O4 Weil parts ------------

def test_supplement_hermitian_even_configs():
    """eps = +1 with a primitive character: F9 and the ramified quotient, m = 2."""
    r = Report("supplement: hermitian m=2 Weil checks")
    for name, cfg in [("F9", ("quadratic_frobenius", 3, 1, None, 2, 1)),
                      ("ramified p=3", ("ramified_even", 3, 1, None, 2, 1))]:
        sp = space(*cfg)

        def skew_sums(sp=sp):
            rep = theorem_suite_mu(skew_cfg(sp))
            return rep["pass"], f"{rep['qualifying']} skew units, mu(-Q)={rep['mu(-Q)']}, mu(-1)={rep['mu(-1)']}"

        def data(sp=sp):
            return verify_axioms(canonical_data(sp))["pass"] and compare_R_W(sp)["pass"], ""

        def rel(sp=sp):
            return all(v["pass"] for v in weil_relations(skew_cfg(sp)).values()), ""
        r.part(f"{name} skew Gauss sums", skew_sums)
        r.part(f"{name} data+compare", data)
        r.part(f"{name} relations", rel)
    r.finish()


def test_supplement_full_homomorphism_hermitian_rank_one():
    """Whole-group homomorphism for eps = +1, m = 1 through the Schrodinger model."""
    r = Report("supplement: eps=+1 m=1 full homomorphism")
    for name, cfg in [("GU2(F9)", ("quadratic_frobenius", 3)), ("ramified p=3", ("ramified_even", 3, 1))]:
        def check(cfg=cfg):
            sp = HermitianSpace(ring(*cfg), 1, 1)
            model = SchrodingerModel(sp, find_character(sp.ring, 1))
            G = enumerate_isometries(sp)
            rep = homomorphism_check(sp.A2, G, [weil_general(model, X) for X in G])
            return rep["pass"], f"{len(G)} elements, {rep['checked']} pairs"
        r.part(name, check)
    r.finish()
