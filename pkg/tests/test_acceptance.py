"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line (shown in the pytest terminal summary, or
printed directly when this file is run as a script). Time limits are part of
the criteria and are enforced.
"""

import itertools
import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import acceptance_log
from helpers import random_graded_isomorph, random_ideal
from test_hall import lyndon_count

from semicarnot import presentation
from semicarnot.bch import bch_word, sample_semigroup
from semicarnot.engel import c_coordinate, engel_structure, exp_point, flow, is_nonabnormal, make_engel
from semicarnot.hall import free_nilpotent, hall_closure_subalgebra
from semicarnot.lie import JacobiViolation, LieAlgebra, center, derived, is_trimmed
from semicarnot.linalg import Subspace, nullspace
from semicarnot.semigen import (
    NOT_SEMIGENERATED,
    SEMIGENERATED,
    ConstructionCert,
    Decision,
    HalfSpace,
    check_type_diamond,
    check_type_star,
    decide_halfspace,
    decide_semigenerated,
    saturate_edge,
    verify_certificate,
    verify_star_report,
)
from semicarnot.semigen import decide as decide_module

F = Fraction


class Criterion:
    def __init__(self):
        self.failures: list[str] = []
        self.notes: list[str] = []

    def check(self, ok: bool, what: str) -> None:
        if not ok:
            self.failures.append(what)


@contextmanager
def criterion(number: int, limit: float | None):
    c = Criterion()
    start = time.perf_counter()
    yield c
    secs = time.perf_counter() - start
    if limit is not None and secs >= limit:
        c.failures.append(f"took {secs:.2f} s, limit {limit} s")
    ok = not c.failures
    detail = "; ".join(c.failures[:3] if c.failures else c.notes)
    acceptance_log.record(number, ok, detail, secs)
    print(acceptance_log.line(number))
    assert ok, detail


def _diamond_cert():
    side = presentation.load_sidecar("137A", "diamond")
    return ConstructionCert.from_json(side.get("construction", side))


def test_criterion_01_validation():
    texts = {n: (presentation.CORPUS_DIR / f"{n}.json").read_text() for n in ("137A", "n626", "free23", "free33", "heisenberg")}
    engel_texts = {n: presentation.dumps(make_engel(n)) for n in range(1, 6)}
    with criterion(1, 1.0) as c:
        for name, text in list(texts.items()) + [(f"E{n}", t) for n, t in engel_texts.items()]:
            g = presentation.loads(text)
            c.check(g.is_stratified, f"{name} not stratified")
        br = {(0, 1): {2: 1}, (0, 2): {3: 1}, (1, 2): {4: 1}, (0, 4): {5: 1}}
        try:
            LieAlgebra("forged", (2, 1, 2, 1), ["e1", "e2", "e3", "e4", "e5", "e6"], br)
            c.check(False, "forged table accepted")
        except JacobiViolation as exc:
            c.check(str(exc).startswith("JacobiViolation(e1,e2,e3)"), f"wrong triple: {exc}")
        c.notes.append("10 algebras valid, forged table fails at (e1,e2,e3)")


def test_criterion_02_trimmed():
    expected = {"engel1": True, "engel2": True, "engel3": True, "engel4": True, "137A": True,
                "engel1xengel1": False, "free23": False}
    with criterion(2, 5.0) as c:
        for name, want in expected.items():
            g = presentation.load(name)
            t = bool(is_trimmed(g))
            c.check(t == want, f"{name}: trimmed = {t}")
            c.check(t == (center(g).dim == 1), f"{name}: disagrees with dim of center")
            # condition (b): the top layer lies in every nonzero ideal
            top = g.layer_space(g.step)
            rng = random.Random(f"trim:{name}")
            holds = True
            for _ in range(50):
                i = random_ideal(g, rng)
                holds &= top <= i
            if want:
                c.check(holds, f"{name}: some nonzero ideal misses the top layer")
            else:
                c.check(not holds, f"{name}: no sampled ideal misses the top layer")
        c.notes.append("7 algebras, 50 random homogeneous ideals each")


def test_criterion_03_hall_witt():
    with criterion(3, 10.0) as c:
        for m, s in [(2, 3), (3, 2), (2, 4), (3, 3)]:
            g = free_nilpotent(m, s)
            oracle = [lyndon_count(m, k) for k in range(1, s + 1)]
            c.check(list(g.layer_dims) == oracle, f"free({m},{s}) layers {g.layer_dims} != {oracle}")
            rng = random.Random(f"hall:{m},{s}")
            for _ in range(5):
                lam = [F(rng.randint(-2, 2)) for _ in range(m)]
                if not any(lam):
                    continue
                bd = Subspace.span([tuple(v) + (F(0),) * (g.dim - m) for v in nullspace([lam], m)], g.dim)
                x = g.unit(next(i for i, a in enumerate(lam) if a))
                c.check(derived(g) <= hall_closure_subalgebra(g, x, bd), f"Hall closure misses [g,g] on free({m},{s})")
        c.notes.append("layer dims match necklace counts; ad_X closure of the boundary contains [g,g]")


def test_criterion_04_recognizer():
    rejects = {"n626": 3, "137A": 1, "free23": 1, "heisenberg": 1}
    with criterion(4, 30.0) as c:
        for n in (1, 2, 3):
            g = make_engel(n)
            rng = random.Random(f"iso:{n}")
            for k in range(100):
                s = engel_structure(random_graded_isomorph(g, rng))
                c.check(bool(s) and s.n == n, f"E{n} isomorph {k}: {s}")
        for name, step in rejects.items():
            r = engel_structure(presentation.load(name))
            c.check(not r and r.step == step, f"{name}: {r}")
        c.notes.append("300 isomorphs recognized; 4 rejections at the documented step")


def test_criterion_05_decisions():
    decide_module._SEARCH_CACHE.clear()
    with criterion(5, 60.0) as c:
        for name in ("engel1", "engel2", "engel3", "free23"):
            g = presentation.load(name)
            d = decide_semigenerated(g)
            c.check(d.verdict == NOT_SEMIGENERATED, f"{name}: {d.summary()}")
            c.check(bool(verify_certificate(g, d)), f"{name}: certificate fails")
        g = presentation.load("n626")
        d = decide_semigenerated(g)
        c.check(d.verdict == SEMIGENERATED and d.certificate.kind == "engel_search", f"n626: {d.summary()}")
        c.check(bool(verify_certificate(g, d)), "n626: certificate fails")
        g = presentation.load("137A")
        d = decide_semigenerated(g, _diamond_cert())
        c.check(d.verdict == SEMIGENERATED and d.certificate.kind == "diamond", f"137A: {d.summary()}")
        c.check(bool(verify_certificate(g, d)), "137A: certificate fails")
        g = presentation.load("heisenberg")
        d = decide_semigenerated(g)
        c.check(d.verdict == SEMIGENERATED and d.certificate.kind == "step_two", f"heisenberg: {d.summary()}")
        c.check(bool(verify_certificate(g, d)), "heisenberg: certificate fails")
        c.notes.append("8 verdicts match, all certificates verify")


def test_criterion_06_star_diamond():
    with criterion(6, 10.0) as c:
        g = presentation.load("137A")
        star = check_type_star(g)
        c.check(star.answer == "NO" and verify_star_report(g, star) is None, f"137A star: {star.answer}")
        c.check(check_type_diamond(g, _diamond_cert()).answer == "YES", "137A is not diamond")
        h = presentation.load("n626")
        star = check_type_star(h)
        c.check(star.answer == "NO" and verify_star_report(h, star) is None, f"n626 star: {star.answer}")
        c.check(check_type_diamond(h).answer == "NO", "n626 diamond answer is not NO")
        c.notes.append("137A: diamond, not star; n626: neither; witnesses re-verify")


def test_criterion_07_half_spaces():
    with criterion(7, 5.0) as c:
        e1 = make_engel(1)
        d = decide_halfspace(e1, (F(1), F(0)))
        c.check(d.verdict == NOT_SEMIGENERATED and bool(verify_certificate(e1, d)), f"E1 X*: {d.summary()}")
        approx = saturate_edge(e1, HalfSpace((F(0), F(1))))
        rules = [s.rule for s in approx.trace]
        c.check(rules == ["init", "R2", "R2"], f"E1 Y* trace {rules}")
        d = decide_halfspace(e1, (F(0), F(1)))
        c.check(d.verdict == SEMIGENERATED and bool(verify_certificate(e1, d)), f"E1 Y*: {d.summary()}")
        e2 = make_engel(2)
        count = 0
        for lam in itertools.product(range(-1, 2), repeat=3):
            if lam[1] == 0 and lam[2] == 0:
                continue  # boundary is the abelian hyperplane span{Y1, Y2}
            d = decide_halfspace(e2, tuple(F(x) for x in lam))
            c.check(d.verdict == SEMIGENERATED and bool(verify_certificate(e2, d)), f"E2 {lam}: {d.summary()}")
            count += 1
        c.notes.append(f"E1 verdicts and trace match; {count} E2 half-spaces semigenerating")


def _bad_runs(workers: int = 1) -> list[str]:
    out = []
    for n in (1, 2):
        g = make_engel(n)
        lam = (F(1),) + (F(0),) * n
        for length in range(1, 6):
            run = sample_semigroup(g, lam, length, 2000, seed=2024 + length, workers=workers,
                                   observe=lambda p, n=n: c_coordinate(n, p))
            out.append(run)
    return out


def test_criterion_08_invariant_set():
    with criterion(8, 120.0) as c:
        runs = _bad_runs()
        total = sum(r.count for r in runs)
        bad = sum(1 for r in runs for o in r.observed if o < 0)
        c.check(bad == 0, f"{bad} bad-half-space samples left the invariant set")
        for n in (1, 2):
            g = make_engel(n)
            lam = (F(0), F(1)) + (F(0),) * (n - 1)
            run = sample_semigroup(g, lam, 3, 1000, seed=7, observe=lambda p, n=n: c_coordinate(n, p))
            signs = {(o > 0) - (o < 0) for o in run.observed}
            c.check({-1, 1} <= signs, f"E{n} good half-space signs {signs}")
        rng = random.Random("flow-oracle")
        for k in range(1000):
            n = 1 + k % 3
            g = make_engel(n)
            word = [tuple(F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(g.dim)) for _ in range(rng.randint(1, 5))]
            if exp_point(n, bch_word(g, word)) != flow(n, [(v, 1) for v in word]):
                c.check(False, f"BCH and flow disagree on word {k}")
                break
        c.notes.append(f"{total} bad-half-space samples in C; both signs seen; 1000 flow agreements")


def test_criterion_09_abnormal():
    with criterion(9, 10.0) as c:
        g = make_engel(2)
        c.check(not is_nonabnormal(g, g.vector({"Y1": 1})), "Y1 should be abnormal")
        c.check(not is_nonabnormal(g, g.vector({"X": 1})), "X should be abnormal")
        c.check(is_nonabnormal(g, g.vector({"X": 1, "Y1": 1})), "X + Y1 should be non-abnormal")
        values = [F(k, 2) for k in range(-5, 5)]
        wrong = 0
        for x, y1, y2 in itertools.product(values, repeat=3):
            nu = g.vector({"X": x, "Y1": y1, "Y2": y2})
            expected_abnormal = x == 0 or (y1 == 0 and y2 == 0)
            wrong += is_nonabnormal(g, nu) == expected_abnormal
        c.check(wrong == 0, f"{wrong} grid points disagree")
        c.notes.append("1000 grid directions: abnormal exactly on span{Y1,Y2} and the X line")


def _decision_reports(workers: int) -> str:
    decide_module._SEARCH_CACHE.clear()
    docs = []
    for name in ("engel1", "engel2", "engel3", "free23", "n626", "heisenberg", "free33"):
        docs.append(decide_semigenerated(presentation.load(name), seed=1, workers=workers).dumps())
    docs.append(decide_semigenerated(presentation.load("137A"), _diamond_cert(), workers=workers).dumps())
    return "\n".join(docs)


def test_criterion_10_determinism():
    with criterion(10, None) as c:
        a, b = _decision_reports(1), _decision_reports(4)
        c.check(a == b, "decision reports differ between 1 and 4 workers")
        c.check(a == _decision_reports(1), "decision reports differ between runs")
        sa = [r.dumps() for r in _bad_runs(1)]
        sb = [r.dumps() for r in _bad_runs(4)]
        c.check(sa == sb, "sample reports differ between 1 and 4 workers")
        c.check(all(json.loads(s)["schema"] == 1 for s in sa), "sample report schema")
        c.check(all(Decision.from_json(json.loads(d)).dumps() == d for d in a.split("\n")), "decision JSON not stable")
        c.notes.append("decision and sampling JSON byte-identical for 1 and 4 workers")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
