"""Acceptance criteria 1-9.

Each check prints one ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line.  Run standalone with ``python3 tests/test_acceptance.py`` or through
pytest.
"""

import os
import random
import sys
import time
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

import colonres.complexes as cx
from colonres.complexes import koszul_complex, verify_exactness
from colonres.errors import ColonresError
from colonres.ideals import DeterminantalSpec, Ideal, colon_oracle, epsilon_table, ideal_power, quotient_length, rees_resolution, ring_length
from colonres.ideals.sympow import section5_spec, symbolic_power
from colonres.ringcore import Field, WeightedRing
from colonres.startransform import star_transform
from oracles import monomial_colength, sum_formula


class CriterionFailed(AssertionError):
    pass


def check(cond, msg):
    if not cond:
        raise CriterionFailed(msg)


def len_R_mod_Q(spec):
    """Length of R/Q twice: the package and a brute-force staircase count."""
    ours = ring_length(Ideal(spec.ring, spec.params))
    staircase = monomial_colength([p and next(iter(p.terms)) for p in spec.params])
    check(ours == staircase, f"len R/Q: {ours} vs staircase {staircase}")
    return ours


# -- 1 ---------------------------------------------------------------------

def criterion_1():
    R = WeightedRing((1, 1, 1))
    K = koszul_complex(R, *R.gens)
    K.check_complex()
    for i in (2, 3):
        check((K.map(i - 1) @ K.map(i)).is_zero(), f"d o d != 0 at {i}")
    rep = verify_exactness(K, 12)
    check(rep.exact, f"K(x,y,z) not exact at {rep.first_failure}")

    @settings(max_examples=25, deadline=None, derandomize=True)
    @given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 3), st.integers(0, 3), st.sampled_from([0, 2, 3]))
    def regular(a, b, i, j, p):
        c = max(i + j, 1)
        ring = WeightedRing((1, 1, 1), Field(p))
        X, Y, Z = ring.gens
        tail = X**i * Y**j if i + j else ring.zero()
        Kr = koszul_complex(ring, X**a, Y**b, Z**c + tail)
        Kr.check_complex()
        check(verify_exactness(Kr, a + b + c + 1).exact, f"regular sequence ({a},{b},{c},{i},{j}) not exact")

    regular()
    check(not verify_exactness(koszul_complex(R, R.var(0), R.var(1), R.var(0) * R.var(1)), 6).exact,
          "dependent sequence reported exact")
    return "Koszul d o d = 0, exact to degree 12, 25 regular sequences exact"


# -- 2 ---------------------------------------------------------------------

def criterion_2():
    seen = []
    for ex in [(1, 1, 1, 2, 2, 2), (1, 1, 1, 2, 2, 3)]:
        spec = DeterminantalSpec(ex)
        lq = len_R_mod_Q(spec)
        Q = Ideal(spec.ring, spec.params)
        for n in (2, 3, 4):
            F = rees_resolution(spec, n)
            In = Ideal.image(F.map(1))
            rec = star_transform(F, spec.params, verify="basic")
            new = Ideal.image(rec.output.map(1))
            oracle = colon_oracle(In, Q, max(g.degree() for g in new.gens) + max(spec.weights))
            check(new.equals(oracle), f"{ex} n={n}: Im phi*_1 differs from the oracle colon")
            measured = quotient_length(In, oracle)
            check(measured == comb(n, 2) * lq, f"{ex} n={n}: length {measured}, expected {comb(n, 2)}*{lq}")
            seen.append(measured)
    return f"lengths {seen} = C(n,2) len(R/Q)"


# -- 3 ---------------------------------------------------------------------

N2_TUPLES = [(1, 1, 1, 2, 2, 2), (1, 1, 1, 2, 3, 3), (1, 2, 1, 2, 4, 2), (2, 1, 1, 1, 2, 2), (3, 1, 1, 1, 2, 3)]


def criterion_3():
    for ex in N2_TUPLES:
        spec = DeterminantalSpec(ex)
        lq = len_R_mod_Q(spec)
        Q = Ideal(spec.ring, spec.params)
        final, report, recs = symbolic_power(spec, 2)
        check(report.passes == 1 and recs[0].depth_shortcut, f"{ex}: {report.passes} passes")
        I2 = ideal_power(spec.ideal(), 2)
        oracle = colon_oracle(I2, Q, final.max_degree() + max(spec.weights))
        check(final.contains_ideal(oracle) and oracle.contains_ideal(final), f"{ex}: I^(2) != I^2 : Q")
        check(report.total == lq, f"{ex}: length {report.total} != len(R/Q) = {lq}")
    return f"{len(N2_TUPLES)} tuples: one pass, shortcut, I^(2) = I^2 : Q, length len(R/Q)"


# -- 4, 5 ------------------------------------------------------------------

def _cube(p):
    spec = DeterminantalSpec((1, 1, 1, 2, 2, 2), Field(p))
    return spec, symbolic_power(spec, 3)


def criterion_4():
    spec, (_, report, recs) = _cube(0)
    lq = len_R_mod_Q(spec)
    check(report.steps[1][1] == 3 * lq, f"pass-2 length {report.steps[1][1]}")
    check(report.shortcut_pass == 2, f"shortcut at pass {report.shortcut_pass}")
    check(report.total == 6 * lq == 6, f"total {report.total}")
    r2 = recs[1]
    F2 = recs[0].output.module(2)
    rel = r2.v[(3, "(1,B)")] + r2.v[(2, "(1,C)")] + r2.v[(1, "(2,C)")]
    check(rel == F2.vector({"[2,B]": 2}), f"relation gives {rel.as_strings()}")
    return f"steps {report.steps}, total 6, relation coefficient 2"


def criterion_5():
    spec, (_, report, recs) = _cube(2)
    lq = len_R_mod_Q(spec)
    check(report.passes == 3 and report.shortcut_pass == 3, f"{report.passes} passes")
    check(report.steps[2][1] == lq == 1, f"pass-3 length {report.steps[2][1]}")
    check(report.total == 7 * lq == 7, f"total {report.total}")
    return f"steps {report.steps}, total 7 = 7 len(R/Q)"


# -- 6 ---------------------------------------------------------------------

def criterion_6(n_max=6):
    spec = section5_spec()
    check(spec.weights == (3, 4, 5), f"weights {spec.weights}")
    m = Ideal.maximal(spec.ring)
    totals = []
    for n in range(2, n_max + 1):
        q = n // 2
        final, report, _ = symbolic_power(spec, n)
        check(report.passes == q, f"n={n}: {report.passes} passes, expected {q}")
        for k, l in report.steps:
            check(l == comb(n - 2 * k + 2, 2), f"n={n} pass {k}: length {l}")
        check(report.total == sum_formula(n), f"n={n}: total {report.total}")
        In = ideal_power(spec.ideal(), n)
        oracle = colon_oracle(In, ideal_power(m, q), final.max_degree() + 5)
        check(final.contains_ideal(oracle) and oracle.contains_ideal(final), f"n={n}: final ideal != I^n : m^{q}")
        totals.append(report.total)
    check(totals == [1, 3, 7, 13, 22][: n_max - 1], f"totals {totals}")
    return f"totals {totals}, passes floor(n/2), final ideals match the oracle"


# -- 7 ---------------------------------------------------------------------

def criterion_7():
    rows = epsilon_table(10)
    ratios = [r["ratio"] for r in rows]
    for r in rows:
        n = r["n"]
        check(r["ratio"] == Fraction(6 * sum_formula(n), n**3), f"n={n}: ratio {r['ratio']}")
    # the ratio approaches 1/2 from above
    check(all(a > b for a, b in zip(ratios, ratios[1:])), f"not monotone: {[float(r) for r in ratios]}")
    check(all(r > Fraction(1, 2) for r in ratios), "ratio dropped below 1/2")
    check(abs(ratios[-1] - Fraction(1, 2)) < Fraction(1, 10), f"ratio at 10 is {float(ratios[-1])}")
    return "ratios " + ", ".join(f"{float(r):.3f}" for r in ratios)


# -- 8 ---------------------------------------------------------------------

def random_cases(seed=12345, count=20):
    """Koszul complexes on (x^a, y^b, z^c - x^i y^j) and small determinantal powers."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        if len(out) % 2 == 0:
            p = rng.choice((0, 2, 3))
            R = WeightedRing((1, 1, 1), Field(p))
            x, y, z = R.gens
            a, b = rng.randint(1, 3), rng.randint(1, 3)
            i, j = rng.randint(0, 3), rng.randint(0, 3)
            c = i + j
            if not 1 <= c <= 6:
                continue
            qa, qb, qc = rng.randint(1, a), rng.randint(1, b), rng.randint(1, c)
            if not (i >= qa or j >= qb):
                continue
            out.append((f"koszul a={a} b={b} c={c} i={i} j={j} p={p}", koszul_complex(R, x**a, y**b, z**c - x**i * y**j), (x**qa, y**qb, z**qc)))
        else:
            ex = tuple(rng.randint(1, 2) for _ in range(6))
            spec = DeterminantalSpec(ex, Field(rng.choice((0, 2))))
            if max(spec.abc_degrees) > 6:
                continue
            n = rng.choice((2, 3))
            out.append((f"det {ex} n={n} p={spec.field.characteristic}", rees_resolution(spec, n), spec.params))
    return out


def criterion_8():
    cases = random_cases()
    check(len(cases) == 20, "wrong case count")
    for name, C, Q in cases:
        rec = star_transform(C, Q, verify="colon")
        a = Ideal.image(C.map(1))
        new = Ideal.image(rec.output.map(1))
        oracle = colon_oracle(a, Ideal(C.ring, Q), max(g.degree() for g in new.gens) + 2)
        check(new.equals(oracle), f"{name}: Im phi*_1 != oracle colon")
        for label, emitted in (("cone", rec.cone), ("output", rec.output)):
            rep = verify_exactness(emitted)
            check(rep.exact, f"{name}: {label} not exact at {rep.first_failure}")
    return "20 random inputs agree with the oracle; cones and outputs exact"


# -- 9 ---------------------------------------------------------------------

def _flip(fn, at):
    def flipped(k):
        s = fn(k)
        return -s if k == at else s
    return flipped


MUTATIONS = [
    ("cone sign at position 2", "cone_sign", 2),
    ("cone sign at position 3", "cone_sign", 3),
    ("cone sign at position 4 (top block)", "cone_sign", 4),
    ("Koszul sign of the second term", "koszul_sign", 1),
]
GUARDS = [("1", criterion_1), ("3", criterion_3), ("4", criterion_4), ("6", lambda: criterion_6(4))]


def detected(name, at):
    with pytest.MonkeyPatch.context() as mp:
        mp.setattr(cx, name, _flip(getattr(cx, name), at))
        for label, crit in GUARDS:
            try:
                crit()
            except (AssertionError, ColonresError):
                return label
    return None


def criterion_9():
    caught = []
    for desc, name, at in MUTATIONS:
        by = detected(name, at)
        check(by is not None, f"mutation '{desc}' went undetected")
        caught.append(f"{desc} -> criterion {by}")
    # the unmutated guards still pass
    for label, crit in GUARDS:
        crit()
    return "; ".join(caught)


# -- harness ---------------------------------------------------------------

CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 10)}


def run_criterion(k, emit=print):
    t0 = time.time()
    try:
        detail = CRITERIA[k]()
    except (AssertionError, ColonresError) as exc:
        emit(f"FAIL criterion {k}: {type(exc).__name__}: {exc} ({time.time() - t0:.1f}s)")
        raise
    emit(f"PASS criterion {k}: {detail} ({time.time() - t0:.1f}s)")


@pytest.mark.parametrize("k", range(1, 10))
def test_criterion(k, capsys):
    def emit(line):
        with capsys.disabled():
            print("\n" + line)

    run_criterion(k, emit)


if __name__ == "__main__":
    failures = 0
    for k in CRITERIA:
        try:
            run_criterion(k)
        except (AssertionError, ColonresError):
            failures += 1
    sys.exit(1 if failures else 0)
