import json
import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from colonres.errors import InputError, ScheduleExhausted, VerificationError
from colonres.ideals import (
    INFINITE,
    DeterminantalSpec,
    Ideal,
    LengthReport,
    colon_oracle,
    dsequence_checks,
    epsilon_table,
    ideal_power,
    membership,
    quotient_length,
    rees_resolution,
    ring_length,
    solve_weights,
    symbolic_power,
)
from colonres.ideals.sympow import expected_section5_total, section5_spec
from colonres.ringcore import Field, WeightedRing
from oracles import closed_form_as_printed, groebner_colength, monomial_colength, sum_formula, weights_by_sympy

R = WeightedRing((1, 1, 1))
x, y, z = R.gens


# -- basic ideal operations ------------------------------------------------

def test_ideal_drops_zero_and_duplicates_and_rejects_inhomogeneous():
    I = Ideal(R, [x, 0, x, y])
    assert I.gens == (x, y)
    with pytest.raises(InputError):
        Ideal(R, [x + y**2])


def test_power_generator_count():
    I = section5_spec().ideal()
    assert len(ideal_power(I, 2)) == 6
    assert len(ideal_power(I, 3)) == 10


def test_membership():
    I = Ideal(R, [x**2, y * z])
    assert membership(x**3 + x * y * z, I, 5)
    assert not membership(x * y, I, 5)
    with pytest.raises(InputError):
        membership(x**6, I, 5)


def test_syzygy_relations_live_in_the_determinantal_ideal():
    spec = DeterminantalSpec((1, 1, 2, 2, 2, 4))
    a, b, c = spec.abc
    I = spec.ideal()
    for g in (a, b, c):
        assert I.contains(g * spec.params[0])
    fc = spec.f_coefficients
    assert (fc[0] * a + fc[1] * b + fc[2] * c).is_zero()


def test_colon_small_examples():
    assert colon_oracle(Ideal(R, [x**2, x * y]), Ideal(R, [x]), 4).equals(Ideal(R, [x, y]))
    assert colon_oracle(Ideal(R, [x * y, x * z]), Ideal(R, [y, z]), 4).equals(Ideal(R, [x]))
    m = Ideal.maximal(R)
    assert colon_oracle(Ideal(R, [x**2, y**2, z**2]), m, 5).equals(Ideal(R, [x**2, y**2, z**2, x * y * z]))


def test_iterated_colon_matches_colon_by_product():
    spec = DeterminantalSpec((1, 1, 1, 2, 2, 2))
    a = ideal_power(spec.ideal(), 3)
    Q = Ideal(spec.ring, spec.params)
    d = 12
    once = colon_oracle(a, Q * Q, d)
    twice = colon_oracle(colon_oracle(a, Q, d), Q, d)
    assert once.equals(twice)


def test_quotient_length_detects_non_finite_length():
    assert ring_length(Ideal(R, [x, y])) is INFINITE
    with pytest.raises(VerificationError):
        quotient_length(Ideal(R, [x]), Ideal(R, [y]))


# -- lengths against independent oracles -----------------------------------

weights = st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))


@given(weights, st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_colength_of_pure_powers_is_the_box(w, a, b, c):
    ring = WeightedRing(w)
    X, Y, Z = ring.gens
    assert ring_length(Ideal(ring, [X**a, Y**b, Z**c])) == a * b * c


@settings(max_examples=30)
@given(weights, st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.lists(exps, max_size=4))
def test_monomial_colength_matches_staircase(w, a, b, c, extra):
    ring = WeightedRing(w)
    gens = [(a, 0, 0), (0, b, 0), (0, 0, c)] + [e for e in extra if any(e)]
    I = Ideal(ring, [ring.monomial(e) for e in gens])
    assert ring_length(I) == monomial_colength(gens)


@settings(max_examples=20)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 3), st.integers(0, 3))
def test_binomial_colength_matches_groebner(a, b, i, j):
    c = i + j
    if c == 0:
        c = 1
    f = z**c - x**i * y**j if i + j else z
    gens = [x**a, y**b, f]
    assert ring_length(Ideal(R, gens)) == groebner_colength(gens)


def test_quotient_length_is_generator_order_independent():
    spec = DeterminantalSpec((1, 1, 1, 2, 2, 3))
    I2 = ideal_power(spec.ideal(), 2)
    Q = Ideal(spec.ring, spec.params)
    colon = colon_oracle(I2, Q, I2.max_degree())
    gens = list(I2.gens)
    random.Random(7).shuffle(gens)
    shuffled = Ideal(spec.ring, gens)
    assert quotient_length(I2, colon) == quotient_length(shuffled, colon) == ring_length(Q)


# -- the determinantal family ----------------------------------------------

@pytest.mark.parametrize(
    "ex, w",
    [
        ((1, 1, 1, 2, 2, 2), (1, 1, 1)),
        ((1, 1, 1, 2, 1, 1), (3, 4, 5)),
        ((1, 1, 1, 2, 2, 3), (9, 10, 7)),
        ((2, 1, 1, 1, 2, 2), (7, 8, 5)),
    ],
)
def test_weight_solver_examples(ex, w):
    assert solve_weights(ex) == w == weights_by_sympy(ex)


@given(st.tuples(*(st.integers(1, 4) for _ in range(6))))
def test_weight_solver_matches_sympy(ex):
    w = solve_weights(ex)
    assert w == weights_by_sympy(ex)
    spec = DeterminantalSpec(ex)
    assert all(g.is_homogeneous() for g in spec.abc)


def test_spec_rejects_inconsistent_weights():
    with pytest.raises(InputError):
        DeterminantalSpec((1, 1, 1, 2, 2, 2), weights=(1, 2, 1))
    with pytest.raises(InputError):
        DeterminantalSpec((1, 1, 1, 2, 2))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_power_resolution_ranks_and_image(n):
    spec = DeterminantalSpec((1, 1, 1, 2, 2, 2))
    F = rees_resolution(spec, n)
    assert F.ranks() == (1, comb(n + 2, 2), 2 * comb(n + 1, 2), comb(n, 2))
    assert Ideal.image(F.map(1)).equals(ideal_power(spec.ideal(), n))


def test_power_resolution_exact_at_small_bound():
    from colonres.complexes import verify_exactness

    spec = DeterminantalSpec((1, 1, 1, 2, 1, 1))
    assert verify_exactness(rees_resolution(spec, 3), 40).exact


@pytest.mark.parametrize("ex", [(1, 1, 1, 2, 2, 2), (1, 1, 1, 2, 1, 1), (2, 1, 1, 1, 2, 2)])
def test_dsequence_conditions(ex):
    report = dsequence_checks(DeterminantalSpec(ex), d_bound=14)
    assert all(report.values()), report


# -- iterated transforms ---------------------------------------------------

@pytest.mark.parametrize(
    "ex, p, steps",
    [
        ((1, 1, 1, 2, 2, 2), 0, [3, 3]),
        ((1, 1, 1, 2, 2, 2), 2, [3, 3, 1]),
        ((1, 1, 2, 2, 2, 4), 0, [6, 6]),
        ((1, 1, 2, 2, 2, 4), 2, [6, 6, 2]),
    ],
)
def test_cube_step_lengths(ex, p, steps):
    spec = DeterminantalSpec(ex, Field(p))
    final, report, _ = symbolic_power(spec, 3)
    assert [l for _, l in report.steps] == steps
    # the total is a multiple of len(R/Q), not of the product of the first exponents
    lq = ring_length(Ideal(spec.ring, spec.params))
    assert report.total == (6 if p == 0 else 7) * lq


@pytest.mark.parametrize("ex, n", [((1, 1, 1, 2, 2, 2), 3), ((1, 1, 1, 2, 2, 2), 4)])
def test_symbolic_power_times_Q_to_the_passes_lies_in_the_power(ex, n):
    spec = DeterminantalSpec(ex)
    final, report, _ = symbolic_power(spec, n)
    Q = Ideal(spec.ring, spec.params)
    Qk = ideal_power(Q, report.passes)
    In = ideal_power(spec.ideal(), n)
    assert In.contains_ideal(final * Qk)
    assert final.contains_ideal(In)


def test_exhausted_schedule_keeps_partial_results():
    spec = DeterminantalSpec((1, 1, 1, 2, 2, 2))
    with pytest.raises(ScheduleExhausted) as info:
        symbolic_power(spec, 3, max_passes=1)
    partial = info.value.partial
    assert partial.steps == [(1, 3)] and partial.shortcut_pass is None


def test_symbolic_power_input_validation():
    spec = DeterminantalSpec((1, 1, 1, 2, 2, 2))
    with pytest.raises(InputError):
        symbolic_power(spec, 1)
    with pytest.raises(InputError):
        symbolic_power(spec, 3, profile="magic")
    with pytest.raises(InputError):
        symbolic_power(spec, 3, schedule=[])


def test_exactness_checked_per_pass_when_asked():
    spec = DeterminantalSpec((1, 1, 1, 2, 2, 2))
    _, _, recs = symbolic_power(spec, 3, exactness_bound=8)
    assert all(r.checks["exactness_bound"] == 8 for r in recs)


def test_length_report_json_round_trip_and_validation():
    _, report, _ = symbolic_power(section5_spec(), 4)
    text = json.dumps(report.to_json(), sort_keys=True)
    again = LengthReport.from_json(json.loads(text))
    assert json.dumps(again.to_json(), sort_keys=True) == text
    assert "total = 7" in report.to_text()
    with pytest.raises(VerificationError):
        LengthReport(n=2, steps=[(1, 1)], passes=1, total=2, shortcut_pass=1)
    with pytest.raises(InputError):
        LengthReport.from_json({"schema": "other"})


# -- the special case and its length table ---------------------------------

def test_sum_formula_values():
    assert [expected_section5_total(n) for n in range(2, 11)] == [sum_formula(n) for n in range(2, 11)]
    assert [sum_formula(n) for n in range(2, 11)] == [1, 3, 7, 13, 22, 34, 50, 70, 95]


@pytest.mark.parametrize("n", range(2, 12))
def test_printed_closed_form_is_off_by_an_eighth(n):
    diff = closed_form_as_printed(n) - sum_formula(n)
    assert diff == (Fraction(-1, 8) if n % 2 == 0 else Fraction(1, 8))


def test_epsilon_rows_small():
    rows = epsilon_table(6)
    assert [r["length"] for r in rows] == [1, 3, 7, 13, 22]
    assert [r["q"] for r in rows] == [1, 1, 2, 2, 3]
    assert rows[0]["ratio"] == Fraction(3, 4)
    with pytest.raises(InputError):
        epsilon_table(1)
