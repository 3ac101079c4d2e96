"""Iterated *-transforms: I^n : Q^k for k = 1, 2, ... until the depth shortcut fires."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

from .. import __version__
from ..errors import InputError, ScheduleExhausted, VerificationError
from ..ringcore import QQ, Field
from ..startransform import predict_colon_length, star_transform, verify_colon, verify_record_exactness
from .core import Ideal, quotient_length
from .determinantal import DeterminantalSpec, abc_label, abc_monomials, abc_times, rees_resolution

SECTION5_EXPONENTS = (1, 1, 1, 2, 1, 1)
REPORT_SCHEMA = "colonres.length-report/1"


def section5_spec(field: Field = QQ) -> DeterminantalSpec:
    """Rows (x, y, z) and (y, z, x^2); weights come out as (3, 4, 5)."""
    return DeterminantalSpec(SECTION5_EXPONENTS, field)


@dataclass
class LengthReport:
    n: int
    steps: list
    passes: int
    total: int
    shortcut_pass: int | None
    exponents: tuple = ()
    weights: tuple = ()
    characteristic: int = 0
    generators: list = dc_field(default_factory=list)
    config: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if any((not isinstance(l, int)) or l < 0 for _, l in self.steps):
            raise VerificationError(f"step lengths must be finite nonnegative integers: {self.steps}")
        if self.total != sum(l for _, l in self.steps):
            raise VerificationError("total differs from the sum of the step lengths")

    def to_json(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "version": __version__,
            "n": self.n,
            "exponents": list(self.exponents),
            "weights": list(self.weights),
            "characteristic": self.characteristic,
            "steps": [[k, l] for k, l in self.steps],
            "passes": self.passes,
            "total": self.total,
            "shortcut_pass": self.shortcut_pass,
            "generators": list(self.generators),
            "config": dict(self.config),
        }

    @classmethod
    def from_json(cls, data: dict) -> "LengthReport":
        if data.get("schema") != REPORT_SCHEMA:
            raise InputError(f"unsupported report schema {data.get('schema')!r}")
        return cls(
            n=data["n"],
            steps=[tuple(s) for s in data["steps"]],
            passes=data["passes"],
            total=data["total"],
            shortcut_pass=data["shortcut_pass"],
            exponents=tuple(data["exponents"]),
            weights=tuple(data["weights"]),
            characteristic=data["characteristic"],
            generators=list(data["generators"]),
            config=dict(data.get("config", {})),
        )

    def to_text(self) -> str:
        lines = [
            f"n = {self.n}, exponents = {self.exponents}, weights = {self.weights}, char = {self.characteristic}",
            f"{'pass':>4}  {'length':>6}",
        ]
        lines += [f"{k:>4}  {l:>6}" for k, l in self.steps]
        lines.append(f"total = {self.total}, passes = {self.passes}, shortcut at pass {self.shortcut_pass}")
        return "\n".join(lines)


def _L(e) -> str:
    return abc_label(e)


_A, _B, _C = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def _section5_hints(ring, top_degree: int) -> tuple:
    """Hints for (3, A^2 N) and the relabelling (3, A^2 N) -> N, N in S_(top_degree - 2)."""
    x = ring.var(0)
    hints, relabel = {}, {}
    for N in abc_monomials(top_degree - 2):
        key = (3, _L(abc_times(N, _A, _A)))
        hints[key] = {
            (2, _L(abc_times(N, _A, _B))): ring.one(),
            (1, _L(abc_times(N, _B, _B))): -ring.one(),
            (1, _L(abc_times(N, _A, _C))): ring.one(),
            (2, _L(abc_times(N, _C, _C))): -x,
            (3, _L(abc_times(N, _B, _C))): x,
        }
        relabel[key] = _L(N)
    return hints, relabel


def _section5_override(ring, top_degree: int) -> dict:
    """The decomposition of phi_3(w_N) used from the second pass on."""
    x = ring.var(0)
    one = ring.one()
    out = {}
    for N in abc_monomials(top_degree):
        def br(i, *us):
            return f"[{i},{_L(abc_times(N, *us))}]"

        out[_L(N)] = {
            1: {br(2, _A, _A): -one, br(3, _A, _B): -one, br(3, _C, _C): x, br(2, _B, _C): x},
            2: {br(1, _A, _A): one, br(3, _B, _B): -one, br(3, _A, _C): one, br(1, _B, _C): -x},
            3: {br(1, _A, _B): one, br(2, _B, _B): one, br(2, _A, _C): -one, br(1, _C, _C): -x},
        }
    return out


SECTION4_N3_PREFER = [(1, "A"), (2, "A"), (3, "A"), (2, "B"), (3, "B"), (3, "C")]


def _resolve_profile(spec: DeterminantalSpec, profile: str) -> str:
    if profile == "auto":
        return "section5" if spec.exponents == SECTION5_EXPONENTS else "section4"
    if profile not in ("section4", "section5", "plain"):
        raise InputError(f"unknown profile {profile!r}")
    return profile


def symbolic_power(
    spec: DeterminantalSpec,
    n: int,
    schedule=None,
    *,
    profile: str = "auto",
    check_oracle: bool = True,
    max_passes: int | None = None,
    exactness_bound: int | None = None,
):
    """Returns (I^(n), LengthReport, records).

    ``schedule`` is a list of parameter triples; when omitted the default
    triple (Q for the determinantal family, (x, y, z) for the special case)
    is repeated up to ``max_passes`` times.  Every pass is checked against
    the predicted colon length; with ``check_oracle`` also against the
    brute-force colon.  ``exactness_bound`` additionally checks exactness of
    each output complex up to that degree.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise InputError("the power n must be an integer >= 2")
    profile = _resolve_profile(spec, profile)
    ring = spec.ring
    if schedule is None:
        default = tuple(ring.gens) if profile == "section5" else spec.params
        cap = max_passes if max_passes is not None else n + 2
        schedule = [default] * cap
    schedule = [tuple(ring(p) for p in triple) for triple in schedule]
    if not schedule:
        raise InputError("empty parameter schedule")

    current = rees_resolution(spec, n)
    prev_ideal = Ideal.image(current.map(1))
    records, steps = [], []
    shortcut_pass = None
    for k, params in enumerate(schedule, start=1):
        kwargs = {}
        if profile == "section5":
            top = n - 2 * k
            kwargs["hints"], kwargs["relabel"] = _section5_hints(ring, top)
            if k >= 2:
                kwargs["v_override"] = _section5_override(ring, top)
        elif profile == "section4" and n == 3 and k == 1:
            kwargs["prefer"] = SECTION4_N3_PREFER
        rec = star_transform(current, params, verify="basic", **kwargs)
        if check_oracle:
            length = verify_colon(rec)
        else:
            new_ideal = Ideal.image(rec.output.map(1))
            length = quotient_length(prev_ideal, new_ideal)
            predicted = predict_colon_length(rec.input)
            if length != predicted:
                raise VerificationError(f"pass {k}: length {length}, expected {predicted}")
            rec.checks.update({"measured_length": length, "predicted_length": predicted})
        if exactness_bound is not None:
            verify_record_exactness(rec, exactness_bound)
        records.append(rec)
        steps.append((k, length))
        current = rec.output
        prev_ideal = Ideal.image(current.map(1))
        if rec.depth_shortcut or current.module(3).rank == 0:
            shortcut_pass = k
            break
    final = Ideal.image(current.map(1))
    report = LengthReport(
        n=n,
        steps=steps,
        passes=len(records),
        total=sum(l for _, l in steps),
        shortcut_pass=shortcut_pass,
        exponents=spec.exponents,
        weights=spec.weights,
        characteristic=spec.field.characteristic,
        generators=final.to_strings(),
        config={"profile": profile, "schedule": [[str(p) for p in t] for t in schedule[: len(records)]]},
    )
    if shortcut_pass is None:
        raise ScheduleExhausted(f"schedule of {len(schedule)} passes ended before the depth shortcut", report)
    return final, report, records


def expected_section5_total(n: int) -> int:
    return sum(comb(n - 2 * k + 2, 2) for k in range(1, n // 2 + 1))


def _epsilon_row(args):
    n, characteristic, check_oracle = args
    spec = section5_spec(Field(characteristic))
    _, report, _ = symbolic_power(spec, n, check_oracle=check_oracle)
    q = n // 2
    if report.passes != q:
        raise VerificationError(f"n = {n}: {report.passes} passes, expected {q}")
    for k, l in report.steps:
        if l != comb(n - 2 * k + 2, 2):
            raise VerificationError(f"n = {n}: pass {k} has length {l}, expected {comb(n - 2 * k + 2, 2)}")
    if report.total != expected_section5_total(n):
        raise VerificationError(f"n = {n}: total {report.total}, expected {expected_section5_total(n)}")
    return {"n": n, "q": q, "length": report.total, "ratio": Fraction(6 * report.total, n**3)}


def epsilon_table(n_max: int, *, characteristic: int = 0, check_oracle: bool = False, workers: int | None = None) -> list:
    """Rows (n, q, length of I^(n)/I^n, 6 length / n^3) for the special case, n = 2..n_max."""
    if not isinstance(n_max, int) or n_max < 2:
        raise InputError("n_max must be an integer >= 2")
    jobs = [(n, characteristic, check_oracle) for n in range(2, n_max + 1)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_epsilon_row, jobs))
    return [_epsilon_row(j) for j in jobs]
