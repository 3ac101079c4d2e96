"""The determinantal family: I = (a, b, c) from the 2 x 3 binomial matrix

    x^α   y^β   z^γ
    y^β'  z^γ'  x^α'

with a = z^(γ+γ') - x^α' y^β, b = x^(α+α') - y^β' z^γ, c = y^(β+β') - x^α z^γ'.
Powers I^n are resolved by S_(n-2) -> S_(n-1)^2 -> S_n -> R where S_d is the
free module on degree-d monomials in new symbols A, B, C standing for a, b, c.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from ..complexes import ChainComplex, GradedFreeModule, ModuleMap, koszul_complex, verify_exactness
from ..errors import InputError
from ..ringcore import QQ, Field, WeightedRing, kernel
from .core import Ideal, colon_dim


def solve_weights(exponents) -> tuple:
    """Coprime positive weights making a, b, c homogeneous."""
    al, be, ga, al2, be2, ga2 = exponents
    rows = [
        [-al2, -be, ga + ga2],
        [al + al2, -be2, -ga],
        [-al, be + be2, -ga2],
    ]
    ker = kernel(rows, QQ)
    if len(ker) != 1:
        raise InputError(f"homogeneity system has a {len(ker)}-dimensional solution space")
    vec = [Fraction(c) for c in ker[0]]
    if all(c < 0 for c in vec):
        vec = [-c for c in vec]
    if not all(c > 0 for c in vec):
        raise InputError(f"exponents {exponents} admit no positive weights")
    den = reduce(lcm, (c.denominator for c in vec))
    ints = [int(c * den) for c in vec]
    g = reduce(gcd, ints)
    return tuple(c // g for c in ints)


def abc_monomials(d: int) -> list:
    """Exponent triples (i, j, k) of A^i B^j C^k with i + j + k = d, A-heaviest first."""
    if d < 0:
        return []
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


def abc_label(e) -> str:
    parts = []
    for name, k in zip("ABC", e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts) or "1"


def abc_times(e, *others) -> tuple:
    out = list(e)
    for o in others:
        for t in range(3):
            out[t] += o[t]
    return tuple(out)


A_, B_, C_ = (1, 0, 0), (0, 1, 0), (0, 0, 1)


@dataclass(frozen=True)
class DeterminantalSpec:
    exponents: tuple
    field: Field = dc_field(default_factory=lambda: QQ)
    weights: tuple | None = None

    def __post_init__(self):
        ex = tuple(self.exponents)
        if len(ex) != 6 or any((not isinstance(e, int)) or isinstance(e, bool) or e < 1 for e in ex):
            raise InputError(f"exponents must be six positive integers, got {self.exponents!r}")
        object.__setattr__(self, "exponents", ex)
        w = solve_weights(ex) if self.weights is None else tuple(self.weights)
        object.__setattr__(self, "weights", w)
        ring = WeightedRing(w, self.field)
        for p in (self.a, self.b, self.c):
            if not p.is_homogeneous():
                raise InputError(f"weights {w} do not make {p} homogeneous")

    @property
    def ring(self) -> WeightedRing:
        return WeightedRing(self.weights, self.field)

    def _m(self, i, j, k, c=1):
        return self.ring.monomial((i, j, k), c)

    @property
    def a(self):
        al, be, ga, al2, be2, ga2 = self.exponents
        return self._m(0, 0, ga + ga2) - self._m(al2, be, 0)

    @property
    def b(self):
        al, be, ga, al2, be2, ga2 = self.exponents
        return self._m(al + al2, 0, 0) - self._m(0, be2, ga)

    @property
    def c(self):
        al, be, ga, al2, be2, ga2 = self.exponents
        return self._m(0, be + be2, 0) - self._m(al, 0, ga2)

    @property
    def f_coefficients(self) -> tuple:
        """Coefficients of A, B, C in f (first row of the matrix)."""
        al, be, ga, *_ = self.exponents
        return (self._m(al, 0, 0), self._m(0, be, 0), self._m(0, 0, ga))

    @property
    def g_coefficients(self) -> tuple:
        """Coefficients of A, B, C in g (second row)."""
        _, _, _, al2, be2, ga2 = self.exponents
        return (self._m(0, be2, 0), self._m(0, 0, ga2), self._m(al2, 0, 0))

    @property
    def abc(self) -> tuple:
        return (self.a, self.b, self.c)

    @property
    def abc_degrees(self) -> tuple:
        return tuple(p.degree() for p in self.abc)

    @property
    def f_degree(self) -> int:
        return self.f_coefficients[0].degree() + self.abc_degrees[0]

    @property
    def g_degree(self) -> int:
        return self.g_coefficients[0].degree() + self.abc_degrees[0]

    @property
    def params(self) -> tuple:
        """Q = (x^min(α,α'), y^min(β,β'), z^min(γ,γ'))."""
        al, be, ga, al2, be2, ga2 = self.exponents
        return (self._m(min(al, al2), 0, 0), self._m(0, min(be, be2), 0), self._m(0, 0, min(ga, ga2)))

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.abc)

    def abc_degree(self, e) -> int:
        da, db, dc = self.abc_degrees
        return e[0] * da + e[1] * db + e[2] * dc

    def substitute(self, e):
        a, b, c = self.abc
        return (a ** e[0]) * (b ** e[1]) * (c ** e[2])


def S_module(spec: DeterminantalSpec, d: int, shift: int = 0, wrap: str = "{}") -> GradedFreeModule:
    mons = abc_monomials(d)
    return GradedFreeModule(spec.ring, [wrap.format(abc_label(e)) for e in mons], [spec.abc_degree(e) + shift for e in mons])


def rees_resolution(spec: DeterminantalSpec, n: int) -> ChainComplex:
    """S_(n-2) --(-g; f)--> S_(n-1) ⊕ S_(n-1) --(f g)--> S_n --(A,B,C -> a,b,c)--> R."""
    if not isinstance(n, int) or n < 2:
        raise InputError("the power n must be an integer >= 2")
    ring = spec.ring
    fd, gd = spec.f_degree, spec.g_degree
    F3 = S_module(spec, n - 2, fd + gd)
    mons1 = abc_monomials(n - 1)
    F2 = GradedFreeModule(
        ring,
        [f"[{abc_label(e)}]" for e in mons1] + [f"<{abc_label(e)}>" for e in mons1],
        [spec.abc_degree(e) + fd for e in mons1] + [spec.abc_degree(e) + gd for e in mons1],
    )
    F1 = S_module(spec, n)
    F0 = GradedFreeModule(ring, ["1"], [0])
    fc, gc = spec.f_coefficients, spec.g_coefficients
    units = (A_, B_, C_)

    cols3 = []
    for e in abc_monomials(n - 2):
        col = {}
        for u, fcoef, gcoef in zip(units, fc, gc):
            lab = abc_label(abc_times(e, u))
            col[F2.index(f"[{lab}]")] = -gcoef
            col[F2.index(f"<{lab}>")] = fcoef
        cols3.append(col)
    cols2 = []
    for coefs in (fc, gc):
        for e in mons1:
            cols2.append({F1.index(abc_label(abc_times(e, u))): c for u, c in zip(units, coefs)})
    cols1 = [{0: spec.substitute(e)} for e in abc_monomials(n)]
    return ChainComplex([ModuleMap(F1, F0, cols1), ModuleMap(F2, F1, cols2), ModuleMap(F3, F2, cols3)])


def dsequence_checks(spec: DeterminantalSpec, d_bound: int = 30) -> dict:
    """Colon conditions (p, q) : r^2 = (p, q) : r for each choice of r, plus the syzygies."""
    ring = spec.ring
    a, b, c = spec.abc
    names = {"a": a, "b": b, "c": c}
    report = {}
    for r in "abc":
        p, q = [names[s] for s in "abc" if s != r]
        base = Ideal(ring, [p, q])
        one = Ideal(ring, [names[r]])
        two = Ideal(ring, [names[r] ** 2])
        report[f"({','.join(s for s in 'abc' if s != r)}):{r}^2 = :{r}"] = all(
            colon_dim(base, one, d) == colon_dim(base, two, d) for d in range(d_bound + 1)
        )
    fc, gc = spec.f_coefficients, spec.g_coefficients
    report["f-syzygy"] = (fc[0] * a + fc[1] * b + fc[2] * c).is_zero()
    report["g-syzygy"] = (gc[0] * a + gc[1] * b + gc[2] * c).is_zero()
    K = koszul_complex(ring, a, b)
    report["koszul(a,b) exact"] = verify_exactness(K, d_bound).exact
    return report
