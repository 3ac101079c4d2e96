"""Homogeneous ideals of k[x, y, z]: membership, powers, colons, lengths.

Everything is decided one weighted degree at a time: the degree-d piece of
an ideal is the span of ``m * g`` over generators g and monomials m of
degree ``d - deg g``.  ``colon_oracle`` is deliberately brute force and
shares nothing with the *-transform beyond this linear algebra.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from ..complexes import GradedFreeModule, ModuleMap
from ..errors import InputError, VerificationError
from ..ringcore import Echelon, Polynomial, WeightedRing


class _Infinite:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "infinite"

    __str__ = __repr__


INFINITE = _Infinite()


def _coords(p: Polynomial) -> dict:
    return {(0, e): c for e, c in p.terms.items()}


class Ideal:
    __slots__ = ("ring", "gens", "_map")

    def __init__(self, ring: WeightedRing, gens=()):
        seen, clean = set(), []
        for g in gens:
            g = ring(g)
            if not g:
                continue
            if not g.is_homogeneous():
                raise InputError(f"generator {g} is not homogeneous")
            if g not in seen:
                seen.add(g)
                clean.append(g)
        self.ring = ring
        self.gens = tuple(clean)
        self._map = None

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one()])

    @classmethod
    def maximal(cls, ring):
        return cls(ring, ring.gens)

    @classmethod
    def image(cls, m: ModuleMap) -> "Ideal":
        """Ideal generated by the entries of a map into R."""
        if m.target.rank != 1:
            raise InputError("map does not land in R")
        return cls(m.source.ring, [c[0] for c in m.cols if 0 in c])

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    def __len__(self):
        return len(self.gens)

    @property
    def map(self) -> ModuleMap:
        if self._map is None:
            degs = [g.degree() for g in self.gens]
            src = GradedFreeModule(self.ring, [f"g{i}" for i in range(len(self.gens))], degs)
            tgt = GradedFreeModule(self.ring, ["1"], [0])
            self._map = ModuleMap(src, tgt, [{0: g} for g in self.gens], check=False)
        return self._map

    def max_degree(self) -> int:
        return max((g.degree() for g in self.gens), default=0)

    def echelon(self, d: int) -> Echelon:
        return self.map.echelon(d)

    def dim(self, d: int) -> int:
        return self.map.rank_at(d) if self.gens else 0

    def contains(self, f, d_bound: int | None = None) -> bool:
        f = self.ring(f)
        if not f:
            return True
        if not f.is_homogeneous():
            raise InputError(f"{f} is not homogeneous")
        d = f.degree()
        if d_bound is not None and d > d_bound:
            raise InputError(f"degree {d} exceeds the bound {d_bound}")
        if not self.gens:
            return False
        return self.echelon(d).contains(_coords(f))

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [g * h for g in self.gens for h in other.gens])

    def minimal_generators(self) -> "Ideal":
        """Drop generators lying in the ideal of the others (degree-ascending)."""
        gens = sorted(self.gens, key=lambda g: (g.degree(), str(g)))
        kept: list = []
        for g in gens:
            if not Ideal(self.ring, kept).contains(g):
                kept.append(g)
        return Ideal(self.ring, kept)

    def to_strings(self) -> list:
        return [str(g) for g in self.gens]


def ideal_power(I: Ideal, n: int) -> Ideal:
    if n < 1:
        raise InputError("power must be at least 1")
    out = []
    for combo in combinations_with_replacement(range(len(I.gens)), n):
        p = I.ring.one()
        for k in combo:
            p = p * I.gens[k]
        out.append(p)
    return Ideal(I.ring, out)


def membership(f, I: Ideal, d_bound: int) -> bool:
    return I.contains(f, d_bound)


def colon_piece(a: Ideal, J: Ideal, d: int) -> list:
    """Basis of {f in R_d : f j in a for all generators j of J}."""
    ring = a.ring
    monos = ring.monomials(d)
    if not monos:
        return []
    ech = Echelon(ring.field, track=True)
    kernel = []
    for e in monos:
        vec = {}
        for t, j in enumerate(J.gens):
            prod = j.mul_term(e)
            if a.gens:
                rem, _ = a.echelon(d + j.degree()).reduce(_coords(prod))
            else:
                rem = _coords(prod)
            for k, c in rem.items():
                vec[(t, k)] = c
        rel = ech.insert(vec, e)
        if rel is not None:
            kernel.append(Polynomial(ring, rel))
    return kernel


def colon_oracle(a: Ideal, J: Ideal, d_max: int) -> Ideal:
    """Minimal homogeneous generators of a : J in degrees up to d_max."""
    ring = a.ring
    gens: list = []
    for d in range(0, d_max + 1):
        piece = colon_piece(a, J, d)
        if not piece:
            continue
        span = Echelon(ring.field)
        for g in gens:
            for e in ring.monomials(d - g.degree()):
                span.insert(_coords(g.mul_term(e)))
        for f in piece:
            c = _coords(f)
            if not span.contains(c):
                span.insert(c)
                gens.append(f)
    return Ideal(ring, gens)


def colon_dim(a: Ideal, J: Ideal, d: int) -> int:
    return len(colon_piece(a, J, d))


def quotient_length(inner: Ideal, outer: Ideal, degree_cap: int | None = None):
    """Length of outer/inner as the sum of graded dimension differences.

    Stops once the difference vanishes on a window of consecutive degrees,
    all above the top generator degree of ``outer`` and at least as long as
    the largest variable weight.  Then every later piece of ``outer`` is
    ``x outer + y outer + z outer`` of pieces already inside ``inner``, so
    nothing is missed.  Returns INFINITE if the window is not reached.
    """
    ring = inner.ring
    for g in inner.gens:
        if not outer.contains(g):
            raise VerificationError(f"inner generator {g} is not in the outer ideal")
    top = outer.max_degree()
    window = max(3, max(ring.weights))
    if degree_cap is None:
        degree_cap = 3 * max(top, inner.max_degree()) + 3 * window + 10
    total, run = 0, 0
    for d in range(0, degree_cap + 1):
        diff = outer.dim(d) - inner.dim(d)
        total += diff
        if d > top and diff == 0:
            run += 1
            if run >= window:
                return total
        else:
            run = 0
    return INFINITE


def ring_length(Q: Ideal, degree_cap: int | None = None):
    """Length of R/Q."""
    return quotient_length(Q, Ideal.unit(Q.ring), degree_cap)


__all__ = [
    "INFINITE",
    "Ideal",
    "ideal_power",
    "membership",
    "colon_piece",
    "colon_oracle",
    "colon_dim",
    "quotient_length",
    "ring_length",
]
