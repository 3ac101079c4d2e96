"""Weighted-graded polynomial ring k[x, y, z] and its sparse polynomials."""

from __future__ import annotations

import re
from fractions import Fraction
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import NamedTuple

from ..errors import InputError
from .field import QQ, Field

Exps = tuple  # exponent triple (i, j, k)


class Monomial(NamedTuple):
    exponents: tuple
    weighted_degree: int


@lru_cache(maxsize=None)
def _monomials(weights: tuple, d: int) -> tuple:
    wx, wy, wz = weights
    out = []
    for i in range(d // wx, -1, -1):
        r1 = d - i * wx
        for j in range(r1 // wy, -1, -1):
            r2 = r1 - j * wy
            if r2 % wz == 0:
                out.append((i, j, r2 // wz))
    return tuple(out)


@dataclass(frozen=True)
class WeightedRing:
    weights: tuple = (1, 1, 1)
    field: Field = dc_field(default_factory=lambda: QQ)
    names: tuple = ("x", "y", "z")

    def __post_init__(self):
        w = tuple(self.weights)
        if len(w) != 3 or any((not isinstance(v, int)) or v < 1 for v in w):
            raise InputError(f"weights must be three positive integers, got {self.weights!r}")
        if len(self.names) != 3 or len(set(self.names)) != 3:
            raise InputError("need three distinct variable names")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def degree(self, exps) -> int:
        w = self.weights
        return exps[0] * w[0] + exps[1] * w[1] + exps[2] * w[2]

    def monomials(self, d: int) -> tuple:
        """Exponent triples of weighted degree d, in canonical order."""
        if d < 0:
            return ()
        return _monomials(self.weights, d)

    # constructors
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0, 0, 0): 1})

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0, 0, 0): c})

    def monomial(self, exps, c=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): c})

    def var(self, i: int) -> "Polynomial":
        e = [0, 0, 0]
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    @property
    def gens(self) -> tuple:
        return (self.var(0), self.var(1), self.var(2))

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise InputError("ring mismatch")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)


def monomials_of_weighted_degree(ring: WeightedRing, d: int) -> list:
    if d < 0:
        raise InputError("degree must be nonnegative")
    return [Monomial(e, d) for e in ring.monomials(d)]


class Polynomial:
    """Immutable sparse polynomial: a dict from exponent triple to nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: WeightedRing, terms=None, *, _clean: bool = False):
        self.ring = ring
        self._hash = None
        if _clean:
            self.terms = terms
            return
        f = ring.field
        clean = {}
        if terms:
            for e, c in terms.items():
                c = f(c)
                if c != 0:
                    e = tuple(e)
                    if len(e) != 3 or min(e) < 0:
                        raise InputError(f"bad exponent {e!r}")
                    clean[e] = c
        self.terms = clean

    # basic predicates -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def constant_term(self):
        return self.terms.get((0, 0, 0), 0)

    def is_local_unit(self) -> bool:
        return self.constant_term() != 0

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0, 0) in self.terms)

    def degrees(self) -> set:
        deg = self.ring.degree
        return {deg(e) for e in self.terms}

    def is_homogeneous(self, d: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        if len(ds) != 1:
            return False
        return d is None or d in ds

    def degree(self) -> int | None:
        """Weighted degree of a nonzero homogeneous polynomial (None for zero)."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) != 1:
            raise InputError(f"{self} is not homogeneous")
        return next(iter(ds))

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise InputError("ring mismatch")
            return other
        if (isinstance(other, int) and not isinstance(other, bool)) or _is_fraction(other):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.characteristic
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return Polynomial(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        if p:
            return Polynomial(self.ring, {e: (-c) % p for e, c in self.terms.items()}, _clean=True)
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.characteristic
        if len(other.terms) == 1:
            (e2, c2), = other.terms.items()
            return self.mul_term(e2, c2)
        if len(self.terms) == 1:
            (e1, c1), = self.terms.items()
            return other.mul_term(e1, c1)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c != 0}
        return Polynomial(self.ring, out, _clean=True)

    __rmul__ = __mul__

    def mul_term(self, exps, coeff=1) -> "Polynomial":
        """Multiply by the single term coeff * x^exps."""
        f = self.ring.field
        coeff = f(coeff)
        if coeff == 0:
            return Polynomial(self.ring, {}, _clean=True)
        p = f.characteristic
        a, b, c = exps
        if coeff == 1:
            out = {(e[0] + a, e[1] + b, e[2] + c): v for e, v in self.terms.items()}
        elif p:
            out = {(e[0] + a, e[1] + b, e[2] + c): v * coeff % p for e, v in self.terms.items()}
        else:
            out = {(e[0] + a, e[1] + b, e[2] + c): f.normalize(v * coeff) for e, v in self.terms.items()}
        return Polynomial(self.ring, out, _clean=True)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InputError("exponent must be a nonnegative int")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divide_by_monomial(self, exps) -> "Polynomial":
        """Exact quotient by x^exps; raises if some term is not divisible."""
        out = {}
        for e, c in self.terms.items():
            q = (e[0] - exps[0], e[1] - exps[1], e[2] - exps[2])
            if min(q) < 0:
                raise ArithmeticError(f"{self} is not divisible by {exps}")
            out[q] = c
        return Polynomial(self.ring, out, _clean=True)

    # comparison / hashing ---------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int) or _is_fraction(other):
            return self.terms == ({} if self.ring.field(other) == 0 else {(0, 0, 0): self.ring.field(other)})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # printing ---------------------------------------------------------
    def sorted_terms(self) -> list:
        deg = self.ring.degree
        return sorted(self.terms.items(), key=lambda t: (deg(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        f = self.ring.field
        names = self.ring.names
        pieces = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            s = f.format(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            if not mono:
                body = s
            elif s == "1":
                body = mono
            else:
                body = f"{s}*{mono}"
            if idx == 0:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def _is_fraction(x) -> bool:
    return isinstance(x, Fraction)


_TERM = re.compile(r"([+-]?)([^+-]+)")
_FACTOR = re.compile(r"^(?:(\d+(?:/\d+)?)|([A-Za-z_]\w*)(?:\^(\d+))?)$")


def parse_polynomial(ring: WeightedRing, text: str) -> Polynomial:
    """Parse the ``c*x^a*y^b*z^c`` text format (signed sum of terms)."""
    s = "".join(text.split())
    if not s:
        raise InputError("empty polynomial text")
    pos = 0
    terms: dict = {}
    f = ring.field
    index = {n: i for i, n in enumerate(ring.names)}
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse polynomial {text!r}")
        if pos > 0 and not m.group(1):
            raise InputError(f"missing operator in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = f(sign)
        exps = [0, 0, 0]
        for tok in m.group(2).split("*"):
            fm = _FACTOR.match(tok)
            if not fm:
                raise InputError(f"bad factor {tok!r} in {text!r}")
            if fm.group(1) is not None:
                coeff = f.normalize(coeff * f(fm.group(1)))
            else:
                name = fm.group(2)
                if name not in index:
                    raise InputError(f"unknown variable {name!r} in {text!r}")
                exps[index[name]] += int(fm.group(3)) if fm.group(3) else 1
        e = tuple(exps)
        terms[e] = f.normalize(terms.get(e, 0) + coeff)
        pos = m.end()
    return Polynomial(ring, terms)
