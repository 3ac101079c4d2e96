"""Exact fields, weighted polynomials in x, y, z, and per-degree linear algebra."""

from ..errors import InputError
from .field import QQ, Field
from .linalg import Echelon, kernel, linear_solve, rank
from .poly import Monomial, Polynomial, WeightedRing, monomials_of_weighted_degree, parse_polynomial


def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    if p.ring != q.ring:
        raise InputError("ring mismatch")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise InputError(f"unknown operation {op!r}")


def is_local_unit(p: Polynomial) -> bool:
    return p.is_local_unit()


__all__ = [
    "QQ",
    "Field",
    "Echelon",
    "kernel",
    "linear_solve",
    "rank",
    "Monomial",
    "Polynomial",
    "WeightedRing",
    "monomials_of_weighted_degree",
    "parse_polynomial",
    "poly_arith",
    "is_local_unit",
]
