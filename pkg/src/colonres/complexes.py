"""Graded free modules, homogeneous maps and chain complexes over k[x, y, z].

Module elements are :class:`Vector` objects (sparse: generator index to a
nonzero polynomial).  Every question about maps is answered one weighted
degree at a time: the degree-d piece of ``⊕ R(-d_j)`` has the basis
``(j, m)`` with ``m`` a monomial of degree ``d - d_j``, and a map restricted
to that piece is a finite matrix handed to :class:`Echelon`.

Complexes are stored as ``modules = (F_0, ..., F_L)`` and
``maps = (phi_1, ..., phi_L)`` with ``phi_i : F_i -> F_{i-1}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .errors import InputError, LiftError, NotAComplexError, VerificationError
from .ringcore import Echelon, Field, Polynomial, WeightedRing


# --------------------------------------------------------------------------
# modules and vectors


class GradedFreeModule:
    __slots__ = ("ring", "labels", "degrees", "_index", "_basis")

    def __init__(self, ring: WeightedRing, labels, degrees):
        labels = tuple(labels)
        degrees = tuple(int(d) for d in degrees)
        if len(labels) != len(degrees):
            raise InputError("labels and degrees differ in length")
        if len(set(labels)) != len(labels):
            raise InputError("generator labels must be distinct")
        self.ring = ring
        self.labels = labels
        self.degrees = degrees
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._basis = {}

    @classmethod
    def zero(cls, ring):
        return cls(ring, (), ())

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"no generator labelled {label!r}") from None

    def __contains__(self, label) -> bool:
        return label in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedFreeModule)
            and self.labels == other.labels
            and self.degrees == other.degrees
            and self.ring == other.ring
        )

    def __hash__(self):
        return hash((self.labels, self.degrees))

    def __repr__(self) -> str:
        return f"GradedFreeModule(rank={self.rank}, degrees={self.degrees})"

    def basis(self, d: int) -> list:
        """Basis keys (generator index, exponents) of the degree-d piece."""
        b = self._basis.get(d)
        if b is None:
            b = [(j, e) for j, dj in enumerate(self.degrees) for e in self.ring.monomials(d - dj)]
            self._basis[d] = b
        return b

    def dim(self, d: int) -> int:
        return sum(len(self.ring.monomials(d - dj)) for dj in self.degrees)

    def vector(self, mapping=None) -> "Vector":
        """Vector from {label or index: polynomial-like}."""
        comps = {}
        for key, val in (mapping or {}).items():
            j = key if isinstance(key, int) else self.index(key)
            if not 0 <= j < self.rank:
                raise IndexError(j)
            p = self.ring(val)
            if p:
                comps[j] = comps[j] + p if j in comps else p
        return Vector(self, {j: p for j, p in comps.items() if p})

    def basis_vector(self, key) -> "Vector":
        return self.vector({key: 1})

    def zero_vector(self) -> "Vector":
        return Vector(self, {})

    def relabel(self, labels) -> "GradedFreeModule":
        return GradedFreeModule(self.ring, labels, self.degrees)

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "degrees": list(self.degrees)}


def direct_sum(parts, wrappers=("[{}]", "<{}>")) -> GradedFreeModule:
    """Direct sum whose labels are the summand labels wrapped per summand."""
    ring = parts[0].ring
    labels, degrees = [], []
    for part, w in zip(parts, wrappers):
        labels += [w.format(lab) for lab in part.labels]
        degrees += list(part.degrees)
    return GradedFreeModule(ring, labels, degrees)


class Vector:
    __slots__ = ("module", "comps")

    def __init__(self, module: GradedFreeModule, comps: dict):
        self.module = module
        self.comps = comps

    def __getitem__(self, key) -> Polynomial:
        j = key if isinstance(key, int) else self.module.index(key)
        return self.comps.get(j, self.module.ring.zero())

    def is_zero(self) -> bool:
        return not self.comps

    def _check(self, other):
        if not isinstance(other, Vector) or other.module.rank != self.module.rank:
            raise ValueError("vectors live in different modules")

    def __add__(self, other):
        self._check(other)
        out = dict(self.comps)
        for j, p in other.comps.items():
            q = out[j] + p if j in out else p
            if q:
                out[j] = q
            else:
                out.pop(j, None)
        return Vector(self.module, out)

    def __neg__(self):
        return Vector(self.module, {j: -p for j, p in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        s = self.module.ring(scalar)
        out = {}
        for j, p in self.comps.items():
            q = p * s
            if q:
                out[j] = q
        return Vector(self.module, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.module.rank == other.module.rank and self.comps == other.comps

    def __hash__(self):
        return hash(frozenset(self.comps.items()))

    def degree(self) -> int | None:
        """Common weighted degree of a homogeneous vector (None if zero)."""
        ds = set()
        for j, p in self.comps.items():
            for e in p.terms:
                ds.add(self.module.ring.degree(e) + self.module.degrees[j])
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError("vector is not homogeneous")
        return ds.pop()

    def coords(self) -> dict:
        out = {}
        for j, p in self.comps.items():
            for e, c in p.terms.items():
                out[(j, e)] = c
        return out

    def residue(self) -> dict:
        """Constant coefficients: the image in F / mF, keyed by generator index."""
        out = {}
        for j, p in self.comps.items():
            c = p.constant_term()
            if c != 0:
                out[j] = c
        return out

    def in_maximal_ideal(self) -> bool:
        return not self.residue()

    def items(self) -> list:
        return [(self.module.labels[j], self.comps[j]) for j in sorted(self.comps)]

    def as_strings(self) -> dict:
        return {lab: str(p) for lab, p in self.items()}

    def __str__(self) -> str:
        if not self.comps:
            return "0"
        return " + ".join(f"({p})*{lab}" for lab, p in self.items())

    __repr__ = __str__


def vector_from_coords(module: GradedFreeModule, coords: dict) -> Vector:
    ring = module.ring
    acc: dict = {}
    for (j, e), c in coords.items():
        acc.setdefault(j, {})[e] = c
    return Vector(module, {j: p for j, t in acc.items() if (p := Polynomial(ring, t))})


# --------------------------------------------------------------------------
# maps


class ModuleMap:
    """Homogeneous degree-0 map between graded free modules, stored by columns."""

    __slots__ = ("source", "target", "cols", "_ech")

    def __init__(self, source: GradedFreeModule, target: GradedFreeModule, cols, check: bool = True):
        if len(cols) != source.rank:
            raise InputError(f"{len(cols)} columns for a source of rank {source.rank}")
        self.source = source
        self.target = target
        self.cols = [{i: p for i, p in c.items() if p} for c in cols]
        self._ech = {}
        if check:
            self._check_homogeneous()

    def _check_homogeneous(self):
        deg = self.source.ring.degree
        for j, col in enumerate(self.cols):
            for i, p in col.items():
                if not 0 <= i < self.target.rank:
                    raise InputError(f"row index {i} out of range")
                want = self.source.degrees[j] - self.target.degrees[i]
                for e in p.terms:
                    if deg(e) != want:
                        raise InputError(
                            f"entry ({self.target.labels[i]}, {self.source.labels[j]}) = {p} "
                            f"is not homogeneous of degree {want}"
                        )

    @classmethod
    def from_rows(cls, source, target, rows, check=True):
        ring = source.ring
        if len(rows) != target.rank:
            raise InputError(f"{len(rows)} rows for a target of rank {target.rank}")
        cols = [{} for _ in range(source.rank)]
        for i, row in enumerate(rows):
            if len(row) != source.rank:
                raise InputError("row length does not match the source rank")
            for j, val in enumerate(row):
                p = ring(val)
                if p:
                    cols[j][i] = p
        return cls(source, target, cols, check)

    @classmethod
    def from_vectors(cls, source, target, vectors, check=True):
        return cls(source, target, [dict(v.comps) for v in vectors], check)

    @classmethod
    def identity(cls, module):
        one = module.ring.one()
        return cls(module, module, [{j: one} for j in range(module.rank)], check=False)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, [{} for _ in range(source.rank)], check=False)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.cols[j].get(i, self.source.ring.zero())

    def rows(self) -> list:
        z = self.source.ring.zero()
        return [[self.cols[j].get(i, z) for j in range(self.source.rank)] for i in range(self.target.rank)]

    def column(self, j) -> Vector:
        j = j if isinstance(j, int) else self.source.index(j)
        return Vector(self.target, dict(self.cols[j]))

    def apply(self, v: Vector) -> Vector:
        if v.module.rank != self.source.rank:
            raise ValueError("vector is not in the source module")
        acc: dict = {}
        for j, p in v.comps.items():
            for i, q in self.cols[j].items():
                r = q * p
                acc[i] = acc[i] + r if i in acc else r
        return Vector(self.target, {i: p for i, p in acc.items() if p})

    def __call__(self, v: Vector) -> Vector:
        return self.apply(v)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition self o other."""
        if other.target.rank != self.source.rank or other.target.degrees != self.source.degrees:
            raise ValueError("maps are not composable")
        cols = [self.apply(Vector(other.target, c)).comps for c in other.cols]
        return ModuleMap(other.source, self.target, cols, check=False)

    def __add__(self, other):
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("maps have different shapes")
        cols = [(Vector(self.target, a) + Vector(self.target, b)).comps for a, b in zip(self.cols, other.cols)]
        return ModuleMap(self.source, self.target, cols, check=False)

    def __neg__(self):
        return ModuleMap(self.source, self.target, [{i: -p for i, p in c.items()} for c in self.cols], check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [(Vector(self.target, col) * c).comps for col in self.cols], check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.cols == other.cols

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def entries_in_maximal_ideal(self) -> bool:
        return all(not p.is_local_unit() for c in self.cols for p in c.values())

    # per-degree linear algebra -----------------------------------------
    def _column_coords(self, j: int, e) -> dict:
        a, b, c = e
        out = {}
        for i, p in self.cols[j].items():
            for t, v in p.terms.items():
                out[(i, (t[0] + a, t[1] + b, t[2] + c))] = v
        return out

    def echelon(self, d: int, track: bool = False) -> Echelon:
        key = (d, track)
        ech = self._ech.get(key)
        if ech is None:
            if not track and (d, True) in self._ech:
                return self._ech[(d, True)]
            ech = Echelon(self.source.ring.field, track=track)
            for j, e in self.source.basis(d):
                ech.insert(self._column_coords(j, e), (j, e))
            self._ech[key] = ech
        return ech

    def rank_at(self, d: int) -> int:
        return self.echelon(d).rank

    def solve(self, target: Vector) -> Vector | None:
        """Some homogeneous x with self(x) = target, or None."""
        if target.module.rank != self.target.rank:
            raise ValueError("vector is not in the target module")
        d = target.degree()
        if d is None:
            return self.source.zero_vector()
        combo = self.echelon(d, track=True).solve(target.coords())
        if combo is None:
            return None
        return vector_from_coords(self.source, combo)

    def to_json(self) -> list:
        return [[str(p) for p in row] for row in self.rows()]


def block_map(source, target, grid, source_parts, target_parts) -> ModuleMap:
    """Assemble a map from a grid of blocks (None = zero block).

    ``grid[r][c]`` maps ``source_parts[c]`` to ``target_parts[r]``; source and
    target are the (already labelled) direct sums.
    """
    if sum(p.rank for p in source_parts) != source.rank or sum(p.rank for p in target_parts) != target.rank:
        raise ValueError("summand ranks do not add up")
    row_off = [sum(p.rank for p in target_parts[:r]) for r in range(len(target_parts))]
    cols = []
    for c, sp in enumerate(source_parts):
        for j in range(sp.rank):
            col = {}
            for r in range(len(target_parts)):
                blk = grid[r][c]
                if blk is None:
                    continue
                for i, p in blk.cols[j].items():
                    col[row_off[r] + i] = p
            cols.append(col)
    return ModuleMap(source, target, cols)


def tensor_module(m1: GradedFreeModule, m2: GradedFreeModule, label=None, shift: int = 0) -> GradedFreeModule:
    label = label or (lambda a, b: f"{a}⊗{b}")
    labels, degrees = [], []
    for a, da in zip(m1.labels, m1.degrees):
        for b, db in zip(m2.labels, m2.degrees):
            labels.append(label(a, b))
            degrees.append(da + db + shift)
    return GradedFreeModule(m1.ring, labels, degrees)


def tensor_map(f: ModuleMap, g: ModuleMap, source=None, target=None) -> ModuleMap:
    """Kronecker product f ⊗ g with first-factor-major indexing."""
    source = source or tensor_module(f.source, g.source)
    target = target or tensor_module(f.target, g.target)
    n2s, n2t = g.source.rank, g.target.rank
    cols = [None] * (f.source.rank * n2s)
    for j1 in range(f.source.rank):
        for j2 in range(n2s):
            col = {}
            for i1, p in f.cols[j1].items():
                for i2, q in g.cols[j2].items():
                    r = p * q
                    if r:
                        col[i1 * n2t + i2] = r
            cols[j1 * n2s + j2] = col
    return ModuleMap(source, target, cols)


# --------------------------------------------------------------------------
# chain complexes


class ChainComplex:
    __slots__ = ("modules", "maps")

    def __init__(self, maps, check: bool = True):
        maps = tuple(maps)
        if not maps:
            raise InputError("a complex needs at least one map")
        for lo, hi in zip(maps, maps[1:]):
            if hi.target != lo.source:
                raise InputError("consecutive maps do not share a module")
        self.maps = maps
        self.modules = (maps[0].target,) + tuple(m.source for m in maps)
        if check:
            self.check_complex()

    @property
    def ring(self) -> WeightedRing:
        return self.modules[0].ring

    @property
    def length(self) -> int:
        """Index of the highest nonzero module."""
        top = 0
        for i, m in enumerate(self.modules):
            if m.rank:
                top = i
        return top

    @property
    def top(self) -> int:
        return len(self.maps)

    def module(self, i: int) -> GradedFreeModule:
        if 0 <= i < len(self.modules):
            return self.modules[i]
        return GradedFreeModule.zero(self.ring)

    def map(self, i: int) -> ModuleMap:
        """phi_i : F_i -> F_{i-1}; zero outside the stored range."""
        if 1 <= i <= len(self.maps):
            return self.maps[i - 1]
        return ModuleMap.zero(self.module(i), self.module(i - 1))

    def ranks(self) -> tuple:
        return tuple(m.rank for m in self.modules)

    def check_complex(self):
        for i in range(1, len(self.maps)):
            comp = self.maps[i - 1] @ self.maps[i]
            if not comp.is_zero():
                raise NotAComplexError(f"phi_{i} o phi_{i + 1} is not zero")

    def max_generator_degree(self, positions=None) -> int:
        positions = positions if positions is not None else range(1, len(self.modules))
        degs = [d for i in positions for d in self.module(i).degrees]
        return max(degs) if degs else 0

    def with_maps(self, maps) -> "ChainComplex":
        return ChainComplex(maps)

    def to_json(self) -> dict:
        return {
            "ring": ring_to_json(self.ring),
            "modules": [m.to_json() for m in self.modules],
            "maps": [m.to_json() for m in self.maps],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ChainComplex":
        ring = ring_from_json(data["ring"])
        mods = [GradedFreeModule(ring, m["labels"], m["degrees"]) for m in data["modules"]]
        if len(data["maps"]) != len(mods) - 1:
            raise InputError("complex JSON: need one map per module above F_0")
        maps = []
        for i, rows in enumerate(data["maps"], start=1):
            src, tgt = mods[i], mods[i - 1]
            if not rows:
                rows = [[] for _ in range(tgt.rank)]
            maps.append(ModuleMap.from_rows(src, tgt, [[ring.parse(s) for s in row] for row in rows]))
        return cls(maps)


def require_l3(c: ChainComplex) -> ChainComplex:
    """Check the shape F_3 -> F_2 -> F_1 -> F_0 = R."""
    if len(c.maps) != 3:
        raise InputError(f"expected a complex with three maps, got {len(c.maps)}")
    f0 = c.modules[0]
    if f0.rank != 1 or f0.degrees != (0,):
        raise InputError("F_0 must be R (rank 1, degree 0)")
    return c


def ring_to_json(ring: WeightedRing) -> dict:
    return {"characteristic": ring.characteristic, "variables": list(ring.names), "weights": list(ring.weights)}


def ring_from_json(data: dict) -> WeightedRing:
    return WeightedRing(tuple(data["weights"]), Field(int(data["characteristic"])), tuple(data["variables"]))


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def free_module_R(ring: WeightedRing, label: str = "1") -> GradedFreeModule:
    return GradedFreeModule(ring, (label,), (0,))


# --------------------------------------------------------------------------
# Koszul complex

def koszul_sign(k: int) -> int:
    """Sign of the k-th (0-based) term in the Koszul differential."""
    return -1 if k % 2 else 1


def koszul_complex(ring: WeightedRing, *xs: Polynomial) -> ChainComplex:
    """Koszul complex on 1 to 3 homogeneous elements of positive degree.

    For three elements the bases are 1; e1, e2, e3; e23, e13, e12; e123, so
    the middle basis is ordered by the complementary index.
    """
    n = len(xs)
    if not 1 <= n <= 3:
        raise InputError("Koszul complex needs one to three elements")
    degs = []
    for x in xs:
        x = ring(x)
        d = x.degree()
        if d is None or not x.is_homogeneous() or d <= 0:
            raise InputError(f"{x} must be homogeneous of positive degree")
        degs.append(d)
    xs = tuple(ring(x) for x in xs)

    def subsets(k):
        subs = list(combinations(range(n), k))
        if n == 3 and k == 2:
            subs = sorted(subs, key=lambda s: [i for i in range(3) if i not in s][0])
        return subs

    def label(s):
        return "1" if not s else "e" + "".join(str(i + 1) for i in s)

    mods = []
    for k in range(n + 1):
        subs = subsets(k)
        mods.append((subs, GradedFreeModule(ring, [label(s) for s in subs], [sum(degs[i] for i in s) for s in subs])))
    maps = []
    for k in range(1, n + 1):
        subs, src = mods[k]
        tsubs, tgt = mods[k - 1]
        tindex = {s: i for i, s in enumerate(tsubs)}
        cols = []
        for s in subs:
            col = {}
            for pos, i in enumerate(s):
                rest = tuple(t for t in s if t != i)
                col[tindex[rest]] = xs[i] * koszul_sign(pos)
            cols.append(col)
        maps.append(ModuleMap(src, tgt, cols))
    return ChainComplex(maps)


# --------------------------------------------------------------------------
# chain maps and mapping cones


class ChainMap:
    """sigma_i : G_i -> F_i for i = 0..len(G.maps), degree 0."""

    def __init__(self, source: ChainComplex, target: ChainComplex, maps, check: bool = True):
        self.source = source
        self.target = target
        self.maps = tuple(maps)
        if len(self.maps) != len(source.modules):
            raise InputError("need one component per module of the source complex")
        for i, s in enumerate(self.maps):
            if s.source != source.module(i) or s.target.rank != target.module(i).rank:
                raise InputError(f"sigma_{i} has the wrong shape")
        if check:
            self.check_squares()

    def sigma(self, i: int) -> ModuleMap:
        if 0 <= i < len(self.maps):
            return self.maps[i]
        return ModuleMap.zero(self.source.module(i), self.target.module(i))

    def check_squares(self):
        for i in range(1, len(self.maps)):
            left = self.sigma(i - 1) @ self.source.map(i)
            right = self.target.map(i) @ self.sigma(i)
            if left != right:
                raise VerificationError(f"chain map square at position {i} does not commute")


def cone_sign(i: int) -> int:
    """Sign in front of sigma_{i-1} in the i-th cone differential."""
    return -1 if (i - 1) % 2 else 1


def mapping_cone(sigma: ChainMap, source_first: bool = False) -> ChainComplex:
    """Mapping cone with C_0 = F_0 and C_i = F_i ⊕ G_{i-1}.

    d_i = [[phi_i, s_i sigma_{i-1}], [0, del_{i-1}]] with s_i = (-1)^(i-1).
    With ``source_first`` the summands are listed as G_{i-1} ⊕ F_i instead;
    the first summand's labels are wrapped in [..] and the second's in <..>.
    """
    F, G = sigma.target, sigma.source
    L = max(len(F.maps), len(G.maps) + 1)

    def parts(i):
        return [G.module(i - 1), F.module(i)] if source_first else [F.module(i), G.module(i - 1)]

    cmods = [F.module(0)] + [direct_sum(parts(i)) for i in range(1, L + 1)]
    maps = []
    for i in range(1, L + 1):
        s_blk = sigma.sigma(i - 1).scale(cone_sign(i))
        if i == 1:
            tparts = [F.module(0)]
            grid = [[s_blk, F.map(1)]] if source_first else [[F.map(1), s_blk]]
        else:
            tparts = parts(i - 1)
            if source_first:
                grid = [[G.map(i - 1), None], [s_blk, F.map(i)]]
            else:
                grid = [[F.map(i), s_blk], [None, G.map(i - 1)]]
        maps.append(block_map(cmods[i], cmods[i - 1], grid, parts(i), tparts))
    return ChainComplex(maps)


# --------------------------------------------------------------------------
# split trimming


def split_trim(c: ChainComplex, phi: ModuleMap, kernel_basis, labels=None) -> ChainComplex:
    """Drop the top module along a splitting phi with phi o phi_top = id.

    ``kernel_basis`` lists vectors of the next-to-top module forming a free
    basis of Ker phi; they become the new top generators.
    """
    L = len(c.maps)
    if L < 2:
        raise InputError("nothing to trim")
    top_map = c.map(L)
    if phi.source != c.module(L - 1) or phi.target != c.module(L):
        raise InputError("splitting map has the wrong shape")
    if phi @ top_map != ModuleMap.identity(c.module(L)):
        raise VerificationError("splitting map composed with the top map is not the identity")
    kernel_basis = list(kernel_basis)
    if len(kernel_basis) != c.module(L - 1).rank - c.module(L).rank:
        raise VerificationError("kernel basis has the wrong size")
    for v in kernel_basis:
        if not phi.apply(v).is_zero():
            raise VerificationError("kernel basis vector not killed by the splitting map")
    ech = Echelon(c.ring.field)
    for v in kernel_basis + [top_map.column(j) for j in range(c.module(L).rank)]:
        ech.insert(v.residue())
    if ech.rank != c.module(L - 1).rank:
        raise VerificationError("kernel basis does not complete the split summand to a basis")
    if labels is None:
        labels = []
        for v in kernel_basis:
            if len(v.comps) != 1:
                raise InputError("labels required for non-standard kernel basis vectors")
            labels.append(v.module.labels[next(iter(v.comps))])
    degrees = []
    for v in kernel_basis:
        d = v.degree()
        if d is None:
            raise VerificationError("zero vector in kernel basis")
        degrees.append(d)
    new_top = GradedFreeModule(c.ring, labels, degrees)
    nxt = c.map(L - 1)
    new_map = ModuleMap.from_vectors(new_top, c.module(L - 2), [nxt.apply(v) for v in kernel_basis])
    return ChainComplex(list(c.maps[: L - 2]) + [new_map])


# --------------------------------------------------------------------------
# exactness


@dataclass
class ExactnessReport:
    d_min: int
    d_max: int
    table: dict = dc_field(default_factory=dict)  # degree -> [(position, dim ker, dim im)]
    first_failure: tuple | None = None

    @property
    def exact(self) -> bool:
        return self.first_failure is None

    def to_json(self) -> dict:
        return {
            "d_min": self.d_min,
            "d_max": self.d_max,
            "exact": self.exact,
            "first_failure": list(self.first_failure) if self.first_failure else None,
            "table": {str(d): [list(r) for r in rows] for d, rows in sorted(self.table.items())},
        }


def default_degree_bound(c: ChainComplex, extra: int = 2) -> int:
    return 2 * c.max_generator_degree() + extra


def verify_exactness(c: ChainComplex, d_max: int | None = None, d_min: int = 0) -> ExactnessReport:
    """Compare dim ker phi_i with dim im phi_{i+1} at positions 1..top, per degree."""
    if d_max is None:
        d_max = default_degree_bound(c)
    rep = ExactnessReport(d_min, d_max)
    top = len(c.maps)
    for d in range(d_min, d_max + 1):
        rows = []
        for i in range(1, top + 1):
            src = c.module(i)
            if src.dim(d) == 0:
                rows.append((i, 0, 0))
                continue
            ker = src.dim(d) - c.map(i).rank_at(d)
            im = c.map(i + 1).rank_at(d) if i < top else 0
            rows.append((i, ker, im))
            if ker != im and rep.first_failure is None:
                rep.first_failure = (d, i)
        rep.table[d] = rows
    return rep


# --------------------------------------------------------------------------
# double complexes and the zig-zag lift


class DoubleComplex:
    """Cells C[p, q]; dh[p, q] : C_pq -> C_{p-1,q} and dv[p, q] : C_pq -> C_{p,q-1}."""

    def __init__(self, cells: dict, dh: dict, dv: dict):
        self.cells = cells
        self.dh = dh
        self.dv = dv

    def check(self):
        for (p, q) in self.cells:
            if p >= 2 and not (self.dh[(p - 1, q)] @ self.dh[(p, q)]).is_zero():
                raise NotAComplexError(f"row {q} is not a complex at {p}")
            if q >= 2 and not (self.dv[(p, q - 1)] @ self.dv[(p, q)]).is_zero():
                raise NotAComplexError(f"column {p} is not a complex at {q}")
            if p >= 1 and q >= 1:
                a = self.dv[(p - 1, q)] @ self.dh[(p, q)]
                b = self.dh[(p, q - 1)] @ self.dv[(p, q)]
                if a != b:
                    raise NotAComplexError(f"square at ({p},{q}) does not commute")


def tensor_double_complex(K: ChainComplex, F: ChainComplex) -> DoubleComplex:
    """C_pq = K_p ⊗ F_q with dh = del ⊗ id and dv = id ⊗ phi (commuting squares)."""
    cells = {(p, q): tensor_module(K.module(p), F.module(q)) for p in range(len(K.modules)) for q in range(len(F.modules))}
    dh, dv = {}, {}
    for (p, q), m in cells.items():
        if p >= 1:
            dh[(p, q)] = tensor_map(K.map(p), ModuleMap.identity(F.module(q)), m, cells[(p - 1, q)])
        if q >= 1:
            dv[(p, q)] = tensor_map(ModuleMap.identity(K.module(p)), F.map(q), m, cells[(p, q - 1)])
    return DoubleComplex(cells, dh, dv)


def zigzag_lift(dc: DoubleComplex, xi0: Vector, xi1: Vector):
    """Complete (xi0, xi1) in C_03 ⊕ C_12 to a cycle of the total complex.

    Solves dh(xi2) = dv(xi1) in C_11, then dh(xi3) = -dv(xi2) in C_20.
    """
    start = dc.dv[(0, 3)].apply(xi0) + dc.dh[(1, 2)].apply(xi1)
    if not start.is_zero():
        raise InputError("xi0 and xi1 do not satisfy the starting equation")
    xi2 = dc.dh[(2, 1)].solve(dc.dv[(1, 2)].apply(xi1))
    if xi2 is None:
        raise LiftError("no lift for xi2: a row of the double complex is not exact")
    xi3 = dc.dh[(3, 0)].solve(-dc.dv[(2, 1)].apply(xi2))
    if xi3 is None:
        raise LiftError("no lift for xi3: a row of the double complex is not exact")
    return xi2, xi3


def total_differential_residual(dc: DoubleComplex, xi0, xi1, xi2, xi3):
    """The three components of the total differential of (xi0, xi1, xi2, xi3)."""
    return (
        dc.dv[(0, 3)].apply(xi0) + dc.dh[(1, 2)].apply(xi1),
        -dc.dv[(1, 2)].apply(xi1) + dc.dh[(2, 1)].apply(xi2),
        dc.dv[(2, 1)].apply(xi2) + dc.dh[(3, 0)].apply(xi3),
    )
