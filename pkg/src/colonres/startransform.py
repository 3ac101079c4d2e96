"""The *-transform: from a resolution of ``a`` to a resolution of ``a : Q``.

Input is an acyclic complex ``F_3 -> F_2 -> F_1 -> R`` whose top map lands
in ``Q F_2`` for a parameter ideal ``Q = (x_1, x_2, x_3)``.  The pipeline:

1. write ``phi_3(w_l) = sum_i x_i v_(i,l)``                (decompose_into_Q)
2. lift through the double complex ``K(Q) ⊗ F`` to get a chain map
   ``sigma : K(Q) ⊗ F_3 -> F``                               (build_sigma)
3. form the mapping cone and split off ``K_3 ⊗ F_3``          (cone_and_split)
4. pick a maximal set of v's that extends to a basis of F_2  (select_basis_subset)
5. expand the remaining v's in that basis                    (express_remaining)
6. trim the cone to the transformed complex                  (assemble_star)

Index pairs ``(i, label)`` use ``i`` in 1..3 and the label of a generator of
F_3.  Generators of the tensor complex ``G = K ⊗ F_3`` are labelled
``"l"``, ``"i,l"``, ``"ěi,l"`` and ``"e123,l"`` for ``1 ⊗ w_l``, ``e_i ⊗ w_l``,
``ě_i ⊗ w_l`` and ``e_1∧e_2∧e_3 ⊗ w_l``; the cone wraps labels of its first
summand in ``[..]`` and of its second in ``<..>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import __version__
from .complexes import (
    ChainComplex,
    ChainMap,
    GradedFreeModule,
    ModuleMap,
    Vector,
    mapping_cone,
    koszul_complex,
    require_l3,
    split_trim,
    tensor_double_complex,
    tensor_module,
    tensor_map,
    verify_exactness,
)
from .errors import DecompositionError, InputError, VerificationError
from .ringcore import Echelon, Polynomial

IDX = (1, 2, 3)
# complement pairs s_i < t_i of each index, as in ě_i = e_s ∧ e_t
COMPLEMENT = {1: (2, 3), 2: (1, 3), 3: (1, 2)}


def pair_label(pair) -> str:
    i, lab = pair
    return f"{i},{lab}"


# --------------------------------------------------------------------------
# input


@dataclass
class StarInput:
    complex: ChainComplex
    params: tuple

    def __post_init__(self):
        require_l3(self.complex)
        ring = self.complex.ring
        params = tuple(ring(p) for p in self.params)
        if len(params) != 3:
            raise InputError("need exactly three parameters")
        for p in params:
            if not p or not p.is_homogeneous() or p.degree() <= 0:
                raise InputError(f"parameter {p} must be homogeneous of positive degree")
        self.params = params

    @property
    def ring(self):
        return self.complex.ring

    @property
    def basis_Lambda(self) -> tuple:
        return self.complex.module(3).labels

    @property
    def param_degrees(self) -> tuple:
        return tuple(p.degree() for p in self.params)

    def lambda_tilde(self) -> list:
        return [(i, lab) for i in IDX for lab in self.basis_Lambda]

    def degree_bound(self) -> int:
        return 2 * self.complex.max_generator_degree() + max(self.param_degrees)

    def check_m_primary(self):
        from .ideals.core import INFINITE, Ideal, quotient_length

        q = Ideal(self.ring, self.params)
        if quotient_length(q, Ideal.unit(self.ring)) is INFINITE:
            raise InputError("parameters do not generate an m-primary ideal")


# --------------------------------------------------------------------------
# step 1


def _monomial_param(p: Polynomial):
    if len(p.terms) != 1:
        return None
    (e, c), = p.terms.items()
    return e, c


def decompose_into_Q(inp: StarInput, override=None) -> dict:
    """Family v[(i, label)] in F_2 with phi_3(w_label) = sum_i x_i v[(i, label)].

    Monomial parameters: each term goes to the smallest i whose x_i divides
    it.  Other parameters: a per-degree linear solve.  ``override`` supplies
    the family (or part of it, keyed by label) and is checked exactly.
    """
    F = inp.complex
    F2, F3 = F.module(2), F.module(3)
    phi3 = F.map(3)
    field = inp.ring.field
    mono = [_monomial_param(p) for p in inp.params]
    override = override or {}
    v = {}
    solver = None
    for l, lab in enumerate(F3.labels):
        target = phi3.column(l)
        if lab in override:
            fam = {i: _as_vector(F2, override[lab][i]) for i in IDX}
            total = F2.zero_vector()
            for i in IDX:
                total = total + fam[i] * inp.params[i - 1]
            if total != target:
                raise VerificationError(f"supplied decomposition for {lab} does not reproduce phi_3")
            for i in IDX:
                v[(i, lab)] = fam[i]
            continue
        if all(m is not None for m in mono):
            acc = {i: {} for i in IDX}
            for j, p in target.comps.items():
                for e, c in p.terms.items():
                    for i, (pe, pc) in zip(IDX, mono):
                        if e[0] >= pe[0] and e[1] >= pe[1] and e[2] >= pe[2]:
                            q = (e[0] - pe[0], e[1] - pe[1], e[2] - pe[2])
                            acc[i].setdefault(j, {})[q] = field.div(c, pc)
                            break
                    else:
                        raise DecompositionError(
                            f"term of phi_3({lab}) at {F2.labels[j]} is divisible by no parameter"
                        )
            for i in IDX:
                v[(i, lab)] = Vector(F2, {j: Polynomial(inp.ring, t) for j, t in acc[i].items()})
        else:
            if solver is None:
                K1 = GradedFreeModule(inp.ring, ["1", "2", "3"], inp.param_degrees)
                src = tensor_module(K1, F2)
                row = ModuleMap.from_rows(K1, GradedFreeModule(inp.ring, ["1"], [0]), [list(inp.params)])
                solver = tensor_map(row, ModuleMap.identity(F2), src, tensor_module(row.target, F2))
            sol = solver.solve(Vector(solver.target, dict(target.comps)))
            if sol is None:
                raise DecompositionError(f"phi_3({lab}) is not in Q F_2")
            r = F2.rank
            for i in IDX:
                v[(i, lab)] = Vector(F2, {j - (i - 1) * r: p for j, p in sol.comps.items() if (i - 1) * r <= j < i * r})
    return v


def _as_vector(module, data) -> Vector:
    if isinstance(data, Vector):
        return Vector(module, dict(data.comps))
    return module.vector(data)


# --------------------------------------------------------------------------
# step 2


@dataclass
class ChainMapSigma:
    chain_map: ChainMap
    koszul: ChainComplex
    G: ChainComplex
    u: dict
    d: dict
    xi2: dict
    xi3: dict

    def sigma(self, i):
        return self.chain_map.sigma(i)


def tensor_with_top(inp: StarInput, K: ChainComplex) -> ChainComplex:
    """G = K ⊗ F_3 shifted so that the chain map to F has degree 0."""
    F3 = inp.complex.module(3)
    s = sum(inp.param_degrees)
    names = {
        0: lambda k, l: l,
        1: lambda k, l: f"{k[1:]},{l}",
        2: lambda k, l: f"ě{_check_index(k)},{l}",
        3: lambda k, l: f"e123,{l}",
    }
    mods = [tensor_module(K.module(p), F3, names[p], shift=-s) for p in range(4)]
    maps = [tensor_map(K.map(p), ModuleMap.identity(F3), mods[p], mods[p - 1]) for p in range(1, 4)]
    return ChainComplex(maps)


def _check_index(koszul_label: str) -> int:
    return [i for i in IDX if str(i) not in koszul_label[1:]][0]


def build_sigma(inp: StarInput, v: dict) -> ChainMapSigma:
    F = inp.complex
    ring = inp.ring
    F1, F2, F3 = F.module(1), F.module(2), F.module(3)
    r1, r2, r3 = F1.rank, F2.rank, F3.rank
    K = koszul_complex(ring, *inp.params)
    dc = tensor_double_complex(K, F)
    from .complexes import zigzag_lift

    u, d, xi2s, xi3s = {}, {}, {}, {}
    for l, lab in enumerate(F3.labels):
        xi0 = Vector(dc.cells[(0, 3)], {l: ring.one()})
        comps = {}
        for i in IDX:
            for j, p in v[(i, lab)].comps.items():
                comps[(i - 1) * r2 + j] = -p
        xi1 = Vector(dc.cells[(1, 2)], comps)
        xi2, xi3 = zigzag_lift(dc, xi0, xi1)
        xi2s[lab], xi3s[lab] = xi2, xi3
        for i in IDX:
            u[(i, lab)] = Vector(F1, {j - (i - 1) * r1: -p for j, p in xi2.comps.items() if (i - 1) * r1 <= j < i * r1})
        d[lab] = xi3[0]

    G = tensor_with_top(inp, K)
    sign = {1: 1, 2: -1, 3: 1}
    s0 = ModuleMap(G.module(0), F.module(0), [{0: d[lab]} if d[lab] else {} for lab in F3.labels])
    c1, c2 = [None] * (3 * r3), [None] * (3 * r3)
    for i in IDX:
        for l, lab in enumerate(F3.labels):
            c1[(i - 1) * r3 + l] = (u[(i, lab)] * sign[i]).comps
            c2[(i - 1) * r3 + l] = (v[(i, lab)] * (-sign[i])).comps
    s1 = ModuleMap(G.module(1), F1, c1)
    s2 = ModuleMap(G.module(2), F2, c2)
    s3 = ModuleMap(G.module(3), F3, [{l: -ring.one()} for l in range(r3)])
    cm = ChainMap(G, F, [s0, s1, s2, s3])
    return ChainMapSigma(cm, K, G, u, d, xi2s, xi3s)


def check_lift_relations(inp: StarInput, v: dict, sig: ChainMapSigma):
    """Relations (iii) and (iv): phi_2 of the v's and x_i d in terms of the u's."""
    F = inp.complex
    x1, x2, x3 = inp.params
    phi1, phi2 = F.map(1), F.map(2)
    for lab in inp.basis_Lambda:
        u1, u2, u3 = (sig.u[(i, lab)] for i in IDX)
        v1, v2, v3 = (v[(i, lab)] for i in IDX)
        if phi2(v1) != -(u3 * x2) - u2 * x3 or phi2(v2) != u3 * x1 - u1 * x3 or phi2(v3) != u2 * x1 + u1 * x2:
            raise VerificationError(f"relation (iii) fails at {lab}")
        dl = sig.d[lab]
        for i, (x, ui) in enumerate(zip(inp.params, (u1, u2, u3)), start=1):
            lhs = x * dl
            rhs = phi1(ui)[0] * (1 if i % 2 else -1)
            if lhs != rhs:
                raise VerificationError(f"relation (iv) fails at ({i},{lab})")


# --------------------------------------------------------------------------
# step 3


def _constant_inverse(m: ModuleMap) -> ModuleMap:
    """Inverse of a square map whose entries are constants."""
    n = m.source.rank
    field = m.source.ring.field
    ring = m.source.ring
    ech = Echelon(field, track=True)
    for j in range(n):
        col = {}
        for i, p in m.cols[j].items():
            if not p.is_constant():
                raise VerificationError("map is not constant, cannot invert it entrywise")
            col[i] = p.constant_term()
        if ech.insert(col, j) is not None:
            raise VerificationError("constant map is singular")
    cols = []
    for i in range(n):
        combo = ech.solve({i: 1})
        cols.append({j: ring.const(c) for j, c in combo.items()})
    return ModuleMap(m.target, m.source, cols)


def cone_and_split(inp: StarInput, sig: ChainMapSigma):
    """Mapping cone of sigma (tensor summand first) and its trimmed form."""
    cone = mapping_cone(sig.chain_map, source_first=True)
    C3, C4 = cone.module(3), cone.module(4)
    G2, G3 = sig.G.module(2), sig.G.module(3)
    inv = -_constant_inverse(sig.sigma(3))
    cols = [{} for _ in range(G2.rank)] + [dict(c) for c in inv.cols]
    phi = ModuleMap(C3, C4, cols)
    basis = [Vector(C3, {j: inp.ring.one()}) for j in range(G2.rank)]
    trimmed = split_trim(cone, phi, basis, labels=G2.labels)
    return cone, trimmed


# --------------------------------------------------------------------------
# step 4


@dataclass
class Selection:
    lambda_star_prime: list
    lambda_double_star: list
    U: list
    certificate: list  # (pair, pivot label) for every accepted pair


def select_basis_subset(F2: GradedFreeModule, v: dict, order: list, prefer=None) -> Selection:
    """Greedy choice of v's whose residues mod m are independent.

    Pairs are scanned with ``prefer`` first, then ``order``; a pair is kept
    when its residue vector, reduced against those already kept, is nonzero.
    The pivot is the last surviving standard basis vector.
    """
    field = F2.ring.field
    ech = Echelon(field)
    seq = [p for p in (prefer or []) if p in v] + [p for p in order if p not in (prefer or [])]
    accepted, cert = set(), []
    for pair in seq:
        res = {-j: c for j, c in v[pair].residue().items()}
        rem, _ = ech.reduce(res)
        if rem:
            ech.insert(rem)
            accepted.add(pair)
            cert.append((pair, F2.labels[-min(rem)]))
    pivots = {-k for k in ech.rows}
    prime = [p for p in order if p in accepted]
    double = [p for p in order if p not in accepted]
    U = [lab for j, lab in enumerate(F2.labels) if j not in pivots]
    return Selection(prime, double, U, cert)


# --------------------------------------------------------------------------
# step 5


def _degree_of(v: Vector, fallback: int) -> int:
    d = v.degree()
    return fallback if d is None else d


def express_remaining(inp: StarInput, v: dict, sel: Selection, hints=None):
    """Tables a[(j,m)][(i,l)] and b[(j,m)][u] with v_(j,m) = sum a v + sum b u.

    Returns (a, b, violations) where violations lists pairs whose expansion
    forced a unit b coefficient (so the selection was not maximal).
    """
    F = inp.complex
    F2 = F.module(2)
    ring = inp.ring
    hints = hints or {}
    pdeg = dict(zip(IDX, inp.param_degrees))
    F3deg = dict(zip(F.module(3).labels, F.module(3).degrees))

    def vdeg(pair):
        return F3deg[pair[1]] - pdeg[pair[0]]

    basis_pairs = list(sel.lambda_star_prime)
    src = GradedFreeModule(
        ring,
        [("v", p) for p in basis_pairs] + [("u", lab) for lab in sel.U],
        [vdeg(p) for p in basis_pairs] + [F2.degrees[F2.index(lab)] for lab in sel.U],
    )
    cols = [dict(v[p].comps) for p in basis_pairs] + [{F2.index(lab): ring.one()} for lab in sel.U]
    B = ModuleMap(src, F2, cols)
    double = set(sel.lambda_double_star)
    U = set(sel.U)
    a, b, violations = {}, {}, []
    for pair in sel.lambda_double_star:
        target = v[pair]
        if pair in hints:
            coeffs = {q: ring(c) for q, c in hints[pair].items()}
            rest = target
            for q, c in coeffs.items():
                rest = rest - v[q] * c
            bad = [F2.labels[j] for j in rest.comps if F2.labels[j] not in U]
            if bad:
                raise VerificationError(f"hinted expansion of {pair} leaves terms outside U: {bad}")
            for q, c in coeffs.items():
                if q in double and c.is_local_unit():
                    raise VerificationError(f"hinted coefficient of {q} in {pair} is a unit")
            a[pair] = {q: c for q, c in coeffs.items() if c}
            b[pair] = {F2.labels[j]: p for j, p in rest.comps.items()}
        else:
            sol = B.solve(target)
            if sol is None:
                raise VerificationError(f"selected v's and U do not span v{pair}")
            a[pair] = {}
            b[pair] = {}
            for k, p in sol.comps.items():
                kind, key = src.labels[k]
                (a[pair] if kind == "v" else b[pair])[key] = p
        if any(p.is_local_unit() for p in b[pair].values()):
            violations.append(pair)
    return a, b, violations


# --------------------------------------------------------------------------
# step 6


def star_sign(k: int) -> int:
    return -1 if k % 2 else 1


def trimmed_top_column(inp: StarInput, pair, a_row: dict, b_row: dict, Fs2: GradedFreeModule) -> Vector:
    """phi*_3(w*_pair) by the closed formula, as a vector of F*_2."""
    x = dict(zip(IDX, inp.params))
    j, mu = pair
    acc = Fs2.zero_vector()

    def bracket(i, lam, coeff):
        s, t = COMPLEMENT[i]
        return Fs2.vector({f"[{t},{lam}]": x[s] * coeff, f"[{s},{lam}]": -(x[t] * coeff)})

    acc = acc + bracket(j, mu, inp.ring.const(star_sign(j)))
    for (i, lam), c in a_row.items():
        acc = acc + bracket(i, lam, c * star_sign(i + 1))
    acc = acc + Fs2.vector({f"<{u}>": c for u, c in b_row.items()})
    return acc


@dataclass
class StarTransformRecord:
    input: StarInput
    v: dict
    sigma: ChainMapSigma
    cone: ChainComplex
    trimmed: ChainComplex
    lambda_tilde: list
    lambda_star_prime: list
    lambda_double_star: list
    U: list
    certificate: list
    a: dict
    b: dict
    w_star: dict
    output: ChainComplex
    depth_shortcut: bool
    promotions: int = 0
    top_labels: dict = dc_field(default_factory=dict)
    checks: dict = dc_field(default_factory=dict)

    @property
    def predicted_length(self) -> int:
        return self.checks.get("predicted_length")

    def to_json(self) -> dict:
        def pl(p):
            return [p[0], p[1]]

        def vec(v):
            return v.as_strings()

        return {
            "schema": "colonres.star-record/1",
            "version": __version__,
            "input": self.input.complex.to_json(),
            "params": [str(p) for p in self.input.params],
            "v": [[pl(k), vec(val)] for k, val in self.v.items()],
            "u": [[pl(k), vec(val)] for k, val in self.sigma.u.items()],
            "d": {k: str(p) for k, p in self.sigma.d.items()},
            "sigma": [m.to_json() for m in self.sigma.chain_map.maps],
            "cone": self.cone.to_json(),
            "trimmed": self.trimmed.to_json(),
            "lambda_tilde": [pl(p) for p in self.lambda_tilde],
            "lambda_star_prime": [pl(p) for p in self.lambda_star_prime],
            "lambda_double_star": [pl(p) for p in self.lambda_double_star],
            "U": list(self.U),
            "certificate": [[pl(p), lab] for p, lab in self.certificate],
            "a": [[pl(k), [[pl(q), str(c)] for q, c in row.items()]] for k, row in self.a.items()],
            "b": [[pl(k), {u: str(c) for u, c in row.items()}] for k, row in self.b.items()],
            "w_star": [[pl(k), vec(w)] for k, w in self.w_star.items()],
            "top_labels": [[pl(k), lab] for k, lab in self.top_labels.items()],
            "output": self.output.to_json(),
            "depth_shortcut": self.depth_shortcut,
            "promotions": self.promotions,
            "checks": self.checks,
        }


def assemble_star(inp: StarInput, sig: ChainMapSigma, trimmed: ChainComplex, sel: Selection, a: dict, b: dict, relabel=None):
    """Build F*: returns (output complex, w_star vectors, top label map)."""
    ring = inp.ring
    Fp3, Fp2, Fp1 = trimmed.module(3), trimmed.module(2), trimmed.module(1)
    phi_p3, phi_p2 = trimmed.map(3), trimmed.map(2)
    Lambda = inp.basis_Lambda
    star2_labels = [f"[{i},{lam}]" for i in IDX for lam in Lambda] + [f"<{u}>" for u in sel.U]
    Fs2 = GradedFreeModule(ring, star2_labels, [Fp2.degrees[Fp2.index(lab)] for lab in star2_labels])
    relabel = relabel or {}
    top_labels = {p: relabel.get(p, f"({p[0]},{p[1]})") for p in sel.lambda_double_star}
    Fs3 = GradedFreeModule(
        ring,
        [top_labels[p] for p in sel.lambda_double_star],
        [Fp3.degrees[Fp3.index(f"ě{p[0]},{p[1]}")] for p in sel.lambda_double_star],
    )
    w_star, cols3 = {}, []
    for pair in sel.lambda_double_star:
        j, mu = pair
        w = Fp3.vector({f"ě{j},{mu}": star_sign(j)})
        for (i, lam), c in a[pair].items():
            w = w + Fp3.vector({f"ě{i},{lam}": c * star_sign(i + 1)})
        w_star[pair] = w
        col = trimmed_top_column(inp, pair, a[pair], b[pair], Fs2)
        direct = phi_p3(w)
        moved = Fs2.zero_vector()
        for lab, p in direct.items():
            if lab not in Fs2:
                raise VerificationError(f"phi'_3(w*{pair}) has a component at {lab}, outside F*_2")
            moved = moved + Fs2.vector({lab: p})
        if moved != col:
            raise VerificationError(f"closed formula and direct image disagree for w*{pair}")
        cols3.append(col.comps)
    phi3 = ModuleMap(Fs3, Fs2, cols3)
    phi2 = ModuleMap(Fs2, Fp1, [dict(phi_p2.cols[Fp2.index(lab)]) for lab in star2_labels])
    out = ChainComplex([trimmed.map(1), phi2, phi3])
    if not phi3.entries_in_maximal_ideal():
        raise VerificationError("phi*_3 has a unit entry")
    return out, w_star, top_labels


# --------------------------------------------------------------------------
# whole pass


def predict_colon_length(inp: StarInput) -> int:
    from .ideals.core import INFINITE, Ideal, quotient_length

    rank3 = inp.complex.module(3).rank
    if rank3 == 0:
        return 0
    ln = quotient_length(Ideal(inp.ring, inp.params), Ideal.unit(inp.ring))
    if ln is INFINITE:
        raise InputError("R/Q does not have finite length")
    return rank3 * ln


def star_transform(
    complex: ChainComplex,
    params,
    *,
    prefer=None,
    hints=None,
    v_override=None,
    relabel=None,
    verify: str = "basic",
    degree_bound: int | None = None,
    max_promotions: int = 10,
) -> StarTransformRecord:
    """Run one *-transform pass.

    ``verify``: "basic" (symbolic identities only), "colon" (adds the colon
    oracle and the length identity) or "full" (adds exactness of the cone
    and of the output up to ``degree_bound``).
    """
    if verify not in ("basic", "colon", "full"):
        raise InputError(f"unknown verification level {verify!r}")
    inp = StarInput(complex, params)
    v = decompose_into_Q(inp, v_override)
    sig = build_sigma(inp, v)
    check_lift_relations(inp, v, sig)
    cone, trimmed = cone_and_split(inp, sig)
    order = inp.lambda_tilde()
    F2 = inp.complex.module(2)
    pref = list(prefer or [])
    promotions = 0
    while True:
        sel = select_basis_subset(F2, v, order, pref)
        a, b, bad = express_remaining(inp, v, sel, hints)
        if not bad:
            break
        promotions += 1
        if promotions > max_promotions:
            raise VerificationError("basis promotion did not stabilize")
        pref = [bad[0]] + [p for p in sel.lambda_star_prime]
    out, w_star, top_labels = assemble_star(inp, sig, trimmed, sel, a, b, relabel)
    shortcut = not sel.lambda_double_star
    if len(sel.lambda_star_prime) + len(sel.U) != F2.rank:
        raise VerificationError("selected v's and U do not have the rank of F_2")
    rec = StarTransformRecord(
        input=inp,
        v=v,
        sigma=sig,
        cone=cone,
        trimmed=trimmed,
        lambda_tilde=order,
        lambda_star_prime=sel.lambda_star_prime,
        lambda_double_star=sel.lambda_double_star,
        U=sel.U,
        certificate=sel.certificate,
        a=a,
        b=b,
        w_star=w_star,
        output=out,
        depth_shortcut=shortcut,
        promotions=promotions,
        top_labels=top_labels,
    )
    rec.checks["rank_identities"] = (
        out.module(3).rank == len(sel.lambda_double_star) and out.module(2).rank == 3 * len(inp.basis_Lambda) + len(sel.U)
    )
    if verify in ("colon", "full"):
        verify_colon(rec)
    if verify == "full":
        bound = degree_bound if degree_bound is not None else inp.degree_bound()
        verify_record_exactness(rec, bound)
    return rec


def verify_colon(rec: StarTransformRecord, d_max: int | None = None):
    """Im phi*_1 = a : Q by double inclusion, and the length identity."""
    from .ideals.core import Ideal, colon_oracle, quotient_length

    inp = rec.input
    ring = inp.ring
    a = Ideal.image(inp.complex.map(1))
    new = Ideal.image(rec.output.map(1))
    for g in new.gens:
        for x in inp.params:
            if not a.contains(g * x):
                raise VerificationError(f"{g} is not in a : Q")
    if d_max is None:
        d_max = max([inp.complex.max_generator_degree([3])] + [g.degree() for g in new.gens])
    oracle = colon_oracle(a, Ideal(ring, inp.params), d_max)
    for g in oracle.gens:
        if not new.contains(g):
            raise VerificationError(f"oracle colon generator {g} is missing from Im phi*_1")
    measured = quotient_length(a, new)
    predicted = predict_colon_length(inp)
    if measured != predicted:
        raise VerificationError(f"length of (a:Q)/a is {measured}, expected {predicted}")
    rec.checks.update({"colon_oracle": True, "colon_degree_bound": d_max, "measured_length": measured, "predicted_length": predicted})
    return measured


def verify_record_exactness(rec: StarTransformRecord, bound: int):
    reports = {"cone": verify_exactness(rec.cone, bound), "output": verify_exactness(rec.output, bound)}
    for name, rep in reports.items():
        if not rep.exact:
            raise VerificationError(f"{name} is not exact at degree/position {rep.first_failure}")
    rec.checks["exactness_bound"] = bound
    return reports
