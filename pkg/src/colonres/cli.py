"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 a verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from . import __version__
from .complexes import ChainComplex, default_degree_bound, dumps, verify_exactness
from .errors import ColonresError, InputError, ScheduleExhausted, VerificationError
from .ideals import DeterminantalSpec, Ideal, LengthReport, epsilon_table, ideal_power, rees_resolution, symbolic_power
from .ringcore import Field
from .startransform import star_transform

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2
DEFAULT_SEED = 20240601


@dataclass
class RunConfig:
    """Validated command-line settings; embedded verbatim in every report."""

    subcommand: str
    characteristic: int = 0
    exponents: tuple | None = None
    n: int | None = None
    n_max: int | None = None
    weights: tuple | None = None
    degree_bound: int | None = None
    format: str = "json"
    out: str | None = None
    seed: int = DEFAULT_SEED
    input: str | None = None
    params: tuple | None = None

    def to_json(self) -> dict:
        d = asdict(self)
        for k in ("exponents", "weights", "params"):
            if d[k] is not None:
                d[k] = list(d[k])
        return d


def _int_tuple(text: str, count: int, what: str) -> tuple:
    try:
        vals = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InputError(f"{what} must be {count} comma-separated integers, got {text!r}") from None
    if len(vals) != count:
        raise InputError(f"{what} must have {count} entries, got {len(vals)}")
    return vals


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="colonres", description="Colon ideals and symbolic powers via *-transforms.")
    p.add_argument("--version", action="version", version=f"colonres {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--char", dest="characteristic", default="0", help="0 or a prime")
        sp.add_argument("--degree-bound", type=str, default=None)
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--out", default=None, help="write the report here instead of stdout")
        sp.add_argument("--seed", default=str(DEFAULT_SEED))

    def family(sp):
        sp.add_argument("--exponents", required=True, help="α,β,γ,α',β',γ'")
        sp.add_argument("--weights", default="auto", help="w1,w2,w3 or auto")

    sp = sub.add_parser("resolve", help="resolve I^n and check exactness")
    common(sp)
    family(sp)
    sp.add_argument("--n", required=True)

    sp = sub.add_parser("star", help="one *-transform of a stored complex")
    common(sp)
    sp.add_argument("--input", required=True, help="complex JSON")
    sp.add_argument("--params", required=True, help="three comma-separated polynomials")

    sp = sub.add_parser("sympow", help="iterate *-transforms up to I^(n)")
    common(sp)
    family(sp)
    sp.add_argument("--n", required=True)

    sp = sub.add_parser("epsilon", help="length table for the (x,y,z / y,z,x^2) family")
    common(sp)
    sp.add_argument("--n-max", required=True)

    sp = sub.add_parser("verify", help="re-check a stored complex, record or report")
    common(sp)
    sp.add_argument("--input", required=True)
    return p


def _parse_int(text, what, minimum=None):
    try:
        v = int(text)
    except (TypeError, ValueError):
        raise InputError(f"{what} must be an integer, got {text!r}") from None
    if minimum is not None and v < minimum:
        raise InputError(f"{what} must be at least {minimum}, got {v}")
    return v


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(subcommand=ns.subcommand)
    cfg.characteristic = _parse_int(ns.characteristic, "--char", 0)
    Field(cfg.characteristic)
    if ns.degree_bound is not None:
        cfg.degree_bound = _parse_int(ns.degree_bound, "--degree-bound", 0)
    cfg.format = ns.format
    cfg.out = ns.out
    cfg.seed = _parse_int(ns.seed, "--seed")
    if hasattr(ns, "exponents"):
        cfg.exponents = _int_tuple(ns.exponents, 6, "--exponents")
        if any(e < 1 for e in cfg.exponents):
            raise InputError("--exponents must be positive")
        if ns.weights != "auto":
            cfg.weights = _int_tuple(ns.weights, 3, "--weights")
            if any(w < 1 for w in cfg.weights):
                raise InputError("--weights must be positive")
    if hasattr(ns, "n"):
        cfg.n = _parse_int(ns.n, "--n", 2)
    if hasattr(ns, "n_max"):
        cfg.n_max = _parse_int(ns.n_max, "--n-max", 2)
    if hasattr(ns, "input"):
        cfg.input = ns.input
    if hasattr(ns, "params"):
        parts = [t.strip() for t in ns.params.split(",")]
        if len(parts) != 3 or not all(parts):
            raise InputError("--params needs three comma-separated polynomials")
        cfg.params = tuple(parts)
    return cfg


def _spec(cfg: RunConfig) -> DeterminantalSpec:
    return DeterminantalSpec(cfg.exponents, Field(cfg.characteristic), cfg.weights)


def _emit(cfg: RunConfig, payload: dict, text: str, out=None):
    out = out or sys.stdout
    body = dumps(payload) if cfg.format == "json" else text.rstrip("\n") + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        out.write(body)


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _meta(cfg: RunConfig) -> dict:
    return {"config": cfg.to_json(), "version": __version__}


def cmd_resolve(cfg: RunConfig, out=None) -> int:
    spec = _spec(cfg)
    c = rees_resolution(spec, cfg.n)
    bound = cfg.degree_bound if cfg.degree_bound is not None else default_degree_bound(c)
    rep = verify_exactness(c, bound)
    image = Ideal.image(c.map(1))
    power_ok = image.equals(ideal_power(spec.ideal(), cfg.n))
    payload = {
        **_meta(cfg),
        "weights": list(spec.weights),
        "ranks": [m.rank for m in reversed(c.modules)],
        "complex": c.to_json(),
        "exactness": rep.to_json(),
        "image_is_power": power_ok,
    }
    text = (
        f"ranks (F_3, F_2, F_1, F_0) = {tuple(payload['ranks'])}\n"
        f"weights = {spec.weights}\nexact up to degree {bound}: {rep.exact}\nimage equals I^{cfg.n}: {power_ok}"
    )
    _emit(cfg, payload, text, out)
    return EXIT_OK if rep.exact and power_ok else EXIT_VERIFY


def _load_complex(data: dict) -> ChainComplex:
    if isinstance(data, dict) and isinstance(data.get("complex"), dict):
        data = data["complex"]
    try:
        return ChainComplex.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed complex JSON: {exc}") from None


def cmd_star(cfg: RunConfig, out=None) -> int:
    c = _load_complex(_load_json(cfg.input))
    params = tuple(c.ring.parse(p) for p in cfg.params)
    level = "full" if cfg.degree_bound is not None else "colon"
    rec = star_transform(c, params, verify=level, degree_bound=cfg.degree_bound)
    payload = {**_meta(cfg), "record": rec.to_json()}
    text = (
        f"shortcut: {str(rec.depth_shortcut).lower()}\n"
        f"|Λ**| = {len(rec.lambda_double_star)}\n"
        f"output ranks = {rec.output.ranks()}\n"
        f"output length = {rec.output.length}\n"
        f"length of (a:Q)/a = {rec.checks.get('measured_length')}"
    )
    _emit(cfg, payload, text, out)
    print(f"shortcut={str(rec.depth_shortcut).lower()}", file=sys.stderr)
    return EXIT_OK


def cmd_sympow(cfg: RunConfig, out=None) -> int:
    spec = _spec(cfg)
    try:
        final, report, _ = symbolic_power(spec, cfg.n, exactness_bound=cfg.degree_bound)
    except ScheduleExhausted as exc:
        if exc.partial is not None:
            report = exc.partial
            report.config.update(_meta(cfg))
            _emit(cfg, report.to_json(), report.to_text(), out)
        raise
    report.config.update(_meta(cfg))
    _emit(cfg, report.to_json(), report.to_text(), out)
    return EXIT_OK


def cmd_epsilon(cfg: RunConfig, out=None) -> int:
    rows = epsilon_table(cfg.n_max, characteristic=cfg.characteristic)
    payload = {
        **_meta(cfg),
        "schema": "colonres.epsilon-table/1",
        "rows": [{**r, "ratio": str(r["ratio"]), "ratio_float": float(r["ratio"])} for r in rows],
    }
    lines = [f"{'n':>3} {'q':>3} {'length':>7} {'6*len/n^3':>10}"]
    lines += [f"{r['n']:>3} {r['q']:>3} {r['length']:>7} {float(r['ratio']):>10.4f}" for r in rows]
    _emit(cfg, payload, "\n".join(lines), out)
    return EXIT_OK


def _verify_complex(cfg, data) -> dict:
    c = _load_complex(data)
    bound = cfg.degree_bound if cfg.degree_bound is not None else default_degree_bound(c)
    rep = verify_exactness(c, bound)
    if not rep.exact:
        raise VerificationError(f"complex is not exact at (degree, position) {rep.first_failure}")
    if dumps(c.to_json()) != dumps(data):
        raise VerificationError("complex does not round-trip through JSON")
    return {"kind": "complex", "exactness": rep.to_json()}


def _verify_record(cfg, data) -> dict:
    c = _load_complex(data["input"])
    params = tuple(c.ring.parse(p) for p in data["params"])
    bound = cfg.degree_bound
    rec = star_transform(c, params, verify="full" if bound is not None else "colon", degree_bound=bound)
    fresh = rec.to_json()
    for key in ("output", "lambda_double_star", "lambda_star_prime", "U", "w_star", "depth_shortcut"):
        if fresh[key] != data.get(key):
            raise VerificationError(f"stored record disagrees with a fresh run at {key!r}")
    stored_out = _load_complex(data["output"])
    if dumps(stored_out.to_json()) != dumps(data["output"]):
        raise VerificationError("stored output complex does not round-trip")
    return {"kind": "star-record", "checks": rec.checks}


def _verify_report(cfg, data) -> dict:
    rep = LengthReport.from_json(data)
    spec = DeterminantalSpec(tuple(rep.exponents), Field(rep.characteristic), tuple(rep.weights))
    _, fresh, _ = symbolic_power(spec, rep.n, profile=rep.config.get("profile", "auto"))
    if fresh.steps != rep.steps or fresh.total != rep.total or fresh.shortcut_pass != rep.shortcut_pass:
        raise VerificationError("stored length report disagrees with a fresh run")
    if fresh.generators != rep.generators:
        raise VerificationError("stored generators disagree with a fresh run")
    return {"kind": "length-report", "steps": [list(s) for s in fresh.steps], "total": fresh.total}


def cmd_verify(cfg: RunConfig, out=None) -> int:
    data = _load_json(cfg.input)
    if "record" in data and isinstance(data["record"], dict):
        data = data["record"]
    schema = data.get("schema", "")
    if schema.startswith("colonres.star-record/"):
        result = _verify_record(cfg, data)
    elif schema.startswith("colonres.length-report/"):
        result = _verify_report(cfg, data)
    elif "modules" in data and "maps" in data:
        result = _verify_complex(cfg, data)
    elif "complex" in data and isinstance(data["complex"], dict):
        result = _verify_complex(cfg, data["complex"])
    else:
        raise InputError("unrecognized JSON artifact")
    payload = {**_meta(cfg), "verified": True, **result}
    _emit(cfg, payload, f"verified {result['kind']}: ok", out)
    return EXIT_OK


COMMANDS = {
    "resolve": cmd_resolve,
    "star": cmd_star,
    "sympow": cmd_sympow,
    "epsilon": cmd_epsilon,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
        return COMMANDS[cfg.subcommand](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ColonresError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    raise SystemExit(main())
