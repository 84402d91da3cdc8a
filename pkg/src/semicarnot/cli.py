"""Command line interface.

Exit codes: 0 for a definite answer, 2 when the verdict is UNKNOWN,
1 for invalid input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import presentation
from .bch import sample_semigroup
from .engel import c_coordinate, engel_structure, is_nonabnormal, make_engel, EngelStructure
from .hall import free_nilpotent
from .lie import LieError, center_layers, is_trimmed, lower_central_series
from .linalg import format_rational, parse_rational
from .semigen import (
    UNKNOWN,
    ConstructionCert,
    Decision,
    HalfSpace,
    SaturationConfig,
    check_type_diamond,
    check_type_star,
    decide_halfspace,
    decide_semigenerated,
    find_engel_quotients,
    saturate_edge,
    verify_certificate,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _rationals(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_rational(c) for c in text.split(","))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _vectors(text: str) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(_rationals(part) for part in text.split(";") if part.strip())


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _load(path: str):
    return presentation.load(path)


def _diamond_cert(args) -> ConstructionCert | None:
    data = None
    if getattr(args, "cert", None):
        with open(args.cert) as fh:
            data = json.load(fh)
    else:
        data = presentation.load_sidecar(args.file, "diamond")
    if data is None:
        return None
    return ConstructionCert.from_json(data.get("construction", data))


def cmd_validate(args) -> int:
    g = _load(args.file)
    defect = g.stratification_defect()
    strat = "stratified" if defect is None else f"not stratified (V{defect + 1} != [V1,V{defect}])"
    _emit(
        args,
        {"valid": True, "name": g.name, "layers": list(g.layer_dims), "stratified": defect is None},
        f"OK: {g.name}, layers {tuple(g.layer_dims)}, {strat}",
    )
    return 0


def cmd_info(args) -> int:
    g = _load(args.file)
    tr = is_trimmed(g)
    lcs = [s.dim for s in lower_central_series(g)]
    z = [c.dim for c in center_layers(g)]
    payload = {
        "name": g.name,
        "dim": g.dim,
        "layers": list(g.layer_dims),
        "step": g.step,
        "stratified": g.is_stratified,
        "center_layers": z,
        "trimmed": bool(tr),
        "lower_central_series": lcs,
    }
    text = "\n".join(
        [
            f"name: {g.name}",
            f"dimension: {g.dim}, layers {tuple(g.layer_dims)}, step {g.step}",
            f"stratified: {'yes' if g.is_stratified else 'no'}",
            f"center by layer: {tuple(z)}",
            f"trimmed: {'yes' if tr else 'no'}",
            f"lower central series dimensions: {tuple(lcs)}",
        ]
    )
    _emit(args, payload, text)
    return 0


def cmd_free(args) -> int:
    g = free_nilpotent(args.rank, args.step)
    print(presentation.dumps(g), end="")
    return 0


def cmd_engel(args) -> int:
    print(presentation.dumps(make_engel(args.n)), end="")
    return 0


def cmd_recognize(args) -> int:
    g = _load(args.file)
    s = engel_structure(g)
    if isinstance(s, EngelStructure):
        names = [("X", s.x)] + [(f"Y{i + 1}", y) for i, y in enumerate(s.ys)] + [(f"T{i + 1}", t) for i, t in enumerate(s.ts)] + [("Z", s.z)]
        payload = {
            "engel": True,
            "n": s.n,
            "adapted_basis": {k: [format_rational(c) for c in v] for k, v in names},
            "gram": [[format_rational(c) for c in r] for r in s.gram],
        }
        lines = [f"ENGEL n={s.n}"] + [f"  {k} = {g.format_vector(v)}" for k, v in names]
        _emit(args, payload, "\n".join(lines))
    else:
        _emit(args, {"engel": False, "step": s.step, "reason": s.reason}, f"NOT ENGEL; {s}")
    return 0


def cmd_star(args) -> int:
    g = _load(args.file)
    rep = check_type_star(g)
    _emit(args, rep.to_json(), f"{rep.answer}; witness: {rep.witness_text()}")
    return 2 if rep.answer == "UNKNOWN" else 0


def cmd_diamond(args) -> int:
    g = _load(args.file)
    rep = check_type_diamond(g, _diamond_cert(args))
    payload = {"answer": rep.answer, "route": rep.route}
    if rep.star is not None:
        payload["star"] = rep.star.to_json()
    _emit(args, payload, f"{rep.answer}; witness: {rep.witness_text()}")
    return 2 if rep.answer == "UNKNOWN" else 0


def _config(args) -> SaturationConfig:
    gens = _vectors(args.generators) if args.generators else ()
    return SaturationConfig(generators=gens, seed=args.seed)


def cmd_saturate(args) -> int:
    g = _load(args.file)
    if not args.lam:
        raise UsageError("--lambda is required")
    w = HalfSpace(_rationals(args.lam))
    w.check(g)
    approx = saturate_edge(g, w, _config(args))
    e = approx.edge
    if g.step <= 4 and g.layer_space(3) <= e:
        concl, code = "V3 ⊆ E ⇒ half-space semigenerating", 0
    elif g.step <= 4 and g.layer_space(2) <= e:
        concl, code = "V2 ⊆ E ⇒ half-space semigenerating", 0
    else:
        concl, code = "no conclusion from saturation", 2
    text = f"E ⊇ {{{', '.join(g.format_vector(v) for v in e.basis)}}}; {concl}"
    if args.trace:
        steps = [f"  {s.rule}: +{{{', '.join(g.format_vector(v) for v in s.added)}}}" for s in approx.trace]
        text += "\n" + "\n".join(steps)
    payload = {
        "edge": [[format_rational(c) for c in v] for v in e.basis],
        "trace": [s.to_json() for s in approx.trace],
        "conclusion": concl,
    }
    _emit(args, payload, text)
    return code


def cmd_decide(args) -> int:
    g = _load(args.file)
    if args.lam:
        lam = _rationals(args.lam)
        HalfSpace(lam).check(g)
        d = decide_halfspace(g, lam, _config(args), seed=args.seed, max_samples=args.max_samples, workers=args.workers)
    else:
        d = decide_semigenerated(g, _diamond_cert(args), seed=args.seed, max_samples=args.max_samples, workers=args.workers)
    if args.json:
        print(d.dumps())
    else:
        print(d.summary())
    return 2 if d.verdict == UNKNOWN else 0


def cmd_quotients(args) -> int:
    g = _load(args.file)
    s = find_engel_quotients(g, seed=args.seed, max_samples=args.max_samples, workers=args.workers)
    payload = {
        "exhaustive": s.exhaustive,
        "log": s.log,
        "quotients": [
            {"n": q.n, "layer": q.layer, "ideal": [[format_rational(c) for c in v] for v in q.ideal.basis]}
            for q in s.quotients
        ],
    }
    lines = [f"{len(s.quotients)} Engel quotient(s); search {'exhaustive' if s.exhaustive else 'not exhaustive'}"]
    for q in s.quotients:
        ideal = ", ".join(g.format_vector(v) for v in q.ideal.basis) or "0"
        lines.append(f"  E{q.n}: ideal = {{{ideal}}} ({q.layer})")
    _emit(args, payload, "\n".join(lines))
    return 0 if s.quotients or s.exhaustive else 2


def cmd_abnormal(args) -> int:
    g = _load(args.file)
    if not args.nu:
        raise UsageError("--nu is required")
    nu = _rationals(args.nu)
    if len(nu) != g.rank:
        raise UsageError(f"--nu needs {g.rank} entries")
    vec = nu + (Fraction(0),) * (g.dim - g.rank)
    ok = is_nonabnormal(g, vec)
    _emit(args, {"nonabnormal": ok}, "NON-ABNORMAL" if ok else "ABNORMAL")
    return 0


def cmd_simulate(args) -> int:
    g = _load(args.file)
    if not args.lam:
        raise UsageError("--lambda is required")
    lam = _rationals(args.lam)
    observe = None
    n = g.layer_dims[1] if len(g.layer_dims) > 1 else 0
    if n >= 1 and _is_model_engel(g, n):
        observe = lambda p: c_coordinate(n, p)  # noqa: E731
    run = sample_semigroup(g, lam, args.word_length, args.count, seed=args.seed, workers=args.workers, observe=observe)
    if args.json:
        print(run.dumps())
    else:
        summ = run.summary()
        lines = [f"{run.count} products of {run.word_length} factors (seed {run.seed})"]
        for k, v in summ.items():
            if k != "observed" and v is not None:
                lines.append(f"  {k}: [{v[0]}, {v[1]}]")
        if "observed" in summ:
            o = summ["observed"]
            lines.append(f"  last model coordinate: min {o['min']}, negative {o['negative']}, positive {o['positive']}")
        print("\n".join(lines))
    return 0


def _is_model_engel(g, n) -> bool:
    """True when g is literally the bundled E_n presentation, so model coordinates apply."""
    e = make_engel(n)
    return g.names == e.names and g.layer_dims == e.layer_dims and g.structure() == e.structure()


def cmd_verify(args) -> int:
    g = _load(args.file)
    with open(args.certificate) as fh:
        data = json.load(fh)
    try:
        d = Decision.from_json(data)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed decision file: {exc}") from None
    v = verify_certificate(g, d)
    _emit(args, {"valid": v.ok, "failure": v.failure}, "VALID" if v.ok else f"INVALID: {v.failure}")
    return 0 if v.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="semicarnot", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, file=True, help=None):
        sp = sub.add_parser(name, help=help)
        if file:
            sp.add_argument("file", help="presentation JSON (or a bundled corpus name)")
        sp.add_argument("--json", action="store_true", help="machine readable output")
        sp.set_defaults(func=func)
        return sp

    def search_opts(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--max-samples", type=int, default=200)
        sp.add_argument("--workers", type=int, default=1)

    add("validate", cmd_validate, help="parse and check a presentation")
    add("info", cmd_info, help="layers, center, trimmed test")
    sp = add("free", cmd_free, file=False, help="free nilpotent algebra in a Hall basis")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--step", type=int, required=True)
    sp = add("engel", cmd_engel, file=False, help="Engel-type algebra E_n")
    sp.add_argument("--n", type=int, required=True)
    add("recognize", cmd_recognize, help="recognize Engel type")
    add("star", cmd_star, help="type (star) check")
    sp = add("diamond", cmd_diamond, help="type (diamond) check")
    sp.add_argument("--cert", help="product-quotient certificate JSON")
    for name, func in (("saturate", cmd_saturate), ("decide", cmd_decide)):
        sp = add(name, func, help="edge saturation" if name == "saturate" else "semigeneration decision")
        sp.add_argument("--lambda", dest="lam", help="half-space covector c1,c2,... on V1")
        sp.add_argument("--generators", help="extra V1 vectors for R3, as 'a,b,..;c,d,..'")
        search_opts(sp)
        if name == "saturate":
            sp.add_argument("--trace", action="store_true")
        else:
            sp.add_argument("--cert", help="product-quotient certificate JSON")
    sp = add("quotients", cmd_quotients, help="search for Engel quotients")
    search_opts(sp)
    sp = add("abnormal", cmd_abnormal, help="abnormality of a horizontal direction")
    sp.add_argument("--nu", help="direction c1,c2,... in V1")
    sp = add("simulate", cmd_simulate, help="sample semigroup products")
    sp.add_argument("--lambda", dest="lam")
    sp.add_argument("--word-length", type=int, default=3)
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp = add("verify", cmd_verify, help="re-check a decision certificate")
    sp.add_argument("certificate")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LieError, UsageError, ValueError, OSError) as exc:
        print(str(exc), file=sys.stderr)
        return 1

if __name__ == "__main__":
    sys.exit(main())
