"""JSON presentation files for graded Lie algebras.

Format::

    {"name": "...", "layers": [2, 1, 1], "basis": ["X", "Y", "T", "Z"],
     "brackets": [{"left": "Y", "right": "X", "result": {"T": "1"}}, ...]}

Unlisted brackets are zero and antisymmetry is implied.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .lie import LieAlgebra, PresentationError
from .linalg import format_rational, parse_rational

CORPUS_DIR = Path(__file__).parent / "corpus"


def from_dict(data: Any, check: bool = True) -> LieAlgebra:
    if not isinstance(data, dict):
        raise PresentationError("top level: expected an object")
    for key in ("layers", "basis", "brackets"):
        if key not in data:
            raise PresentationError(f"missing field {key!r}")
    name = data.get("name", "unnamed")
    if not isinstance(name, str):
        raise PresentationError("name: expected a string")
    layers = data["layers"]
    if not isinstance(layers, list) or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 0 for d in layers):
        raise PresentationError("layers: expected a list of non-negative integers")
    basis = data["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, str) and b for b in basis):
        raise PresentationError("basis: expected a list of names")
    if len(basis) != sum(layers):
        raise PresentationError(f"basis: {len(basis)} names but layers sum to {sum(layers)}")
    index = {b: i for i, b in enumerate(basis)}
    if len(index) != len(basis):
        raise PresentationError("basis: duplicate names")
    entries = data["brackets"]
    if not isinstance(entries, list):
        raise PresentationError("brackets: expected a list")
    table: dict[tuple[int, int], dict[int, Any]] = {}
    for n, entry in enumerate(entries):
        where = f"brackets[{n}]"
        if not isinstance(entry, dict):
            raise PresentationError(f"{where}: expected an object")
        try:
            left, right, result = entry["left"], entry["right"], entry["result"]
        except KeyError as exc:
            raise PresentationError(f"{where}: missing field {exc.args[0]!r}") from None
        for side, nm in (("left", left), ("right", right)):
            if nm not in index:
                raise PresentationError(f"{where}.{side}: unknown basis element {nm!r}")
        if not isinstance(result, dict):
            raise PresentationError(f"{where}.result: expected an object")
        res = {}
        for target, coeff in result.items():
            if target not in index:
                raise PresentationError(f"{where}.result: unknown basis element {target!r}")
            try:
                res[index[target]] = parse_rational(coeff)
            except ValueError:
                raise PresentationError(f"{where}.result.{target}: bad rational {coeff!r}") from None
        i, j = index[left], index[right]
        if i > j:
            i, j = j, i
            res = {k: -c for k, c in res.items()}
        if (i, j) in table and table[(i, j)] != res:
            raise PresentationError(f"{where}: conflicts with an earlier entry for [{left},{right}]")
        table[(i, j)] = res
    return LieAlgebra(name, layers, basis, table, check=check)


def to_dict(g: LieAlgebra) -> dict:
    brackets = []
    for (i, j), res in sorted(g.structure().items()):
        brackets.append(
            {
                "left": g.names[i],
                "right": g.names[j],
                "result": {g.names[k]: format_rational(c) for k, c in sorted(res.items())},
            }
        )
    return {"name": g.name, "layers": list(g.layer_dims), "basis": list(g.names), "brackets": brackets}


def loads(text: str, check: bool = True) -> LieAlgebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(data, check=check)


def dumps(g: LieAlgebra) -> str:
    return json.dumps(to_dict(g), indent=2) + "\n"


def resolve_path(path: str | Path) -> Path:
    """The path itself if it exists, else the bundled corpus file of that name."""
    p = Path(path)
    if p.exists():
        return p
    for cand in (CORPUS_DIR / p.name, CORPUS_DIR / f"{p.name}.json"):
        if cand.exists():
            return cand
    raise FileNotFoundError(f"no such presentation file: {path}")


def load(path: str | Path, check: bool = True) -> LieAlgebra:
    p = resolve_path(path)
    try:
        return loads(p.read_text(), check=check)
    except PresentationError as exc:
        raise PresentationError(f"{p}: {exc}") from None


def load_corpus(name: str) -> LieAlgebra:
    return load(CORPUS_DIR / f"{name}.json")


def corpus_names() -> list[str]:
    return sorted(
        p.stem for p in CORPUS_DIR.glob("*.json")
        if "." not in p.stem and p.stem != "bad-jacobi"
    )


def load_sidecar(path: str | Path, kind: str) -> dict | None:
    """Sidecar ``<stem>.<kind>.json`` next to a presentation file, if present."""
    p = resolve_path(path)
    side = p.with_name(f"{p.stem}.{kind}.json")
    if not side.exists():
        return None
    return json.loads(side.read_text())
