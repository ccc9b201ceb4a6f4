"""JSON files for complexes and morphisms.

A complex file looks like::

    {"window": {"lo": 0, "hi": 1},
     "objects": [{"generators": 1, "relations": [[8]]},
                 {"generators": 1, "relations": [[8]]}],
     "differentials": [[[2]]],
     "n": 3}

Each relation is one integer vector (a column of the relation matrix) and
each differential is a row-major matrix from C_i to C_{i+1}. Integers that do
not fit in 64 bits are written as decimal strings; both forms are read back.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional, Union

from .complexes import (
    NComplex,
    SeqMorphism,
    Sequence,
    make_seq_morphism,
    make_sequence,
    validate_ncomplex,
)
from .groups import GroupMorphism, IllDefinedMorphismError, PresentedGroup
from .intmat import IntMatrix

INT64_MAX = 2 ** 63 - 1


class ParseError(ValueError):
    """Malformed input; the message starts with the JSON path of the offending value."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


# -- integers ---------------------------------------------------------------------

def encode_int(x: int) -> Union[int, str]:
    return x if -INT64_MAX - 1 <= x <= INT64_MAX else str(x)


def decode_int(x: Any, where: str) -> int:
    if isinstance(x, bool):
        raise ParseError(where, "expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            raise ParseError(where, f"not a decimal integer: {x!r}") from None
    if isinstance(x, float) and x.is_integer():
        return int(x)
    raise ParseError(where, f"expected an integer, got {type(x).__name__}")


def _int_list(x: Any, length: Optional[int], where: str) -> list[int]:
    if not isinstance(x, list):
        raise ParseError(where, "expected a list of integers")
    if length is not None and len(x) != length:
        raise ParseError(where, f"expected {length} entries, got {len(x)}")
    return [decode_int(v, f"{where}[{k}]") for k, v in enumerate(x)]


def _matrix(x: Any, rows: int, cols: int, where: str) -> IntMatrix:
    if not isinstance(x, list):
        raise ParseError(where, "expected a matrix (list of rows)")
    if len(x) != rows:
        raise ParseError(where, f"expected {rows} rows, got {len(x)}")
    return IntMatrix.from_rows([_int_list(r, cols, f"{where}[{k}]") for k, r in enumerate(x)], cols)


def dump_matrix(M: IntMatrix) -> list[list]:
    return [[encode_int(v) for v in row] for row in M.tolist()]


def _require(d: dict, key: str, where: str) -> Any:
    if not isinstance(d, dict):
        raise ParseError(where, "expected an object")
    if key not in d:
        raise ParseError(where, f"missing field {key!r}")
    return d[key]


# -- groups ---------------------------------------------------------------------

def load_group(d: Any, where: str = "group") -> PresentedGroup:
    n = decode_int(_require(d, "generators", where), f"{where}.generators")
    if n < 0:
        raise ParseError(f"{where}.generators", "must be non-negative")
    rels = d.get("relations", [])
    if not isinstance(rels, list):
        raise ParseError(f"{where}.relations", "expected a list of relation vectors")
    cols = [_int_list(r, n, f"{where}.relations[{k}]") for k, r in enumerate(rels)]
    return PresentedGroup(n, IntMatrix.from_columns(cols, n))


def dump_group(G: PresentedGroup) -> dict:
    return {"generators": G.generators,
            "relations": [[encode_int(v) for v in c] for c in G.relations.columns()]}


def parse_group_spec(spec: str) -> PresentedGroup:
    """``"f1,f2,...;rank"`` -> Z/f1 + Z/f2 + ... + Z^rank. Either part may be empty."""
    text = spec.strip()
    factors_part, _, rank_part = text.partition(";")
    try:
        factors = [int(f) for f in factors_part.split(",") if f.strip()]
        rank = int(rank_part) if rank_part.strip() else 0
    except ValueError:
        raise ParseError("--group", f"malformed group spec {spec!r}; expected 'f1,f2,...;rank'") from None
    if rank < 0 or any(f < 0 for f in factors):
        raise ParseError("--group", "factors and rank must be non-negative")
    free = rank + sum(1 for f in factors if f == 0)
    return PresentedGroup.from_invariants(free, [f for f in factors if f])


# -- complexes ------------------------------------------------------------------

def load_complex(data: Any, where: str = "complex", certify: bool = True) -> Sequence:
    """Parse a complex object. With ``certify`` a declared ``n`` is checked (NotAnNComplexError)."""
    win = _require(data, "window", where)
    lo = decode_int(_require(win, "lo", f"{where}.window"), f"{where}.window.lo")
    hi = decode_int(_require(win, "hi", f"{where}.window.hi"), f"{where}.window.hi")
    width = max(hi - lo + 1, 0)
    objs = _require(data, "objects", where)
    if not isinstance(objs, list) or len(objs) != width:
        raise ParseError(f"{where}.objects", f"window [{lo}, {hi}] needs {width} objects")
    groups = [load_group(o, f"{where}.objects[{k}]") for k, o in enumerate(objs)]
    diffs = data.get("differentials", [])
    if not isinstance(diffs, list) or len(diffs) != max(width - 1, 0):
        raise ParseError(f"{where}.differentials", f"window [{lo}, {hi}] needs {max(width - 1, 0)} matrices")
    mats = [_matrix(m, groups[k + 1].generators, groups[k].generators, f"{where}.differentials[{k}]")
            for k, m in enumerate(diffs)]
    try:
        C = make_sequence((lo, hi), groups, mats)
    except IllDefinedMorphismError as exc:
        raise ParseError(f"{where}.differentials", str(exc)) from None
    if "n" in data and data["n"] is not None:
        n = decode_int(data["n"], f"{where}.n")
        if n < 1:
            raise ParseError(f"{where}.n", "must be at least 1")
        if certify:
            return validate_ncomplex(C, n)
    return C


def declared_n(data: Any) -> Optional[int]:
    if isinstance(data, dict) and data.get("n") is not None:
        return decode_int(data["n"], "complex.n")
    return None


def dump_complex(C: Sequence) -> dict:
    out = {"window": {"lo": C.lo, "hi": C.hi},
           "objects": [dump_group(G) for G in C.objects],
           "differentials": [dump_matrix(d.matrix) for d in C.differentials]}
    if isinstance(C, NComplex):
        out["n"] = C.n
    return out


# -- morphisms ------------------------------------------------------------------

def _complex_ref(ref: Any, base: Path, where: str) -> Sequence:
    if isinstance(ref, str):
        path = (base / ref) if not Path(ref).is_absolute() else Path(ref)
        try:
            return load_complex(read_json(path), f"{where}({ref})")
        except OSError as exc:
            raise ParseError(where, f"cannot read {path}: {exc.strerror}") from None
    return load_complex(ref, where)


def load_morphism(data: Any, base: Union[str, Path] = ".", where: str = "morphism") -> SeqMorphism:
    base = Path(base)
    S = _complex_ref(_require(data, "source", where), base, f"{where}.source")
    T = _complex_ref(_require(data, "target", where), base, f"{where}.target")
    comps_raw = data.get("components", [])
    if not isinstance(comps_raw, list):
        raise ParseError(f"{where}.components", "expected a list of {position, matrix} entries")
    comps = {}
    for k, c in enumerate(comps_raw):
        w = f"{where}.components[{k}]"
        i = decode_int(_require(c, "position", w), f"{w}.position")
        if i in comps:
            raise ParseError(w, f"position {i} given twice")
        src, tgt = S.obj(i), T.obj(i)
        M = _matrix(_require(c, "matrix", w), tgt.generators, src.generators, f"{w}.matrix")
        comps[i] = GroupMorphism(src, tgt, M)
    try:
        return make_seq_morphism(S, T, comps)
    except ValueError as exc:
        raise ParseError(f"{where}.components", str(exc)) from None


def dump_morphism(f: SeqMorphism) -> dict:
    return {"source": dump_complex(f.source), "target": dump_complex(f.target),
            "components": [{"position": i, "matrix": dump_matrix(f.component(i).matrix)}
                           for i in f.positions if not f.component(i).matrix.is_zero()]}


# -- files ----------------------------------------------------------------------

def read_json(path: Union[str, Path]) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(path), f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def write_json(obj: Any, path: Union[str, Path, None] = None) -> str:
    text = json.dumps(obj, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def read_complex(path: Union[str, Path], certify: bool = True) -> Sequence:
    return load_complex(read_json(path), str(path), certify)


def read_morphism(path: Union[str, Path]) -> SeqMorphism:
    return load_morphism(read_json(path), Path(path).parent, str(path))

