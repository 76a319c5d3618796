"""Text formats for rings and R-rngs.

A ring record::

    ring <name>
    carrier d1 ... dk
    unity c1 ... ck          # optional; found by search when absent
    mul i j = c1 ... ck      # all k^2 pairs required
    end

An R-rng record starts with ``rrng <name> over <ref>`` and adds ``lact a j``
and ``ract j a`` lines.  ``<ref>`` is a ring defined earlier in the same file,
a path to a ring file, or ``catalog:<spec>``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bimodule import AxiomViolation, RRng, validate_rrng
from .core import AlgebraError, CarrierGroup, FiniteRing, build_ring, build_rng


class ParseError(AlgebraError):
    def __init__(self, path: str, line: int, rule: str, message: str):
        super().__init__(f"{path}:{line}: {rule}: {message}")
        self.path, self.line, self.rule = path, line, rule


@dataclass
class _Record:
    kind: str
    name: str
    line: int
    ref: str | None = None
    carrier: tuple[int, ...] | None = None
    unity: tuple[int, ...] | None = None
    tables: dict[str, dict[tuple[int, int], tuple[tuple[int, ...], int]]] = field(
        default_factory=lambda: {"mul": {}, "lact": {}, "ract": {}})
    end: int | None = None


def _ints(tokens, path, line, what) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(path, line, "integer", f"{what} must be decimal integers") from None


def _scan(text: str, path: str) -> list[_Record]:
    records: list[_Record] = []
    cur: _Record | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if not body:
            continue
        head = body[0]
        if head in ("ring", "rrng"):
            if cur is not None:
                raise ParseError(path, lineno, "missing-end", f"record '{cur.name}' is not closed by 'end'")
            if head == "ring":
                if len(body) != 2:
                    raise ParseError(path, lineno, "ring-header", "expected 'ring <name>'")
                cur = _Record("ring", body[1], lineno)
            else:
                if len(body) != 4 or body[2] != "over":
                    raise ParseError(path, lineno, "rrng-header", "expected 'rrng <name> over <ref>'")
                cur = _Record("rrng", body[1], lineno, ref=body[3])
            continue
        if cur is None:
            raise ParseError(path, lineno, "outside-record", f"'{head}' outside a ring or rrng record")
        if head == "end":
            cur.end = lineno
            records.append(cur)
            cur = None
        elif head == "carrier":
            if cur.carrier is not None:
                raise ParseError(path, lineno, "duplicate", "second carrier line")
            orders = tuple(_ints(body[1:], path, lineno, "carrier orders"))
            if any(d < 2 for d in orders):
                raise ParseError(path, lineno, "carrier", "cyclic orders must be at least 2")
            cur.carrier = orders
        elif head == "unity":
            if cur.kind != "ring":
                raise ParseError(path, lineno, "unity", "unity belongs to ring records")
            cur.unity = tuple(_ints(body[1:], path, lineno, "unity coordinates"))
        elif head in ("mul", "lact", "ract"):
            if head != "mul" and cur.kind != "rrng":
                raise ParseError(path, lineno, head, f"{head} belongs to rrng records")
            if len(body) < 4 or body[3] != "=":
                raise ParseError(path, lineno, head, f"expected '{head} i j = c1 ... ck'")
            i, j = _ints(body[1:3], path, lineno, "indices")
            if (i, j) in cur.tables[head]:
                raise ParseError(path, lineno, "duplicate", f"second '{head} {i} {j}' line")
            cur.tables[head][(i, j)] = (tuple(_ints(body[4:], path, lineno, "coordinates")), lineno)
        else:
            raise ParseError(path, lineno, "unknown-record", f"unknown record '{head}'")
    if cur is not None:
        raise ParseError(path, cur.line, "missing-end", f"record '{cur.name}' is not closed by 'end'")
    return records


def _table(rec: _Record, which: str, rows: int, cols: int, k: int, orders, path: str) -> np.ndarray:
    out = np.zeros((rows, cols, k), dtype=np.int64)
    entries = rec.tables[which]
    for (i, j), (coords, line) in entries.items():
        if not (0 <= i < rows and 0 <= j < cols):
            raise ParseError(path, line, "index-range", f"{which} {i} {j} is out of range")
        if len(coords) != k:
            raise ParseError(path, line, "arity", f"{which} {i} {j} needs {k} coordinates")
        if any(not 0 <= c < d for c, d in zip(coords, orders)):
            raise ParseError(path, line, "coordinate-range", f"{which} {i} {j} has a coordinate out of range")
        out[i, j] = coords
    for i, j in itertools.product(range(rows), range(cols)):
        if (i, j) not in entries:
            raise ParseError(path, rec.end, "missing-record", f"missing '{which} {i} {j}' line")
    return out


def _build_ring(rec: _Record, path: str) -> FiniteRing:
    if rec.carrier is None:
        raise ParseError(path, rec.line, "missing-carrier", f"ring '{rec.name}' has no carrier line")
    k = len(rec.carrier)
    sc = _table(rec, "mul", k, k, k, rec.carrier, path)
    if rec.unity is not None and len(rec.unity) != k:
        raise ParseError(path, rec.line, "arity", f"unity needs {k} coordinates")
    try:
        return build_ring(CarrierGroup(rec.carrier), sc, rec.unity, name=rec.name)
    except AlgebraError as exc:
        raise ParseError(path, rec.end, type(exc).__name__, str(exc)) from None


def _build_rrng(rec: _Record, R: FiniteRing, path: str) -> RRng:
    if rec.carrier is None:
        raise ParseError(path, rec.line, "missing-carrier", f"rrng '{rec.name}' has no carrier line")
    orders, kI, kR = rec.carrier, len(rec.carrier), R.k
    sc = _table(rec, "mul", kI, kI, kI, orders, path)
    lact = _table(rec, "lact", kR, kI, kI, orders, path)
    ract = _table(rec, "ract", kI, kR, kI, orders, path)
    try:
        I = build_rng(CarrierGroup(orders), sc, name=rec.name)
        return validate_rrng(R, I, lact, ract, name=rec.name)
    except AxiomViolation as exc:
        raise ParseError(path, rec.end, exc.axiom, str(exc)) from None
    except AlgebraError as exc:
        raise ParseError(path, rec.end, type(exc).__name__, str(exc)) from None


def resolve_ring(ref: str, known: dict[str, FiniteRing], path: str, line: int) -> FiniteRing:
    if ref in known:
        return known[ref]
    try:
        if ref.startswith("catalog:"):
            from .catalog import _ring, make

            return _ring(make(ref))
        if Path(ref).exists():
            rings = [x for x in load(ref) if isinstance(x, FiniteRing)]
            if rings:
                return rings[0]
    except ParseError:
        raise
    except AlgebraError as exc:
        raise ParseError(path, line, "unresolved-ref", f"{ref}: {exc}") from None
    raise ParseError(path, line, "unresolved-ref", f"cannot resolve ring reference '{ref}'")


def parse(text: str, path: str = "<string>") -> list[FiniteRing | RRng]:
    known: dict[str, FiniteRing] = {}
    out: list[FiniteRing | RRng] = []
    for rec in _scan(text, path):
        if rec.kind == "ring":
            R = _build_ring(rec, path)
            known[rec.name] = R
            out.append(R)
        else:
            R = resolve_ring(rec.ref, known, path, rec.line)
            out.append(_build_rrng(rec, R, path))
    if not out:
        raise ParseError(path, 1, "empty", "no ring or rrng record")
    return out


def load(path: str | Path) -> list[FiniteRing | RRng]:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(str(p), 0, "unreadable", str(exc)) from None
    return parse(text, str(p))


def _coords(c) -> str:
    return " ".join(str(int(x)) for x in c)


def emit_ring(R: FiniteRing, name: str | None = None) -> str:
    lines = [f"ring {name or _safe(R.name)}", f"carrier {_coords(R.orders)}", f"unity {_coords(R.elem(R.unity))}"]
    for i, j in itertools.product(range(R.k), repeat=2):
        lines.append(f"mul {i} {j} = {_coords(R.sc[i, j])}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def emit_rrng(M: RRng, name: str | None = None, ref: str | None = None) -> str:
    """An R-rng record, preceded by its ring unless ``ref`` names the ring elsewhere."""
    rname = _safe(M.R.name)
    head = "" if ref else emit_ring(M.R, rname)
    lines = [f"rrng {name or _safe(M.name)} over {ref or rname}", f"carrier {_coords(M.I.orders)}"]
    kI, kR = M.I.k, M.R.k
    for i, j in itertools.product(range(kI), repeat=2):
        lines.append(f"mul {i} {j} = {_coords(M.I.sc[i, j])}")
    for a, j in itertools.product(range(kR), range(kI)):
        lines.append(f"lact {a} {j} = {_coords(M.lact[a, j])}")
    for j, a in itertools.product(range(kI), range(kR)):
        lines.append(f"ract {j} {a} = {_coords(M.ract[j, a])}")
    lines.append("end")
    return head + "\n".join(lines) + "\n"


def _safe(name: str | None) -> str:
    if not name:
        return "R"
    return "".join(ch if ch.isalnum() or ch in "_-" else "_" for ch in name)
