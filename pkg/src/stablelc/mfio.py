"""Reading and writing the ``.mf`` text format.

A document is a sequence of ``key = value`` assignments::

    field = "QQ"
    vars = [x, y]
    f = "x*y"
    A = [["x"]]
    B = [["y"]]
    s = [0]
    t = [1]

Values are double-quoted strings, integers, bare identifiers or bracketed
lists of those; lists may span lines.  ``#`` starts a comment.  ``s`` and
``t`` are optional and inferred from entry degrees when absent.
"""

from __future__ import annotations

import re
from pathlib import Path

from .fields import parse_field
from .matrix import PolyMatrix
from .mf import MatrixFactorization, infer_twists, validate_mf, InvalidFactorization
from .parser import ParseError
from .polynomial import PolyRing

_TOK = re.compile(
    r'(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)|(?P<str>"[^"\n]*")|(?P<int>-?\d+)'
    r"|(?P<ident>[a-zA-Z][a-zA-Z0-9_]*)|(?P<sym>[=\[\],])"
)

REQUIRED = ("field", "vars", "f", "A", "B")
KNOWN = REQUIRED + ("s", "t")


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        where = f"line {line}" + (f", column {col}" if col is not None else "") if line else ""
        super().__init__(f"{where}: {message}" if where else message)
        self.line = line
        self.col = col


def _tokenize(text: str):
    pos, line, line_start = 0, 1, 0
    out = []
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise FormatError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        val = m.group()
        col = pos - line_start + 1
        if kind == "nl":
            out.append(("nl", val, line, col))
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            out.append((kind, val, line, col))
        pos = m.end()
    out.append(("eof", "", line, pos - line_start + 1))
    return out


class _Doc:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def skip_nl(self):
        while self.peek()[0] == "nl":
            self.i += 1

    def value(self):
        kind, val, line, col = self.take()
        if kind == "str":
            return val[1:-1], line
        if kind == "int":
            return int(val), line
        if kind == "ident":
            return val, line
        if kind == "sym" and val == "[":
            items = []
            self.skip_nl()
            if self.peek()[:2] == ("sym", "]"):
                self.take()
                return items, line
            while True:
                self.skip_nl()
                v, _ = self.value()
                items.append(v)
                self.skip_nl()
                k2, v2, l2, c2 = self.take()
                if (k2, v2) == ("sym", "]"):
                    return items, line
                if (k2, v2) != ("sym", ","):
                    raise FormatError(f"expected ',' or ']', found {v2 or 'end of file'!r}", l2, c2)
        raise FormatError(f"expected a value, found {val or 'end of file'!r}", line, col)

    def parse(self) -> dict:
        out: dict = {}
        lines: dict = {}
        while True:
            self.skip_nl()
            kind, key, line, col = self.take()
            if kind == "eof":
                return out, lines
            if kind != "ident":
                raise FormatError(f"expected a key, found {key!r}", line, col)
            if key not in KNOWN:
                raise FormatError(f"unknown key {key!r}", line, col)
            if key in out:
                raise FormatError(f"duplicate key {key!r}", line, col)
            k2, v2, l2, c2 = self.take()
            if (k2, v2) != ("sym", "="):
                raise FormatError(f"expected '=' after {key!r}", l2, c2)
            out[key], lines[key] = self.value()
            k3, v3, l3, c3 = self.peek()
            if k3 not in ("nl", "eof"):
                raise FormatError(f"trailing {v3!r} after value of {key!r}", l3, c3)


def _matrix(ring: PolyRing, value, key: str, line: int) -> PolyMatrix:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise FormatError(f"{key} must be a list of rows", line)
    entries = []
    for i, row in enumerate(value):
        out_row = []
        for j, text in enumerate(row):
            if not isinstance(text, str):
                raise FormatError(f"{key}[{i}][{j}] must be a quoted expression", line)
            try:
                out_row.append(ring.parse(str(text)))
            except ParseError as exc:
                raise FormatError(f"{key}[{i}][{j}]: {exc}", line) from None
        entries.append(out_row)
    cols = len(entries[0]) if entries else 0
    if any(len(r) != cols for r in entries):
        raise FormatError(f"{key} is ragged", line)
    return PolyMatrix(ring, entries, cols=cols)


def parse_mf(text: str, validate: bool = True) -> MatrixFactorization:
    """Parse a ``.mf`` document; raises :class:`FormatError` or :class:`InvalidFactorization`."""
    data, lines = _Doc(text).parse()
    for key in REQUIRED:
        if key not in data:
            raise FormatError(f"missing key {key!r}")
    if not isinstance(data["field"], str):
        raise FormatError("field must be a string", lines["field"])
    try:
        F = parse_field(data["field"])
    except ValueError as exc:
        raise FormatError(str(exc), lines["field"]) from None
    names = data["vars"]
    if not isinstance(names, list) or not all(isinstance(v, str) and re.fullmatch(r"[a-zA-Z][a-zA-Z0-9_]*", v) for v in names):
        raise FormatError("vars must be a list of identifiers", lines["vars"])
    try:
        ring = PolyRing(F, tuple(names))
    except ValueError as exc:
        raise FormatError(str(exc), lines["vars"]) from None
    if not isinstance(data["f"], str):
        raise FormatError("f must be a quoted expression", lines["f"])
    try:
        f = ring.parse(data["f"])
    except ParseError as exc:
        raise FormatError(f"f: {exc}", lines["f"]) from None
    A = _matrix(ring, data["A"], "A", lines["A"])
    B = _matrix(ring, data["B"], "B", lines["B"])
    s, t = data.get("s"), data.get("t")
    for key, val in (("s", s), ("t", t)):
        if val is not None and (not isinstance(val, list) or not all(isinstance(x, int) for x in val)):
            raise FormatError(f"{key} must be a list of integers", lines[key])
    if s is None or t is None:
        tw = infer_twists(ring, f, A, B)
        if tw is None:
            raise FormatError("s/t omitted and no consistent twist assignment exists")
        s = list(tw[0]) if s is None else s
        t = list(tw[1]) if t is None else t
    mf = MatrixFactorization(ring, f, A, B, tuple(s), tuple(t))
    if validate:
        rep = validate_mf(mf)
        if not rep.valid:
            raise InvalidFactorization(rep)
    return mf


def load_mf(path, validate: bool = True) -> MatrixFactorization:
    return parse_mf(Path(path).read_text(encoding="utf-8"), validate=validate)


def dump_mf(mf: MatrixFactorization) -> str:
    def q(p):
        return '"' + p.to_str() + '"'

    def mat(M):
        return "[" + ", ".join("[" + ", ".join(q(p) for p in M.row(i)) + "]" for i in range(M.rows)) + "]"

    return "\n".join(
        [
            f'field = "{mf.field}"',
            "vars = [" + ", ".join(mf.ring.names) + "]",
            f"f = {q(mf.f)}",
            f"A = {mat(mf.A)}",
            f"B = {mat(mf.B)}",
            "s = [" + ", ".join(map(str, mf.s)) + "]",
            "t = [" + ", ".join(map(str, mf.t)) + "]",
        ]
    ) + "\n"
