"""Document parsing and serialization.

The text grammar is documented in docs/FORMAT.md; it names a base field once
and then declares sequences, complexes, morphisms, diagrams, and derivations.
Every loaded value is validated (sequence normal form, complex laws, morphism
closedness, diagram relations), so a parsed document is a usable one.

JSON encoders mirror the same data with a versioned ``"schema": 1`` envelope;
entries over the rationals are written as ``"a/b"`` strings, prime-field
entries as plain integers.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .barcode import Barcode, Interval, make_barcode
from .dualnum import EpsComplex, validate
from .errors import ParseError, ValidationFailed
from .graded import GradedHomElement, make_element
from .hom import HatMorphism, hat
from .linalg import Field, Matrix
from .phantom import Derivation, Diagram
from .seq import Seq, Tail, interval, make_seq

_TOKEN = re.compile(r"""
    (?P<inf>-?inf\b)
  | (?P<word>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<number>-?\d+(?:/\d+)?)
  | (?P<arrow>->)
  | (?P<punct>[{}\[\],:=])
  | (?P<comment>\#[^\n]*)
  | (?P<space>[ \t\r]+)
  | (?P<newline>\n)
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> List[_Tok]:
    out = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "newline":
            line += 1
            col = 1
        else:
            if kind not in ("space", "comment"):
                out.append(_Tok(kind, tok, line, col))
            col += len(tok)
        pos = m.end()
    return out


class _Stream:
    def __init__(self, toks: List[_Tok]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self, expect_kind: str = None, expect_text: str = None) -> _Tok:
        tok = self.peek()
        if tok is None:
            last = self.toks[-1] if self.toks else _Tok("", "", 1, 1)
            raise ParseError("unexpected end of document", last.line, last.col)
        if expect_kind and tok.kind != expect_kind:
            raise ParseError(f"expected {expect_kind}, found {tok.text!r}",
                             tok.line, tok.col)
        if expect_text and tok.text != expect_text:
            raise ParseError(f"expected {expect_text!r}, found {tok.text!r}",
                             tok.line, tok.col)
        self.pos += 1
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.text == text:
            self.pos += 1
            return True
        return False


@dataclass
class Document:
    """A parsed document: one base field plus named values."""

    field: Field
    seqs: Dict[str, Seq] = dfield(default_factory=dict)
    complexes: Dict[str, EpsComplex] = dfield(default_factory=dict)
    morphisms: Dict[str, HatMorphism] = dfield(default_factory=dict)
    diagrams: Dict[str, Diagram] = dfield(default_factory=dict)
    derivations: Dict[str, Derivation] = dfield(default_factory=dict)

    def seq(self, name: str) -> Seq:
        if name not in self.seqs:
            raise ValidationFailed(f"unknown sequence {name!r}")
        return self.seqs[name]

    def complex(self, name: str) -> EpsComplex:
        if name not in self.complexes:
            raise ValidationFailed(f"unknown complex {name!r}")
        return self.complexes[name]

    def morphism(self, name: str) -> HatMorphism:
        if name not in self.morphisms:
            raise ValidationFailed(f"unknown morphism {name!r}")
        return self.morphisms[name]


def _parse_int(s: _Stream) -> int:
    tok = s.next("number")
    if "/" in tok.text:
        raise ParseError("expected an integer", tok.line, tok.col)
    return int(tok.text)


def _parse_endpoint(s: _Stream):
    tok = s.peek()
    if tok is not None and tok.kind == "inf":
        s.next()
        return -math.inf if tok.text.startswith("-") else math.inf
    return _parse_int(s)

def _parse_scalar(s: _Stream, field: Field):
    tok = s.next("number")
    return field.coerce(Fraction(tok.text))


def _parse_matrix(s: _Stream, field: Field, rows: int, cols: int) -> Matrix:
    open_tok = s.next("punct", "[")
    data = []
    nrows = 0
    if not s.accept("]"):
        while True:
            s.next("punct", "[")
            row = []
            if not s.accept("]"):
                while True:
                    row.append(_parse_scalar(s, field))
                    if not s.accept(","):
                        break
                s.next("punct", "]")
            data.append(row)
            nrows += 1
            if not s.accept(","):
                break
        s.next("punct", "]")
    if nrows != rows or any(len(r) != cols for r in data):
        raise ParseError(f"matrix must be {rows} x {cols}",
                         open_tok.line, open_tok.col)
    return Matrix(field, rows, cols,
                  tuple(x for row in data for x in row))


_TAILS = {"zero": Tail.ZERO, "iso": Tail.ISO}


def _parse_seq(s: _Stream, field: Field) -> Seq:
    s.next("punct", "{")
    window = None
    dims = None
    maps_raw: Dict[int, Matrix] = {}
    tails = (Tail.ZERO, Tail.ZERO)
    while not s.accept("}"):
        key = s.next("word")
        if key.text == "interval":
            a = _parse_endpoint(s)
            b = _parse_endpoint(s)
            s.next("punct", "}")
            return interval(field, a, b)
        if key.text == "window":
            lo = _parse_int(s)
            hi = _parse_int(s)
            if hi < lo:
                raise ParseError("window upper end below lower end", key.line, key.col)
            window = (lo, hi)
        elif key.text == "dims":
            if window is None:
                raise ParseError("dims must follow window", key.line, key.col)
            dims = tuple(_parse_int(s) for _ in range(window[1] - window[0] + 1))
            if any(d < 0 for d in dims):
                raise ParseError("dimensions must be nonnegative", key.line, key.col)
        elif key.text == "map":
            if dims is None:
                raise ParseError("map must follow dims", key.line, key.col)
            i = _parse_int(s)
            if not window[0] <= i < window[1]:
                raise ParseError(f"map degree {i} outside window", key.line, key.col)
            k = i - window[0]
            maps_raw[i] = _parse_matrix(s, field, dims[k + 1], dims[k])
        elif key.text == "tails":
            lt = s.next("word")
            rt = s.next("word")
            if lt.text not in _TAILS or rt.text not in _TAILS:
                raise ParseError("tails must be zero or iso", lt.line, lt.col)
            tails = (_TAILS[lt.text], _TAILS[rt.text])
        else:
            raise ParseError(f"unknown sequence key {key.text!r}", key.line, key.col)
    if window is None or dims is None:
        tok = s.peek() or _Tok("", "", 1, 1)
        raise ParseError("sequence needs window and dims", tok.line, tok.col)
    lo, hi = window
    maps = [maps_raw.get(i, Matrix.zeros(field, dims[i - lo + 1], dims[i - lo]))
            for i in range(lo, hi)]
    return make_seq(field, lo, dims, maps, tails[0], tails[1])


def _parse_complex(s: _Stream, field: Field) -> EpsComplex:
    s.next("punct", "{")
    degree = 0
    ranks = None
    d1_raw: Dict[int, Matrix] = {}
    deps_raw: Dict[int, Matrix] = {}
    while not s.accept("}"):
        key = s.next("word")
        if key.text == "degree":
            degree = _parse_int(s)
        elif key.text == "ranks":
            ranks = []
            while s.peek() is not None and s.peek().kind == "number":
                ranks.append(_parse_int(s))
            if not ranks:
                raise ParseError("ranks needs at least one entry", key.line, key.col)
        elif key.text in ("d1", "deps"):
            if ranks is None:
                raise ParseError(f"{key.text} must follow ranks", key.line, key.col)
            i = _parse_int(s)
            k = i - degree
            if not 0 <= k < len(ranks) - 1:
                raise ParseError(f"{key.text} degree {i} outside window",
                                 key.line, key.col)
            m = _parse_matrix(s, field, ranks[k + 1], ranks[k])
            (d1_raw if key.text == "d1" else deps_raw)[k] = m
        else:
            raise ParseError(f"unknown complex key {key.text!r}", key.line, key.col)
    if ranks is None:
        tok = s.peek() or _Tok("", "", 1, 1)
        raise ParseError("complex needs ranks", tok.line, tok.col)
    n = len(ranks)
    d1 = tuple(d1_raw.get(k, Matrix.zeros(field, ranks[k + 1], ranks[k]))
               for k in range(n - 1))
    deps = tuple(deps_raw.get(k, Matrix.zeros(field, ranks[k + 1], ranks[k]))
                 for k in range(n - 1))
    c = EpsComplex(field, degree, tuple(ranks), d1, deps)
    rep = validate(c)
    if not rep.ok:
        raise ValidationFailed(f"complex invariant {rep}")
    return c


def _parse_morphism(s: _Stream, field: Field, name_tok: _Tok,
                    doc: Document) -> HatMorphism:
    s.next("punct", ":")
    src = doc.seq(s.next("word").text)
    s.next("arrow")
    dst = doc.seq(s.next("word").text)
    s.next("punct", "{")
    window = None
    one_raw: Dict[int, Matrix] = {}
    eps_raw: Dict[int, Matrix] = {}
    constant = False
    while not s.accept("}"):
        key = s.next("word")
        if key.text == "window":
            lo = _parse_int(s)
            hi = _parse_int(s)
            if hi < lo:
                raise ParseError("window upper end below lower end", key.line, key.col)
            window = (lo, hi)
        elif key.text in ("one", "eps"):
            if window is None:
                raise ParseError(f"{key.text} must follow window", key.line, key.col)
            i = _parse_int(s)
            if not window[0] <= i <= window[1]:
                raise ParseError(f"component degree {i} outside window",
                                 key.line, key.col)
            m = _parse_matrix(s, field, dst.dim(i), src.dim(i))
            (one_raw if key.text == "one" else eps_raw)[i] = m
        elif key.text == "tails":
            t = s.next("word")
            if t.text == "constant":
                constant = True
            elif t.text != "zero":
                raise ParseError("morphism tails must be zero or constant",
                                 t.line, t.col)
        else:
            raise ParseError(f"unknown morphism key {key.text!r}", key.line, key.col)
    if window is None:
        window = (min(src.lo, dst.lo), max(src.hi, dst.hi))
    lo, hi = window

    def build(raw):
        def fn(i):
            j = min(max(i, lo), hi) if constant else i
            m = raw.get(j)
            if m is not None and (m.rows, m.cols) == (dst.dim(i), src.dim(i)):
                return m
            return Matrix.zeros(field, dst.dim(i), src.dim(i))
        return make_element(src, dst, 0, lo, hi, fn)

    f1 = build(one_raw)
    feps = build(eps_raw) if eps_raw else None
    return hat(f1, feps)


def _parse_diagram(s: _Stream, doc: Document) -> Diagram:
    s.next("punct", "{")
    objects: Dict[str, Seq] = {}
    generators: Dict[str, Tuple[str, str, HatMorphism]] = {}
    relations: List[Tuple[str, str, str]] = []
    while not s.accept("}"):
        key = s.next("word")
        if key.text == "objects":
            while True:
                nm = s.next("word").text
                objects[nm] = doc.seq(nm)
                if not s.accept(","):
                    break
        elif key.text == "gen":
            gname = s.next("word").text
            s.next("punct", ":")
            sn = s.next("word").text
            s.next("arrow")
            dn = s.next("word").text
            s.next("punct", "=")
            mor = doc.morphism(s.next("word").text)
            generators[gname] = (sn, dn, mor)
        elif key.text == "rel":
            outer = s.next("word").text
            inner = s.next("word").text
            s.next("punct", "=")
            equals = s.next("word").text
            relations.append((outer, inner, equals))
        else:
            raise ParseError(f"unknown diagram key {key.text!r}", key.line, key.col)
    return Diagram(objects=objects, generators=generators,
                   relations=tuple(relations))


def _parse_derivation(s: _Stream, doc: Document) -> Derivation:
    name = s.next("word", None)
    if name.text != "on":
        raise ParseError("derivation header must read 'derivation <name> on <diagram>'",
                         name.line, name.col)
    dg_tok = s.next("word")
    if dg_tok.text not in doc.diagrams:
        raise ValidationFailed(f"unknown diagram {dg_tok.text!r}")
    diag = doc.diagrams[dg_tok.text]
    s.next("punct", "{")
    assignment: Dict[str, HatMorphism] = {}
    while not s.accept("}"):
        key = s.next("word", None)
        if key.text != "D":
            raise ParseError("derivation entries read 'D <gen> = <morphism>'",
                             key.line, key.col)
        gname = s.next("word").text
        s.next("punct", "=")
        assignment[gname] = doc.morphism(s.next("word").text)
    return Derivation(diagram=diag, assignment=assignment)


def parse_document(text: str) -> Document:
    s = _Stream(_tokenize(text))
    head = s.next("word", "field")
    ft = s.next()
    if ft.text == "Q":
        field = Field(None)
    elif ft.kind == "number" and "/" not in ft.text:
        field = Field(int(ft.text))
    else:
        raise ParseError("field must be Q or a prime", ft.line, ft.col)
    doc = Document(field=field)
    while s.peek() is not None:
        kw = s.next("word")
        if kw.text in ("seq", "complex", "mor", "diagram", "derivation"):
            name = s.next("word").text
            if kw.text == "seq":
                doc.seqs[name] = _parse_seq(s, field)
            elif kw.text == "complex":
                doc.complexes[name] = _parse_complex(s, field)
            elif kw.text == "mor":
                doc.morphisms[name] = _parse_morphism(s, field, kw, doc)
            elif kw.text == "diagram":
                doc.diagrams[name] = _parse_diagram(s, doc)
            else:
                doc.derivations[name] = _parse_derivation(s, doc)
        else:
            raise ParseError(f"unknown declaration {kw.text!r}", kw.line, kw.col)
    return doc


def parse_path(path: str) -> Document:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_document(fh.read())


# -- JSON encoding ----------------------------------------------------------


def _scalar_out(x, field: Field):
    if field.p is not None:
        return int(x)
    fr = Fraction(x)
    return int(fr) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"


def _scalar_in(x, field: Field):
    return field.coerce(Fraction(x) if isinstance(x, str) else int(x))


def matrix_to_json(m: Matrix) -> list:
    return [[_scalar_out(m.entry(i, j), m.field) for j in range(m.cols)]
            for i in range(m.rows)]


def matrix_from_json(data: list, field: Field, rows: int, cols: int) -> Matrix:
    if len(data) != rows or any(len(r) != cols for r in data):
        raise ValidationFailed(f"matrix payload must be {rows} x {cols}")
    return Matrix(field, rows, cols,
                  tuple(_scalar_in(x, field) for row in data for x in row))


def field_to_json(field: Field):
    return "Q" if field.p is None else field.p


def field_from_json(data) -> Field:
    return Field(None) if data == "Q" else Field(int(data))


def seq_to_json(v: Seq) -> dict:
    return {
        "window": [v.lo, v.hi],
        "dims": list(v.dims),
        "maps": [matrix_to_json(v.map_at(i)) for i in range(v.lo, v.hi)],
        "tails": [v.left_tail.name.lower(), v.right_tail.name.lower()],
    }


def seq_from_json(data: dict, field: Field) -> Seq:
    lo, hi = data["window"]
    dims = tuple(int(d) for d in data["dims"])
    maps = [matrix_from_json(m, field, dims[k + 1], dims[k])
            for k, m in enumerate(data["maps"])]
    tails = [_TAILS[t] for t in data["tails"]]
    return make_seq(field, lo, dims, maps, tails[0], tails[1])


def complex_to_json(c: EpsComplex) -> dict:
    return {
        "degree": c.lo,
        "ranks": list(c.ranks),
        "d1": [matrix_to_json(m) for m in c.d1],
        "deps": [matrix_to_json(m) for m in c.deps],
    }


def complex_from_json(data: dict, field: Field) -> EpsComplex:
    ranks = tuple(int(r) for r in data["ranks"])
    d1 = tuple(matrix_from_json(m, field, ranks[k + 1], ranks[k])
               for k, m in enumerate(data["d1"]))
    deps = tuple(matrix_from_json(m, field, ranks[k + 1], ranks[k])
                 for k, m in enumerate(data["deps"]))
    c = EpsComplex(field, int(data["degree"]), ranks, d1, deps)
    rep = validate(c)
    if not rep.ok:
        raise ValidationFailed(f"complex invariant {rep}")
    return c


def _endpoint_out(x):
    if isinstance(x, int):
        return x
    return "-inf" if x < 0 else "inf"


def _endpoint_in(x):
    if isinstance(x, str):
        return -math.inf if x.startswith("-") else math.inf
    return int(x)


def barcode_to_json(bc: Barcode) -> dict:
    out: Dict[str, int] = {}
    for iv, k in sorted(bc.counts().items(), key=lambda p: p[0].sort_key):
        out[str(iv)] = k
    return {
        "intervals": [[_endpoint_out(iv.a), _endpoint_out(iv.b)]
                      for iv in bc.intervals],
        "counts": out,
    }


def barcode_from_json(data: dict, field: Field) -> Barcode:
    ivs = [Interval(_endpoint_in(a), _endpoint_in(b))
           for a, b in data["intervals"]]
    return make_barcode(field, ivs)


def element_to_json(g: GradedHomElement) -> dict:
    return {
        "degree": g.degree,
        "window": [g.lo, g.hi],
        "components": {str(i): matrix_to_json(g.component(i))
                       for i in range(g.lo, g.hi + 1)},
    }


def morphism_to_json(h: HatMorphism) -> dict:
    out = {"one": element_to_json(h.f1)}
    if not h.feps.is_zero:
        out["eps"] = element_to_json(h.feps)
    return out


def report_json(payload: dict) -> str:
    return json.dumps({"schema": 1, **payload}, indent=2, sort_keys=True)
