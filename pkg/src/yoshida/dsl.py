"""Groupoid description files.

Two input forms are accepted.  The component DSL::

    # C2 acting on two objects, plus a copy of S3
    groupoid G {
      component a { isotropy = cyclic(2); objects = 2; }
      component b { isotropy = symmetric(3); objects = 1; }
    }

where the isotropy expression is ``cyclic(n)``, ``symmetric(n)``, ``klein4``
or ``table("path.tbl")``; and raw JSON as accepted by
:func:`yoshida.groupoid.validate`.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from . import groupoid as gpd


class SpecError(Exception):
    pass


class SpecSyntaxError(SpecError):
    def __init__(self, msg, line, col):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class UnknownGroupExpr(SpecError):
    pass


@dataclass
class ComponentSpec:
    name: str
    isotropy: str          # normalized expression text, e.g. "cyclic(2)"
    objects: int
    table_path: str | None = None


@dataclass
class GroupoidSpec:
    name: str
    components: list = field(default_factory=list)
    base_dir: Path = field(default_factory=Path)
    raw: dict | None = None


_TOKEN = re.compile(r'''
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<int>\d+) | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*") | (?P<punct>[{}();=])
''', re.VERBOSE)


def _tokenize(text):
    line, col, pos = 1, 1, 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SpecSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind, val = m.lastgroup, m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                toks.append((kind, val, line, col))
            col += len(val)
        pos = m.end()
    toks.append(("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, value=None):
        t = self.next()
        if t[0] != kind or (value is not None and t[1] != value):
            want = value or kind
            got = t[1] or "end of input"
            raise SpecSyntaxError(f"expected {want!r}, found {got!r}", t[2], t[3])
        return t

    def positive_int(self, what):
        t = self.expect("int")
        n = int(t[1])
        if n < 1:
            raise SpecSyntaxError(f"{what} must be at least 1, found {n}", t[2], t[3])
        return n

    def gexpr(self):
        t = self.expect("ident")
        name = t[1]
        if name == "klein4":
            return "klein4", None
        if name in ("cyclic", "symmetric"):
            self.expect("punct", "(")
            n = self.positive_int(f"{name} argument")
            self.expect("punct", ")")
            return f"{name}({n})", None
        if name == "table":
            self.expect("punct", "(")
            s = self.expect("string")[1][1:-1]
            self.expect("punct", ")")
            return f'table("{s}")', s
        raise UnknownGroupExpr(f"line {t[2]}, column {t[3]}: unknown group expression {name!r}")

    def spec(self):
        self.expect("ident", "groupoid")
        name = self.expect("ident")[1]
        self.expect("punct", "{")
        comps = []
        while self.peek()[:2] == ("ident", "component"):
            self.next()
            cname = self.expect("ident")[1]
            self.expect("punct", "{")
            self.expect("ident", "isotropy")
            self.expect("punct", "=")
            expr, path = self.gexpr()
            self.expect("punct", ";")
            self.expect("ident", "objects")
            self.expect("punct", "=")
            n = self.positive_int("objects")
            self.expect("punct", ";")
            self.expect("punct", "}")
            comps.append(ComponentSpec(cname, expr, n, path))
        if not comps:
            t = self.peek()
            raise SpecSyntaxError("a groupoid needs at least one component", t[2], t[3])
        self.expect("punct", "}")
        self.expect("eof")
        return GroupoidSpec(name, comps)


def parse_spec(text: str, base_dir=".") -> GroupoidSpec:
    spec = _Parser(text).spec()
    spec.base_dir = Path(base_dir)
    return spec


def group_from_expr(comp: ComponentSpec, base_dir=Path(".")) -> gpd.FiniteGroupoid:
    expr = comp.isotropy
    if expr == "klein4":
        return gpd.klein4()
    m = re.fullmatch(r"(cyclic|symmetric)\((\d+)\)", expr)
    if m:
        n = int(m.group(2))
        return gpd.cyclic(n) if m.group(1) == "cyclic" else gpd.symmetric(n)
    if comp.table_path is not None:
        path = Path(comp.table_path)
        if not path.is_absolute():
            path = Path(base_dir) / path
        if not path.exists():
            raise FileNotFoundError(f"table file {str(path)!r} not found")
        return gpd.read_table(path)
    raise UnknownGroupExpr(f"unknown group expression {expr!r}")


def build(spec: GroupoidSpec) -> gpd.FiniteGroupoid:
    """Materialize a spec as a disjoint union of ``group × Pair(n)`` components."""
    if spec.raw is not None:
        return gpd.validate(spec.raw)
    parts = []
    for comp in spec.components:
        grp = group_from_expr(comp, spec.base_dir)
        parts.append(grp if comp.objects == 1 else gpd.product(grp, gpd.pair_groupoid(comp.objects)))
    return parts[0] if len(parts) == 1 else gpd.disjoint_union(parts)


def load(path) -> tuple[GroupoidSpec, gpd.FiniteGroupoid]:
    """Read a ``.json`` raw groupoid or a DSL file and build it."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON: {exc}") from None
        spec = GroupoidSpec(path.stem, [], path.parent, raw)
    else:
        spec = parse_spec(text, path.parent)
    return spec, build(spec)
