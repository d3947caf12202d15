"""Line-oriented session files holding a ring, dual systems, elements and maps.

Example::

    ring prime_field 2

    system S n=2 k=1
    F 1x2 [[1, 0]]

    element x of S
    L 2x1 [[1], [0]]

    map phi S -> T terms=1
    A 2x2 [[1, 1], [0, 1]]
    B 1x1 [[1]]

Blank lines and lines starting with ``#`` are ignored.  Every matrix line
carries an explicit ``RxC`` shape header.  :func:`serialize` writes the
canonical form, which :func:`parse_session` reads back unchanged.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import errors
from .baermap import SandwichMap
from .exactalg import Matrix, RingDescriptor, format_matrix
from .transring import DualSystem, RingElement

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_SHAPE = re.compile(r"(\d+)x(\d+)\Z")


@dataclass
class Session:
    descriptor: RingDescriptor
    systems: dict = field(default_factory=dict)
    elements: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    # map name -> (source name, target name); element name -> system name
    map_ends: dict = field(default_factory=dict)
    element_systems: dict = field(default_factory=dict)

    def system(self, name: str) -> DualSystem:
        try:
            return self.systems[name]
        except KeyError:
            raise errors.ReferenceError(f"undefined system {name!r}") from None

    def map(self, name: str) -> SandwichMap:
        try:
            return self.maps[name]
        except KeyError:
            raise errors.ReferenceError(f"undefined map {name!r}") from None

    def add_system(self, name: str, s: DualSystem):
        _check_name(name)
        if name in self.systems:
            raise errors.InvariantError(f"system {name!r} already defined")
        if s.descriptor != self.descriptor:
            raise errors.DescriptorMismatch(f"system {name!r} over {s.descriptor}")
        self.systems[name] = s

    def add_element(self, name: str, system: str, x: RingElement):
        _check_name(name)
        if name in self.elements:
            raise errors.InvariantError(f"element {name!r} already defined")
        self.elements[name] = x
        self.element_systems[name] = system

    def add_map(self, name: str, source: str, target: str, phi: SandwichMap):
        _check_name(name)
        if name in self.maps:
            raise errors.InvariantError(f"map {name!r} already defined")
        self.maps[name] = phi
        self.map_ends[name] = (source, target)

    def replace_map(self, name: str, phi: SandwichMap):
        self.map(name)
        self.maps[name] = phi


def _check_name(name: str):
    if not _NAME.match(name):
        raise errors.InvariantError(f"invalid name {name!r}")


# -- matrices -------------------------------------------------------------------

class _MatrixParser:
    def __init__(self, text: str, line=None, offset: int = 0):
        self.text = text
        self.pos = 0
        self.line = line
        self.offset = offset

    def error(self, message):
        return errors.ParseError(message, self.line, self.offset + self.pos + 1)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch):
        self.skip()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def scalar(self) -> str:
        self.skip()
        start = self.pos
        if self.peek() == "(":
            end = self.text.find(")", self.pos)
            if end < 0:
                raise self.error("unterminated quaternion")
            self.pos = end + 1
        else:
            while self.pos < len(self.text) and self.text[self.pos] not in ",]":
                self.pos += 1
        token = self.text[start:self.pos].strip()
        if not token:
            raise self.error("missing scalar")
        return token

    def rows(self) -> list[list[str]]:
        self.expect("[")
        rows = []
        if self.peek() == "]":
            self.pos += 1
            return rows
        while True:
            self.expect("[")
            row = []
            if self.peek() != "]":
                while True:
                    row.append((self.scalar(), self.offset + self.pos))
                    if self.peek() == ",":
                        self.pos += 1
                        continue
                    break
            self.expect("]")
            rows.append(row)
            if self.peek() == ",":
                self.pos += 1
                continue
            break
        self.expect("]")
        self.skip()
        if self.pos != len(self.text):
            raise self.error("trailing characters after matrix")
        return rows


def parse_matrix(text: str, descriptor: RingDescriptor, shape=None, line=None, offset: int = 0) -> Matrix:
    """Parse bracketed row syntax such as ``[[1, 1], [0, 1]]``."""
    p = _MatrixParser(text, line, offset)
    raw = p.rows()
    widths = {len(r) for r in raw}
    if len(widths) > 1:
        raise errors.ParseError("rows of unequal length", line, offset + 1)
    cols = widths.pop() if widths else 0
    data = []
    for r in raw:
        out = []
        for token, col in r:
            try:
                out.append(descriptor.parse(token))
            except errors.ParseError as exc:
                raise errors.ParseError(str(exc), line, col) from None
        data.append(out)
    m = Matrix(descriptor, len(raw), cols, data)
    if shape is not None and m.shape != shape:
        raise errors.ParseError(f"matrix has shape {m.rows}x{m.cols}, header says {shape[0]}x{shape[1]}",
                                line, offset + 1)
    return m


def _matrix_line(m: Matrix, label: str) -> str:
    return f"{label} {m.rows}x{m.cols} {format_matrix(m)}"


# -- parsing --------------------------------------------------------------------

def _parse_descriptor(parts, lineno) -> RingDescriptor:
    if len(parts) == 2 and parts[1] in ("rationals", "rational_quaternions"):
        return RingDescriptor(parts[1])
    if len(parts) == 3 and parts[1] == "prime_field":
        try:
            p = int(parts[2])
        except ValueError:
            raise errors.ParseError(f"bad modulus {parts[2]!r}", lineno) from None
        return RingDescriptor(parts[1], p)
    raise errors.ParseError("expected 'ring rationals', 'ring prime_field P' or 'ring rational_quaternions'",
                            lineno, 1)


def _parse_kv(token: str, key: str, lineno) -> int:
    if not token.startswith(key + "="):
        raise errors.ParseError(f"expected {key}=<int>, found {token!r}", lineno)
    try:
        return int(token[len(key) + 1:])
    except ValueError:
        raise errors.ParseError(f"bad integer in {token!r}", lineno) from None


def parse_session(text: str) -> Session:
    """Parse and validate a session; all invariants are enforced on load."""
    lines = [(i + 1, raw) for i, raw in enumerate(text.splitlines())
             if raw.strip() and not raw.lstrip().startswith("#")]
    it = iter(lines)
    session = None

    def data_line(label, header_line):
        try:
            lineno, raw = next(it)
        except StopIteration:
            raise errors.ParseError(f"missing {label} line", header_line) from None
        stripped = raw.strip()
        lead = len(raw) - len(raw.lstrip())
        parts = stripped.split(None, 2)
        if len(parts) < 3 or parts[0] != label:
            raise errors.ParseError(f"expected '{label} RxC [[...]]'", lineno, lead + 1)
        m = _SHAPE.match(parts[1])
        if not m:
            raise errors.ParseError(f"bad shape header {parts[1]!r}", lineno, lead + len(label) + 2)
        shape = (int(m.group(1)), int(m.group(2)))
        offset = raw.index(parts[2], lead + len(label) + len(parts[1]) + 1)
        return parse_matrix(parts[2], session.descriptor, shape, lineno, offset), lineno

    for lineno, raw in it:
        parts = raw.split()
        head = parts[0]
        if head == "ring":
            if session is not None:
                raise errors.ParseError("descriptor already declared", lineno, 1)
            try:
                session = Session(_parse_descriptor(parts, lineno))
            except errors.InvariantError as exc:
                raise errors.InvariantError(f"line {lineno}: {exc}") from None
            continue
        if session is None:
            raise errors.ParseError("first statement must be 'ring ...'", lineno, 1)
        if head == "system":
            if len(parts) != 4:
                raise errors.ParseError("expected 'system NAME n=N k=K'", lineno, 1)
            name = parts[1]
            n, k = _parse_kv(parts[2], "n", lineno), _parse_kv(parts[3], "k", lineno)
            F, fline = data_line("F", lineno)
            if F.shape != (k, n):
                raise errors.ParseError(f"F must be {k}x{n}", fline)
            try:
                session.add_system(name, DualSystem(session.descriptor, n, k, F))
            except errors.InvariantError as exc:
                raise type(exc)(f"line {lineno}: {exc}") from None
        elif head == "element":
            if len(parts) != 4 or parts[2] != "of":
                raise errors.ParseError("expected 'element NAME of SYSTEM'", lineno, 1)
            s = _resolve_system(session, parts[3], lineno)
            L, _ = data_line("L", lineno)
            try:
                session.add_element(parts[1], parts[3], RingElement(s, L))
            except (errors.InvariantError, errors.ShapeMismatch) as exc:
                raise errors.InvariantError(f"line {lineno}: {exc}") from None
        elif head == "map":
            if len(parts) != 6 or parts[3] != "->":
                raise errors.ParseError("expected 'map NAME SOURCE -> TARGET terms=T'", lineno, 1)
            source = _resolve_system(session, parts[2], lineno)
            target = _resolve_system(session, parts[4], lineno)
            count = _parse_kv(parts[5], "terms", lineno)
            terms = []
            for _ in range(count):
                A, _ = data_line("A", lineno)
                B, _ = data_line("B", lineno)
                terms.append((A, B))
            try:
                phi = SandwichMap(source, target, terms)
                session.add_map(parts[1], parts[2], parts[4], phi)
            except (errors.InvariantError, errors.ShapeMismatch) as exc:
                raise errors.InvariantError(f"line {lineno}: {exc}") from None
        else:
            raise errors.ParseError(f"unknown statement {head!r}", lineno, 1)
    if session is None:
        raise errors.ParseError("empty session: missing 'ring' line")
    return session


def _resolve_system(session: Session, name: str, lineno) -> DualSystem:
    if name not in session.systems:
        raise errors.ReferenceError(f"undefined system {name!r}", lineno)
    return session.systems[name]


def serialize(session: Session) -> str:
    """Canonical text form; byte-deterministic."""
    blocks = [f"ring {session.descriptor}"]
    for name, s in session.systems.items():
        blocks.append(f"system {name} n={s.n} k={s.k}\n{_matrix_line(s.F, 'F')}")
    for name, x in session.elements.items():
        blocks.append(f"element {name} of {session.element_systems[name]}\n{_matrix_line(x.L, 'L')}")
    for name, phi in session.maps.items():
        src, tgt = session.map_ends[name]
        lines = [f"map {name} {src} -> {tgt} terms={len(phi.terms)}"]
        for A, B in phi.terms:
            lines.append(_matrix_line(A, "A"))
            lines.append(_matrix_line(B, "B"))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def load(path) -> Session:
    with open(path, encoding="utf-8") as fh:
        return parse_session(fh.read())


def save(session: Session, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(session))
