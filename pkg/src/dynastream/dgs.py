"""Line-oriented DGS event trace format.

Grammar::

    DGS004
    <name> <int> <int>
    st <time>
    an <id> [attrs]        dn <id>
    ae <id> <src> <dst> [<|>] [attrs]
    de <id>
    cn <id> <attrs>        ce <id> <attrs>        cg <attrs>

Attributes are ``key=value`` words; a value is a number, ``true``/``false``, a
double-quoted string, or a ``{a,b,...}`` list. ``key=`` removes the attribute.
``#`` starts a comment. A ``cn``/``ce``/``cg`` line with several attributes
reads as one event per attribute, in order.

Reading is a single pass over the lines; nothing is retained between lines.
"""

from __future__ import annotations

import io
import math
import os
import re
from typing import BinaryIO, Iterable, Iterator, TextIO, Union

from .events import (
    EdgeAdded,
    EdgeAttrChanged,
    EdgeRemoved,
    GraphAttrChanged,
    GraphEvent,
    NodeAdded,
    NodeAttrChanged,
    NodeRemoved,
    StepBegins,
)

MAGIC = "DGS004"

_ID_RE = re.compile(r'[^\s"#=]+')
_NUMBER_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_NONFINITE = {"nan", "+nan", "-nan", "inf", "+inf", "-inf", "infinity", "+infinity", "-infinity"}
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "r": "\r", "t": "\t"}


class DgsSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class DgsWriteError(ValueError):
    pass


# ---------------------------------------------------------------- reading


def _scan_words(text: str, lineno: int) -> list[tuple[str, int]]:
    """Split a line into words, keeping quoted strings and braces intact.

    Returns ``(word, column)`` pairs; stops at an unquoted ``#``.
    """
    words = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "#":
            break
        start = i
        depth = 0
        while i < n:
            c = text[i]
            if c == '"':
                i += 1
                while i < n and text[i] != '"':
                    i += 2 if text[i] == "\\" else 1
                if i >= n:
                    raise DgsSyntaxError("unterminated string", lineno, start + 1)
                i += 1
            elif c == "{":
                depth += 1
                i += 1
            elif c == "}":
                depth -= 1
                i += 1
            elif depth == 0 and (c.isspace() or c == "#"):
                break
            else:
                i += 1
        if depth > 0:
            raise DgsSyntaxError("unterminated list", lineno, start + 1)
        words.append((text[start:i], start + 1))
    return words


class _ValueParser:
    def __init__(self, text: str, lineno: int, col0: int):
        self.s = text
        self.i = 0
        self.lineno = lineno
        self.col0 = col0

    def error(self, message):
        raise DgsSyntaxError(message, self.lineno, self.col0 + self.i)

    def parse(self):
        value = self.value()
        if self.i != len(self.s):
            self.error(f"unexpected {self.s[self.i:]!r} after value")
        return value

    def skip_ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def value(self):
        s = self.s
        if self.i >= len(s):
            self.error("missing value")
        c = s[self.i]
        if c == '"':
            return self.string()
        if c == "{":
            return self.list()
        start = self.i
        while self.i < len(s) and s[self.i] not in ",}" and not s[self.i].isspace():
            self.i += 1
        return _scalar(s[start:self.i], self.lineno, self.col0 + start)

    def string(self):
        s = self.s
        self.i += 1
        out = []
        while True:
            if self.i >= len(s):
                self.error("unterminated string")
            c = s[self.i]
            if c == '"':
                self.i += 1
                return "".join(out)
            if c == "\\":
                nxt = s[self.i + 1] if self.i + 1 < len(s) else ""
                if nxt not in _ESCAPES:
                    self.error(f"unknown escape \\{nxt}")
                out.append(_ESCAPES[nxt])
                self.i += 2
            else:
                out.append(c)
                self.i += 1

    def list(self):
        self.i += 1
        items = []
        self.skip_ws()
        if self.i < len(self.s) and self.s[self.i] == "}":
            self.i += 1
            return ()
        while True:
            self.skip_ws()
            items.append(self.value())
            self.skip_ws()
            if self.i >= len(self.s):
                self.error("unterminated list")
            c = self.s[self.i]
            self.i += 1
            if c == "}":
                return tuple(items)
            if c != ",":
                self.i -= 1
                self.error(f"expected ',' or '}}' in list, got {c!r}")


def _scalar(tok: str, lineno: int, col: int):
    if tok == "true":
        return True
    if tok == "false":
        return False
    if _NUMBER_RE.fullmatch(tok):
        value = float(tok)
        if not math.isfinite(value):
            raise DgsSyntaxError(f"non-finite number {tok!r}", lineno, col)
        return value
    if tok.lower() in _NONFINITE:
        raise DgsSyntaxError(f"non-finite number {tok!r}", lineno, col)
    raise DgsSyntaxError(f"malformed attribute value {tok!r}", lineno, col)


def _ident(word: str, col: int, lineno: int, what: str = "identifier") -> str:
    if not _ID_RE.fullmatch(word):
        raise DgsSyntaxError(f"malformed {what} {word!r}", lineno, col)
    return word


def _attr(word: str, col: int, lineno: int, simple: bool):
    key, eq, raw = word.partition("=")
    if not eq:
        raise DgsSyntaxError(f"malformed attribute {word!r} (expected key=value)", lineno, col)
    _ident(key, col, lineno, "attribute key")
    if not raw:
        return key, None
    vcol = col + len(key) + 1
    if simple:
        return key, _scalar(raw, lineno, vcol)
    return key, _ValueParser(raw, lineno, vcol).parse()


def _attrs(words, lineno, simple, allow_removal) -> list[tuple[str, object]]:
    out = []
    seen = set()
    for word, col in words:
        key, value = _attr(word, col, lineno, simple)
        if value is None and not allow_removal:
            raise DgsSyntaxError(f"attribute {key!r} has no value", lineno, col)
        if key in seen and not allow_removal:
            raise DgsSyntaxError(f"duplicate attribute {key!r}", lineno, col)
        seen.add(key)
        out.append((key, value))
    return out


def parse_line(text: str, lineno: int) -> list[GraphEvent]:
    """Parse one event line (after the header) into zero or more events."""
    simple = '"' not in text and "{" not in text
    if simple:
        cut = text.find("#")
        if cut >= 0:
            text = text[:cut]
        parts = text.split()
        if not parts:
            return []
        # columns only matter on the error path; recomputed lazily there
        words = [(w, 0) for w in parts]
    else:
        words = _scan_words(text, lineno)
        if not words:
            return []
    try:
        return _parse_words(words, lineno, simple)
    except DgsSyntaxError as err:
        if simple:
            raise _relocate(err, text, lineno) from None
        raise


def _relocate(err: DgsSyntaxError, text: str, lineno: int) -> DgsSyntaxError:
    # re-run with real columns
    try:
        _parse_words(_scan_words(text, lineno), lineno, True)
    except DgsSyntaxError as located:
        return located
    return DgsSyntaxError(err.message, lineno, 1)


def _parse_words(words, lineno, simple) -> list[GraphEvent]:
    (kw, kwcol), rest = words[0], words[1:]

    def need(count, usage):
        if len(rest) < count:
            raise DgsSyntaxError(f"'{kw}' expects {usage}", lineno, kwcol)

    def exact(count, usage):
        if len(rest) != count:
            raise DgsSyntaxError(f"'{kw}' expects {usage}", lineno, kwcol)

    try:
        if kw == "an":
            need(1, "<id> [attrs]")
            nid = _ident(*rest[0], lineno, "node id")
            return [NodeAdded(nid, dict(_attrs(rest[1:], lineno, simple, False)))]
        if kw == "ae":
            need(3, "<id> <src> <dst> [<|>] [attrs]")
            eid = _ident(*rest[0], lineno, "edge id")
            src = _ident(*rest[1], lineno, "node id")
            dst = _ident(*rest[2], lineno, "node id")
            tail = rest[3:]
            directed = False
            if tail and tail[0][0] in ("<", ">"):
                directed = True
                if tail[0][0] == "<":
                    src, dst = dst, src
                tail = tail[1:]
            return [EdgeAdded(eid, src, dst, directed, dict(_attrs(tail, lineno, simple, False)))]
        if kw == "st":
            exact(1, "<time>")
            word, col = rest[0]
            time = _scalar(word, lineno, col)
            if isinstance(time, bool) or time < 0:
                raise DgsSyntaxError(f"step time must be a non-negative number, got {word!r}", lineno, col)
            return [StepBegins(time)]
        if kw == "dn":
            exact(1, "<id>")
            return [NodeRemoved(_ident(*rest[0], lineno, "node id"))]
        if kw == "de":
            exact(1, "<id>")
            return [EdgeRemoved(_ident(*rest[0], lineno, "edge id"))]
        if kw == "cn" or kw == "ce":
            need(2, "<id> <attrs>")
            target = _ident(*rest[0], lineno, "node id" if kw == "cn" else "edge id")
            cls = NodeAttrChanged if kw == "cn" else EdgeAttrChanged
            return [cls(target, k, v) for k, v in _attrs(rest[1:], lineno, simple, True)]
        if kw == "cg":
            need(1, "<attrs>")
            return [GraphAttrChanged(k, v) for k, v in _attrs(rest, lineno, simple, True)]
    except ValueError as err:
        if isinstance(err, DgsSyntaxError):
            raise
        raise DgsSyntaxError(str(err), lineno, kwcol) from None
    raise DgsSyntaxError(f"unknown keyword {kw!r}", lineno, kwcol)


def _parse_header(lines: Iterator[tuple[int, str]]) -> str:
    try:
        lineno, first = next(lines)
    except StopIteration:
        raise DgsSyntaxError(f"empty input, expected magic {MAGIC!r}", 1) from None
    if first.strip() != MAGIC:
        raise DgsSyntaxError(f"bad magic line {first.strip()!r}, expected {MAGIC!r}", lineno)
    try:
        lineno, second = next(lines)
    except StopIteration:
        raise DgsSyntaxError("missing header line '<name> <int> <int>'", lineno + 1) from None
    parts = second.split()
    if len(parts) != 3 or not _ID_RE.fullmatch(parts[0]) or not all(
        re.fullmatch(r"[+-]?\d+", p) for p in parts[1:]
    ):
        raise DgsSyntaxError(f"malformed header {second.strip()!r}, expected '<name> <int> <int>'", lineno)
    return parts[0]


Source = Union[str, bytes, os.PathLike, BinaryIO, TextIO, Iterable]


def _lines(source) -> Iterator[tuple[int, str]]:
    if isinstance(source, bytes):
        source = io.BytesIO(source)
    elif isinstance(source, str):
        source = iter(source.split("\n"))
    lineno = 0
    for raw in source:
        lineno += 1
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError as err:
                raise DgsSyntaxError(f"invalid UTF-8: {err.reason}", lineno, err.start + 1) from None
        if raw.endswith("\n"):
            raw = raw[:-1]
        if raw.endswith("\r"):
            raw = raw[:-1]
        yield lineno, raw


class DgsReader:
    """Streaming reader. Iterating yields events; :attr:`name` is available
    after construction, :attr:`line` tracks the line of the last event."""

    def __init__(self, source):
        self._lines = _lines(source)
        self.name = _parse_header(self._lines)
        self.line = 2

    def __iter__(self) -> Iterator[GraphEvent]:
        for lineno, text in self._lines:
            self.line = lineno
            if not text or text[0] == "#":
                continue
            yield from parse_line(text, lineno)

    def with_lines(self) -> Iterator[tuple[int, GraphEvent]]:
        for event in self:
            yield self.line, event


def read_dgs(source) -> Iterator[GraphEvent]:
    """Stream events from DGS text.

    ``source`` may be a ``str`` holding the document, ``bytes``, a binary or
    text file object, or any iterable of lines. Paths are handled by
    :func:`load_dgs`. The header is validated on first iteration.
    """
    reader = DgsReader(source)
    yield from reader


def load_dgs(path: str | os.PathLike) -> list[GraphEvent]:
    with open(path, "rb") as fh:
        return list(read_dgs(fh))


def parse_dgs(text: str | bytes) -> tuple[str, list[GraphEvent]]:
    """Parse a whole document; returns ``(name, events)``."""
    reader = DgsReader(text)
    return reader.name, list(reader)


# ---------------------------------------------------------------- writing


def _check_ident(value: str, what: str) -> str:
    if not isinstance(value, str) or not _ID_RE.fullmatch(value):
        raise DgsWriteError(f"{what} {value!r} cannot be written: contains whitespace, '\"', '#' or '='")
    return value


def format_number(x: float) -> str:
    if x.is_integer() and abs(x) < 1e16:
        if x == 0 and math.copysign(1.0, x) < 0:
            return "-0.0"
        return str(int(x))
    return repr(x)


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        escaped = (
            value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\r", "\\r")
        )
        return f'"{escaped}"'
    if isinstance(value, (int, float)):
        x = float(value)
        if not math.isfinite(x):
            raise DgsWriteError(f"non-finite number {value!r}")
        return format_number(x)
    if isinstance(value, (tuple, list)):
        return "{" + ",".join(format_value(v) for v in value) + "}"
    raise DgsWriteError(f"unsupported attribute value {value!r}")


def _format_attr(key: str, value) -> str:
    _check_ident(key, "attribute key")
    return f"{key}=" if value is None else f"{key}={format_value(value)}"


def _format_attrs(attrs) -> str:
    return "".join(" " + _format_attr(k, attrs[k]) for k in sorted(attrs))


def format_event(event: GraphEvent) -> str:
    match event:
        case StepBegins(time=t):
            return f"st {format_number(t)}"
        case NodeAdded(node_id=nid, attrs=attrs):
            return f"an {_check_ident(nid, 'node id')}{_format_attrs(attrs)}"
        case NodeRemoved(node_id=nid):
            return f"dn {_check_ident(nid, 'node id')}"
        case EdgeAdded(edge_id=eid, src_id=u, dst_id=v, directed=directed, attrs=attrs):
            arrow = " >" if directed else ""
            return (
                f"ae {_check_ident(eid, 'edge id')} {_check_ident(u, 'node id')} "
                f"{_check_ident(v, 'node id')}{arrow}{_format_attrs(attrs)}"
            )
        case EdgeRemoved(edge_id=eid):
            return f"de {_check_ident(eid, 'edge id')}"
        case NodeAttrChanged(node_id=nid, key=key, value=value):
            return f"cn {_check_ident(nid, 'node id')} {_format_attr(key, value)}"
        case EdgeAttrChanged(edge_id=eid, key=key, value=value):
            return f"ce {_check_ident(eid, 'edge id')} {_format_attr(key, value)}"
        case GraphAttrChanged(key=key, value=value):
            return f"cg {_format_attr(key, value)}"
    raise TypeError(f"not a graph event: {event!r}")


class DgsWriter:
    """Sink writing events to a text stream as they arrive."""

    def __init__(self, stream: TextIO, name: str = "graph"):
        self.stream = stream
        stream.write(f"{MAGIC}\n{_check_ident(name, 'graph name')} 0 0\n")

    def send(self, event: GraphEvent) -> None:
        self.stream.write(format_event(event) + "\n")


def dump_dgs(events: Iterable[GraphEvent], stream: TextIO, name: str = "graph") -> None:
    writer = DgsWriter(stream, name)
    for event in events:
        writer.send(event)


def write_dgs(events: Iterable[GraphEvent], name: str = "graph") -> bytes:
    buf = io.StringIO(newline="")
    dump_dgs(events, buf, name)
    return buf.getvalue().encode("utf-8")


def save_dgs(events: Iterable[GraphEvent], path: str | os.PathLike, name: str = "graph") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        dump_dgs(events, fh, name)
