"""Line-oriented lexing and scalar syntax shared by the file formats."""

from __future__ import annotations

import re
from typing import Iterator

from .errors import ParseError

_REAL = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_UREAL = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_REAL_RE = re.compile(rf"^{_REAL}$")
_COMPLEX_RE = re.compile(rf"^({_REAL})([+-])({_UREAL})i$")
_IMAG_RE = re.compile(rf"^({_REAL})i$")


class Line:
    """One meaningful (non-blank, comment-stripped) source line."""

    __slots__ = ("number", "text", "raw")

    def __init__(self, number: int, text: str, raw: str):
        self.number = number
        self.text = text
        self.raw = raw

    def column_of(self, token: str, start: int = 0) -> int:
        idx = self.raw.find(token, start)
        return idx + 1 if idx >= 0 else 1

    def error(self, message: str, token: str | None = None) -> ParseError:
        col = self.column_of(token) if token else 1
        return ParseError(message, self.number, col)


def decode(text: bytes | str) -> str:
    if isinstance(text, bytes):
        try:
            return text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    return text


def iter_lines(text: bytes | str) -> Iterator[Line]:
    for number, raw in enumerate(decode(text).splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield Line(number, body, raw)


def parse_scalar(token: str, line: Line | None = None, real_only: bool = False) -> complex | float:
    """Parse ``1.5``, ``-2``, ``1e-3+2i``, ``0.5-0.25i`` or ``3i``."""
    if _REAL_RE.match(token):
        return float(token)
    m = _COMPLEX_RE.match(token)
    if m:
        re_part, sign, im_part = m.groups()
        value = complex(float(re_part), float(im_part) * (-1.0 if sign == "-" else 1.0))
    else:
        m = _IMAG_RE.match(token)
        if not m:
            if line is not None:
                raise line.error(f"invalid scalar {token!r}", token)
            raise ParseError(f"invalid scalar {token!r}")
        value = complex(0.0, float(m.group(1)))
    if real_only:
        msg = f"complex scalar {token!r} in a real-field input"
        if line is not None:
            raise line.error(msg, token)
        raise ParseError(msg)
    return value


def parse_scalars(tokens: list[str], count: int, line: Line, real_only: bool) -> list[complex | float]:
    if len(tokens) != count:
        raise line.error(f"expected {count} scalars, found {len(tokens)}")
    return [parse_scalar(t, line, real_only) for t in tokens]


def parse_header(line: Line, key: str) -> str:
    """Return the value of a ``key: value`` line or raise."""
    name, sep, value = line.text.partition(":")
    if not sep or name.strip() != key:
        raise line.error(f"expected '{key}: ...'")
    value = value.strip()
    if not value:
        raise line.error(f"missing value for '{key}'")
    return value


def parse_count(value: str, line: Line, what: str, minimum: int = 0) -> int:
    try:
        n = int(value)
    except ValueError:
        raise line.error(f"{what} must be an integer, got {value!r}", value) from None
    if n < minimum:
        raise line.error(f"{what} must be >= {minimum}, got {n}", value)
    return n


def format_real(x: float) -> str:
    x = float(x) + 0.0  # folds -0.0
    return repr(x)


def format_scalar(z: complex | float, complex_field: bool) -> str:
    if not complex_field:
        return format_real(z.real if isinstance(z, complex) else z)
    z = complex(z)
    re_s = format_real(z.real)
    im = z.imag + 0.0
    sign = "-" if im < 0 else "+"
    return f"{re_s}{sign}{format_real(abs(im))}i"
