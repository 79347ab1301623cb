"""Permutations on {0, ..., degree-1} with left-to-right composition.

The composition convention throughout the package is "apply the left factor
first": (p * q)(i) = q(p(i)).  Conjugation is x ** g = g^-1 * x * g, so that
(x ** g) ** h == x ** (g * h).

Internally a permutation is a ``bytes`` object of its images, which caps the
degree at 255; that covers every bundled group (largest degree 120) and keeps
composition a single C-level ``bytes.translate`` call.
"""

from __future__ import annotations

import re
from collections import Counter
from math import lcm
from typing import Iterable, Iterator

MAX_DEGREE = 255

_PAD = bytes(range(256))


def _tbl(b: bytes) -> bytes:
    """256-byte translate table that applies b after the translated perm."""
    return b + _PAD[len(b):]


def _inv(b: bytes) -> bytes:
    out = bytearray(len(b))
    for i, j in enumerate(b):
        out[j] = i
    return bytes(out)


class Permutation:
    """An immutable permutation of {0, ..., degree-1}."""

    __slots__ = ("_b",)

    def __init__(self, images: Iterable[int]):
        b = bytes(images)
        if sorted(b) != list(range(len(b))):
            raise ValueError("images are not a bijection on 0..degree-1")
        if len(b) > MAX_DEGREE:
            raise ValueError(f"degree {len(b)} exceeds supported maximum {MAX_DEGREE}")
        self._b = b

    @classmethod
    def _raw(cls, b: bytes) -> "Permutation":
        p = object.__new__(cls)
        p._b = b
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(_PAD[:degree])

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Iterable[int]]) -> "Permutation":
        img = bytearray(range(degree))
        for cyc in cycles:
            cyc = list(cyc)
            if len(cyc) != len(set(cyc)):
                raise ValueError(f"repeated point in cycle {cyc}")
            for a, b in zip(cyc, cyc[1:]):
                img[a] = b
            if cyc:
                img[cyc[-1]] = cyc[0]
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self._b)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self._b)

    def __call__(self, point: int) -> int:
        return self._b[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Compose left-to-right: (self * other)(i) = other(self(i))."""
        if len(self._b) != len(other._b):
            raise ValueError("degree mismatch")
        return Permutation._raw(self._b.translate(_tbl(other._b)))

    def __pow__(self, g):
        if isinstance(g, Permutation):
            return conjugate(self, g)
        if not isinstance(g, int):
            return NotImplemented
        n = g % self.order()
        out = _PAD[:len(self._b)]
        b = self._b
        t = _tbl(b)
        for _ in range(n):
            out = out.translate(t)
        return Permutation._raw(out)

    def inverse(self) -> "Permutation":
        return Permutation._raw(_inv(self._b))

    def is_identity(self) -> bool:
        return self._b == _PAD[:len(self._b)]

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its minimal point."""
        b = self._b
        seen = bytearray(len(b))
        out = []
        for i in range(len(b)):
            if seen[i]:
                continue
            c = [i]
            seen[i] = 1
            j = b[i]
            while j != i:
                c.append(j)
                seen[j] = 1
                j = b[j]
            if len(c) > 1 or include_fixed:
                out.append(tuple(c))
        return out

    def cycle_type(self) -> Counter:
        """Multiset of cycle lengths (fixed points included); sums to degree."""
        return Counter(len(c) for c in self.cycles(include_fixed=True))

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._b == other._b

    def __hash__(self) -> int:
        return hash(self._b)

    def __repr__(self) -> str:
        return f"Permutation({format_permutation(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return format_permutation(self)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p first, then q."""
    return p * q


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def conjugate(x: Permutation, g: Permutation) -> Permutation:
    """g^-1 * x * g; preserves cycle type."""
    if x.degree != g.degree:
        raise ValueError("degree mismatch")
    gb = g._b
    return Permutation._raw(_inv(gb).translate(_tbl(x._b)).translate(_tbl(gb)))


def cycle_type(p: Permutation) -> Counter:
    return p.cycle_type()


_CYCLE_RE = re.compile(r"\(\s*((?:\d+[\s,]*)*)\)")


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse disjoint-cycle notation with 0-based points, e.g. '(0 1 2)(3 4)'.

    '()' denotes the identity.  If degree is omitted it is inferred as one
    more than the largest point mentioned.
    """
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty permutation string")
    consumed = "".join(_CYCLE_RE.findall(stripped))
    if _CYCLE_RE.sub("", stripped).strip():
        raise ValueError(f"could not parse permutation {text!r}")
    cycles = []
    for m in _CYCLE_RE.finditer(stripped):
        body = m.group(1).strip()
        if body:
            cycles.append([int(t) for t in re.split(r"[\s,]+", body)])
    maxpt = max((max(c) for c in cycles), default=-1)
    if degree is None:
        degree = maxpt + 1
    elif maxpt >= degree:
        raise ValueError(f"point {maxpt} out of range for degree {degree}")
    return Permutation.from_cycles(degree, cycles)


def format_permutation(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def parse_permutation_list(lines: Iterable[str], degree: int) -> list[Permutation]:
    return [parse_permutation(line, degree) for line in lines]


def random_permutation(degree: int, rng) -> Permutation:
    pts = list(range(degree))
    rng.shuffle(pts)
    return Permutation(pts)


def all_permutations(degree: int) -> Iterator[Permutation]:
    """Every element of the symmetric group, in lexicographic image order."""
    from itertools import permutations as _perms

    for img in _perms(range(degree)):
        yield Permutation._raw(bytes(img))
