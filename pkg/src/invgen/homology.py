"""Order complexes and exact reduced simplicial homology over Q and F_p.

Complexes are reduced (augmented): the empty face is always a face, so the
complex {0 faces} has a single reduced Betti number in degree -1.  Rational
Betti numbers come from exact integer ranks of the boundary matrices; a
modular fast path over random word-sized primes is kept for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import CapExceeded
from . import intlinalg

DEFAULT_FACE_CAP = 10**7


@dataclass
class FinitePoset:
    """A finite poset given by strict comparability up-lists on 0..n-1."""

    n: int
    up: list[list[int]]

    @classmethod
    def from_le(cls, n: int, le) -> "FinitePoset":
        up = [[j for j in range(n) if j != i and le(i, j)] for i in range(n)]
        return cls(n, up)

    def __len__(self) -> int:
        return self.n

    def up_lists(self) -> list[list[int]]:
        return self.up


class SimplicialComplex:
    """Faces per dimension as sorted tuples of vertex indices; closed under subsets."""

    def __init__(self, nvertices: int, faces: list[list[tuple[int, ...]]]):
        self.nvertices = nvertices
        self.faces = faces             # faces[d] lists the d-faces, d >= 0
        for d, fl in enumerate(faces):
            for f in fl:
                if len(f) != d + 1:
                    raise ValueError("face listed at the wrong dimension")

    @classmethod
    def from_maximal_faces(cls, maximal: Iterable[Sequence[int]],
                           nvertices: int | None = None) -> "SimplicialComplex":
        from itertools import combinations

        allfaces: set[tuple[int, ...]] = set()
        maxv = -1
        for f in maximal:
            f = tuple(sorted(set(f)))
            if f:
                maxv = max(maxv, f[-1])
            for k in range(1, len(f) + 1):
                allfaces.update(combinations(f, k))
        if nvertices is None:
            nvertices = maxv + 1
        dim = max((len(f) for f in allfaces), default=0) - 1
        faces: list[list[tuple[int, ...]]] = [[] for _ in range(dim + 1)]
        for f in allfaces:
            faces[len(f) - 1].append(f)
        for fl in faces:
            fl.sort()
        return cls(nvertices, faces)

    @property
    def dimension(self) -> int:
        return len(self.faces) - 1

    def face_counts(self) -> list[int]:
        return [len(fl) for fl in self.faces]

    def num_faces(self) -> int:
        return sum(len(fl) for fl in self.faces)

    def is_empty_complex(self) -> bool:
        return not self.faces or not self.faces[0]


def order_complex(poset, face_cap: int = DEFAULT_FACE_CAP) -> SimplicialComplex:
    """The complex whose d-faces are the chains of d+1 poset elements."""
    n = len(poset)
    up = poset.up_lists()
    faces: list[list[tuple[int, ...]]] = [[] for _ in range(1)]
    total = 0

    stack: list[int] = []

    def dfs(v: int) -> None:
        nonlocal total
        stack.append(v)
        d = len(stack) - 1
        if d >= len(faces):
            faces.append([])
        faces[d].append(tuple(stack))
        total += 1
        if total > face_cap:
            raise CapExceeded(f"order complex exceeds the face cap {face_cap}")
        for w in up[v]:
            dfs(w)
        stack.pop()

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, n + 100))
    try:
        for v in range(n):
            dfs(v)
    finally:
        sys.setrecursionlimit(old)
    for fl in faces:
        fl.sort()
    if not faces[0]:
        faces = [[]]
    return SimplicialComplex(n, faces if faces[0] or len(faces) == 1 else faces)


def euler_characteristic(K: SimplicialComplex) -> int:
    """Reduced Euler characteristic: the empty face counts with sign -1."""
    chi = -1
    sign = 1
    for fl in K.faces:
        chi += sign * len(fl)
        sign = -sign
    return chi


def boundary_rows(K: SimplicialComplex, d: int) -> list[dict[int, int]]:
    """Rows of the boundary map from d-faces to (d-1)-faces (reduced at d=0)."""
    if d < 0 or d > K.dimension:
        return []
    if d == 0:
        return [{0: 1} for _ in K.faces[0]]
    lower = {f: i for i, f in enumerate(K.faces[d - 1])}
    rows = []
    for f in K.faces[d]:
        row: dict[int, int] = {}
        sign = 1
        for j in range(len(f)):
            sub = f[:j] + f[j + 1:]
            row[lower[sub]] = sign
            sign = -sign
        rows.append(row)
    return rows


@dataclass(frozen=True)
class BettiProfile:
    """Reduced Betti numbers over a field, indexed from degree -1."""

    field: str
    betti: tuple[int, ...]             # betti[k] is degree k-1

    def __getitem__(self, d: int) -> int:
        k = d + 1
        if 0 <= k < len(self.betti):
            return self.betti[k]
        return 0

    def degrees(self) -> list[int]:
        return [k - 1 for k in range(len(self.betti))]

    def nonzero_degrees(self) -> list[int]:
        return [k - 1 for k, b in enumerate(self.betti) if b]

    def total(self) -> int:
        return sum(self.betti)

    def euler(self) -> int:
        return sum(b if (k - 1) % 2 == 0 else -b for k, b in enumerate(self.betti))

    def as_dict(self) -> dict:
        return {"field": self.field, "betti": {str(k - 1): b for k, b in enumerate(self.betti)}}


def _parse_field(field: str) -> int:
    """0 means Q; otherwise the prime p of F_p."""
    if field in ("Q", "q", "QQ", "rational"):
        return 0
    if field.upper().startswith("F"):
        p = int(field[1:].lstrip(":"))
        from sympy import isprime

        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        return p
    raise ValueError(f"unknown field {field!r}; use Q, F2, or F<p>")


def reduced_betti(K: SimplicialComplex, field: str = "Q",
                  method: str = "exact") -> BettiProfile:
    """Exact reduced Betti numbers.

    Over Q the certified path is exact integer elimination; method="modular"
    uses two independent random 30-bit primes instead and insists they agree,
    falling back to the certified path when they do not.
    """
    p = _parse_field(field)
    dim = K.dimension if K.faces[0] else -1
    counts = [1] + [len(fl) for fl in K.faces]     # counts[k] = f_{k-1}
    ranks = [0] * (dim + 3)                        # ranks[k] = rank of boundary_{k}
    for d in range(0, dim + 1):
        rows = boundary_rows(K, d)
        if p:
            ranks[d + 1] = intlinalg.rank_mod(rows, p)
        elif method == "modular":
            p1, p2 = intlinalg.random_30bit_primes(2, seed=len(rows))
            r1 = intlinalg.rank_mod(rows, p1)
            r2 = intlinalg.rank_mod(rows, p2)
            ranks[d + 1] = r1 if r1 == r2 else intlinalg.rank_exact(rows)
        else:
            ranks[d + 1] = intlinalg.rank_exact(rows)
    betti = []
    for k in range(0, dim + 2):
        b = counts[k] - ranks[k] - ranks[k + 1]
        betti.append(b)
    while len(betti) > 1 and betti[-1] == 0:
        betti.pop()
    name = "Q" if not p else f"F{p}"
    return BettiProfile(name, tuple(betti))


def is_acyclic(K: SimplicialComplex, field: str = "Q") -> bool:
    """True iff every reduced Betti number vanishes."""
    return reduced_betti(K, field).total() == 0


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; K2's vertices are relabeled above K1's."""
    n1 = K1.nvertices
    shift = [tuple(v + n1 for v in f) for fl in K2.faces for f in fl]
    f1 = [f for fl in K1.faces for f in fl]
    faces: dict[int, list[tuple[int, ...]]] = {}
    every1 = f1 + [()]
    every2 = shift + [()]
    for a in every1:
        for b in every2:
            f = a + b
            if f:
                faces.setdefault(len(f) - 1, []).append(f)
    dim = max(faces, default=-1)
    out = [sorted(faces.get(d, [])) for d in range(dim + 1)]
    if not out:
        out = [[]]
    return SimplicialComplex(n1 + K2.nvertices, out)


def kunneth_betti(b1: BettiProfile, b2: BettiProfile) -> BettiProfile:
    """Betti profile of the join: b_k = sum_{i+j=k-1} b_i(K1) b_j(K2)."""
    if b1.field != b2.field:
        raise ValueError("Kunneth needs both profiles over the same field")
    out = [0] * (len(b1.betti) + len(b2.betti))
    for i, x in enumerate(b1.betti):
        for j, y in enumerate(b2.betti):
            out[i + j] += x * y        # degrees (i-1)+(j-1)+1 = i+j-1
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return BettiProfile(b1.field, tuple(out))
