"""Deterministic Schreier-Sims stabilizer chains on raw image-bytes.

This is the hot kernel behind GeneratedGroup and every conjugate scan.
Permutations here are plain ``bytes`` of images (degree <= 255).  Composition
"p then q" is ``p.translate(q + PAD[len(q):])``, a single C call.

Levels are closed deepest-first; a level's orbit always uses every strong
generator that fixes the earlier base points, including generators discovered
at deeper levels.  When a target order is supplied the build aborts as soon as
the product of basic orbit lengths reaches it: the transversal products are
that many distinct elements of the generated subgroup, so for subgroup-of-known
-ambient checks the bound certifies equality.
"""

from __future__ import annotations

from typing import Iterable, Iterator

PAD = bytes(range(256))


def tbl(q: bytes) -> bytes:
    return q + PAD[len(q):]


def inv(p: bytes) -> bytes:
    out = bytearray(len(p))
    for i, j in enumerate(p):
        out[j] = i
    return bytes(out)


def mul(p: bytes, q: bytes) -> bytes:
    """Apply p then q."""
    return p.translate(q + PAD[len(q):])


def conj(x: bytes, g: bytes) -> bytes:
    """g^-1 x g."""
    t = g + PAD[len(g):]
    return inv(g).translate(x + PAD[len(x):]).translate(t)


def perm_order(p: bytes) -> int:
    from math import lcm

    seen = bytearray(len(p))
    out = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        n = 1
        j = p[i]
        seen[i] = 1
        while j != i:
            seen[j] = 1
            j = p[j]
            n += 1
        out = lcm(out, n)
    return out


def perm_pow(p: bytes, n: int) -> bytes:
    """p composed with itself n times (n >= 0)."""
    out = PAD[:len(p)]
    sq = p
    while n:
        if n & 1:
            out = mul(out, sq)
        sq = mul(sq, sq)
        n >>= 1
    return out


class TargetReached(Exception):
    """Raised internally when the basic-orbit product hits the target order."""


class Chain:
    """Stabilizer chain with incremental deterministic extension."""

    __slots__ = ("degree", "ident", "base", "orbits", "invtbls", "gens", "depths",
                 "target", "complete")

    def __init__(self, degree: int, target: int | None = None):
        self.degree = degree
        self.ident = PAD[:degree]
        self.base: list[int] = []
        self.orbits: list[dict[int, bytes]] = []
        self.invtbls: list[dict[int, bytes]] = []
        self.gens: list[bytes] = []
        self.depths: list[int] = []
        self.target = target
        self.complete = False

    def order(self) -> int:
        n = 1
        for o in self.orbits:
            n *= len(o)
        return n

    def sift(self, p: bytes, start: int = 0) -> tuple[bytes, int]:
        """Strip p through levels >= start; (residue, level it stuck at)."""
        base = self.base
        invtbls = self.invtbls
        for i in range(start, len(base)):
            beta = p[base[i]]
            if beta == base[i]:
                continue
            t = invtbls[i].get(beta)
            if t is None:
                return p, i
            p = p.translate(t)
        return p, len(base)

    def contains(self, p: bytes) -> bool:
        if not self.complete:
            raise RuntimeError("membership queries need a completed chain")
        r, _ = self.sift(p)
        return r == self.ident

    def _new_level(self, p: bytes) -> None:
        b = 0
        while p[b] == b:
            b += 1
        self.base.append(b)
        self.orbits.append({b: self.ident})
        self.invtbls.append({b: PAD})

    def extend(self, new_gens: Iterable[bytes]) -> int:
        """Add generators, rebuild, return the (possibly target-truncated) order."""
        ident = self.ident
        added = False
        for g in new_gens:
            if len(g) != self.degree:
                raise ValueError("degree mismatch")
            r, j = self.sift(g)
            if r == ident:
                continue
            if j == len(self.base):
                self._new_level(r)
            self.gens.append(r)
            self.depths.append(j)
            added = True
        if not added:
            if not self.base:
                self.complete = True
            return self.order()
        try:
            self._build()
            self.complete = True
        except TargetReached:
            self.complete = False
        return self.order()

    def _build(self) -> None:
        base = self.base
        gens = self.gens
        depths = self.depths
        ident = self.ident
        target = self.target
        i = len(base) - 1
        while i >= 0:
            gl = [g for g, d in zip(gens, depths) if d >= i]
            gt = [tbl(g) for g in gl]
            b = base[i]
            orbit = {b: ident}
            invtbl = {b: PAD}
            pts = [b]
            k = 0
            while k < len(pts):
                u = orbit[pts[k]]
                src = pts[k]
                for g, t in zip(gl, gt):
                    gamma = g[src]
                    if gamma not in orbit:
                        w = u.translate(t)
                        orbit[gamma] = w
                        invtbl[gamma] = tbl(inv(w))
                        pts.append(gamma)
                k += 1
            self.orbits[i] = orbit
            self.invtbls[i] = invtbl
            if target is not None and self.order() >= target:
                raise TargetReached
            clean = True
            for beta in pts:
                u = orbit[beta]
                for g, t in zip(gl, gt):
                    sg = u.translate(t).translate(invtbl[g[beta]])
                    if sg == ident:
                        continue
                    r, j = self.sift(sg, i + 1)
                    if r == ident:
                        continue
                    if j == len(base):
                        self._new_level(r)
                    gens.append(r)
                    depths.append(j)
                    i = j
                    clean = False
                    break
                if not clean:
                    break
            if clean:
                i -= 1

    def strong_generators(self) -> list[bytes]:
        return list(self.gens)

    def iter_elements(self) -> Iterator[bytes]:
        """All group elements in chain-traversal order; identity first.

        Each element is a product of one transversal representative per level,
        deepest applied first; the level-0 representative varies fastest.
        Requires a completed chain.
        """
        if not self.complete:
            raise RuntimeError("element enumeration needs a completed chain")
        level_tbls = [
            [tbl(u) for _, u in sorted(o.items(), key=lambda kv: (kv[0] != b, kv[0]))]
            for b, o in zip(self.base, self.orbits)
        ]
        if not level_tbls:
            yield self.ident
            return

        def walk(lvl: int, acc: bytes) -> Iterator[bytes]:
            if lvl < 0:
                yield acc
                return
            for t in level_tbls[lvl]:
                yield from walk(lvl - 1, acc.translate(t))

        yield from walk(len(level_tbls) - 1, self.ident)


def order_of(gens: Iterable[bytes], degree: int) -> int:
    c = Chain(degree)
    return c.extend(list(gens))


def generates(gens: Iterable[bytes], degree: int, target: int) -> bool:
    """Does <gens> have order target?  gens must lie in a group of that order."""
    c = Chain(degree, target=target)
    n = c.extend(list(gens))
    return n >= target
