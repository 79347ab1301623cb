"""Permutation groups with exact order and membership via stabilizer chains.

All operations are pure; a GeneratedGroup is immutable after construction and
safe to share across workers.  Orders, membership, conjugacy classes, Sylow
subgroups and element enumeration are exact, never sampled.  Enumerating
operations take an element cap (default 10**7) and raise CapExceeded rather
than truncate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Callable, Iterable, Iterator

from . import chain as _c
from .perms import Permutation, parse_permutation, format_permutation

DEFAULT_ELEMENT_CAP = 10**7


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured element cap."""


class GeneratedGroup:
    """Group generated by permutations, with a verified stabilizer chain."""

    __slots__ = ("degree", "generators", "_chain", "_order")

    def __init__(self, generators: list[Permutation], degree: int | None = None):
        if degree is None:
            if not generators:
                raise ValueError("need generators or an explicit degree")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise ValueError("degree mismatch among generators")
        self.degree = degree
        self.generators = list(generators)
        ch = _c.Chain(degree)
        ch.extend([g._b for g in generators])
        self._chain = ch
        self._order = ch.order()

    @property
    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    def __contains__(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        return self._chain.contains(p._b)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> Iterator[Permutation]:
        """All elements in chain-traversal order (identity first)."""
        if self._order > cap:
            raise CapExceeded(f"group order {self._order} exceeds cap {cap}")
        for b in self._chain.iter_elements():
            yield Permutation._raw(b)

    def _raw_elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> Iterator[bytes]:
        if self._order > cap:
            raise CapExceeded(f"group order {self._order} exceeds cap {cap}")
        return self._chain.iter_elements()

    def subgroup(self, gens: Iterable[Permutation]) -> "GeneratedGroup":
        """Subgroup generated by members; checks membership."""
        gens = list(gens)
        for g in gens:
            if g not in self:
                raise ValueError(f"generator {g} is not a member of the group")
        if not gens:
            return GeneratedGroup([], degree=self.degree)
        return GeneratedGroup(gens, degree=self.degree)

    def random_elements(self, count: int, seed: int = 0) -> list[Permutation]:
        """Deterministic pseudo-random members (products of generators)."""
        import random

        rng = random.Random(seed)
        gens = [g._b for g in self.generators] or [self._chain.ident]
        out = []
        w = self._chain.ident
        for _ in range(count * 3):
            w = _c.mul(w, rng.choice(gens))
            if rng.random() < 0.5:
                w = _c.mul(gens[rng.randrange(len(gens))], w)
            out.append(w)
        picked = rng.sample(out, count) if len(out) >= count else out
        return [Permutation._raw(b) for b in picked[:count]]

    def __repr__(self) -> str:
        return f"GeneratedGroup(degree={self.degree}, order={self._order}, ngens={len(self.generators)})"


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    size: int
    element_order: int


def build_group(generators: list[Permutation], degree: int | None = None) -> GeneratedGroup:
    if not generators and degree is None:
        raise ValueError("empty generator list needs an explicit degree")
    return GeneratedGroup(generators, degree)


def subgroup_generated(ambient: GeneratedGroup, gens: Iterable[Permutation]) -> GeneratedGroup:
    return ambient.subgroup(gens)


def orbits(G: GeneratedGroup) -> list[list[int]]:
    """Orbit partition of the points, each orbit sorted, ordered by minimum."""
    n = G.degree
    seen = [False] * n
    gens = [g._b for g in G.generators]
    out = []
    for s in range(n):
        if seen[s]:
            continue
        orb = [s]
        seen[s] = True
        k = 0
        while k < len(orb):
            x = orb[k]
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
            k += 1
        out.append(sorted(orb))
    return out


def is_transitive(G: GeneratedGroup) -> bool:
    return len(orbits(G)) == 1


def _min_block_system(G: GeneratedGroup, a: int, b: int) -> list[list[int]] | None:
    """Finest block system whose blocks merge points a and b (Atkinson).

    Returns None when the system is trivial (one block).
    """
    n = G.degree
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = [g._b for g in G.generators]
    queue = [(a, b)]
    parent[find(b)] = find(a)
    while queue:
        x, y = queue.pop()
        for g in gens:
            gx, gy = find(g[x]), find(g[y])
            if gx != gy:
                parent[gx] = gy
                queue.append((gx, gy))
    classes: dict[int, list[int]] = {}
    for x in range(n):
        classes.setdefault(find(x), []).append(x)
    blocks = sorted(classes.values())
    if len(blocks) == 1:
        return None
    return blocks


def minimal_blocks(G: GeneratedGroup) -> list[list[list[int]]]:
    """All distinct minimal nontrivial block systems of a transitive group."""
    if not is_transitive(G):
        raise ValueError("block systems need a transitive group")
    if G.degree == 1:
        return []
    systems = {}
    for b in range(1, G.degree):
        sysm = _min_block_system(G, 0, b)
        if sysm is not None:
            key = tuple(tuple(blk) for blk in sysm)
            systems[key] = sysm
    # keep only minimal systems (no other system strictly refines them)
    def refines(s1, s2) -> bool:
        # every block of s1 is inside a block of s2
        where = {}
        for i, blk in enumerate(s2):
            for x in blk:
                where[x] = i
        return all(len({where[x] for x in blk}) == 1 for blk in s1)

    out = []
    vals = list(systems.values())
    for s in vals:
        if not any(s2 is not s and refines(s2, s) and len(s2) > len(s) for s2 in vals):
            out.append(s)
    return out


def is_primitive(G: GeneratedGroup) -> bool:
    """Transitive with no nontrivial block system."""
    if not is_transitive(G):
        raise ValueError("primitivity needs a transitive group")
    if G.degree == 1:
        return True
    return all(_min_block_system(G, 0, b) is None for b in range(1, G.degree))


def elements(G: GeneratedGroup, cap: int = DEFAULT_ELEMENT_CAP) -> Iterator[Permutation]:
    return G.elements(cap)


def cycle_type(p: Permutation):
    return p.cycle_type()


def conjugacy_classes(G: GeneratedGroup, cap: int = DEFAULT_ELEMENT_CAP) -> list[ConjugacyClass]:
    """All conjugacy classes, sorted by element order then minimal representative.

    Classes are conjugation orbits expanded from sweep seeds; completeness is
    certified by the sizes summing to |G|.
    """
    if G.order > cap:
        raise CapExceeded(f"group order {G.order} exceeds cap {cap}")
    gens = [g._b for g in G.generators]
    gtbls = [_c.tbl(g) for g in gens]
    ginvs = [_c.inv(g) for g in gens]
    classified: set[bytes] = set()
    classes = []
    total = 0
    for e in G._raw_elements(cap):
        if e in classified:
            continue
        orb = [e]
        classified.add(e)
        k = 0
        while k < len(orb):
            x = orb[k]
            for gi, gt in zip(ginvs, gtbls):
                y = gi.translate(_c.tbl(x)).translate(gt)
                if y not in classified:
                    classified.add(y)
                    orb.append(y)
            k += 1
        rep = min(orb)
        classes.append(ConjugacyClass(Permutation._raw(rep), len(orb), _c.perm_order(rep)))
        total += len(orb)
    if total != G.order:
        raise RuntimeError("class sizes do not sum to the group order")
    classes.sort(key=lambda c: (c.element_order, c.representative.images))
    return classes


def _conjugation_orbit(G: GeneratedGroup, x: bytes) -> tuple[dict[bytes, bytes], list[bytes]]:
    """Orbit of x under conjugation; maps conjugate -> conjugating element."""
    gens = [g._b for g in G.generators]
    orbit = {x: G._chain.ident}
    queue = [x]
    k = 0
    while k < len(queue):
        z = queue[k]
        w = orbit[z]
        for g in gens:
            z2 = _c.conj(z, g)
            if z2 not in orbit:
                orbit[z2] = _c.mul(w, g)
                queue.append(z2)
        k += 1
    return orbit, queue


def centralizer(G: GeneratedGroup, x: Permutation) -> GeneratedGroup:
    """C_G(x) by orbit-stabilizer on the conjugation action."""
    if x not in G:
        raise ValueError("element is not a member of the group")
    orbit, queue = _conjugation_orbit(G, x._b)
    target, rem = divmod(G.order, len(orbit))
    if rem:
        raise RuntimeError("orbit size does not divide the group order")
    ch = _c.Chain(G.degree, target=target)
    found: list[bytes] = []
    ident = G._chain.ident
    gens = [g._b for g in G.generators]
    for z in queue:
        w = orbit[z]
        for g in gens:
            sg = _c.mul(_c.mul(w, g), _c.inv(orbit[_c.conj(z, g)]))
            if sg != ident:
                found.append(sg)
                if ch.extend([sg]) >= target:
                    break
        if ch.order() >= target:
            break
    sub = GeneratedGroup([Permutation._raw(b) for b in found] or [], degree=G.degree)
    if sub.order != target:
        raise RuntimeError("centralizer construction failed to reach its order")
    return sub


def _normalizer_of_subgroup(G: GeneratedGroup, H: GeneratedGroup) -> GeneratedGroup:
    """N_G(H) by orbit-stabilizer on the conjugation action on subgroups."""
    h_elems = sorted(H._raw_elements())
    key0 = b"".join(h_elems)
    gens = [g._b for g in G.generators]

    def conj_key(elems: list[bytes], g: bytes) -> tuple[bytes, list[bytes]]:
        imgs = sorted(_c.conj(h, g) for h in elems)
        return b"".join(imgs), imgs

    orbit: dict[bytes, tuple[bytes, list[bytes]]] = {key0: (G._chain.ident, h_elems)}
    queue = [key0]
    k = 0
    while k < len(queue):
        key = queue[k]
        w, elems = orbit[key]
        for g in gens:
            key2, elems2 = conj_key(elems, g)
            if key2 not in orbit:
                orbit[key2] = (_c.mul(w, g), elems2)
                queue.append(key2)
        k += 1
    target, rem = divmod(G.order, len(orbit))
    if rem:
        raise RuntimeError("subgroup orbit size does not divide the group order")
    ch = _c.Chain(G.degree, target=target)
    found: list[bytes] = []
    ident = G._chain.ident
    for key in queue:
        w, elems = orbit[key]
        for g in gens:
            key2, _ = conj_key(elems, g)
            sg = _c.mul(_c.mul(w, g), _c.inv(orbit[key2][0]))
            if sg != ident:
                found.append(sg)
                if ch.extend([sg]) >= target:
                    break
        if ch.order() >= target:
            break
    sub = GeneratedGroup([Permutation._raw(b) for b in found] or [], degree=G.degree)
    if sub.order != target:
        raise RuntimeError("normalizer construction failed to reach its order")
    return sub


def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def sylow_subgroup(G: GeneratedGroup, p: int, cap: int = DEFAULT_ELEMENT_CAP) -> GeneratedGroup:
    """A Sylow p-subgroup, grown through normalizers of p-subgroups.

    Start from any p-element; while |P| is short of the full p-part, N_G(P)
    contains a p-element outside P (since P < N_S(P) for a Sylow S >= P), so
    adjoining one strictly grows P.
    """
    target = _p_part(G.order, p)
    if target == 1:
        raise ValueError(f"{p} does not divide the group order {G.order}")

    def p_element_of(H: GeneratedGroup, avoid: GeneratedGroup | None) -> Permutation | None:
        for e in H._raw_elements(cap):
            m = _c.perm_order(e)
            if m % p:
                continue
            rest = m
            while rest % p == 0:
                rest //= p
            t = _c.perm_pow(e, rest)
            if avoid is None or not avoid._chain.contains(t):
                return Permutation._raw(t)
        return None

    seed = p_element_of(G, None)
    if seed is None:
        raise RuntimeError("no p-element found")
    P = GeneratedGroup([seed], degree=G.degree)
    while P.order < target:
        N = _normalizer_of_subgroup(G, P)
        u = p_element_of(N, P)
        if u is None:
            raise RuntimeError("normalizer growth found no new p-element")
        P = GeneratedGroup(P.generators + [u], degree=G.degree)
        if P.order > target or target % P.order:
            raise RuntimeError("p-subgroup growth left the p-part")
    return P


# ---------------------------------------------------------------------------
# group files

def parse_group_file(text: str) -> tuple[int, list[Permutation], list[str]]:
    """Parse the bundled group file format.

    First non-comment line: ``degree n``.  Every further non-comment line is
    one generator in disjoint-cycle notation; ``()`` is the identity.  Lines
    starting with ``#`` carry provenance and are returned for inspection.
    """
    degree = None
    gens = []
    comments = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree":
                raise ValueError(f"expected 'degree n' header, got {line!r}")
            degree = int(parts[1])
            if degree <= 0:
                raise ValueError("degree must be positive")
            continue
        gens.append(parse_permutation(line, degree))
    if degree is None:
        raise ValueError("missing 'degree n' header")
    return degree, gens, comments


def load_group_file(path) -> GeneratedGroup:
    from pathlib import Path

    text = Path(path).read_text()
    degree, gens, _ = parse_group_file(text)
    return GeneratedGroup(gens, degree=degree)


def format_group_file(degree: int, gens: Iterable[Permutation], comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"degree {degree}")
    lines.extend(format_permutation(g) for g in gens)
    return "\n".join(lines) + "\n"
