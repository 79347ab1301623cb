"""Subgroup lattices, coset posets, and the Mobius/Euler oracle.

Subgroups of a small group (order <= 2000 by default) are element bitmasks
over a fixed enumeration of the group, built bottom-up: all cyclic subgroups,
then closure under join with cyclic subgroups.  The coset poset takes all
right cosets Hx of proper subgroups ordered by inclusion; Brown's subposet
keeps the cosets with HN = G.  The probabilistic zeta value P(G,-1) computed
from the Mobius table gives the independent Euler-characteristic oracle
-P(G,-1) for the order complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import chain as _c
from .groups import CapExceeded, GeneratedGroup
from .perms import Permutation

DEFAULT_LATTICE_CAP = 2000


class SubgroupLattice:
    """All subgroups of a small group as element bitmasks."""

    def __init__(self, group: GeneratedGroup, cap: int = DEFAULT_LATTICE_CAP):
        if group.order > cap:
            raise CapExceeded(f"group order {group.order} exceeds lattice cap {cap}")
        self.group = group
        self.elements: list[bytes] = list(group._raw_elements(cap))
        self.index: dict[bytes, int] = {e: i for i, e in enumerate(self.elements)}
        self._tbls: list[bytes] = [_c.tbl(e) for e in self.elements]
        self._inv_idx: list[int] = [self.index[_c.inv(e)] for e in self.elements]
        self.subgroups: list[int] = []
        self.normal: list[bool] = []
        self._build()

    # -- multiplication on element indices
    def mul_idx(self, i: int, j: int) -> int:
        return self.index[self.elements[i].translate(self._tbls[j])]

    def closure_mask(self, seed_indices) -> int:
        """Bitmask of the subgroup generated by the given element indices."""
        queue = [0]
        mask = 1
        gens = [i for i in seed_indices if i != 0]
        k = 0
        while k < len(queue):
            x = queue[k]
            for g in gens:
                y = self.mul_idx(x, g)
                if not (mask >> y) & 1:
                    mask |= 1 << y
                    queue.append(y)
            k += 1
        return mask

    def _cyclic_masks(self) -> set[int]:
        out = set()
        n = len(self.elements)
        for i in range(n):
            mask = 1
            j = i
            while j != 0:
                mask |= 1 << j
                j = self.mul_idx(j, i)
            out.add(mask)
        return out

    def _build(self) -> None:
        cyclics = sorted(self._cyclic_masks())
        subs = set(cyclics)
        work = list(cyclics)
        while work:
            nxt = []
            for a in work:
                for c in cyclics:
                    if c & ~a == 0 or a & ~c == 0:
                        continue
                    joined = self._join_mask(a, c)
                    if joined not in subs:
                        subs.add(joined)
                        nxt.append(joined)
            work = nxt
        self.subgroups = sorted(subs, key=lambda m: (m.bit_count(), m))
        gens = [self.index[g._b] for g in self.group.generators]
        self.normal = [self._is_invariant(m, gens) for m in self.subgroups]

    def _join_mask(self, a: int, b: int) -> int:
        return self.closure_mask(_bits(a | b))

    def _is_invariant(self, mask: int, gen_indices: list[int]) -> bool:
        for g in gen_indices:
            gi = self._inv_idx[g]
            img = 0
            for h in _bits(mask):
                img |= 1 << self.mul_idx(self.mul_idx(gi, h), g)
            if img != mask:
                return False
        return True

    # -- queries
    def order_of(self, s: int) -> int:
        return self.subgroups[s].bit_count()

    def contains(self, s: int, t: int) -> bool:
        """Is subgroup t a subset of subgroup s?"""
        return self.subgroups[t] & ~self.subgroups[s] == 0

    def subgroup_index(self, mask: int) -> int:
        return self.subgroups.index(mask)

    def top(self) -> int:
        return len(self.subgroups) - 1

    def bottom(self) -> int:
        return 0

    def normal_subgroup_indices(self) -> list[int]:
        return [i for i, f in enumerate(self.normal) if f]

    def minimal_normal_subgroups(self) -> list[int]:
        """Nontrivial normal subgroups containing no smaller nontrivial one.

        For simple G this is G itself.
        """
        normals = [i for i in self.normal_subgroup_indices() if self.order_of(i) > 1]
        return [i for i in normals
                if not any(j != i and self.contains(i, j) for j in normals)]

    def members(self, s: int) -> list[Permutation]:
        return [Permutation._raw(self.elements[i]) for i in _bits(self.subgroups[s])]

    def mask_of_subgroup(self, H: GeneratedGroup) -> int:
        mask = 0
        for e in H._raw_elements():
            i = self.index.get(e)
            if i is None:
                raise ValueError("subgroup is not inside the lattice group")
            mask |= 1 << i
        return mask


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def all_subgroups(G: GeneratedGroup, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    return SubgroupLattice(G, cap)


@dataclass
class CosetPoset:
    """Right cosets Hx of proper subgroups, ordered by set inclusion."""

    lattice: SubgroupLattice
    items: list[tuple[int, int]]        # (subgroup index, representative element index)
    masks: list[int]                    # element bitmask per coset
    label: str = ""

    def __len__(self) -> int:
        return len(self.items)

    def le(self, i: int, j: int) -> bool:
        return self.masks[i] & ~self.masks[j] == 0

    def up_lists(self) -> list[list[int]]:
        """Comparability lists: up[i] = sorted j != i with item i < item j."""
        masks = self.masks
        sizes = [m.bit_count() for m in masks]
        order = sorted(range(len(masks)), key=lambda i: sizes[i])
        up = [[] for _ in masks]
        for ai, i in enumerate(order):
            mi = masks[i]
            for j in order[ai + 1:]:
                if sizes[j] > sizes[i] and mi & ~masks[j] == 0:
                    up[i].append(j)
        for lst in up:
            lst.sort()
        return up

    def representative(self, i: int) -> Permutation:
        s, r = self.items[i]
        return Permutation._raw(self.lattice.elements[r])

    def describe(self, i: int) -> str:
        s, _ = self.items[i]
        return f"|H|={self.lattice.order_of(s)} rep={self.representative(i)}"


def coset_poset(G: GeneratedGroup, lattice: SubgroupLattice | None = None,
                cap: int = DEFAULT_LATTICE_CAP) -> CosetPoset:
    """The poset of all cosets of all proper subgroups (trivial included)."""
    lat = lattice or SubgroupLattice(G, cap)
    return _cosets_of(lat, range(len(lat.subgroups) - 1), label=f"C({G!r})")


def _cosets_of(lat: SubgroupLattice, subgroup_indices, label: str = "") -> CosetPoset:
    n = len(lat.elements)
    items = []
    masks = []
    for s in subgroup_indices:
        hmask = lat.subgroups[s]
        hbits = list(_bits(hmask))
        seen = 0
        for x in range(n):
            if (seen >> x) & 1:
                continue
            cmask = 0
            rep_elem = None
            for h in hbits:
                y = lat.mul_idx(h, x)
                cmask |= 1 << y
                e = lat.elements[y]
                if rep_elem is None or e < rep_elem:
                    rep_elem, rep_idx = e, y
            seen |= cmask
            items.append((s, rep_idx))
            masks.append(cmask)
    order = sorted(range(len(items)), key=lambda i: (masks[i].bit_count(), masks[i]))
    return CosetPoset(lat, [items[i] for i in order], [masks[i] for i in order], label)


def brown_subposet(G: GeneratedGroup, N: GeneratedGroup | int,
                   lattice: SubgroupLattice | None = None,
                   cap: int = DEFAULT_LATTICE_CAP) -> CosetPoset:
    """Cosets Hx with H proper and HN = G, for N normal in G."""
    lat = lattice or SubgroupLattice(G, cap)
    nmask = N if isinstance(N, int) else lat.mask_of_subgroup(N)
    ns = lat.subgroups.index(nmask)
    if not lat.normal[ns]:
        raise ValueError("N is not normal in G")
    nsize = nmask.bit_count()
    total = len(lat.elements)
    keep = []
    for s in range(len(lat.subgroups) - 1):
        hmask = lat.subgroups[s]
        if hmask.bit_count() * nsize == total * (hmask & nmask).bit_count():
            keep.append(s)
    return _cosets_of(lat, keep, label=f"C(G,N) |N|={nsize}")


def minimal_normal_subgroups(G: GeneratedGroup, lattice: SubgroupLattice | None = None,
                             cap: int = DEFAULT_LATTICE_CAP) -> list[GeneratedGroup]:
    lat = lattice or SubgroupLattice(G, cap)
    out = []
    for s in lat.minimal_normal_subgroups():
        out.append(GeneratedGroup(lat.members(s), degree=G.degree))
    return out


@dataclass
class MobiusTable:
    lattice: SubgroupLattice
    values: list[int]                   # mu(H, G) per subgroup index

    def mu(self, s: int) -> int:
        return self.values[s]


def mobius(lattice: SubgroupLattice) -> MobiusTable:
    """mu(H, G) for every subgroup H, by the top-down recursion."""
    subs = lattice.subgroups
    n = len(subs)
    order = sorted(range(n), key=lambda s: -subs[s].bit_count())
    values = [0] * n
    values[n - 1] = 1
    for s in order[1:]:
        acc = 0
        for t in range(n):
            if t != s and lattice.contains(t, s):
                acc += values[t]
        values[s] = -acc
    return MobiusTable(lattice, values)


def zeta_at_minus_one(G: GeneratedGroup, lattice: SubgroupLattice | None = None,
                      cap: int = DEFAULT_LATTICE_CAP) -> int:
    """P(G,-1) = sum_H mu(H,G) [G:H]; the oracle value is -P(G,-1)."""
    lat = lattice or SubgroupLattice(G, cap)
    table = mobius(lat)
    total = len(lat.elements)
    return sum(mu * (total // lat.order_of(s))
               for s, mu in enumerate(table.values))


def quotient_group(G: GeneratedGroup, N: GeneratedGroup | int,
                   lattice: SubgroupLattice | None = None,
                   cap: int = DEFAULT_LATTICE_CAP) -> GeneratedGroup:
    """G/N as a permutation group on the right cosets of N."""
    lat = lattice or SubgroupLattice(G, cap)
    nmask = N if isinstance(N, int) else lat.mask_of_subgroup(N)
    ns = lat.subgroups.index(nmask)
    if not lat.normal[ns]:
        raise ValueError("N is not normal in G")
    n = len(lat.elements)
    coset_id = [-1] * n
    reps = []
    for x in range(n):
        if coset_id[x] >= 0:
            continue
        cid = len(reps)
        reps.append(x)
        for h in _bits(nmask):
            coset_id[lat.mul_idx(h, x)] = cid
    gens = []
    for g in G.generators:
        gi = lat.index[g._b]
        img = [coset_id[lat.mul_idx(reps[c], gi)] for c in range(len(reps))]
        gens.append(Permutation(img))
    return GeneratedGroup(gens, degree=len(reps))


def hasse_dot(poset: CosetPoset, max_size: int = 500) -> str:
    """DOT source for the Hasse diagram of a small coset poset."""
    n = len(poset)
    if n > max_size:
        raise CapExceeded(f"poset has {n} elements, above the DOT limit {max_size}")
    up = poset.up_lists()
    # Hasse edges: covers only
    lines = ["digraph coset_poset {", "  rankdir=BT;"]
    for i in range(n):
        lines.append(f'  n{i} [label="{poset.describe(i)}"];')
    upsets = [set(u) for u in up]
    for i in range(n):
        for j in up[i]:
            if not any(j in upsets[k] for k in up[i] if k != j):
                lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines)
