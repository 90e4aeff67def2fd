"""Subgroup-lattice enumeration and classical structural operators.

The lattice is built by layered closure: all cyclic subgroups first, then
iterated joins of conjugacy-class representatives with cyclic subgroups,
closing each new subgroup's conjugacy class.  Every subgroup is a join of
cyclic subgroups, so the process is complete; the exhaustive subset oracle
(order <= 8) and a generating-set oracle validate it in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from ._bits import (
    full_mask,
    indices_of,
    is_subset,
    mask_from_array,
    mask_from_indices,
    popcount,
    subset_scan,
    superset_scan,
    words_matrix,
)
from .errors import InvalidGroup, TooLarge
from .groups import (
    Group,
    Subgroup,
    closure_mask,
    conjugacy_classes,
    generate_subgroup,
    is_normal_mask,
    small_generating_set,
)

LATTICE_MAX_ORDER = 192
LATTICE_MAX_SUBGROUPS = 20000


class SubgroupLattice:
    """The complete set of subgroups of a group, with structural flags.

    Subgroups are sorted by (order, mask); flags cover normality, subnormal
    depth (-1 when not subnormal) and conjugacy classes.  Inclusion and join
    tables are materialised lazily.
    """

    def __init__(self, parent: Group, masks: list[int], gens_of: list[tuple[int, ...]]):
        order_key = sorted(range(len(masks)), key=lambda i: (popcount(masks[i]), masks[i]))
        self.parent = parent
        self.masks = [masks[i] for i in order_key]
        self.gens_of = [gens_of[i] for i in order_key]
        self.index_of = {m: i for i, m in enumerate(self.masks)}
        self.orders = np.array([popcount(m) for m in self.masks])
        self.words = words_matrix(self.masks, parent.order)
        self.subgroups = [Subgroup(parent, m, _validated=True) for m in self.masks]
        self._group_gens = small_generating_set(parent)
        self._conj_perms = [parent.conj_perm(g) for g in self._group_gens]
        self._compute_classes()
        self.normal = np.array([len(self.classes[self.conj_class[i]]) == 1 for i in range(len(self.masks))])
        self._compute_subnormal_depth()
        self._incl = None
        self._join_table = None
        self._join_cache: dict[tuple[int, int], int] = {}

    # -- construction helpers -------------------------------------------------

    def _conj_mask(self, mask: int, perm: np.ndarray) -> int:
        return mask_from_array(perm[indices_of(mask, self.parent.order)])

    def _orbit(self, mask: int) -> set[int]:
        orbit = {mask}
        frontier = [mask]
        while frontier:
            m = frontier.pop()
            for p in self._conj_perms:
                c = self._conj_mask(m, p)
                if c not in orbit:
                    orbit.add(c)
                    frontier.append(c)
        return orbit

    def _compute_classes(self):
        n = len(self.masks)
        self.conj_class = np.full(n, -1)
        self.classes: list[list[int]] = []
        for i in range(n):
            if self.conj_class[i] >= 0:
                continue
            orbit = self._orbit(self.masks[i])
            cid = len(self.classes)
            members = sorted(self.index_of[m] for m in orbit)
            for j in members:
                self.conj_class[j] = cid
            self.classes.append(members)

    def _normal_in(self, h: int, k: int) -> bool:
        hm, km = self.masks[h], self.masks[k]
        if not is_subset(hm, km):
            return False
        for g in self.gens_of[k]:
            if self._conj_mask(hm, self.parent.conj_perm(g)) != hm:
                return False
        return True

    def _compute_subnormal_depth(self):
        """BFS over successive normal inclusions; level d = minimal chain length."""
        n = len(self.masks)
        depth = np.full(n, -1)
        top = self.index_of[self.parent.full]
        depth[top] = 0
        frontier = [int(i) for i in np.flatnonzero(self.normal) if i != top]
        for i in frontier:
            depth[i] = 1
        d = 1
        while frontier and d <= self.parent.order:
            nxt = []
            for i in range(n):
                if depth[i] < 0 and any(self._normal_in(i, k) for k in frontier):
                    depth[i] = d + 1
                    nxt.append(i)
            frontier = nxt
            d += 1
        self.subnormal_depth = depth

    # -- queries ---------------------------------------------------------------

    def __len__(self):
        return len(self.masks)

    def subgroup(self, i: int) -> Subgroup:
        return self.subgroups[i]

    def index(self, mask: int) -> int:
        return self.index_of[mask]

    @property
    def inclusion(self) -> np.ndarray:
        """Boolean matrix: inclusion[i, j] iff subgroup i <= subgroup j."""
        if self._incl is None:
            L = len(self.masks)
            incl = np.empty((L, L), dtype=bool)
            for j in range(L):
                incl[:, j] = subset_scan(self.words, self.masks[j], self.parent.order)
            self._incl = incl
        return self._incl

    def below(self, mask: int) -> np.ndarray:
        """Indices of subgroups contained in the given mask."""
        return np.flatnonzero(subset_scan(self.words, mask, self.parent.order))

    def above(self, mask: int) -> np.ndarray:
        return np.flatnonzero(superset_scan(self.words, mask, self.parent.order))

    def meet(self, i: int, j: int) -> int:
        return self.index_of[self.masks[i] & self.masks[j]]

    def join(self, i: int, j: int) -> int:
        if self._join_table is not None:
            return int(self._join_table[i, j])
        key = (i, j) if i <= j else (j, i)
        got = self._join_cache.get(key)
        if got is None:
            a, b = self.masks[i], self.masks[j]
            if is_subset(a, b):
                got = j
            elif is_subset(b, a):
                got = i
            else:
                got = self.index_of[closure_mask(self.parent, a | b)]
            self._join_cache[key] = got
        return got

    def materialize_joins(self, cap: int = 800) -> bool:
        """Precompute the full join table when the lattice is small enough."""
        if self._join_table is not None:
            return True
        L = len(self.masks)
        if L > cap:
            return False
        jt = np.empty((L, L), dtype=np.int32)
        for i in range(L):
            jt[i, i] = i
            for j in range(i + 1, L):
                jt[i, j] = jt[j, i] = self.join(i, j)
        self._join_table = jt
        return True

    def normal_indices(self) -> np.ndarray:
        return np.flatnonzero(self.normal)

    def conjugates_of(self, i: int) -> list[int]:
        return self.classes[self.conj_class[i]]

    def maximal_indices(self) -> np.ndarray:
        """Indices of maximal proper subgroups."""
        L = len(self.masks)
        top = self.index_of[self.parent.full]
        out = []
        for i in range(L):
            if i == top:
                continue
            above = self.above(self.masks[i])
            # strictly bigger, not the whole group
            strict = [j for j in above if j != i and j != top]
            if not strict:
                out.append(i)
        return np.array(out, dtype=np.int64)


def _cyclic_masks(G: Group) -> dict[int, tuple[int, ...]]:
    out: dict[int, tuple[int, ...]] = {1: ()}
    for x in range(1, G.order):
        m, y = 1 | (1 << x), x
        while y != 0:
            y = int(G.table[y, x])
            m |= 1 << y
        if m not in out:
            out[m] = (x,)
    return out


def enumerate_subgroups(
    G: Group,
    max_order: int = LATTICE_MAX_ORDER,
    max_subgroups: int = LATTICE_MAX_SUBGROUPS,
) -> SubgroupLattice:
    """Build the complete subgroup lattice of G.

    Raises TooLarge when the order or projected subgroup count exceeds caps;
    callers may fall back to restricted sweeps.
    """
    if G.order > max_order:
        raise TooLarge(f"lattice enumeration capped at order {max_order}, got {G.order}")
    cyclics = _cyclic_masks(G)
    cyclic_list = sorted(cyclics)
    subs: dict[int, tuple[int, ...]] = dict(cyclics)

    ggens = small_generating_set(G)
    perms = [G.conj_perm(g) for g in ggens]

    def orbit_with_gens(mask: int, gens: tuple[int, ...]) -> dict[int, tuple[int, ...]]:
        """Conjugacy orbit of a subgroup, carrying valid generators along."""
        orbit = {mask: gens}
        frontier = [mask]
        while frontier:
            m = frontier.pop()
            mg = orbit[m]
            for p in perms:
                c = mask_from_array(p[indices_of(m, G.order)])
                if c not in orbit:
                    orbit[c] = tuple(int(p[g]) for g in mg)
                    frontier.append(c)
        return orbit

    # Expand one representative per conjugacy class against every cyclic
    # subgroup; conjugates of its joins are joins of its conjugates, so closing
    # each new class keeps the sweep complete.
    expanded: set[int] = set()
    queue = [m for m in cyclic_list]
    while queue:
        rep = queue.pop()
        if rep in expanded:
            continue
        expanded.add(rep)
        rep_gens = subs[rep]
        for c in cyclic_list:
            if is_subset(c, rep):
                continue
            j = closure_mask(G, rep | c)
            if j in subs:
                continue
            jgens = tuple(sorted(set(rep_gens) | set(subs[c])))
            orbit = orbit_with_gens(j, jgens)
            for m, mg in orbit.items():
                if m not in subs:
                    subs[m] = mg
                    if len(subs) > max_subgroups:
                        raise TooLarge(f"more than {max_subgroups} subgroups")
            queue.append(min(orbit))
    masks = sorted(subs)
    return SubgroupLattice(G, masks, [subs[m] for m in masks])


# ---------------------------------------------------------------------------
# chief structure


@dataclass(frozen=True)
class ChiefFactor:
    """A chief factor upper/lower of the parent group."""

    parent: Group
    upper: Subgroup
    lower: Subgroup

    def __post_init__(self):
        if not is_subset(self.lower.mask, self.upper.mask) or self.lower.mask == self.upper.mask:
            raise InvalidGroup("chief factor", "lower not a proper subgroup of upper")

    @property
    def order(self) -> int:
        return self.upper.order // self.lower.order

    def __repr__(self):
        return f"ChiefFactor({self.upper.order}/{self.lower.order} of {self.parent.name})"


@dataclass(frozen=True)
class ChiefSeries:
    parent: Group
    terms: tuple[Subgroup, ...]

    @property
    def factors(self) -> list[ChiefFactor]:
        return [
            ChiefFactor(self.parent, self.terms[i + 1], self.terms[i])
            for i in range(len(self.terms) - 1)
        ]


def validate_chief_factor(G: Group, lat: SubgroupLattice, f: ChiefFactor) -> None:
    """Check both terms are normal and upper/lower is minimal normal in G/lower."""
    iu = lat.index_of.get(f.upper.mask)
    il = lat.index_of.get(f.lower.mask)
    if iu is None or il is None or not (lat.normal[iu] and lat.normal[il]):
        raise InvalidGroup("chief factor", "terms not normal subgroups")
    for j in lat.normal_indices():
        m = lat.masks[j]
        if m != f.lower.mask and m != f.upper.mask:
            if is_subset(f.lower.mask, m) and is_subset(m, f.upper.mask):
                raise InvalidGroup("chief factor", "a normal subgroup lies strictly between")


# ---------------------------------------------------------------------------
# pointwise operators


def core(G: Group, H: Subgroup) -> Subgroup:
    """H_G: the intersection of all conjugates of H (largest normal inside H)."""
    mask = H.mask
    out = mask
    frontier = [mask]
    seen = {mask}
    gens = small_generating_set(G)
    while frontier:
        m = frontier.pop()
        for g in gens:
            c = mask_from_array(G.conj_perm(g)[indices_of(m, G.order)])
            if c not in seen:
                seen.add(c)
                out &= c
                frontier.append(c)
    return Subgroup(G, out, _validated=True)


def normal_closure(G: Group, H: Subgroup) -> Subgroup:
    """H^G: smallest normal subgroup containing H."""
    return Subgroup(G, normal_closure_mask(G, H.mask), _validated=True)


def normal_closure_mask(G: Group, seed: int, within: Optional[int] = None) -> int:
    """Closure of a seed set under products and conjugation (within a subgroup).

    With ``within`` set, conjugation runs over that subgroup only, producing
    the normal closure inside it.
    """
    conjugators = (
        small_generating_set(G)
        if within is None
        else _subgroup_generators(G, within)
    )
    perms = [G.conj_perm(g) for g in conjugators]
    mask = seed | 1
    while True:
        els = indices_of(mask, G.order)
        new = mask
        for p in perms:
            new |= mask_from_array(p[els])
        new = closure_mask(G, new)
        if new == mask:
            return mask
        mask = new


def _subgroup_generators(G: Group, mask: int) -> list[int]:
    gens: list[int] = []
    cur = 1
    for x in indices_of(mask, G.order):
        xi = int(x)
        if not (cur >> xi) & 1:
            gens.append(xi)
            cur = closure_mask(G, cur | (1 << xi))
            if cur == mask:
                break
    return gens


def centralizer(G: Group, elements: Iterable[int]) -> Subgroup:
    ok = np.ones(G.order, dtype=bool)
    for s in elements:
        ok &= G.table[:, s] == G.table[s, :]
    return Subgroup(G, mask_from_array(np.flatnonzero(ok)), _validated=True)


def normalizer(G: Group, H: Subgroup) -> Subgroup:
    els = H.elements
    out = []
    for g in range(G.order):
        if mask_from_array(G.conj_perm(g)[els]) == H.mask:
            out.append(g)
    return Subgroup(G, mask_from_indices(out), _validated=True)


def normalizer_mask(G: Group, mask: int) -> int:
    els = indices_of(mask, G.order)
    out = 0
    for g in range(G.order):
        if mask_from_array(G.conj_perm(g)[els]) == mask:
            out |= 1 << g
    return out


def centralizer_of_factor(G: Group, f: ChiefFactor) -> Subgroup:
    """C_G(H/K): all g with [g, h] in K for every h in H."""
    return Subgroup(G, centralizer_of_section_mask(G, f.upper.mask, f.lower.mask), _validated=True)


def centralizer_of_section_mask(G: Group, upper: int, lower: int) -> int:
    hels = indices_of(upper, G.order)
    out = 0
    inv = G.inverse
    t = G.table
    inv_h = inv[hels]
    for g in range(G.order):
        gh = t[g, hels]
        comm = t[t[inv[g], inv_h], gh]      # [g,h] = g^-1 h^-1 g h
        if int(mask_from_array(comm) & ~lower) == 0:
            out |= 1 << g
    return out


def _p_part(n: int, p: int) -> int:
    m = 1
    while n % p == 0:
        n //= p
        m *= p
    return m


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime(p: int) -> bool:
    return p >= 2 and prime_factors(p) == [p]


def sylow(G: Group, p: int, lat: Optional[SubgroupLattice] = None) -> Subgroup:
    """A Sylow p-subgroup, taken from the lattice (first of maximal p-order)."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    lat = lat or get_lattice(G)
    target = _p_part(G.order, p)
    hits = np.flatnonzero(lat.orders == target)
    if len(hits) == 0:
        raise InvalidGroup("sylow", f"no subgroup of order {target} found (lattice incomplete?)")
    return lat.subgroups[int(hits[0])]


def sylow_indices(lat: SubgroupLattice, p: int) -> list[int]:
    """All Sylow p-subgroups of the parent (every conjugate)."""
    target = _p_part(lat.parent.order, p)
    return [int(i) for i in np.flatnonzero(lat.orders == target)]


def hall(G: Group, pi: Iterable[int], lat: Optional[SubgroupLattice] = None) -> Optional[Subgroup]:
    """A Hall pi-subgroup if one exists in the lattice, else None."""
    pis = set(pi)
    for p in pis:
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
    lat = lat or get_lattice(G)
    target = 1
    for p in pis:
        target *= _p_part(G.order, p)
    hits = np.flatnonzero(lat.orders == target)
    return lat.subgroups[int(hits[0])] if len(hits) else None


def maximal_subgroups(G: Group, lat: Optional[SubgroupLattice] = None) -> list[Subgroup]:
    lat = lat or get_lattice(G)
    return [lat.subgroups[int(i)] for i in lat.maximal_indices()]


def frattini(G: Group, lat: Optional[SubgroupLattice] = None) -> Subgroup:
    lat = lat or get_lattice(G)
    maxi = lat.maximal_indices()
    if len(maxi) == 0:
        return Subgroup(G, G.full, _validated=True)
    mask = G.full
    for i in maxi:
        mask &= lat.masks[int(i)]
    return Subgroup(G, mask, _validated=True)


def centre(G: Group) -> Subgroup:
    ok = (G.table == G.table.T).all(axis=1)
    return Subgroup(G, mask_from_array(np.flatnonzero(ok)), _validated=True)


def upper_central_masks(G: Group) -> list[int]:
    """Ascending upper central series 1 = Z_0 <= Z_1 <= ... (stabilised)."""
    series = [1]
    z = centre(G).mask
    series.append(z)
    while True:
        cur = series[-1]
        nxt = 0
        inv = G.inverse
        t = G.table
        allg = np.arange(G.order)
        inv_all = inv[allg]
        for x in range(G.order):
            # [x, g] in Z_i for all g
            comm = t[t[inv[x], inv_all], t[x, allg]]
            if int(mask_from_array(comm) & ~cur) == 0:
                nxt |= 1 << x
        if nxt == cur:
            return series
        series.append(nxt)


def hypercentre(G: Group) -> Subgroup:
    """Z_inf(G): terminal term of the upper central series."""
    return Subgroup(G, upper_central_masks(G)[-1], _validated=True)


def derived_series_masks(G: Group) -> list[int]:
    series = [G.full]
    while True:
        els = indices_of(series[-1], G.order)
        a = np.repeat(els, len(els))
        b = np.tile(els, len(els))
        comms = G.table[G.table[G.inverse[a], G.inverse[b]], G.table[a, b]]
        new = closure_mask(G, mask_from_array(np.unique(comms)))
        if new == series[-1]:
            return series
        series.append(new)
        if new == 1:
            return series


def minimal_normal_subgroups(G: Group, lat: Optional[SubgroupLattice] = None) -> list[Subgroup]:
    lat = lat or get_lattice(G)
    normals = [lat.masks[int(i)] for i in lat.normal_indices()]
    out = []
    for m in normals:
        if m == 1:
            continue
        if not any(x != 1 and x != m and is_subset(x, m) for x in normals):
            out.append(m)
    return [Subgroup(G, m, _validated=True) for m in sorted(out, key=lambda m: (popcount(m), m))]


def minimal_normal_over(
    G: Group,
    k_mask: int,
    lat: Optional[SubgroupLattice] = None,
    within: Optional[int] = None,
    classes: Optional[list[list[int]]] = None,
) -> Optional[int]:
    """Smallest-order normal subgroup strictly containing k (inside ``within``).

    Any normal subgroup of minimal order above K is a chief step: a normal
    subgroup strictly between would be smaller.  With a lattice this is one
    vectorised scan; without, normal closures of conjugacy-class
    representatives are searched and shrunk to an inclusion-minimal one.
    """
    top = within if within is not None else G.full
    if k_mask == top:
        return None
    if lat is not None:
        best = None
        for i in lat.normal_indices():
            m = lat.masks[int(i)]
            if m != k_mask and is_subset(k_mask, m) and is_subset(m, top):
                if best is None or (popcount(m), m) < (popcount(best), best):
                    best = m
        return best
    # lattice-free: normal closures over class representatives
    if classes is None:
        classes = conjugacy_classes(G)
    best = None
    for cls in classes:
        g = cls[0]
        if (k_mask >> g) & 1 or not (top >> g) & 1:
            continue
        n = normal_closure_mask(G, k_mask | (1 << g))
        if not is_subset(n, top):
            continue
        if best is None or popcount(n) < popcount(best):
            best = n
    if best is None:
        return None
    # shrink to inclusion-minimal over K
    changed = True
    while changed:
        changed = False
        for cls in classes:
            g = cls[0]
            if (k_mask >> g) & 1 or not (best >> g) & 1:
                continue
            n = normal_closure_mask(G, k_mask | (1 << g))
            if popcount(n) < popcount(best):
                best = n
                changed = True
    return best


def chief_series(G: Group, lat: Optional[SubgroupLattice] = None) -> ChiefSeries:
    """One chief series, by greedy refinement with minimal normal steps."""
    terms = [1]
    while terms[-1] != G.full:
        nxt = minimal_normal_over(G, terms[-1], lat=lat)
        if nxt is None:
            raise InvalidGroup("chief series", "refinement stalled")
        terms.append(nxt)
    return ChiefSeries(G, tuple(Subgroup(G, m, _validated=True) for m in terms))


def all_chief_factors(G: Group, lat: Optional[SubgroupLattice] = None) -> list[ChiefFactor]:
    """Every pair (H, K) of normals with H/K minimal normal in G/K.

    These are exactly the covering pairs of the normal-subgroup poset.
    """
    lat = lat or get_lattice(G)
    normals = sorted(
        (lat.masks[int(i)] for i in lat.normal_indices()), key=lambda m: (popcount(m), m)
    )
    nwords = words_matrix(normals, G.order)
    out = []
    for ki, k in enumerate(normals):
        above = np.flatnonzero(superset_scan(nwords, k, G.order))
        above = [int(j) for j in above if normals[int(j)] != k]
        for j in above:
            h = normals[j]
            if not any(
                normals[l] != k and normals[l] != h and is_subset(k, normals[l]) and is_subset(normals[l], h)
                for l in above
            ):
                out.append(
                    ChiefFactor(
                        G,
                        Subgroup(G, h, _validated=True),
                        Subgroup(G, k, _validated=True),
                    )
                )
    return out


def is_subnormal(G: Group, H: Subgroup) -> bool:
    """Descending normal-closure chain test."""
    k = G.full
    while True:
        nxt = normal_closure_mask(G, H.mask, within=k)
        if nxt == k:
            return k == H.mask
        k = nxt
        if k == H.mask:
            return True


def is_subnormally_embedded(G: Group, H: Subgroup, lat: Optional[SubgroupLattice] = None) -> bool:
    """Every Sylow subgroup of H is a Sylow subgroup of some subnormal subgroup."""
    lat = lat or get_lattice(G)
    for p in prime_factors(H.order):
        target = _p_part(H.order, p)
        hp = None
        for i in lat.below(H.mask):
            if int(lat.orders[i]) == target:
                hp = lat.masks[int(i)]
                break
        assert hp is not None  # Sylow subgroups of H exist in a complete lattice
        found = False
        for j in range(len(lat)):
            if lat.subnormal_depth[j] >= 0 and is_subset(hp, lat.masks[j]):
                if _p_part(int(lat.orders[j]), p) == target:
                    found = True
                    break
        if not found:
            return False
    return True


def is_primitive(G: Group, lat: Optional[SubgroupLattice] = None) -> bool:
    """Some maximal subgroup has trivial core."""
    lat = lat or get_lattice(G)
    for i in lat.maximal_indices():
        cls = lat.conjugates_of(int(i))
        m = full_mask(G.order)
        for j in cls:
            m &= lat.masks[j]
        if m == 1:
            return True
    return False


def fitting(G: Group, lat: Optional[SubgroupLattice] = None) -> Subgroup:
    """F(G): join of all nilpotent normal subgroups, verified nilpotent."""
    from . import formations

    lat = lat or get_lattice(G)
    mask = 1
    for i in lat.normal_indices():
        m = lat.masks[int(i)]
        if formations.subgroup_is_member(G, m, formations.NILPOTENT):
            mask = closure_mask(G, mask | m)
    out = Subgroup(G, mask, _validated=True)
    assert formations.subgroup_is_member(G, out.mask, formations.NILPOTENT)
    return out


def generalized_fitting(G: Group, lat: Optional[SubgroupLattice] = None) -> Subgroup:
    """F*(G): join of all quasinilpotent normal subgroups, verified quasinilpotent.

    The quasinilpotency predicate is delegated to the formations module, the
    single source of truth for class membership.
    """
    from . import formations

    lat = lat or get_lattice(G)
    mask = 1
    for i in lat.normal_indices():
        m = lat.masks[int(i)]
        if formations.subgroup_is_member(G, m, formations.QUASINILPOTENT):
            mask = closure_mask(G, mask | m)
    out = Subgroup(G, mask, _validated=True)
    assert formations.subgroup_is_member(G, out.mask, formations.QUASINILPOTENT)
    return out


# ---------------------------------------------------------------------------
# lattice registry (weak per-group cache)

import weakref

_LATTICES: "weakref.WeakKeyDictionary[Group, SubgroupLattice]" = weakref.WeakKeyDictionary()
_LATTICE_SEEDS: "weakref.WeakKeyDictionary[Group, object]" = weakref.WeakKeyDictionary()


def get_lattice(G: Group, **caps) -> SubgroupLattice:
    lat = _LATTICES.get(G)
    if lat is None:
        seed = _LATTICE_SEEDS.pop(G, None)
        lat = seed() if seed is not None else enumerate_subgroups(G, **caps)
        _LATTICES[G] = lat
    return lat


def set_lattice(G: Group, lat: SubgroupLattice) -> None:
    _LATTICES[G] = lat


def set_lattice_seed(G: Group, seed) -> None:
    """Register a deferred constructor (e.g. a parent-lattice restriction)."""
    if _LATTICES.get(G) is None:
        _LATTICE_SEEDS[G] = seed
