"""Explicit finite groups on index sets {0, ..., n-1} with identity 0.

A group is a validated Cayley table; subgroups are bitmasks over the parent's
element indices.  Everything is immutable after construction, so objects can
be shared freely (including across worker processes).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from ._bits import (
    full_mask,
    indices_of,
    is_subset,
    mask_from_array,
    mask_from_indices,
    popcount,
)
from .errors import BadAction, InvalidGroup, NotNormal, TooLarge

# Orders up to this bound get an exhaustive associativity check; larger tables
# are sampled with >= 10 * order**2 seeded random triples.
ASSOC_EXHAUSTIVE_MAX = 256
ISO_MAX_ORDER = 128


def _check_associativity(table: np.ndarray) -> None:
    n = table.shape[0]
    if n <= ASSOC_EXHAUSTIVE_MAX:
        left = table[table, :]          # left[a, b, c] = (a*b)*c
        right = table[:, table]         # right[a, b, c] = a*(b*c)
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            raise InvalidGroup("associativity", f"triple {tuple(int(x) for x in bad)}")
        return
    rng = np.random.default_rng(n * 0x9E3779B1 + int(table[1, 1]))
    total = 10 * n * n
    chunk = 1 << 20
    done = 0
    while done < total:
        k = min(chunk, total - done)
        a = rng.integers(0, n, size=k)
        b = rng.integers(0, n, size=k)
        c = rng.integers(0, n, size=k)
        if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
            raise InvalidGroup("associativity", "sampled triple failed")
        done += k


class Group:
    """A finite group given by its full multiplication table.

    ``table[a][b]`` is the index of a*b; element 0 is the identity in every
    Group, and all constructors normalize to that convention.
    """

    __slots__ = ("order", "table", "inverse", "labels", "name", "__weakref__")

    def __init__(
        self,
        table: np.ndarray,
        labels: Optional[Sequence[str]] = None,
        name: str = "",
        _validated: bool = False,
    ):
        table = np.asarray(table)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise InvalidGroup("shape", f"table shape {table.shape}")
        n = table.shape[0]
        if n == 0:
            raise InvalidGroup("shape", "empty table")
        dtype = np.int16 if n < 2**15 else np.int32
        table = table.astype(dtype, copy=True)
        if not _validated:
            if table.min() < 0 or table.max() >= n:
                raise InvalidGroup("range", "entry outside [0, order)")
            if not (np.array_equal(table[0], np.arange(n)) and np.array_equal(table[:, 0], np.arange(n))):
                raise InvalidGroup("identity", "row/column 0 is not the identity")
            _check_associativity(table)
        inverse = np.empty(n, dtype=dtype)
        rows, cols = np.nonzero(table == 0)
        if len(rows) < n:
            raise InvalidGroup("inverse", "some element has no inverse")
        inverse[rows] = cols
        if not np.array_equal(table[np.arange(n), inverse], np.zeros(n, dtype=dtype)):
            raise InvalidGroup("inverse", "inverse array inconsistent")
        table.setflags(write=False)
        inverse.setflags(write=False)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "inverse", inverse)
        object.__setattr__(self, "labels", tuple(labels) if labels is not None else None)
        object.__setattr__(self, "name", name or f"G{n}")

    def __setattr__(self, *a):
        raise AttributeError("Group is immutable")

    def __repr__(self):
        return f"Group({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, a: int, g: int) -> int:
        """g * a * g^-1."""
        return int(self.table[self.table[g, a], self.inverse[g]])

    def conj_perm(self, g: int) -> np.ndarray:
        """The permutation x -> g x g^-1 as an index array."""
        return self.table[self.table[g], self.inverse[g]]

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return str(i)

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = int(self.table[y, x])
            k += 1
        return k

    def table_equal(self, other: "Group") -> bool:
        return self.order == other.order and np.array_equal(self.table, other.table)

    @property
    def full(self) -> int:
        return full_mask(self.order)


class Subgroup:
    """Subgroup of a parent Group, stored as a membership bitmask."""

    __slots__ = ("parent", "mask", "_elements")

    def __init__(self, parent: Group, mask: int, _validated: bool = False):
        self.parent = parent
        self.mask = mask
        self._elements = None
        if not _validated:
            if mask & 1 == 0:
                raise InvalidGroup("subgroup", "identity not contained")
            if mask >> parent.order:
                raise InvalidGroup("subgroup", "member index out of range")
            els = indices_of(mask, parent.order)
            prods = parent.table[np.ix_(els, els)]
            if mask_from_array(prods.ravel()) | mask != mask:
                raise InvalidGroup("subgroup", "not closed under products")
            if mask_from_array(parent.inverse[els]) | mask != mask:
                raise InvalidGroup("subgroup", "not closed under inverses")
            if parent.order % len(els):
                raise InvalidGroup("subgroup", "order does not divide |G| (Lagrange)")

    @property
    def order(self) -> int:
        return popcount(self.mask)

    @property
    def elements(self) -> np.ndarray:
        if self._elements is None:
            self._elements = indices_of(self.mask, self.parent.order)
            self._elements.setflags(write=False)
        return self._elements

    def contains(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def is_subset_of(self, other: "Subgroup") -> bool:
        return is_subset(self.mask, other.mask)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.mask == self.mask

    def __hash__(self):
        return hash((id(self.parent), self.mask))

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.name})"


@dataclass(frozen=True)
class Homomorphism:
    """A map between groups given element-wise; validated to be multiplicative."""

    source: Group
    target: Group
    map: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.map)
        if m.shape != (self.source.order,):
            raise InvalidGroup("homomorphism", "map length mismatch")
        if int(m[0]) != 0:
            raise InvalidGroup("homomorphism", "identity not preserved")
        if m.min() < 0 or m.max() >= self.target.order:
            raise InvalidGroup("homomorphism", "image index out of range")
        if not np.array_equal(m[self.source.table], self.target.table[np.ix_(m, m)]):
            raise InvalidGroup("homomorphism", "not multiplicative")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "map", m)

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def image_mask(self, mask: int) -> int:
        els = indices_of(mask, self.source.order)
        return mask_from_array(self.map[els])

    def preimage_mask(self, mask: int) -> int:
        hits = (np.asarray(mask >> self.map, dtype=object) & 1).astype(bool) if False else None
        # bit test per element; vectorised through indices_of on the target side
        tgt = indices_of(mask, self.target.order)
        sel = np.isin(self.map, tgt)
        return mask_from_array(np.flatnonzero(sel))

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(np.unique(self.map)) == self.source.order


@dataclass(frozen=True)
class Action:
    """A group acting on another group by automorphisms.

    ``perms[h]`` is the permutation of the acted group's indices induced by
    actor element h.  Used for the conjugation action inside the semidirect
    construction of F-central factors.
    """

    actor: Group
    acted: Group
    perms: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.perms)
        if p.shape != (self.actor.order, self.acted.order):
            raise BadAction(f"perms shape {p.shape}")
        n = self.acted.order
        ident = np.arange(n)
        if not np.array_equal(p[0], ident):
            raise BadAction("identity does not act trivially")
        for h in range(self.actor.order):
            row = p[h]
            if not np.array_equal(np.sort(row), ident):
                raise BadAction(f"actor {h}: not a bijection")
            if not np.array_equal(row[self.acted.table], self.acted.table[np.ix_(row, row)]):
                raise BadAction(f"actor {h}: not multiplicative")
        # perm[g*h] = perm[g] o perm[h]
        for g in range(self.actor.order):
            composed = p[g][p]            # composed[h] = perm[g] o perm[h]
            if not np.array_equal(p[self.actor.table[g]], composed):
                raise BadAction(f"actor {g}: composition law fails")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "perms", p)

    @staticmethod
    def trivial(actor: Group, acted: Group) -> "Action":
        perms = np.tile(np.arange(acted.order), (actor.order, 1))
        return Action(actor, acted, perms)


def closure_mask(G: Group, seed_mask: int) -> int:
    """Smallest product-closed subset containing the seed and the identity.

    In a finite group, a nonempty product-closed subset is a subgroup, so this
    is the generated subgroup.  Fixpoint iteration squares the current set via
    one fancy-indexing pass per round.
    """
    mask = seed_mask | 1
    els = indices_of(mask, G.order)
    while True:
        prods = G.table[np.ix_(els, els)]
        new_mask = mask | mask_from_array(prods.ravel())
        if new_mask == mask:
            return mask
        mask = new_mask
        els = indices_of(mask, G.order)


def generate_subgroup(G: Group, gens: Iterable[int]) -> Subgroup:
    """Subgroup generated by the given element indices."""
    gl = list(gens)
    for x in gl:
        if not (0 <= int(x) < G.order):
            raise IndexError(f"generator index {x} out of range for order {G.order}")
    return Subgroup(G, closure_mask(G, mask_from_indices(gl)), _validated=True)


def trivial_subgroup(G: Group) -> Subgroup:
    return Subgroup(G, 1, _validated=True)


def whole_group(G: Group) -> Subgroup:
    return Subgroup(G, G.full, _validated=True)


def is_normal_mask(G: Group, mask: int, gens: Optional[Sequence[int]] = None) -> bool:
    els = indices_of(mask, G.order)
    test = range(G.order) if gens is None else gens
    for g in test:
        if mask_from_array(G.conj_perm(g)[els]) != mask:
            return False
    return True


def quotient(G: Group, N: Subgroup) -> tuple[Group, Homomorphism]:
    """Quotient by a normal subgroup plus the canonical projection.

    Coset representatives are the minimal element index of each coset, sorted
    ascending, which puts the identity coset at index 0.
    """
    if N.parent is not G:
        raise ValueError("subgroup belongs to a different group")
    if not is_normal_mask(G, N.mask):
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")
    els = N.elements
    rep_of = G.table[np.ix_(els, np.arange(G.order))].min(axis=0)
    reps = np.unique(rep_of)
    rep_to_q = {int(r): i for i, r in enumerate(reps)}
    proj = np.array([rep_to_q[int(r)] for r in rep_of])
    q_table = proj[G.table[np.ix_(reps, reps)]]
    labels = None
    if G.labels is not None:
        labels = [f"{G.labels[int(r)]}·N" for r in reps]
    Q = Group(q_table, labels=labels, name=f"{G.name}/N{N.order}")
    return Q, Homomorphism(G, Q, proj)


def subgroup_group(G: Group, H: Subgroup) -> tuple[Group, np.ndarray]:
    """A subgroup as a standalone Group; returns (group, embedding array).

    ``embed[i]`` is the parent index of the standalone group's element i.
    The identity lands at index 0 because parent index 0 is minimal.
    """
    els = H.elements
    pos = {int(e): i for i, e in enumerate(els)}
    sub_table = np.array([[pos[int(G.table[a, b])] for b in els] for a in els])
    labels = [G.label(int(e)) for e in els] if G.labels is not None else None
    S = Group(sub_table, labels=labels, name=f"{G.name}|{H.order}", _validated=True)
    return S, els.copy()


def section_group(G: Group, upper_mask: int, lower_mask: int) -> tuple[Group, dict[int, int]]:
    """The section upper/lower as a Group (lower must be normal in upper).

    Returns the quotient group and a map from parent element index (members of
    upper only) to section index.
    """
    uels = indices_of(upper_mask, G.order)
    lels = indices_of(lower_mask, G.order)
    rep_of = {}
    prods = G.table[np.ix_(lels, uels)]
    mins = prods.min(axis=0)
    for pos, u in enumerate(uels):
        rep_of[int(u)] = int(mins[pos])
    reps = sorted(set(rep_of.values()))
    rep_to_q = {r: i for i, r in enumerate(reps)}
    to_q = {u: rep_to_q[r] for u, r in rep_of.items()}
    k = len(reps)
    q_table = np.empty((k, k), dtype=np.int32)
    for i, a in enumerate(reps):
        row = G.table[a, reps]
        q_table[i] = [to_q[int(x)] for x in row]
    Q = Group(q_table, name=f"{G.name}-section", _validated=True)
    return Q, to_q


def direct_product(A: Group, B: Group) -> Group:
    """Componentwise product; element (a, b) has index a*|B| + b."""
    nb = B.order
    t = (A.table[:, None, :, None].astype(np.int64) * nb + B.table[None, :, None, :]).reshape(
        A.order * nb, A.order * nb
    )
    labels = None
    if A.labels is not None and B.labels is not None:
        labels = [f"({la},{lb})" for la in A.labels for lb in B.labels]
    return Group(t, labels=labels, name=f"{A.name}x{B.name}", _validated=True)


def semidirect_product(N: Group, H: Group, act: Action) -> Group:
    """Split extension of N by H; element (n, h) has index n*|H| + h.

    With the trivial action this produces a table identical to
    ``direct_product(N, H)``.
    """
    if act.actor is not H or act.acted is not N:
        raise BadAction("action endpoints do not match the factors")
    nh = H.order
    nn = N.order
    n_total = nn * nh
    t = np.empty((n_total, n_total), dtype=np.int32)
    # (n1, h1)(n2, h2) = (n1 * act[h1](n2), h1 h2)
    for h1 in range(nh):
        twisted = N.table[:, act.perms[h1]]          # twisted[n1, n2] = n1 * h1(n2)
        row_block = twisted.astype(np.int64) * nh    # (nn, nn)
        for h2 in range(nh):
            t[np.ix_(
                np.arange(nn) * nh + h1,
                np.arange(nn) * nh + h2,
            )] = row_block + H.table[h1, h2]
    return Group(t, name=f"{N.name}:{H.name}", _validated=True)


# ---------------------------------------------------------------------------
# isomorphism testing


def _iso_fingerprint(G: Group):
    n = G.order
    orders = np.array([G.element_order(x) for x in range(n)])
    abelian = bool(np.array_equal(G.table, G.table.T))
    centre = int(np.sum((G.table == G.table.T).all(axis=1)))
    # derived series orders
    der = []
    mask = G.full
    while True:
        els = indices_of(mask, n)
        a = np.repeat(els, len(els))
        b = np.tile(els, len(els))
        comms = G.table[G.table[G.inverse[a], G.inverse[b]], G.table[a, b]]
        new = closure_mask(G, mask_from_array(np.unique(comms)))
        der.append(popcount(new))
        if new == mask or popcount(new) == 1:
            break
        mask = new
    classes = conjugacy_classes(G)
    class_sig = tuple(sorted((len(c), int(orders[c[0]])) for c in classes))
    order_multiset = tuple(sorted(np.bincount(orders).tolist()))
    return (n, abelian, tuple(sorted(orders.tolist())), centre, tuple(der), class_sig, order_multiset)


def conjugacy_classes(G: Group) -> list[list[int]]:
    """Conjugacy classes as sorted lists, ordered by minimal element."""
    n = G.order
    seen = np.zeros(n, dtype=bool)
    gens = small_generating_set(G)
    perms = [G.conj_perm(g) for g in gens]
    classes = []
    for x in range(n):
        if seen[x]:
            continue
        orbit = {x}
        frontier = [x]
        seen[x] = True
        while frontier:
            y = frontier.pop()
            for p in perms:
                z = int(p[y])
                if z not in orbit:
                    orbit.add(z)
                    seen[z] = True
                    frontier.append(z)
        classes.append(sorted(orbit))
    return classes


import weakref

_GENS_CACHE: "weakref.WeakKeyDictionary[Group, list[int]]" = weakref.WeakKeyDictionary()


def small_generating_set(G: Group) -> list[int]:
    got = _GENS_CACHE.get(G)
    if got is not None:
        return got
    gens: list[int] = []
    mask = 1
    for x in range(G.order):
        if not (mask >> x) & 1:
            gens.append(x)
            mask = closure_mask(G, mask | (1 << x))
            if mask == G.full:
                break
    _GENS_CACHE[G] = gens
    return gens


def _extend_partial_iso(A: Group, B: Group, pairs: dict[int, int]) -> Optional[dict[int, int]]:
    """Close a partial generator map under products; None on contradiction."""
    pairs = dict(pairs)
    used = set(pairs.values())
    if len(used) != len(pairs):
        return None
    frontier = list(pairs.items())
    while frontier:
        s, t = frontier.pop()
        for s2, t2 in list(pairs.items()):
            for (sa, ta), (sb, tb) in (((s, t), (s2, t2)), ((s2, t2), (s, t))):
                sp = int(A.table[sa, sb])
                tp = int(B.table[ta, tb])
                if sp in pairs:
                    if pairs[sp] != tp:
                        return None
                elif tp in used:
                    return None
                else:
                    pairs[sp] = tp
                    used.add(tp)
                    frontier.append((sp, tp))
    return pairs


def find_isomorphism(A: Group, B: Group, max_order: int = ISO_MAX_ORDER) -> Optional[np.ndarray]:
    """Bijective homomorphism A -> B as an index array, or None.

    Invariant screening first, then backtracking over generator images with
    incremental multiplicative closure.  Only intended for orders up to the
    cap; raises TooLarge above it.
    """
    if A.order != B.order:
        return None
    if A.order > max_order:
        raise TooLarge(f"isomorphism test capped at order {max_order}")
    if A is B:
        return np.arange(A.order)
    if _iso_fingerprint(A) != _iso_fingerprint(B):
        return None
    gens = small_generating_set(A)
    a_orders = [A.element_order(g) for g in gens]
    b_orders = np.array([B.element_order(x) for x in range(B.order)])
    b_class_size = np.empty(B.order, dtype=np.int64)
    for c in conjugacy_classes(B):
        b_class_size[c] = len(c)
    a_class_size = np.empty(A.order, dtype=np.int64)
    for c in conjugacy_classes(A):
        a_class_size[c] = len(c)

    def backtrack(i: int, pairs: dict[int, int]) -> Optional[dict[int, int]]:
        if i == len(gens):
            return pairs if len(pairs) == A.order else None
        g = gens[i]
        if g in pairs:
            return backtrack(i + 1, pairs)
        for y in range(B.order):
            if int(b_orders[y]) != a_orders[i]:
                continue
            if int(b_class_size[y]) != int(a_class_size[g]):
                continue
            ext = _extend_partial_iso(A, B, {**pairs, g: y})
            if ext is not None:
                res = backtrack(i + 1, ext)
                if res is not None:
                    return res
        return None

    res = backtrack(0, {0: 0})
    if res is None:
        return None
    out = np.empty(A.order, dtype=np.int64)
    for s, t in res.items():
        out[s] = t
    return out


def are_isomorphic(A: Group, B: Group, max_order: int = ISO_MAX_ORDER) -> bool:
    return find_isomorphism(A, B, max_order=max_order) is not None
