"""Per-group cached derived data.

All heavyweight derived objects (lattices, conjugacy classes, quotients,
subgroup-as-group views, hypercentres, functor member sets) hang off a
GroupData record attached weakly to the Group.  Groups are immutable, so the
cache is sound; it is also the one place quotient lattices are kept, keyed by
the normal subgroup's member bits.
"""

from __future__ import annotations

import weakref
from typing import Optional

import numpy as np

from ._bits import indices_of, is_subset, mask_from_array, popcount
from .errors import TooLarge
from .groups import (
    Group,
    Homomorphism,
    Subgroup,
    closure_mask,
    conjugacy_classes,
    quotient,
    subgroup_group,
)
from . import structure
from .structure import SubgroupLattice, normal_closure_mask


class GroupData:
    def __init__(self, group: Group):
        self.group = group
        self._lattice: Optional[SubgroupLattice] = None
        self._classes = None
        self._class_ncl: dict[int, int] = {}
        self._chief: Optional[list[int]] = None
        self._quotients: dict[int, tuple["GroupData", Homomorphism]] = {}
        self._subgroups: dict[int, tuple["GroupData", np.ndarray]] = {}
        self._membership: dict[str, bool] = {}
        self._zf: dict[str, int] = {}
        self._zfphi: dict[str, int] = {}
        self._zf_sub: dict[tuple[int, str], int] = {}
        self._central: dict[tuple[int, int, str], bool] = {}
        self._tau: dict[str, frozenset[int]] = {}
        self._phi_pre: dict[int, int] = {}
        self._conj_rows: dict[int, np.ndarray] = {}
        self._sd_cache: dict[tuple[int, int], Group] = {}
        self._sqn_flags = None
        self._centre_mask: Optional[int] = None

    # -- basic structure -------------------------------------------------------

    @property
    def order(self) -> int:
        return self.group.order

    def lattice(self) -> SubgroupLattice:
        if self._lattice is None:
            self._lattice = structure.get_lattice(self.group)
        return self._lattice

    def has_lattice(self) -> bool:
        return self._lattice is not None

    def classes(self) -> list[list[int]]:
        if self._classes is None:
            self._classes = conjugacy_classes(self.group)
        return self._classes

    def conj_row(self, g: int) -> np.ndarray:
        row = self._conj_rows.get(g)
        if row is None:
            row = self.group.conj_perm(g)
            row.setflags(write=False)
            self._conj_rows[g] = row
        return row

    def conj_mask(self, mask: int, g: int) -> int:
        return mask_from_array(self.conj_row(g)[indices_of(mask, self.order)])

    def class_normal_closure(self, rep: int) -> int:
        got = self._class_ncl.get(rep)
        if got is None:
            got = normal_closure_mask(self.group, 1 << rep)
            self._class_ncl[rep] = got
        return got

    def centre_mask(self) -> int:
        if self._centre_mask is None:
            self._centre_mask = structure.centre(self.group).mask
        return self._centre_mask

    def element_orders(self) -> np.ndarray:
        got = getattr(self, "_element_orders", None)
        if got is None:
            got = np.array([self.group.element_order(x) for x in range(self.order)])
            got.setflags(write=False)
            self._element_orders = got
        return got

    def mask_is_cyclic(self, mask: int) -> bool:
        """A subgroup is cyclic iff it contains an element of its own order."""
        orders = self.element_orders()
        els = indices_of(mask, self.order)
        return bool((orders[els] == len(els)).any())

    def mask_exponent(self, mask: int) -> int:
        from math import lcm

        orders = self.element_orders()
        els = indices_of(mask, self.order)
        out = 1
        for o in orders[els]:
            out = lcm(out, int(o))
        return out

    def mask_is_abelian(self, mask: int) -> bool:
        els = indices_of(mask, self.order)
        sub = self.group.table[np.ix_(els, els)]
        return bool(np.array_equal(sub, sub.T))

    # -- chief structure ---------------------------------------------------------

    def chief_chain(self, lower: int = 1, upper: Optional[int] = None) -> list[int]:
        """Masks of one chief chain from ``lower`` to ``upper`` (default G)."""
        top = upper if upper is not None else self.group.full
        lat = self._lattice
        classes = None if lat is not None else self.classes()
        chain = [lower]
        while chain[-1] != top:
            nxt = structure.minimal_normal_over(
                self.group, chain[-1], lat=lat, within=top, classes=classes
            )
            if nxt is None:
                raise ValueError("no chief refinement (upper not normal over lower?)")
            chain.append(nxt)
        return chain

    def chief_series_masks(self) -> list[int]:
        if self._chief is None:
            self._chief = self.chief_chain()
        return self._chief

    # -- derived views -----------------------------------------------------------

    def quotient_data(self, n_mask: int) -> tuple["GroupData", Homomorphism]:
        got = self._quotients.get(n_mask)
        if got is None:
            Q, proj = quotient(self.group, Subgroup(self.group, n_mask, _validated=True))
            got = (get_data(Q), proj)
            self._quotients[n_mask] = got
        return got

    def subgroup_data(self, mask: int) -> tuple["GroupData", np.ndarray]:
        """Subgroup as a standalone group.

        When the parent lattice exists, the child's lattice is seeded as a
        lazy restriction of it (complete by completeness of the parent), so
        membership-only uses never pay for lattice flags.
        """
        got = self._subgroups.get(mask)
        if got is None:
            S, embed = subgroup_group(self.group, Subgroup(self.group, mask, _validated=True))
            sdata = get_data(S)
            if self._lattice is not None:
                lat = self._lattice

                def seed(lat=lat, S=S, embed=embed, mask=mask):
                    child_masks = []
                    child_gens = []
                    for i in lat.below(mask):
                        m = lat.masks[int(i)]
                        els = indices_of(m, self.order)
                        pos = np.searchsorted(embed, els)
                        child_masks.append(mask_from_array(pos))
                        child_gens.append(
                            tuple(int(np.searchsorted(embed, g)) for g in lat.gens_of[int(i)])
                        )
                    return SubgroupLattice(S, child_masks, child_gens)

                structure.set_lattice_seed(S, seed)
            got = (sdata, embed)
            self._subgroups[mask] = got
        return got

    def restrict_mask(self, mask: int, embed: np.ndarray) -> int:
        """Parent mask -> child mask through an embedding array."""
        els = indices_of(mask, self.order)
        pos = np.searchsorted(embed, els)
        return mask_from_array(pos)

    @staticmethod
    def unrestrict_mask(child_mask: int, embed: np.ndarray, child_order: int) -> int:
        els = indices_of(child_mask, child_order)
        return mask_from_array(embed[els])

    # -- misc caches ----------------------------------------------------------

    def semidirect_for_factor(self, up: int, lo: int, cap: int) -> Group:
        """The group (up/lo) x| (G/C_G(up/lo)), cached per factor."""
        got = self._sd_cache.get((up, lo))
        if got is not None:
            return got
        from .groups import Action, section_group, semidirect_product

        G = self.group
        c_mask = structure.centralizer_of_section_mask(G, up, lo)
        q1, to_q1 = section_group(G, up, lo)
        q2data, proj = self.quotient_data(c_mask)
        q2 = q2data.group
        if q1.order * q2.order > cap:
            raise TooLarge(
                f"semidirect construction of order {q1.order * q2.order} exceeds cap {cap}"
            )
        # parent representative of each q2 element
        reps = np.full(q2.order, -1, dtype=np.int64)
        for x in range(G.order - 1, -1, -1):
            reps[proj.map[x]] = x
        # q1 representative elements (minimal in coset by construction)
        q1_reps = [-1] * q1.order
        for parent_el, qi in to_q1.items():
            if q1_reps[qi] < 0 or parent_el < q1_reps[qi]:
                q1_reps[qi] = parent_el
        perms = np.empty((q2.order, q1.order), dtype=np.int64)
        for i in range(q2.order):
            r = int(reps[i])
            row = self.conj_row(r)
            perms[i] = [to_q1[int(row[x])] for x in q1_reps]
        act = Action(q2, q1, perms)
        got = semidirect_product(q1, q2, act)
        self._sd_cache[(up, lo)] = got
        return got


_DATA: "weakref.WeakKeyDictionary[Group, GroupData]" = weakref.WeakKeyDictionary()


def get_data(G: Group) -> GroupData:
    d = _DATA.get(G)
    if d is None:
        d = GroupData(G)
        _DATA[G] = d
    return d
