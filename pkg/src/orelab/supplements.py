"""Supplement conditions: Ore, c-supplemented, F-supplemented, weakly
S-permutable, the pairwise F-supplement condition, and F_tau-supplementation.

Product equations between subgroups use the size identity |HT| =
|H||T|/|HnT| (valid for arbitrary subgroups, whether or not the product is a
subgroup), so "HT = G" is a popcount test.  Containment in a product K*Z is
tested elementwise on the literal product set; K need not normalize Z.

Existential quantifiers range over complete lattices of the relevant
(quotient) group; quotient lattices are built fresh and cached by the
normal subgroup's member bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

import numpy as np

from ._bits import indices_of, is_subset, mask_from_array, popcount
from .context import GroupData, get_data
from .errors import TooLarge
from .formations import Formation, TRIVIAL, SUPERSOLUBLE, f_hypercentre, subgroup_is_member, zf_of_subgroup
from .functors import FUNCTORS, SubgroupFunctor, _tau_mask_set, product_set_mask, CCP_MAX_ORDER
from .groups import Group, Subgroup
from .structure import core


@dataclass
class SupplementWitness:
    """The objects certifying a satisfied supplement condition.

    T and S are given in the original group's indices (preimages, for the
    conditions that live in G/H_G); mode names the witnessed condition.
    """

    T: Subgroup
    S: Optional[Subgroup]
    mode: str


def _cache(data: GroupData, name: str) -> dict:
    got = getattr(data, name, None)
    if got is None:
        got = {}
        setattr(data, name, got)
    return got


def _core_mask(data: GroupData, h_mask: int) -> int:
    cache = _cache(data, "_core_cache")
    got = cache.get(h_mask)
    if got is None:
        got = core(data.group, Subgroup(data.group, h_mask, _validated=True)).mask
        cache[h_mask] = got
    return got


def _product_covers(total_order: int, a_mask: int, b_mask: int) -> bool:
    """Whether the product set A*B is the whole group, by the size identity."""
    return popcount(a_mask) * popcount(b_mask) == total_order * popcount(a_mask & b_mask)


# ---------------------------------------------------------------------------
# Ore supplement condition and relatives


def satisfies_ore(G: Group, H: Subgroup) -> tuple[bool, Optional[SupplementWitness]]:
    """Normal T, S with G = HT, S <= H, H n T <= S.

    The optimal S is the core H_G, so the search ranges over normal T only.
    The equivalent normal-complement-in-G/H_G criterion is computed
    independently and agreement is asserted.
    """
    direct = _ore_direct(G, H)
    quot = ore_quotient_criterion(G, H)
    assert (direct is not None) == quot, "Ore direct/quotient criteria disagree"
    if direct is None:
        return False, None
    return True, direct


def _ore_direct(G: Group, H: Subgroup) -> Optional[SupplementWitness]:
    data = get_data(G)
    lat = data.lattice()
    hg = _core_mask(data, H.mask)
    for i in lat.normal_indices():
        t = lat.masks[int(i)]
        if _product_covers(G.order, H.mask, t) and is_subset(H.mask & t, hg):
            return SupplementWitness(
                Subgroup(G, t, _validated=True), Subgroup(G, hg, _validated=True), "ore"
            )
    return None


def ore_quotient_criterion(G: Group, H: Subgroup) -> bool:
    """H/H_G has a normal complement in G/H_G.

    Normal subgroups of G/H_G correspond to normal subgroups of G containing
    H_G; complementation translates to HT = G with H n T = H_G.  The literal
    quotient-group evaluation is ``ore_quotient_literal`` (cross-checked in
    tests).
    """
    data = get_data(G)
    lat = data.lattice()
    hg = _core_mask(data, H.mask)
    for i in lat.normal_indices():
        t = lat.masks[int(i)]
        if is_subset(hg, t) and _product_covers(G.order, H.mask, t) and (H.mask & t) == hg:
            return True
    return False


def ore_quotient_literal(G: Group, H: Subgroup) -> bool:
    """Same criterion evaluated inside the actual quotient group G/H_G."""
    data = get_data(G)
    hg = _core_mask(data, H.mask)
    if hg == 1:
        qdata, hbar = data, H.mask
    else:
        qdata, proj = data.quotient_data(hg)
        hbar = proj.image_mask(H.mask)
    lat = qdata.lattice()
    n = qdata.group.order
    for i in lat.normal_indices():
        t = lat.masks[int(i)]
        if _product_covers(n, hbar, t) and (hbar & t) == 1:
            return True
    return False


def is_c_supplemented(G: Group, H: Subgroup) -> bool:
    """Some T (not necessarily normal) with HT = G and H n T = H_G."""
    data = get_data(G)
    lat = data.lattice()
    hg = _core_mask(data, H.mask)
    for t in lat.masks:
        if _product_covers(G.order, H.mask, t) and (H.mask & t) == hg:
            return True
    return False


def is_f_supplemented(G: Group, H: Subgroup, F: Formation) -> bool:
    """Some supplement T/H_G of H/H_G in G/H_G with intersection in Z_F(G/H_G).

    Note the target is the hypercentre of the quotient group itself (not of
    the supplement); compare Definition 1.1's pair condition.
    """
    data = get_data(G)
    hg = _core_mask(data, H.mask)
    if hg == 1:
        z = f_hypercentre(G, F).mask
        zpre = z
        proj = None
    else:
        qdata, proj = data.quotient_data(hg)
        z = f_hypercentre(qdata.group, F).mask
        zpre = proj.preimage_mask(z)
    lat = data.lattice()
    for t in lat.masks:
        if is_subset(hg, t) and _product_covers(G.order, H.mask, t) and is_subset(H.mask & t, zpre):
            return True
    return False


def is_weakly_s_permutable(G: Group, H: Subgroup) -> bool:
    """Subnormal T with HT = G and H n T <= S <= H for S-quasinormal S."""
    data = get_data(G)
    lat = data.lattice()
    sqn = sorted(_tau_mask_set(data, FUNCTORS["squasi"]))
    sqn_in_h = [s for s in sqn if is_subset(s, H.mask)]
    for j in range(len(lat)):
        if lat.subnormal_depth[j] < 0:
            continue
        t = lat.masks[j]
        if not _product_covers(G.order, H.mask, t):
            continue
        inter = H.mask & t
        if any(is_subset(inter, s) for s in sqn_in_h):
            return True
    return False


# ---------------------------------------------------------------------------
# Definition 1.1 / 1.2


def pair_satisfies_f_supplement(G: Group, K: Subgroup, H: Subgroup, F: Formation) -> bool:
    """Some T with HT = G and H n T contained in the product set K * Z_F(T)."""
    if not is_subset(K.mask, H.mask):
        raise ValueError("K must be a subgroup of H")
    data = get_data(G)
    cache = _cache(data, "_pair_cache")
    key = (K.mask, H.mask, F.id)
    got = cache.get(key)
    if got is None:
        got = _pair_search(data, K.mask, H.mask, F) is not None
        cache[key] = got
    return got


def _pair_search(data: GroupData, k_mask: int, h_mask: int, F: Formation) -> Optional[tuple[int, int]]:
    """Find (T, S=K) witnessing Definition 1.1; None if no T works."""
    G = data.group
    lat = data.lattice()
    cands = []
    for t in lat.masks:
        if _product_covers(G.order, h_mask, t):
            cands.append((popcount(h_mask & t), popcount(t), t))
    cands.sort()
    for _, _, t in cands:
        inter = h_mask & t
        if is_subset(inter, k_mask):
            return (t, k_mask)
        z = zf_of_subgroup(G, t, F)
        if is_subset(inter, z) or is_subset(inter, product_set_mask(G, k_mask, z)):
            return (t, k_mask)
    return None


def is_f_tau_supplemented(
    G: Group,
    H: Subgroup,
    F: Formation,
    tau: SubgroupFunctor,
    ccp_max_order: int = CCP_MAX_ORDER,
) -> bool:
    got = f_tau_supplement_witness(G, H, F, tau, ccp_max_order=ccp_max_order)
    return got is not None


def f_tau_supplement_witness(
    G: Group,
    H: Subgroup,
    F: Formation,
    tau: SubgroupFunctor,
    ccp_max_order: int = CCP_MAX_ORDER,
) -> Optional[SupplementWitness]:
    """Definition 1.2: in G/H_G some tau-subgroup S of the quotient inside
    H/H_G makes the pair (S, H/H_G) satisfy the F-supplement condition.

    Returns a witness with T and S pulled back to G, or None.  Raises
    TooLarge when tau = ccp and the quotient exceeds its order cap.
    """
    data = get_data(G)
    cache = _cache(data, "_ftau_cache")
    key = (H.mask, F.id, tau.id)
    got = cache.get(key, "?")
    if got != "?":
        return got
    result = _ftau_search(data, H.mask, F, tau, ccp_max_order)
    cache[key] = result
    return result


def _ftau_search(data: GroupData, h_mask: int, F: Formation, tau: SubgroupFunctor, ccp_max_order: int):
    G = data.group
    hg = _core_mask(data, h_mask)
    if hg == h_mask:
        # H normal: quotient image is trivial; S = T = whole quotient works
        return SupplementWitness(
            Subgroup(G, G.full, _validated=True), Subgroup(G, hg, _validated=True), f"ftau:{F.id}:{tau.id}"
        )
    if hg == 1:
        qdata, proj = data, None
        hbar = h_mask
    else:
        qdata, proj = data.quotient_data(hg)
        hbar = proj.image_mask(h_mask)
    Q = qdata.group
    if tau.id == "ccp" and Q.order > ccp_max_order:
        raise TooLarge(f"tau=ccp on quotient of order {Q.order} beyond cap {ccp_max_order}")
    lat = qdata.lattice()
    s_cands = sorted(
        (s for s in _tau_mask_set(qdata, tau) if is_subset(s, hbar)),
        key=lambda m: (-popcount(m), m),
    )

    def lift(mask: int) -> Subgroup:
        if proj is None:
            return Subgroup(G, mask, _validated=True)
        return Subgroup(G, proj.preimage_mask(mask), _validated=True)

    def witness(t: int, s: int) -> SupplementWitness:
        return SupplementWitness(lift(t), lift(s), f"ftau:{F.id}:{tau.id}")

    if s_cands and s_cands[0] == hbar:
        return witness(Q.full, hbar)
    t_cands = []
    for t in lat.masks:
        if _product_covers(Q.order, hbar, t):
            t_cands.append((popcount(hbar & t), popcount(t), t))
    t_cands.sort()
    for isz, _, t in t_cands:
        inter = hbar & t
        if isz == 1:
            return witness(t, 1)
        hit = next((s for s in s_cands if is_subset(inter, s)), None)
        if hit is not None:
            return witness(t, hit)
        z = zf_of_subgroup(Q, t, F)
        if is_subset(inter, z):
            return witness(t, 1)
        for s in s_cands:
            if s != 1 and is_subset(inter, product_set_mask(Q, s, z)):
                return witness(t, s)
    return None


# ---------------------------------------------------------------------------
# relativized forms (used by the Lemma 2.1/2.2 metamorphic suites)


def pair_satisfies_in_subgroup(G: Group, e_mask: int, K: Subgroup, H: Subgroup, F: Formation) -> bool:
    """The Definition 1.1 condition evaluated inside the subgroup E of G."""
    data = get_data(G)
    sdata, embed = data.subgroup_data(e_mask)
    Kc = Subgroup(sdata.group, data.restrict_mask(K.mask, embed), _validated=True)
    Hc = Subgroup(sdata.group, data.restrict_mask(H.mask, embed), _validated=True)
    return pair_satisfies_f_supplement(sdata.group, Kc, Hc, F)


def pair_satisfies_in_quotient(G: Group, n_mask: int, K: Subgroup, H: Subgroup, F: Formation) -> bool:
    """The condition for (KN/N, HN/N) in G/N."""
    data = get_data(G)
    qdata, proj = data.quotient_data(n_mask)
    Kq = Subgroup(qdata.group, proj.image_mask(K.mask), _validated=True)
    Hq = Subgroup(qdata.group, proj.image_mask(H.mask), _validated=True)
    return pair_satisfies_f_supplement(qdata.group, Kq, Hq, F)


def ftau_in_subgroup(G: Group, e_mask: int, H: Subgroup, F: Formation, tau: SubgroupFunctor) -> bool:
    data = get_data(G)
    sdata, embed = data.subgroup_data(e_mask)
    Hc = Subgroup(sdata.group, data.restrict_mask(H.mask, embed), _validated=True)
    return is_f_tau_supplemented(sdata.group, Hc, F, tau)


def ftau_in_quotient(G: Group, n_mask: int, H: Subgroup, F: Formation, tau: SubgroupFunctor) -> bool:
    data = get_data(G)
    qdata, proj = data.quotient_data(n_mask)
    Hq = Subgroup(qdata.group, proj.image_mask(H.mask | n_mask), _validated=True)
    return is_f_tau_supplemented(qdata.group, Hq, F, tau)


def has_supplement_in_class(G: Group, H: Subgroup, F: Formation) -> Optional[Subgroup]:
    """A supplement T of H with T in the class F, if one exists."""
    data = get_data(G)
    lat = data.lattice()
    for t in lat.masks:
        if _product_covers(G.order, H.mask, t) and subgroup_is_member(G, t, F):
            return Subgroup(G, t, _validated=True)
    return None


# ---------------------------------------------------------------------------
# the implication suite (remarks after Definition 1.2)


def implication_suite(G: Group, H: Subgroup, F: Formation, taus: Optional[list] = None) -> dict:
    """Direct evaluation of the implication remarks on a single (G, H).

    Keys: csupp_iff (equivalence with F=(1), tau=normal), super_supplement,
    wsp, cap; each maps to {"applicable": bool, "holds": bool}.
    """
    from .functors import tau_contains

    taus = taus if taus is not None else [FUNCTORS[k] for k in ("normal", "squasi", "cap", "modular", "ssq", "sqe")]
    report = {}

    csupp = is_c_supplemented(G, H)
    ftriv = is_f_tau_supplemented(G, H, TRIVIAL, FUNCTORS["normal"])
    report["csupp_iff"] = {"applicable": True, "holds": csupp == ftriv}

    sup = has_supplement_in_class(G, H, SUPERSOLUBLE)
    if sup is None:
        report["super_supplement"] = {"applicable": False, "holds": True}
    else:
        holds = all(is_f_tau_supplemented(G, H, SUPERSOLUBLE, t) for t in taus)
        report["super_supplement"] = {"applicable": True, "holds": holds}

    if is_weakly_s_permutable(G, H):
        holds = is_f_tau_supplemented(G, H, F, FUNCTORS["squasi"])
        report["wsp"] = {"applicable": True, "holds": holds}
    else:
        report["wsp"] = {"applicable": False, "holds": True}

    if tau_contains(G, FUNCTORS["cap"], H.mask):
        holds = is_f_tau_supplemented(G, H, F, FUNCTORS["cap"])
        report["cap"] = {"applicable": True, "holds": holds}
    else:
        report["cap"] = {"applicable": False, "holds": True}
    return report
