"""The subgroup-functor catalog and its property checkers.

Functors: normal, S-quasinormal, CAP, CAMP, completely c-permutable,
S-quasinormally embedded, subnormally embedded, modular (Kurosh), and
SS-quasinormal.  Properties: inductive, hereditary, regular, quasiregular,
and the Phi-variants restricted to primitive groups.  Verdicts are
corpus-bounded: a PASS means no counterexample among the supplied groups.

Two subgroups permute (HA = AH as product sets) iff HA is a subgroup, iff
|<H,A>| = |H||A| / |H n A|; permutability tests below use that size identity
against the lattice join, with the literal product-set comparison kept as
``product_set_mask`` for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from ._bits import indices_of, is_subset, mask_from_array, popcount
from .context import GroupData, get_data
from .errors import EmptyCorpus, TooLarge, UnknownId
from .groups import Group, Subgroup
from . import structure
from .structure import SubgroupLattice, prime_factors

CCP_MAX_ORDER = 48

PROPERTIES = ("inductive", "hereditary", "regular", "quasiregular", "phi_regular", "phi_quasiregular")

_PROP_IMPLIES = {
    "regular": {"quasiregular", "phi_regular", "phi_quasiregular"},
    "quasiregular": {"phi_quasiregular"},
    "phi_regular": {"phi_quasiregular"},
    "hereditary": {"inductive"},
}


def expand_properties(props: Iterable[str]) -> frozenset[str]:
    out = set(props)
    changed = True
    while changed:
        changed = False
        for p in list(out):
            extra = _PROP_IMPLIES.get(p, set())
            if not extra <= out:
                out |= extra
                changed = True
    return frozenset(out)


def parse_property(s: str) -> str:
    p = s.strip().replace("-", "_")
    if p not in PROPERTIES:
        raise UnknownId(f"unknown functor property {s!r}")
    return p


@dataclass(frozen=True)
class SubgroupFunctor:
    """A named rule assigning to each group a set of its subgroups."""

    id: str
    long_name: str
    paper_properties: frozenset[str]
    paper_negatives: frozenset[str] = frozenset()

    @property
    def asserted(self) -> frozenset[str]:
        return expand_properties(self.paper_properties)

    def __str__(self):
        return self.id


FUNCTORS: dict[str, SubgroupFunctor] = {
    f.id: f
    for f in [
        SubgroupFunctor("normal", "normal subgroups", frozenset({"hereditary", "regular"})),
        SubgroupFunctor("squasi", "S-quasinormal subgroups", frozenset({"hereditary", "regular"})),
        SubgroupFunctor("cap", "CAP-subgroups", frozenset({"regular", "inductive"})),
        SubgroupFunctor(
            "camp", "CAMP-subgroups", frozenset({"hereditary", "phi_regular"}), frozenset({"quasiregular"})
        ),
        SubgroupFunctor("ccp", "completely c-permutable subgroups", frozenset({"hereditary", "quasiregular"})),
        SubgroupFunctor(
            "sqe", "S-quasinormally embedded subgroups", frozenset({"hereditary", "quasiregular"}), frozenset({"regular"})
        ),
        SubgroupFunctor("subembed", "subnormally embedded subgroups", frozenset()),
        SubgroupFunctor("modular", "modular subgroups", frozenset({"hereditary", "regular"})),
        SubgroupFunctor("ssq", "SS-quasinormal subgroups", frozenset({"hereditary", "regular"})),
    ]
}

_LONG_ALIASES = {
    "s_quasinormal": "squasi",
    "completely_c_permutable": "ccp",
    "sq_embedded": "sqe",
    "subnormally_embedded": "subembed",
    "ss_quasinormal": "ssq",
}


def parse_functor(s: str) -> SubgroupFunctor:
    key = s.strip()
    key = _LONG_ALIASES.get(key, key)
    if key not in FUNCTORS:
        raise UnknownId(f"unknown functor {s!r}")
    return FUNCTORS[key]


def functors_with(prop: str) -> list[SubgroupFunctor]:
    """Catalog functors whose paper-asserted classification implies ``prop``."""
    return [f for f in FUNCTORS.values() if prop in f.asserted]


# ---------------------------------------------------------------------------
# product sets and permutability


def product_set_mask(G: Group, a_mask: int, b_mask: int) -> int:
    """The literal product set A*B as a mask (need not be a subgroup)."""
    aels = indices_of(a_mask, G.order)
    bels = indices_of(b_mask, G.order)
    return mask_from_array(G.table[np.ix_(aels, bels)].ravel())


def _permutes(lat: SubgroupLattice, i: int, j: int) -> bool:
    """HA = AH for subgroups by the size identity |<H,A>| = |H||A|/|HnA|."""
    a, b = lat.masks[i], lat.masks[j]
    inter = popcount(a & b)
    return int(lat.orders[lat.join(i, j)]) * inter == popcount(a) * popcount(b)


def _is_abelian(G: Group) -> bool:
    return bool(np.array_equal(G.table, G.table.T))


# ---------------------------------------------------------------------------
# per-functor predicates


def is_s_quasinormal(G: Group, H: Subgroup) -> bool:
    """H permutes with every Sylow subgroup of G (all primes, all conjugates)."""
    data = get_data(G)
    lat = data.lattice()
    hi = lat.index(H.mask)
    if lat.normal[hi]:
        return True  # normal subgroups permute with everything
    for p in prime_factors(G.order):
        for pi in structure.sylow_indices(lat, p):
            if not _permutes(lat, hi, pi):
                return False
    return True


def is_cap(G: Group, H: Subgroup) -> bool:
    """H covers or avoids every chief factor of G."""
    data = get_data(G)
    lat = data.lattice()
    for up, lo in _chief_pairs(data):
        if is_subset(H.mask & up, lo):
            continue  # avoids
        cover = is_subset(up, lat.masks[lat.join(lat.index(H.mask), lat.index(lo))])
        if not cover:
            return False
    return True


def _chief_pairs(data: GroupData) -> list[tuple[int, int]]:
    got = getattr(data, "_chief_pairs", None)
    if got is None:
        factors = structure.all_chief_factors(data.group, data.lattice())
        got = [(f.upper.mask, f.lower.mask) for f in factors]
        data._chief_pairs = got
    return got


def is_camp(G: Group, H: Subgroup) -> bool:
    """H covers or avoids every maximal pair (K maximal in L) of subgroups.

    Since K <= L forces HK <= HL as product sets, covering (HK = HL) reduces
    to |HK| = |HL|, i.e. |K| |HnL| = |L| |HnK|; avoidance is HnK = HnL.
    """
    data = get_data(G)
    lat = data.lattice()
    h = H.mask
    for k_idx, l_idx in _covering_pairs(data):
        km, lm = lat.masks[k_idx], lat.masks[l_idx]
        hk, hl = h & km, h & lm
        if hk == hl:
            continue  # avoids
        if popcount(km) * popcount(hl) != popcount(lm) * popcount(hk):
            return False
    return True


def _covering_pairs(data: GroupData) -> list[tuple[int, int]]:
    """(K, L) index pairs with K maximal in L, over the whole lattice."""
    got = getattr(data, "_cover_pairs", None)
    if got is None:
        lat = data.lattice()
        got = []
        for l_idx in range(len(lat)):
            below = [int(b) for b in lat.below(lat.masks[l_idx]) if int(b) != l_idx]
            for k_idx in below:
                km = lat.masks[k_idx]
                if not any(b != k_idx and is_subset(km, lat.masks[b]) for b in below):
                    got.append((k_idx, l_idx))
        data._cover_pairs = got
    return got


def is_completely_c_permutable(G: Group, H: Subgroup, max_order: int = CCP_MAX_ORDER) -> bool:
    """For every H <= E <= G and A <= E, some x in E has H A^x = A^x H.

    Cubic in lattice size times group order, so capped independently of the
    global lattice caps.
    """
    if G.order > max_order:
        raise TooLarge(f"completely-c-permutable check capped at order {max_order}")
    data = get_data(G)
    lat = data.lattice()
    if _is_abelian(G):
        return True  # abelian groups: HA = AH elementwise, x = 1 works
    lat.materialize_joins()
    hi = lat.index(H.mask)
    for e_idx in lat.above(H.mask):
        e_mask = lat.masks[int(e_idx)]
        e_els = indices_of(e_mask, G.order)
        for a_idx in lat.below(e_mask):
            a_mask = lat.masks[int(a_idx)]
            target = H.order * popcount(a_mask)
            found = False
            for x in e_els:
                cm = a_mask if x == 0 else data.conj_mask(a_mask, int(x))
                ci = lat.index(cm)
                if int(lat.orders[lat.join(hi, ci)]) * popcount(H.mask & cm) == target:
                    found = True
                    break
            if not found:
                return False
    return True


def is_modular(G: Group, H: Subgroup) -> bool:
    """H is a modular element of the subgroup lattice (both Kurosh laws).

    Permutable subgroups are modular, so normal H short-circuits; the full
    check is validated against this shortcut on small groups in the tests.
    """
    data = get_data(G)
    lat = data.lattice()
    hi = lat.index(H.mask)
    if lat.normal[hi]:
        return True
    lat.materialize_joins()
    h = H.mask
    L = len(lat)
    # X <= Z: <X,H> n Z == <X, H n Z>
    for z_idx in range(L):
        zm = lat.masks[z_idx]
        for x_idx in lat.below(zm):
            xi = int(x_idx)
            left = lat.masks[lat.join(xi, hi)] & zm
            right = lat.masks[lat.join(xi, lat.index(h & zm))]
            if left != right:
                return False
    # H <= Z: <H,Y> n Z == <H, Y n Z>
    for z_idx in lat.above(h):
        zm = lat.masks[int(z_idx)]
        for y_idx in range(L):
            ym = lat.masks[y_idx]
            left = lat.masks[lat.join(hi, y_idx)] & zm
            right = lat.masks[lat.join(hi, lat.index(ym & zm))]
            if left != right:
                return False
    return True


def is_ss_quasinormal(G: Group, H: Subgroup) -> bool:
    """Some B with HB = G and H permuting with every Sylow subgroup of B."""
    data = get_data(G)
    lat = data.lattice()
    hi = lat.index(H.mask)
    horder = H.order
    for b_idx in range(len(lat)):
        bm = lat.masks[b_idx]
        if horder * popcount(bm) != G.order * popcount(H.mask & bm):
            continue  # HB != G as a product set
        ok = True
        for p in prime_factors(popcount(bm)):
            target = structure._p_part(popcount(bm), p)
            for q_idx in lat.below(bm):
                if int(lat.orders[int(q_idx)]) == target:
                    if not _permutes(lat, hi, int(q_idx)):
                        ok = False
                        break
            if not ok:
                break
        if ok:
            return True
    return False


def is_sq_embedded(G: Group, H: Subgroup) -> bool:
    """Every Sylow subgroup of H is a Sylow subgroup of some S-quasinormal W."""
    data = get_data(G)
    lat = data.lattice()
    sqn = _tau_mask_set(data, FUNCTORS["squasi"])
    for p in prime_factors(H.order):
        target = structure._p_part(H.order, p)
        hp = None
        for i in lat.below(H.mask):
            if int(lat.orders[int(i)]) == target:
                hp = lat.masks[int(i)]
                break
        found = False
        for w in sqn:
            if is_subset(hp, w) and structure._p_part(popcount(w), p) == target:
                found = True
                break
        if not found:
            return False
    return True


def is_subnormally_embedded(G: Group, H: Subgroup) -> bool:
    return structure.is_subnormally_embedded(G, H, get_data(G).lattice())


_PREDICATES = {
    "squasi": is_s_quasinormal,
    "cap": is_cap,
    "camp": is_camp,
    "ccp": is_completely_c_permutable,
    "sqe": is_sq_embedded,
    "subembed": is_subnormally_embedded,
    "modular": is_modular,
    "ssq": is_ss_quasinormal,
}


def _tau_mask_set(data: GroupData, tau: SubgroupFunctor) -> frozenset[int]:
    got = data._tau.get(tau.id)
    if got is None:
        lat = data.lattice()
        if tau.id == "normal":
            masks = [lat.masks[int(i)] for i in lat.normal_indices()]
        else:
            pred = _PREDICATES[tau.id]
            masks = [m for s, m in zip(lat.subgroups, lat.masks) if pred(data.group, s)]
        got = frozenset(masks)
        data._tau[tau.id] = got
    return got


def tau_members(tau: SubgroupFunctor, G: Group) -> list[Subgroup]:
    """The set tau(G), sorted by (order, member bits)."""
    data = get_data(G)
    masks = sorted(_tau_mask_set(data, tau), key=lambda m: (popcount(m), m))
    lat = data.lattice()
    return [lat.subgroups[lat.index(m)] for m in masks]


def tau_contains(G: Group, tau: SubgroupFunctor, mask: int) -> bool:
    return mask in _tau_mask_set(get_data(G), tau)


# ---------------------------------------------------------------------------
# property checking over a corpus


@dataclass
class Witness:
    """First counterexample found by a property check; deterministic."""

    group: Group
    spec: str
    tau: str
    prop: str
    subgroup_mask: int
    detail: dict

    def describe(self) -> str:
        bits = f"H(order {popcount(self.subgroup_mask)})"
        extra = ", ".join(f"{k}={v}" for k, v in sorted(self.detail.items()))
        return f"{self.tau}/{self.prop} fails in {self.spec}: {bits} [{extra}]"


@dataclass
class PropertyCheckResult:
    tau: str
    prop: str
    is_pass: bool
    witness: Optional[Witness]
    groups_checked: int = 0
    instances: int = 0
    skipped: list = field(default_factory=list)

    @property
    def outcome(self) -> str:
        return "PASS" if self.is_pass else "WITNESS"


def _group_of(item):
    return item.group if hasattr(item, "group") else item


def _spec_of(item):
    return str(item.spec) if hasattr(item, "spec") else _group_of(item).name


def check_property(
    tau: SubgroupFunctor,
    prop: str,
    corpus: Iterable,
    ccp_max_order: int = CCP_MAX_ORDER,
) -> PropertyCheckResult:
    """Corpus-bounded verdict for Definition-style functor properties.

    Returns the lexicographically-first counterexample (corpus order, then
    subgroup bits) or PASS; groups past the ccp order cap are recorded as
    skipped, never silently dropped.
    """
    items = list(corpus)
    if not items:
        raise EmptyCorpus("check_property needs at least one group")
    if prop not in PROPERTIES:
        raise UnknownId(prop)
    res = PropertyCheckResult(tau.id, prop, True, None)
    for item in items:
        G = _group_of(item)
        spec = _spec_of(item)
        if tau.id == "ccp" and G.order > ccp_max_order:
            res.skipped.append((spec, f"order {G.order} beyond ccp cap {ccp_max_order}"))
            continue
        res.groups_checked += 1
        w = _check_on_group(tau, prop, G, spec, res, ccp_max_order)
        if w is not None:
            res.is_pass = False
            res.witness = w
            return res
    return res


def _check_on_group(tau, prop, G, spec, res, ccp_max_order) -> Optional[Witness]:
    data = get_data(G)
    lat = data.lattice()
    members = sorted(_tau_mask_set(data, tau), key=lambda m: (popcount(m), m))

    if prop in ("inductive", "hereditary"):
        normals = [lat.masks[int(i)] for i in lat.normal_indices()]
        for h in members:
            for n in normals:
                res.instances += 1
                qdata, proj = data.quotient_data(n)
                if qdata.group.order > ccp_max_order and tau.id == "ccp":
                    res.skipped.append((spec, f"quotient order {qdata.group.order} beyond ccp cap"))
                    continue
                img = proj.image_mask(h)
                if not tau_contains(qdata.group, tau, img):
                    return Witness(G, spec, tau.id, prop, h, {"N_order": popcount(n), "law": "inductive"})
        if prop == "hereditary":
            for h in members:
                for e_idx in lat.above(h):
                    em = lat.masks[int(e_idx)]
                    res.instances += 1
                    sdata, embed = data.subgroup_data(em)
                    child = data.restrict_mask(h, embed)
                    if not tau_contains(sdata.group, tau, child):
                        return Witness(G, spec, tau.id, prop, h, {"E_order": popcount(em), "law": "between"})
        return None

    # regular / quasiregular / phi variants
    phi_variant = prop.startswith("phi_")
    abelian_only = prop.endswith("quasiregular")
    if phi_variant and not structure.is_primitive(G, lat):
        return None
    minimals = structure.minimal_normal_subgroups(G, lat)
    if abelian_only:
        minimals = [n for n in minimals if _is_abelian_subgroup(data, n)]
    for h in members:
        ho = popcount(h)
        if ho == 1:
            continue
        pf = prime_factors(ho)
        if len(pf) != 1:
            continue
        p = pf[0]
        for n in minimals:
            res.instances += 1
            inter = h & n.mask
            norm = _normalizer_mask(data, inter)
            index = G.order // popcount(norm)
            if structure._p_part(index, p) != index:
                return Witness(
                    G, spec, tau.id, prop, h,
                    {"N_order": n.order, "p": p, "index": index},
                )
    return None


def _is_abelian_subgroup(data: GroupData, n: Subgroup) -> bool:
    els = n.elements
    t = data.group.table
    return bool(np.array_equal(t[np.ix_(els, els)], t[np.ix_(els, els)].T))


def _normalizer_mask(data: GroupData, mask: int) -> int:
    got = getattr(data, "_normalizers", None)
    if got is None:
        got = {}
        data._normalizers = got
    n = got.get(mask)
    if n is None:
        n = structure.normalizer_mask(data.group, mask)
        got[mask] = n
    return n
