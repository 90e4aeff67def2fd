"""Group-class predicates, F-central chief factors and hypercentres.

The catalog covers the identity class, nilpotent, soluble, supersoluble,
p-nilpotent and p-supersoluble groups (all saturated formations), plus the
quasinilpotent class which is exposed only to the generalized Fitting
subgroup and never used as a supplement-condition parameter.

F-centrality of a chief factor H/K means (H/K) x| (G/C_G(H/K)) lies in F.
Every catalog formation has a registered fast path; the explicit semidirect
construction is the reference route and the two are compared as a standing
test (the supersoluble and nilpotent comparisons run corpus-wide in the
acceptance suite).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Optional

import numpy as np

from ._bits import indices_of, is_subset, mask_from_array, popcount
from .context import GroupData, get_data
from .errors import TooLarge, UnknownId
from .groups import Group, Subgroup, closure_mask
from . import structure
from .structure import ChiefFactor, prime_factors

SEMIDIRECT_MAX_ORDER = 6000


@dataclass(frozen=True)
class Formation:
    """A named group-class membership predicate from the fixed catalog."""

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("triv", "nilp", "sol", "super", "pnilp", "psuper", "qnilp"):
            raise UnknownId(f"unknown formation kind {self.kind!r}")
        if self.kind in ("pnilp", "psuper"):
            if self.p is None or not structure._is_prime(self.p):
                raise UnknownId(f"formation {self.kind} needs a prime parameter")
        elif self.p is not None:
            raise UnknownId(f"formation {self.kind} takes no parameter")

    @property
    def id(self) -> str:
        return f"{self.kind}:{self.p}" if self.p else self.kind

    def __str__(self):
        return self.id

    @property
    def is_hereditary(self) -> bool:
        return self.kind != "qnilp"

    @property
    def saturated(self) -> bool:
        return self.kind != "qnilp"


TRIVIAL = Formation("triv")
NILPOTENT = Formation("nilp")
SOLUBLE = Formation("sol")
SUPERSOLUBLE = Formation("super")
QUASINILPOTENT = Formation("qnilp")


def p_nilpotent(p: int) -> Formation:
    return Formation("pnilp", p)


def p_supersoluble(p: int) -> Formation:
    return Formation("psuper", p)


def parse_formation(s: str) -> Formation:
    s = s.strip()
    if ":" in s:
        kind, _, arg = s.partition(":")
        try:
            return Formation(kind, int(arg))
        except ValueError:
            raise UnknownId(f"bad formation parameter in {s!r}")
    return Formation(s)


def saturated_catalog(G: Group) -> list[Formation]:
    """The saturated catalog instantiated at the primes dividing |G|."""
    out = [TRIVIAL, NILPOTENT, SOLUBLE, SUPERSOLUBLE]
    for p in prime_factors(G.order):
        out.append(p_nilpotent(p))
        out.append(p_supersoluble(p))
    return out


# ---------------------------------------------------------------------------
# membership


def is_member(G: Group, F: Formation) -> bool:
    data = get_data(G)
    got = data._membership.get(F.id)
    if got is None:
        got = _member(data, F)
        data._membership[F.id] = got
    return got


def subgroup_is_member(G: Group, mask: int, F: Formation) -> bool:
    if mask == G.full:
        return is_member(G, F)
    data = get_data(G)
    sdata, _ = data.subgroup_data(mask)
    return is_member(sdata.group, F)


def _member(data: GroupData, F: Formation) -> bool:
    G = data.group
    if F.kind == "triv":
        return G.order == 1
    if F.kind == "nilp":
        return structure.upper_central_masks(G)[-1] == G.full
    if F.kind == "sol":
        return structure.derived_series_masks(G)[-1] == 1
    if F.kind == "super":
        if structure.derived_series_masks(G)[-1] != 1:
            return False
        return all(_prime_or_one(o) for o in _chief_orders(data))
    if F.kind == "psuper":
        return all(o == F.p for o in _chief_orders(data) if o % F.p == 0)
    if F.kind == "pnilp":
        return _has_normal_hall_p_complement(data, F.p)
    if F.kind == "qnilp":
        chain = data.chief_series_masks()
        for lo, up in zip(chain, chain[1:]):
            c = structure.centralizer_of_section_mask(G, up, lo)
            if popcount(up) * popcount(c) != G.order * popcount(up & c):
                return False
        return True
    raise UnknownId(F.kind)


def _prime_or_one(o: int) -> bool:
    return structure._is_prime(o)


def _chief_orders(data: GroupData) -> list[int]:
    chain = data.chief_series_masks()
    return [popcount(up) // popcount(lo) for lo, up in zip(chain, chain[1:])]


def _has_normal_hall_p_complement(data: GroupData, p: int) -> bool:
    G = data.group
    target = G.order // structure._p_part(G.order, p)
    if target == 1:
        return True
    if data.has_lattice():
        lat = data.lattice()
        return any(int(lat.orders[int(i)]) == target for i in lat.normal_indices())
    # O_p'(G) is generated by the class closures that are p'-groups
    mask = 1
    for cls in data.classes():
        g = cls[0]
        if (mask >> g) & 1:
            continue
        ncl = data.class_normal_closure(g)
        if popcount(ncl) % p != 0:
            mask = closure_mask(G, mask | ncl)
    return popcount(mask) == target


# ---------------------------------------------------------------------------
# F-centrality of chief factors


def is_f_central(G: Group, f: ChiefFactor, F: Formation, method: str = "auto") -> bool:
    """Whether (H/K) x| (G/C_G(H/K)) lies in F.

    ``method`` is "auto" (registered fast path), "fast", or "semidirect"
    (the explicit construction; may raise TooLarge past the order cap).
    """
    if not F.saturated:
        raise UnknownId(f"formation {F.id} not admitted for centrality tests")
    data = get_data(G)
    return _central(data, f.upper.mask, f.lower.mask, F, method=method)


def _central(data: GroupData, up: int, lo: int, F: Formation, method: str = "auto") -> bool:
    if method == "semidirect":
        return _central_semidirect(data, up, lo, F)
    key = (up, lo, F.id)
    got = data._central.get(key)
    if got is None:
        got = _central_fast(data, up, lo, F)
        data._central[key] = got
    return got


def _central_semidirect(data: GroupData, up: int, lo: int, F: Formation) -> bool:
    S = data.semidirect_for_factor(up, lo, SEMIDIRECT_MAX_ORDER)
    return is_member(S, F)


def _central_fast(data: GroupData, up: int, lo: int, F: Formation) -> bool:
    """Registered fast paths, one per catalog formation.

    Each reduces membership of the semidirect product to facts about the
    factor's order and the induced automorphism group G/C_G(H/K); the
    equivalences are exercised against the explicit construction in the test
    suite, corpus-wide for the supersoluble and nilpotent paths.
    """
    G = data.group
    forder = popcount(up) // popcount(lo)
    if F.kind == "triv":
        return False  # the factor itself is nontrivial
    c_mask = structure.centralizer_of_section_mask(G, up, lo)
    if F.kind == "nilp":
        return c_mask == G.full
    qdata, _ = data.quotient_data(c_mask)
    B = qdata.group
    if F.kind == "sol":
        return len(prime_factors(forder)) == 1 and is_member(B, SOLUBLE)
    if F.kind == "super":
        if not structure._is_prime(forder):
            return False
        q = forder
        if not np.array_equal(B.table, B.table.T):
            return False
        exp = 1
        for x in range(B.order):
            exp = lcm(exp, B.element_order(x))
        return (q - 1) % exp == 0
    if F.kind == "pnilp":
        if forder % F.p == 0:
            return _is_p_group_order(B.order, F.p)
        return is_member(B, F)
    if F.kind == "psuper":
        if forder % F.p == 0:
            return forder == F.p
        return is_member(B, F)
    raise UnknownId(F.kind)


def _is_p_group_order(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# ---------------------------------------------------------------------------
# hypercentres and residuals


def f_hypercentre(G: Group, F: Formation, method: str = "auto") -> Subgroup:
    """Z_F(G): join of all normal N whose chief factors below N are F-central.

    Factors below N are read off one chief series of G through N; series
    independence is exercised by the Jordan-Hoelder invariance test rather
    than assumed.  With method="auto" a Barnes-Kegel fast exit applies when
    G itself lies in F; method="full" always runs the factor-by-factor scan
    (the acceptance suite compares the two corpus-wide).
    """
    data = get_data(G)
    if method == "full":
        return Subgroup(G, _hypercentre_mask(data, F, frattini_exempt=False), _validated=True)
    got = data._zf.get(F.id)
    if got is None:
        if F.saturated and is_member(G, F):
            got = G.full
        else:
            got = _hypercentre_mask(data, F, frattini_exempt=False)
        data._zf[F.id] = got
    return Subgroup(G, got, _validated=True)


def f_phi_hypercentre(G: Group, F: Formation) -> Subgroup:
    """Z_FPhi(G): like Z_F but only non-Frattini chief factors must be central."""
    data = get_data(G)
    got = data._zfphi.get(F.id)
    if got is None:
        got = _hypercentre_mask(data, F, frattini_exempt=True)
        data._zfphi[F.id] = got
    return Subgroup(G, got, _validated=True)


def _frattini_preimage(data: GroupData, k_mask: int) -> int:
    """Preimage of Phi(G/K): intersection of the maximals of G containing K."""
    got = data._phi_pre.get(k_mask)
    if got is None:
        lat = data.lattice()
        got = data.group.full
        for i in lat.maximal_indices():
            m = lat.masks[int(i)]
            if is_subset(k_mask, m):
                got &= m
        data._phi_pre[k_mask] = got
    return got


def _hypercentre_mask(data: GroupData, F: Formation, frattini_exempt: bool) -> int:
    from ._bits import superset_scan, subset_scan, words_matrix

    G = data.group
    lat = data.lattice()
    nidx = lat.normal_indices()
    nmasks = [lat.masks[int(i)] for i in nidx]
    nwords = words_matrix(nmasks, G.order)
    norders = np.array([popcount(m) for m in nmasks])

    def step(k: int, n: int) -> int:
        inside = subset_scan(nwords, n, G.order) & superset_scan(nwords, k, G.order)
        cands = np.flatnonzero(inside)
        cands = cands[norders[cands] > popcount(k)]
        if len(cands) == 0:
            raise ValueError("no chief step")
        best = cands[np.argmin(norders[cands])]
        return nmasks[int(best)]

    passing = 1
    for n in nmasks:
        if n == 1 or is_subset(n, passing):
            passing = closure_mask(G, passing | n) if not is_subset(n, passing) else passing
            continue
        ok = True
        k = 1
        while k != n:
            w = step(k, n)
            exempt = frattini_exempt and is_subset(w, _frattini_preimage(data, k))
            if not exempt and not _central(data, w, k, F):
                ok = False
                break
            k = w
        if ok:
            passing = closure_mask(G, passing | n)
    return passing


def residual(G: Group, F: Formation) -> Subgroup:
    """G^F: intersection of all normal N with G/N in F."""
    data = get_data(G)
    if F.kind == "triv":
        return Subgroup(G, G.full, _validated=True)
    if is_member(G, F):
        return Subgroup(G, 1, _validated=True)
    lat = data.lattice()
    out = G.full
    for i in lat.normal_indices():
        m = lat.masks[int(i)]
        if is_subset(out, m):
            continue
        qdata, _ = data.quotient_data(m)
        if is_member(qdata.group, F):
            out &= m
    qdata, _ = data.quotient_data(out)
    assert is_member(qdata.group, F), "residual postcondition failed"
    return Subgroup(G, out, _validated=True)


def satellite_check_nilpotent(G: Group, E: Subgroup, p: int) -> bool:
    """Whether G/C_G(E) is a p-group, for a normal p-subgroup E.

    The local-satellite test for the nilpotent formation: equivalent to
    E <= Z_inf(G), which the verifier asserts separately.
    """
    if not structure._is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not _is_p_group_order(E.order, p):
        raise ValueError("E is not a p-subgroup")
    from .groups import is_normal_mask, small_generating_set

    if not is_normal_mask(G, E.mask, gens=small_generating_set(G)):
        raise ValueError("E is not normal")
    c = structure.centralizer(G, [int(x) for x in E.elements])
    return _is_p_group_order(G.order // c.order, p)


# Z_F of a subgroup viewed as a group in its own right -----------------------


def zf_of_subgroup(G: Group, t_mask: int, F: Formation) -> int:
    """Z_F(T) for a subgroup T of G, returned as a mask in G's indices.

    T in F short-circuits to Z_F(T) = T (Barnes-Kegel), avoiding the
    restricted-lattice construction for the common case.
    """
    data = get_data(G)
    key = (t_mask, F.id)
    got = data._zf_sub.get(key)
    if got is None:
        if t_mask == G.full:
            got = f_hypercentre(G, F).mask
        elif popcount(t_mask) == 1:
            got = t_mask
        elif F.saturated and subgroup_is_member(G, t_mask, F):
            got = t_mask
        else:
            sdata, embed = data.subgroup_data(t_mask)
            z = f_hypercentre(sdata.group, F).mask
            got = GroupData.unrestrict_mask(z, embed, sdata.order)
        data._zf_sub[key] = got
    return got
