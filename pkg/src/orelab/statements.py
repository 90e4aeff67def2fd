"""Registered verification statements.

Each statement turns one theorem, proposition or lemma into an instance
generator plus an instance evaluator; the verifier sweeps the corpus, counts
hypothesis-true instances, and records any instance whose conclusion fails.
Instance parameters are JSON-able primitives (masks as hex strings) so that
counterexample records can be replayed byte-for-byte.

Functor properties demanded by a hypothesis (e.g. "Phi-regular hereditary")
are discharged over the catalog functors whose paper-asserted classification
includes the property; the verifier cross-checks those classifications on the
corpus before trusting them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Optional

import numpy as np

from ._bits import indices_of, is_subset, popcount
from .context import GroupData, get_data
from .errors import TooLarge, UnknownId
from . import formations as fm
from . import functors as ft
from . import structure as st
from . import supplements as sp
from .groups import Group, Subgroup, closure_mask, small_generating_set


@dataclass
class Env:
    """Sweep configuration shared by all statements in one verify run."""

    ccp_max_order: int = 48
    instance_cap: int = 100_000
    inner_cap: int = 24
    time_budget_s: float = 30.0
    formation_ids: Optional[tuple[str, ...]] = None
    functor_ids: Optional[tuple[str, ...]] = None

    def to_dict(self) -> dict:
        return {
            "ccp_max_order": self.ccp_max_order,
            "instance_cap": self.instance_cap,
            "inner_cap": self.inner_cap,
            "time_budget_s": self.time_budget_s,
            "formation_ids": list(self.formation_ids) if self.formation_ids else None,
            "functor_ids": list(self.functor_ids) if self.functor_ids else None,
        }

    @staticmethod
    def from_dict(d: dict) -> "Env":
        return Env(
            ccp_max_order=d.get("ccp_max_order", 48),
            instance_cap=d.get("instance_cap", 100_000),
            inner_cap=d.get("inner_cap", 24),
            time_budget_s=d.get("time_budget_s", 30.0),
            formation_ids=tuple(d["formation_ids"]) if d.get("formation_ids") else None,
            functor_ids=tuple(d["functor_ids"]) if d.get("functor_ids") else None,
        )


def mask_hex(m: int) -> str:
    return hex(m)


def hex_mask(s: str) -> int:
    return int(s, 16)


# ---------------------------------------------------------------------------
# shared memoized helpers (stored on GroupData)


def _memo(data: GroupData, name: str) -> dict:
    got = getattr(data, name, None)
    if got is None:
        got = {}
        setattr(data, name, got)
    return got


def _normal_masks(data: GroupData) -> list[int]:
    lat = data.lattice()
    return [lat.masks[int(i)] for i in lat.normal_indices()]


def _fitting_mask(data: GroupData, e_mask: int) -> int:
    memo = _memo(data, "_fit_memo")
    got = memo.get(e_mask)
    if got is None:
        if e_mask == data.group.full:
            got = st.fitting(data.group, data.lattice()).mask
        else:
            sdata, embed = data.subgroup_data(e_mask)
            f = st.fitting(sdata.group, sdata.lattice()).mask
            got = GroupData.unrestrict_mask(f, embed, sdata.order)
        memo[e_mask] = got
    return got


def _fstar_mask(data: GroupData, e_mask: int) -> int:
    memo = _memo(data, "_fstar_memo")
    got = memo.get(e_mask)
    if got is None:
        if e_mask == data.group.full:
            got = st.generalized_fitting(data.group, data.lattice()).mask
        else:
            sdata, embed = data.subgroup_data(e_mask)
            f = st.generalized_fitting(sdata.group, sdata.lattice()).mask
            got = GroupData.unrestrict_mask(f, embed, sdata.order)
        memo[e_mask] = got
    return got


def _sylow_in(data: GroupData, x_mask: int, p: int) -> int:
    """A Sylow p-subgroup of the subgroup X, from the parent lattice."""
    memo = _memo(data, "_sylow_memo")
    key = (x_mask, p)
    got = memo.get(key)
    if got is None:
        lat = data.lattice()
        target = st._p_part(popcount(x_mask), p)
        for i in lat.below(x_mask):
            if int(lat.orders[int(i)]) == target:
                got = lat.masks[int(i)]
                break
        assert got is not None, "complete lattice lacks a Sylow subgroup"
        memo[key] = got
    return got


def _sylows_of(data: GroupData, x_mask: int) -> list[tuple[int, int]]:
    return [(p, _sylow_in(data, x_mask, p)) for p in st.prime_factors(popcount(x_mask))]


def _noncyclic_sylows_of(data: GroupData, x_mask: int) -> list[tuple[int, int]]:
    return [(p, m) for p, m in _sylows_of(data, x_mask) if not data.mask_is_cyclic(m)]


def _maximals_of_pgroup(data: GroupData, p_mask: int, p: int) -> list[int]:
    """Maximal subgroups of a p-group are exactly its index-p subgroups."""
    lat = data.lattice()
    target = popcount(p_mask) // p
    return sorted(
        lat.masks[int(i)] for i in lat.below(p_mask) if int(lat.orders[int(i)]) == target
    )


def _cyclic_prime_or_4(data: GroupData, p_mask: int, p: int) -> list[int]:
    """Cyclic subgroups of prime order, plus order-4 when P is non-abelian."""
    lat = data.lattice()
    out = [lat.masks[int(i)] for i in lat.below(p_mask) if int(lat.orders[int(i)]) == p]
    if p == 2 and not data.mask_is_abelian(p_mask):
        for i in lat.below(p_mask):
            if int(lat.orders[int(i)]) == 4 and data.mask_is_cyclic(lat.masks[int(i)]):
                out.append(lat.masks[int(i)])
    return sorted(out)


def _cyclic_prime_or_4_any(data: GroupData, mask: int) -> list[int]:
    """Cyclic subgroups of any prime order or of order 4, unconditionally."""
    lat = data.lattice()
    out = []
    for i in lat.below(mask):
        o = int(lat.orders[int(i)])
        m = lat.masks[int(i)]
        if st._is_prime(o) or (o == 4 and data.mask_is_cyclic(m)):
            out.append(m)
    return sorted(out)


def _subembed_flag(data: GroupData, mask: int) -> bool:
    memo = _memo(data, "_subemb_memo")
    got = memo.get(mask)
    if got is None:
        got = st.is_subnormally_embedded(
            data.group, Subgroup(data.group, mask, _validated=True), data.lattice()
        )
        memo[mask] = got
    return got


def _side_subembed(data: GroupData, tau: ft.SubgroupFunctor, within: int, primary_only: bool = False) -> bool:
    """Every tau-subgroup of G inside ``within`` is subnormally embedded."""
    memo = _memo(data, "_side_memo")
    key = (tau.id, within, primary_only)
    got = memo.get(key)
    if got is None:
        got = True
        for m in ft._tau_mask_set(data, tau):
            if not is_subset(m, within):
                continue
            if primary_only and len(st.prime_factors(popcount(m))) != 1:
                continue
            if not _subembed_flag(data, m):
                got = False
                break
        memo[key] = got
    return got


def _ftau_all(data: GroupData, h_masks, F: fm.Formation, tau: ft.SubgroupFunctor, env: Env) -> bool:
    G = data.group
    for h in h_masks:
        if not sp.is_f_tau_supplemented(
            G, Subgroup(G, h, _validated=True), F, tau, ccp_max_order=env.ccp_max_order
        ):
            return False
    return True


def _quotient_in_F(data: GroupData, e_mask: int, F: fm.Formation) -> bool:
    """G/E in F, via E containing the F-residual.

    residual's postcondition G/G^F in F plus quotient-closure (both tested
    invariants) give: G/E in F iff E >= G^F.
    """
    memo = _memo(data, "_res_memo")
    got = memo.get(F.id)
    if got is None:
        got = fm.residual(data.group, F).mask
        memo[F.id] = got
    return is_subset(got, e_mask)


def _zu_mask(data: GroupData) -> int:
    return fm.f_hypercentre(data.group, fm.SUPERSOLUBLE).mask


def _op_residual_mask(data: GroupData, p: int) -> int:
    """O^p(G): normal closure of all p'-elements."""
    memo = _memo(data, "_op_memo")
    got = memo.get(p)
    if got is None:
        orders = data.element_orders()
        seed = 1
        for x in range(data.order):
            if int(orders[x]) % p != 0:
                seed |= 1 << x
        got = st.normal_closure_mask(data.group, seed)
        memo[p] = got
    return got


def _normal_in_mask(data: GroupData, inner: int, outer_gens) -> bool:
    for g in outer_gens:
        if data.conj_mask(inner, int(g)) != inner:
            return False
    return True


def _mask_gens(data: GroupData, mask: int) -> list[int]:
    memo = _memo(data, "_gens_memo")
    got = memo.get(mask)
    if got is None:
        got = st._subgroup_generators(data.group, mask)
        memo[mask] = got
    return got


def _upper_formations(G: Group, env: Env) -> list[fm.Formation]:
    """Saturated catalog members containing the supersoluble class."""
    if env.formation_ids:
        return [fm.parse_formation(f) for f in env.formation_ids]
    out = [fm.SUPERSOLUBLE, fm.SOLUBLE]
    out += [fm.p_supersoluble(p) for p in st.prime_factors(G.order)]
    return out


def _lemma_formations(G: Group, env: Env) -> list[fm.Formation]:
    if env.formation_ids:
        return [fm.parse_formation(f) for f in env.formation_ids]
    return [fm.NILPOTENT, fm.SUPERSOLUBLE, fm.SOLUBLE]


def _taus(env: Env, *needed_alternatives: frozenset) -> list[ft.SubgroupFunctor]:
    """Catalog functors asserted to satisfy at least one property bundle."""
    pool = (
        [ft.FUNCTORS[i] for i in env.functor_ids]
        if env.functor_ids
        else list(ft.FUNCTORS.values())
    )
    out = []
    for tau in pool:
        if any(needed <= tau.asserted for needed in needed_alternatives):
            out.append(tau)
    return out


def required_classifications(env: Env) -> set[tuple[str, str]]:
    """(tau, property) pairs the registered hypotheses rely on."""
    out = set()
    bundles = [
        frozenset({"phi_regular"}),
        frozenset({"phi_regular", "hereditary"}),
        frozenset({"regular"}),
        frozenset({"hereditary", "phi_quasiregular"}),
        frozenset({"hereditary", "quasiregular"}),
        frozenset({"quasiregular"}),
        frozenset({"phi_quasiregular"}),
        frozenset({"hereditary"}),
        frozenset({"inductive"}),
    ]
    for bundle in bundles:
        for tau in _taus(Env(), bundle):
            for prop in bundle:
                out.add((tau.id, prop))
    return out


# ---------------------------------------------------------------------------
# statement base


class Statement:
    id: str = ""
    title: str = ""
    uses_ccp: bool = True  # tau ranges include ccp unless narrowed

    def instances(self, entry, env: Env) -> Iterator[dict]:
        raise NotImplementedError

    def evaluate(self, entry, env: Env, params: dict) -> tuple[bool, bool]:
        """(hypothesis holds, conclusion holds).  Conclusion only meaningful
        when the hypothesis does; implementations may return True for it on
        hypothesis failure."""
        raise NotImplementedError


REGISTRY: dict[str, Statement] = {}


def register(cls):
    inst = cls()
    REGISTRY[inst.id] = inst
    return cls


def get_statement(sid: str) -> Statement:
    if sid not in REGISTRY:
        raise UnknownId(f"unknown statement id {sid!r}")
    return REGISTRY[sid]


# ---------------------------------------------------------------------------
# concrete statements


@register
class T1_11(Statement):
    id = "T1.11"
    title = "soluble G supersoluble iff max subgroups of Sylows of F(E) are U_tau-supplemented"

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        if not fm.is_member(G, fm.SOLUBLE):
            return
        for tau in _taus(env, frozenset({"phi_regular"})):
            for e in _normal_masks(data):
                if _quotient_in_F(data, e, fm.SUPERSOLUBLE):
                    yield {"dir": "fwd", "tau": tau.id, "E": mask_hex(e)}
        yield {"dir": "conv"}

    def _fwd_hyp(self, data, env, tau, e_mask) -> bool:
        memo = _memo(data, "_t111_memo")
        key = (tau.id, e_mask)
        got = memo.get(key)
        if got is None:
            f = _fitting_mask(data, e_mask)
            hs = []
            for p, pm in _sylows_of(data, f) if f != 1 else []:
                hs += _maximals_of_pgroup(data, pm, p)
            got = _ftau_all(data, hs, fm.SUPERSOLUBLE, ft.FUNCTORS[tau.id], env)
            memo[key] = got
        return got

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        if params["dir"] == "fwd":
            tau = ft.parse_functor(params["tau"])
            hyp = self._fwd_hyp(data, env, tau, hex_mask(params["E"]))
            if not hyp:
                return False, True
            return True, fm.is_member(G, fm.SUPERSOLUBLE)
        # converse: supersoluble G admits a witnessing (E, tau)
        if not fm.is_member(G, fm.SUPERSOLUBLE):
            return False, True
        for tau in _taus(env, frozenset({"phi_regular"})):
            for e in _normal_masks(data):
                if _quotient_in_F(data, e, fm.SUPERSOLUBLE) and self._fwd_hyp(data, env, tau, e):
                    return True, True
        return True, False


@register
class TA(Statement):
    id = "TA"
    title = "Theorem A"

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        taus = _taus(env, frozenset({"phi_regular", "hereditary"}), frozenset({"regular"}))
        fs = _upper_formations(G, env)
        for tau in taus:
            for e in _normal_masks(data):
                xs = sorted({e, _fstar_mask(data, e)} if e != 1 else {e})
                for x in xs:
                    for F in fs:
                        if _quotient_in_F(data, e, F):
                            yield {
                                "tau": tau.id,
                                "E": mask_hex(e),
                                "X": mask_hex(x),
                                "F": F.id,
                            }

    def _hyp(self, data, env, tau, x_mask) -> bool:
        memo = _memo(data, "_ta_memo")
        key = (tau.id, x_mask)
        got = memo.get(key)
        if got is None:
            got = _side_subembed(data, tau, x_mask)
            if got:
                hs = []
                for p, pm in _noncyclic_sylows_of(data, x_mask):
                    hs += _maximals_of_pgroup(data, pm, p)
                got = _ftau_all(data, hs, fm.SUPERSOLUBLE, tau, env)
            memo[key] = got
        return got

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        tau = ft.parse_functor(params["tau"])
        F = fm.parse_formation(params["F"])
        x = hex_mask(params["X"])
        e = hex_mask(params["E"])
        if not self._hyp(data, env, tau, x):
            return False, True
        concl = fm.is_member(G, F)
        if concl and "regular" in tau.asserted:
            concl = is_subset(e, _zu_mask(data))
        return True, concl


class _TBBase(Statement):
    mode: str = ""

    def _x_choices(self, data, e_mask) -> list[int]:
        raise NotImplementedError

    def _taus(self, env):
        raise NotImplementedError

    def _extra_ok(self, data, e_mask) -> bool:
        return True

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        fs = _upper_formations(G, env)
        for tau in self._taus(env):
            for e in _normal_masks(data):
                if not self._extra_ok(data, e):
                    continue
                for x in self._x_choices(data, e):
                    for F in fs:
                        if _quotient_in_F(data, e, F):
                            yield {"tau": tau.id, "E": mask_hex(e), "X": mask_hex(x), "F": F.id}

    def _hyp(self, data, env, tau, x_mask) -> bool:
        memo = _memo(data, "_tb_memo")
        key = (tau.id, x_mask)
        got = memo.get(key)
        if got is None:
            hs = []
            for p, pm in _noncyclic_sylows_of(data, x_mask):
                hs += _cyclic_prime_or_4(data, pm, p)
            got = _ftau_all(data, hs, fm.SUPERSOLUBLE, tau, env)
            memo[key] = got
        return got

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        tau = ft.parse_functor(params["tau"])
        F = fm.parse_formation(params["F"])
        if not self._hyp(data, env, tau, hex_mask(params["X"])):
            return False, True
        return True, fm.is_member(G, F)


@register
class TB_i(_TBBase):
    id = "TB.i"
    title = "Theorem B(i): tau hereditary Phi-quasiregular, X = E"

    def _taus(self, env):
        return _taus(env, frozenset({"hereditary", "phi_quasiregular"}))

    def _x_choices(self, data, e_mask):
        return [e_mask]


@register
class TB_ii(_TBBase):
    id = "TB.ii"
    title = "Theorem B(ii): tau hereditary quasiregular, E soluble, X = F(E)"

    def _taus(self, env):
        return _taus(env, frozenset({"hereditary", "quasiregular"}))

    def _extra_ok(self, data, e_mask):
        return fm.subgroup_is_member(data.group, e_mask, fm.SOLUBLE)

    def _x_choices(self, data, e_mask):
        return [_fitting_mask(data, e_mask)] if e_mask != 1 else [e_mask]


@register
class TB_iii(_TBBase):
    id = "TB.iii"
    title = "Theorem B(iii): tau regular, X = F*(E) or X = E"

    def _taus(self, env):
        return _taus(env, frozenset({"regular"}))

    def _x_choices(self, data, e_mask):
        if e_mask == 1:
            return [e_mask]
        return sorted({e_mask, _fstar_mask(data, e_mask)})


@register
class T3_6(Statement):
    id = "T3.6"
    title = "Theorem 3.6: p-nilpotency from supplemented maximal subgroups of a Sylow"

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        for e in _normal_masks(data):
            eo = popcount(e)
            for p in st.prime_factors(eo):
                if st._p_part(eo, p) <= p or gcd(eo, p - 1) != 1:
                    continue
                for tau in _taus(env, frozenset({"phi_regular"})):
                    yield {"E": mask_hex(e), "p": p, "tau": tau.id}

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        e, p = hex_mask(params["E"]), params["p"]
        tau = ft.parse_functor(params["tau"])
        pm = _sylow_in(data, e, p)
        hyp = _side_subembed(data, tau, pm) and _ftau_all(
            data, _maximals_of_pgroup(data, pm, p), fm.p_supersoluble(p), tau, env
        )
        if not hyp:
            return False, True
        return True, fm.subgroup_is_member(G, e, fm.p_nilpotent(p))


@register
class T4_9(Statement):
    id = "T4.9"
    title = "Theorem 4.9: p-nilpotency from supplemented cyclic subgroups of a Sylow"

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        for e in _normal_masks(data):
            eo = popcount(e)
            for p in st.prime_factors(eo):
                if st._p_part(eo, p) <= p or gcd(eo, p - 1) != 1:
                    continue
                for tau in _taus(env, frozenset({"hereditary"}), frozenset({"regular"})):
                    yield {"E": mask_hex(e), "p": p, "tau": tau.id}

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        e, p = hex_mask(params["E"]), params["p"]
        tau = ft.parse_functor(params["tau"])
        pm = _sylow_in(data, e, p)
        hyp = _ftau_all(data, _cyclic_prime_or_4(data, pm, p), fm.p_supersoluble(p), tau, env)
        if not hyp:
            return False, True
        return True, fm.subgroup_is_member(G, e, fm.p_nilpotent(p))


@register
class P3_5(Statement):
    id = "P3.5"
    title = "Proposition 3.5"

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        fs = _upper_formations(G, env)
        for P in _normal_masks(data):
            po = popcount(P)
            if po == 1 or len(st.prime_factors(po)) != 1:
                continue
            for F in fs:
                for tau in _taus(env, frozenset({"phi_quasiregular"})):
                    yield {"P": mask_hex(P), "F": F.id, "tau": tau.id, "mode": "phi"}
                for tau in _taus(env, frozenset({"quasiregular"})):
                    yield {"P": mask_hex(P), "F": F.id, "tau": tau.id, "mode": "plain"}

    def _hyp(self, data, env, P, F, tau) -> bool:
        memo = _memo(data, "_p35_memo")
        key = (P, F.id, tau.id)
        got = memo.get(key)
        if got is None:
            p = st.prime_factors(popcount(P))[0]
            got = _ftau_all(data, _maximals_of_pgroup(data, P, p), F, tau, env)
            memo[key] = got
        return got

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        P = hex_mask(params["P"])
        F = fm.parse_formation(params["F"])
        tau = ft.parse_functor(params["tau"])
        if not self._hyp(data, env, P, F, tau):
            return False, True
        if params["mode"] == "phi":
            return True, is_subset(P, fm.f_phi_hypercentre(G, F).mask)
        return True, is_subset(P, fm.f_hypercentre(G, F).mask)


@register
class P4_6(Statement):
    id = "P4.6"
    title = "Proposition 4.6"

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        fs = _upper_formations(G, env)
        for P in _normal_masks(data):
            po = popcount(P)
            pf = st.prime_factors(po)
            if po == 1 or len(pf) != 1:
                continue
            p = pf[0]
            exp_ok = data.mask_exponent(P) in (p, 4)
            for F in fs:
                if exp_ok:
                    for tau in _taus(env, frozenset({"phi_quasiregular"})):
                        yield {"P": mask_hex(P), "F": F.id, "tau": tau.id, "mode": "phi"}
                for tau in _taus(env, frozenset({"quasiregular"})):
                    yield {"P": mask_hex(P), "F": F.id, "tau": tau.id, "mode": "plain"}

    def _hyp(self, data, env, P, F, tau) -> bool:
        memo = _memo(data, "_p46_memo")
        key = (P, F.id, tau.id)
        got = memo.get(key)
        if got is None:
            p = st.prime_factors(popcount(P))[0]
            got = _ftau_all(data, _cyclic_prime_or_4(data, P, p), F, tau, env)
            memo[key] = got
        return got

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        P = hex_mask(params["P"])
        F = fm.parse_formation(params["F"])
        tau = ft.parse_functor(params["tau"])
        if not self._hyp(data, env, P, F, tau):
            return False, True
        if params["mode"] == "phi":
            return True, is_subset(P, fm.f_phi_hypercentre(G, F).mask)
        return True, is_subset(P, fm.f_hypercentre(G, F).mask)


@register
class C3_7(Statement):
    id = "C3.7"
    title = "Corollary 3.7 (F read as the supersoluble class)"

    def instances(self, entry, env):
        data = get_data(entry.group)
        for e in _normal_masks(data):
            if e == 1:
                continue
            for tau in _taus(env, frozenset({"regular"})):
                yield {"E": mask_hex(e), "tau": tau.id}

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        e = hex_mask(params["E"])
        tau = ft.parse_functor(params["tau"])
        hyp = _side_subembed(data, tau, e)
        if hyp:
            hs = []
            for p, pm in _noncyclic_sylows_of(data, e):
                hs += _maximals_of_pgroup(data, pm, p)
            hyp = _ftau_all(data, hs, fm.SUPERSOLUBLE, tau, env)
        if not hyp:
            return False, True
        return True, is_subset(e, _zu_mask(data))


@register
class C4_10(Statement):
    id = "C4.10"
    title = "Corollary 4.10 (F read as the supersoluble class)"

    def instances(self, entry, env):
        data = get_data(entry.group)
        for e in _normal_masks(data):
            if e == 1:
                continue
            for tau in _taus(env, frozenset({"hereditary", "quasiregular"})):
                yield {"E": mask_hex(e), "tau": tau.id}

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        e = hex_mask(params["E"])
        tau = ft.parse_functor(params["tau"])
        hs = []
        for p, pm in _noncyclic_sylows_of(data, e):
            hs += _cyclic_prime_or_4(data, pm, p)
        if not _ftau_all(data, hs, fm.SUPERSOLUBLE, tau, env):
            return False, True
        return True, is_subset(e, _zu_mask(data))


@register
class L3_3(Statement):
    id = "L3.3"
    title = "Lemma 3.3"
    uses_ccp = False

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        lat = data.lattice()
        for F in _lemma_formations(G, env):
            for P in _normal_masks(data):
                po = popcount(P)
                if po == 1 or len(st.prime_factors(po)) != 1:
                    continue
                for t in lat.masks:
                    if sp._product_covers(G.order, P, t):
                        yield {"F": F.id, "P": mask_hex(P), "T": mask_hex(t)}

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        F = fm.parse_formation(params["F"])
        P, t = hex_mask(params["P"]), hex_mask(params["T"])
        if not sp._product_covers(G.order, P, t):
            return False, True
        inter = P & fm.zf_of_subgroup(G, t, F)
        if not _normal_in_mask(data, inter, _mask_gens(data, P)):
            return False, True
        return True, is_subset(inter, fm.f_hypercentre(G, F).mask)


@register
class L3_4(Statement):
    id = "L3.4"
    title = "Lemma 3.4"
    uses_ccp = False

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        lat = data.lattice()
        normals = _normal_masks(data)
        minimals = [m.mask for m in st.minimal_normal_subgroups(G, lat)]
        for p in st.prime_factors(G.order):
            P = _sylow_in(data, G.full, p)
            pgens = _mask_gens(data, P)
            for vi in lat.below(P):
                v = lat.masks[int(vi)]
                if not _normal_in_mask(data, v, pgens):
                    continue
                for li in lat.below(v):
                    l = lat.masks[int(li)]
                    emitted = 0
                    for n in minimals:
                        for m in normals:
                            if m == n:
                                continue
                            yield {"p": p, "V": mask_hex(v), "L": mask_hex(l), "N": mask_hex(n), "M": mask_hex(m)}
                            emitted += 1
                            if emitted >= env.inner_cap:
                                break
                        if emitted >= env.inner_cap:
                            break

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        lat = data.lattice()
        p = params["p"]
        v, l = hex_mask(params["V"]), hex_mask(params["L"])
        n, m = hex_mask(params["N"]), hex_mask(params["M"])
        lm = closure_mask(G, l | m)
        nm = closure_mask(G, n | m)
        x = lm & nm
        norm = ft._normalizer_mask(data, x)
        index = G.order // popcount(norm)
        if st._p_part(index, p) != index:
            return False, True
        vm = closure_mask(G, v | m)
        xg = st.normal_closure_mask(G, x)
        concl = is_subset(xg, vm)
        if concl and not data.mask_is_abelian(n):
            # N non-abelian minimal normal here
            concl = (l & n) == 1
        if concl and (closure_mask(G, n | l) & m) == 1:
            concl = is_subset(st.normal_closure_mask(G, l & n), vm)
        return True, concl


@register
class L3_8(Statement):
    id = "L3.8"
    title = "Lemma 3.8"

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        phi = st.frattini(G, data.lattice()).mask
        for P in _normal_masks(data):
            po = popcount(P)
            pf = st.prime_factors(po)
            if len(pf) != 1 or po <= pf[0]:
                continue
            if (P & phi) != 1:
                continue
            for tau in _taus(env, frozenset({"phi_quasiregular"})):
                yield {"P": mask_hex(P), "tau": tau.id}

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        P = hex_mask(params["P"])
        p = st.prime_factors(popcount(P))[0]
        tau = ft.parse_functor(params["tau"])
        maxima = _maximals_of_pgroup(data, P, p)
        if not _ftau_all(data, maxima, fm.SUPERSOLUBLE, tau, env):
            return False, True
        lat = data.lattice()
        return True, any(lat.normal[lat.index(m)] for m in maxima)


@register
class L3_9(Statement):
    id = "L3.9"
    title = "Lemma 3.9"

    def instances(self, entry, env):
        data = get_data(entry.group)
        for e in _normal_masks(data):
            for tau in _taus(env, frozenset({"phi_regular"})):
                yield {"E": mask_hex(e), "tau": tau.id}

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        e = hex_mask(params["E"])
        tau = ft.parse_functor(params["tau"])
        hyp = _side_subembed(data, tau, G.full, primary_only=True)
        if hyp:
            hs = []
            for p, pm in _noncyclic_sylows_of(data, e):
                hs += _maximals_of_pgroup(data, pm, p)
            hyp = _ftau_all(data, hs, fm.SUPERSOLUBLE, tau, env)
        if not hyp:
            return False, True
        return True, fm.subgroup_is_member(G, e, fm.SUPERSOLUBLE)


@register
class L4_5(Statement):
    id = "L4.5"
    title = "Lemma 4.5"
    uses_ccp = False

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        lat = data.lattice()
        normals = _normal_masks(data)
        for up, lo in ft._chief_pairs(data):
            forder = popcount(up) // popcount(lo)
            pf = st.prime_factors(forder)
            if len(pf) != 1 or forder == pf[0]:
                continue
            if any(is_subset(v, up) and v != up and not is_subset(v, lo) for v in normals):
                continue
            for h in _cyclic_prime_or_4_any(data, up):
                rh = closure_mask(G, lo | h)
                if rh == lo or rh == up:
                    continue
                for t in lat.masks:
                    if sp._product_covers(G.order, h, t):
                        yield {"P": mask_hex(up), "R": mask_hex(lo), "H": mask_hex(h), "T": mask_hex(t)}

    def evaluate(self, entry, env, params):
        G = entry.group
        up, lo = hex_mask(params["P"]), hex_mask(params["R"])
        h, t = hex_mask(params["H"]), hex_mask(params["T"])
        rh = closure_mask(G, lo | h)
        hyp = rh != lo and rh != up and sp._product_covers(G.order, h, t)
        if not hyp:
            return False, True
        return True, t == G.full


@register
class L4_7(Statement):
    id = "L4.7"
    title = "Lemma 4.7"
    uses_ccp = False

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        lat = data.lattice()
        z = st.hypercentre(G).mask
        for p in st.prime_factors(G.order):
            for ni in lat.below(z):
                n = lat.masks[int(ni)]
                no = popcount(n)
                if no == 1 or st._p_part(no, p) != no:
                    continue
                emitted = 0
                for t in lat.masks:
                    if t != G.full and sp._product_covers(G.order, n, t):
                        yield {"p": p, "N": mask_hex(n), "T": mask_hex(t)}
                        emitted += 1
                        if emitted >= env.inner_cap:
                            break

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        n, t = hex_mask(params["N"]), hex_mask(params["T"])
        p = params["p"]
        no = popcount(n)
        hyp = (
            t != G.full
            and sp._product_covers(G.order, n, t)
            and st._p_part(no, p) == no
            and is_subset(n, st.hypercentre(G).mask)
        )
        if not hyp:
            return False, True
        return True, _op_residual_mask(data, p) != G.full


@register
class L4_8(Statement):
    id = "L4.8"
    title = "Lemma 4.8"
    uses_ccp = False

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        lat = data.lattice()
        for n in st.minimal_normal_subgroups(G, lat):
            for mi in lat.maximal_indices():
                t = lat.masks[int(mi)]
                if sp._product_covers(G.order, n.mask, t):
                    for clause in (1, 2):
                        yield {"N": mask_hex(n.mask), "T": mask_hex(t), "clause": clause}

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        n, t = hex_mask(params["N"]), hex_mask(params["T"])
        index = G.order // popcount(t)
        if params["clause"] == 1:
            if 4 % index != 0:
                return False, True
            return True, data.mask_is_abelian(n)
        if not is_subset(n, _zu_mask(data)):
            return False, True
        return True, st._is_prime(index)


@register
class L2_1(Statement):
    id = "L2.1"
    title = "Lemma 2.1 closure laws for the pair condition"
    uses_ccp = False

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        lat = data.lattice()
        normals = _normal_masks(data)
        pairs = 0
        for h in lat.masks:
            for ki in lat.below(h):
                k = lat.masks[int(ki)]
                pairs += 1
                if pairs > max(64, env.inner_cap * 16):
                    return
                for F in _lemma_formations(G, env):
                    emitted = 0
                    for n in normals:
                        if is_subset(n, h) or gcd(popcount(h), popcount(n)) == 1:
                            yield {"F": F.id, "K": mask_hex(k), "H": mask_hex(h), "law": 1, "N": mask_hex(n)}
                            emitted += 1
                            if emitted >= env.inner_cap:
                                break
                    emitted = 0
                    for ei in lat.above(h):
                        yield {"F": F.id, "K": mask_hex(k), "H": mask_hex(h), "law": 2, "E": mask_hex(lat.masks[int(ei)])}
                        emitted += 1
                        if emitted >= env.inner_cap:
                            break
                    emitted = 0
                    for vi in lat.below(h):
                        v = lat.masks[int(vi)]
                        if is_subset(k, v):
                            yield {"F": F.id, "K": mask_hex(k), "H": mask_hex(h), "law": 3, "V": mask_hex(v)}
                            emitted += 1
                            if emitted >= env.inner_cap:
                                break

    def evaluate(self, entry, env, params):
        G = entry.group
        F = fm.parse_formation(params["F"])
        K = Subgroup(G, hex_mask(params["K"]), _validated=True)
        H = Subgroup(G, hex_mask(params["H"]), _validated=True)
        if not sp.pair_satisfies_f_supplement(G, K, H, F):
            return False, True
        law = params["law"]
        if law == 1:
            return True, sp.pair_satisfies_in_quotient(G, hex_mask(params["N"]), K, H, F)
        if law == 2:
            return True, sp.pair_satisfies_in_subgroup(G, hex_mask(params["E"]), K, H, F)
        V = Subgroup(G, hex_mask(params["V"]), _validated=True)
        return True, sp.pair_satisfies_f_supplement(G, V, H, F)


@register
class L2_2(Statement):
    id = "L2.2"
    title = "Lemma 2.2 closure laws for F_tau-supplementation"
    uses_ccp = False

    def _taus(self, env):
        return _taus(env, frozenset({"inductive"}))

    def instances(self, entry, env):
        G = entry.group
        data = get_data(G)
        lat = data.lattice()
        normals = _normal_masks(data)
        count = 0
        for h in lat.masks:
            count += 1
            if count > max(48, env.inner_cap * 8):
                return
            for F in _lemma_formations(G, env):
                for tau in self._taus(env):
                    emitted = 0
                    for n in normals:
                        if is_subset(n, h):
                            yield {"F": F.id, "tau": tau.id, "H": mask_hex(h), "law": 1, "N": mask_hex(n)}
                            emitted += 1
                            if emitted >= env.inner_cap:
                                break
                    hg = sp._core_mask(data, h)
                    emitted = 0
                    for s in sorted(ft._tau_mask_set(data, tau)):
                        if is_subset(hg, s) and is_subset(s, h):
                            yield {"F": F.id, "tau": tau.id, "H": mask_hex(h), "law": 2, "S": mask_hex(s)}
                            emitted += 1
                            if emitted >= env.inner_cap:
                                break
                    emitted = 0
                    for n in normals:
                        if is_subset(n, h) or gcd(popcount(h), popcount(n)) == 1:
                            yield {"F": F.id, "tau": tau.id, "H": mask_hex(h), "law": 3, "N": mask_hex(n)}
                            emitted += 1
                            if emitted >= env.inner_cap:
                                break
                    if "hereditary" in tau.asserted and F.is_hereditary:
                        emitted = 0
                        for ei in lat.above(h):
                            yield {"F": F.id, "tau": tau.id, "H": mask_hex(h), "law": 4, "E": mask_hex(lat.masks[int(ei)])}
                            emitted += 1
                            if emitted >= env.inner_cap:
                                break

    def evaluate(self, entry, env, params):
        G = entry.group
        data = get_data(G)
        F = fm.parse_formation(params["F"])
        tau = ft.parse_functor(params["tau"])
        H = Subgroup(G, hex_mask(params["H"]), _validated=True)
        law = params["law"]
        if law == 1:
            lhs = sp.ftau_in_quotient(G, hex_mask(params["N"]), H, F, tau)
            rhs = sp.is_f_tau_supplemented(G, H, F, tau)
            return True, lhs == rhs
        if law == 2:
            S = Subgroup(G, hex_mask(params["S"]), _validated=True)
            if not sp.pair_satisfies_f_supplement(G, S, H, F):
                return False, True
            return True, sp.is_f_tau_supplemented(G, H, F, tau)
        if not sp.is_f_tau_supplemented(G, H, F, tau):
            return False, True
        if law == 3:
            return True, sp.ftau_in_quotient(G, hex_mask(params["N"]), H, F, tau)
        return True, sp.ftau_in_subgroup(G, hex_mask(params["E"]), H, F, tau)


@register
class QB(Statement):
    id = "QB"
    title = "Question B: regularity search for the completely-c-permutable functor"

    def instances(self, entry, env):
        yield {"check": "ccp-regular"}

    def evaluate(self, entry, env, params):
        G = entry.group
        if G.order > env.ccp_max_order:
            raise TooLarge(f"ccp search capped at order {env.ccp_max_order}")
        res = ft.check_property(ft.FUNCTORS["ccp"], "regular", [entry], ccp_max_order=env.ccp_max_order)
        return True, res.is_pass


@register
class SelfTestFail(Statement):
    id = "SELFTEST.fail"
    title = "intentionally failing statement for exit-code and replay tests"

    def instances(self, entry, env):
        yield {"check": "odd-order"}

    def evaluate(self, entry, env, params):
        return True, entry.group.order % 2 == 1


PAPER_SUITE = [
    "T1.11", "TA", "TB.i", "TB.ii", "TB.iii", "T3.6", "T4.9",
    "P3.5", "P4.6", "C3.7", "C4.10",
    "L2.1", "L2.2", "L3.3", "L3.4", "L3.8", "L3.9", "L4.5", "L4.7", "L4.8",
    "QB",
]
