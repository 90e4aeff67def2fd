"""Construction, ingestion, deduplication and persistence of the group corpus.

Families: cyclic(n), abelian(d1,...,dk) by invariant factors, dihedral(order),
dicyclic(order), symmetric(n<=5), alternating(n<=5), sl23, plus
product(A,B), semidirect(N,H,action) and file(path) specs.  The swept corpus
is family-generated, not a census: verdicts over it are "no counterexample in
corpus", never completeness claims.
"""

from __future__ import annotations

import hashlib
import itertools
import os
import struct
import tempfile
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from ._bits import indices_of, mask_from_array, popcount
from .errors import InvalidGroup, ParseError, TooLarge, UnknownId
from .groups import (
    Action,
    Group,
    Subgroup,
    are_isomorphic,
    direct_product,
    semidirect_product,
)
from .structure import SubgroupLattice, enumerate_subgroups, get_lattice, set_lattice

MAX_GROUP_ORDER = 192


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class GroupSpec:
    """A family id plus parameters; round-trips through its canonical string."""

    kind: str
    args: tuple = ()

    def __str__(self):
        if self.kind == "sl23":
            return "sl23"
        if self.kind in ("cyclic", "dihedral", "dicyclic", "symmetric", "alternating"):
            return f"{self.kind}({self.args[0]})"
        if self.kind == "abelian":
            return "abelian(" + ",".join(str(d) for d in self.args) + ")"
        if self.kind == "product":
            return f"product({self.args[0]},{self.args[1]})"
        if self.kind == "semidirect":
            return f"semidirect({self.args[0]},{self.args[1]},{self.args[2]})"
        if self.kind == "file":
            return f"file({self.args[0]})"
        raise UnknownId(self.kind)


def _split_top_level(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_spec(s: str) -> GroupSpec:
    s = s.strip()
    if s == "sl23":
        return GroupSpec("sl23")
    if "(" not in s:
        raise ParseError(f"cannot parse group spec {s!r}")
    if not s.endswith(")"):
        raise ParseError(f"unbalanced parentheses in {s!r}")
    kind, _, rest = s.partition("(")
    inner = rest[:-1]
    kind = kind.strip()
    if kind in ("cyclic", "dihedral", "dicyclic", "symmetric", "alternating"):
        try:
            return GroupSpec(kind, (int(inner),))
        except ValueError:
            raise ParseError(f"{kind} takes one integer, got {inner!r}")
    if kind == "abelian":
        try:
            return GroupSpec(kind, tuple(int(x) for x in inner.split(",")))
        except ValueError:
            raise ParseError(f"abelian takes integers, got {inner!r}")
    if kind == "product":
        a, b = _split_top_level(inner)
        return GroupSpec(kind, (parse_spec(a), parse_spec(b)))
    if kind == "semidirect":
        parts = _split_top_level(inner)
        if len(parts) != 3:
            raise ParseError(f"semidirect takes (N,H,action), got {inner!r}")
        return GroupSpec(kind, (parse_spec(parts[0]), parse_spec(parts[1]), parts[2].strip()))
    if kind == "file":
        return GroupSpec(kind, (inner,))
    raise ParseError(f"unknown family {kind!r}")


# ---------------------------------------------------------------------------
# family builders


def _cyclic(n: int) -> Group:
    if n < 1:
        raise ValueError("cyclic order must be >= 1")
    t = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return Group(t, labels=[f"g{i}" for i in range(n)], name=f"C{n}", _validated=True)


def _abelian(factors: tuple[int, ...]) -> Group:
    if not factors or any(d < 1 for d in factors):
        raise ValueError("abelian invariant factors must be positive")
    G = _cyclic(factors[0])
    for d in factors[1:]:
        G = direct_product(G, _cyclic(d))
    name = "x".join(f"C{d}" for d in factors)
    return Group(G.table, name=name, _validated=True)


def _dihedral(order: int) -> Group:
    if order < 2 or order % 2:
        raise ValueError("dihedral order must be even and >= 2")
    n = order // 2

    def mul(a, b):
        i, s = a % n, a // n
        j, t = b % n, b // n
        if s == 0:
            return ((i + j) % n) + n * t
        return ((i - j) % n) + n * (1 - t)

    t = np.fromfunction(np.vectorize(mul), (order, order), dtype=int)
    labels = [f"r{i}" for i in range(n)] + [f"sr{i}" for i in range(n)]
    return Group(t, labels=labels, name=f"D{order}", _validated=True)


def _dicyclic(order: int) -> Group:
    if order < 4 or order % 4:
        raise ValueError("dicyclic order must be a multiple of 4")
    n = order // 2  # a has order n = 2m; b^2 = a^m

    def mul(x, y):
        i, s = x % n, x // n
        j, t = y % n, y // n
        if s == 0:
            i2 = (i + j) % n
        else:
            i2 = (i - j) % n
            if t == 1:
                i2 = (i2 + n // 2) % n
        return i2 + n * ((s + t) % 2)

    t = np.fromfunction(np.vectorize(mul), (order, order), dtype=int)
    labels = [f"a{i}" for i in range(n)] + [f"a{i}b" for i in range(n)]
    return Group(t, labels=labels, name=f"Dic{order}", _validated=True)


def _perm_cycle_label(p: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            seen.add(i)
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) if cycles else "()"


def _perm_group(perms: list[tuple[int, ...]], name: str) -> Group:
    perms = sorted(set(perms))
    ident = tuple(range(len(perms[0])))
    assert perms[0] == ident
    idx = {p: i for i, p in enumerate(perms)}
    tab = [[idx[tuple(p[q[i]] for i in range(len(ident)))] for q in perms] for p in perms]
    labels = [_perm_cycle_label(p) for p in perms]
    return Group(np.array(tab), labels=labels, name=name, _validated=True)


def _symmetric(n: int) -> Group:
    if not 1 <= n <= 5:
        raise ValueError("symmetric(n) supported for 1 <= n <= 5")
    return _perm_group([p for p in itertools.permutations(range(n))], f"S{n}")


def _parity(p: tuple[int, ...]) -> int:
    seen, par = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, ln = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            ln += 1
        par ^= (ln - 1) & 1
    return par


def _alternating(n: int) -> Group:
    if not 1 <= n <= 5:
        raise ValueError("alternating(n) supported for 1 <= n <= 5")
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    return _perm_group(perms, f"A{n}")


def _sl23() -> Group:
    mats = []
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if (a * d - b * c) % 3 == 1:
            mats.append((a, b, c, d))
    ident = (1, 0, 0, 1)
    mats = [ident] + sorted(m for m in mats if m != ident)
    idx = {m: i for i, m in enumerate(mats)}

    def mul(m, k):
        a, b, c, d = m
        e, f, g, h = k
        return ((a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3)

    tab = [[idx[mul(m, k)] for k in mats] for m in mats]
    labels = [f"[{a}{b};{c}{d}]" for a, b, c, d in mats]
    return Group(np.array(tab), labels=labels, name="SL(2,3)", _validated=True)


def _action_from_id(N: Group, H: Group, action_id: str) -> Action:
    """Build a named action of H on N; validated by the Action invariants."""
    aid = action_id.strip()
    if aid == "triv":
        return Action.trivial(H, N)
    # the designated generator of a cyclic actor is element 1
    if aid == "inv":
        base = N.inverse.copy()
    elif aid.startswith("pow(") and aid.endswith(")"):
        k = int(aid[4:-1])
        base = np.zeros(N.order, dtype=np.int64)
        for x in range(N.order):
            y = 0
            for _ in range(k % N.element_order(x)):
                y = int(N.table[y, x])
            base[x] = y
    elif aid == "cycle3":
        if N.order != 4:
            raise UnknownId("cycle3 action needs the Klein four-group")
        invs = [x for x in range(4) if x != 0]
        base = np.arange(4)
        base[invs[0]], base[invs[1]], base[invs[2]] = invs[1], invs[2], invs[0]
    else:
        raise UnknownId(f"unknown action id {action_id!r}")
    # actor must be cyclic with generator 1
    if H.order > 1 and H.element_order(1) != H.order:
        raise UnknownId("named actions need a cyclic actor with generator 1")
    perms = np.empty((H.order, N.order), dtype=np.int64)
    perms[0] = np.arange(N.order)
    for i in range(1, H.order):
        perms[i] = base[perms[i - 1]]
    return Action(H, N, perms)


def build(spec: GroupSpec | str, max_order: int = MAX_GROUP_ORDER) -> Group:
    """Build the group a spec describes; parameter errors raise ValueError."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if spec.kind == "cyclic":
        G = _cyclic(spec.args[0])
    elif spec.kind == "abelian":
        G = _abelian(spec.args)
    elif spec.kind == "dihedral":
        G = _dihedral(spec.args[0])
    elif spec.kind == "dicyclic":
        G = _dicyclic(spec.args[0])
    elif spec.kind == "symmetric":
        G = _symmetric(spec.args[0])
    elif spec.kind == "alternating":
        G = _alternating(spec.args[0])
    elif spec.kind == "sl23":
        G = _sl23()
    elif spec.kind == "product":
        G = direct_product(build(spec.args[0], max_order), build(spec.args[1], max_order))
    elif spec.kind == "semidirect":
        N = build(spec.args[0], max_order)
        H = build(spec.args[1], max_order)
        G = semidirect_product(N, H, _action_from_id(N, H, spec.args[2]))
    elif spec.kind == "file":
        G = load_group(spec.args[0])
    else:
        raise UnknownId(spec.kind)
    if G.order > max_order:
        raise TooLarge(f"{spec} has order {G.order} > cap {max_order}")
    return Group(G.table, labels=G.labels, name=str(spec), _validated=True)


# ---------------------------------------------------------------------------
# corpus generation


@dataclass
class CorpusEntry:
    spec: GroupSpec
    group: Group
    fingerprint: tuple = field(default=None)
    lattice: Optional[SubgroupLattice] = None

    def __post_init__(self):
        if self.fingerprint is None:
            self.fingerprint = fingerprint(self.group)

    @property
    def order(self) -> int:
        return self.group.order


def fingerprint(G: Group) -> tuple:
    """Isomorphism-invariant screen: order, abelianness, element orders, |Z|."""
    orders = tuple(sorted(G.element_order(x) for x in range(G.order)))
    abelian = bool(np.array_equal(G.table, G.table.T))
    centre = int(np.sum((G.table == G.table.T).all(axis=1)))
    return (G.order, abelian, orders, centre)


def _abelian_factor_lists(max_order: int) -> list[tuple[int, ...]]:
    """Invariant-factor chains d1 | d2 | ... | dk, product <= max_order, k >= 2."""
    out = []

    def rec(chain, prod):
        if len(chain) >= 2:
            out.append(tuple(chain))
        d = chain[-1] if chain else 2
        m = d if chain else 2
        k = m
        while prod * k <= max_order:
            if not chain or k % chain[-1] == 0:
                rec(chain + [k], prod * k)
            k += 1

    rec([], 1)
    return sorted(out)


SEMIDIRECT_EXEMPLARS = [
    "semidirect(cyclic(3),cyclic(2),inv)",
    "semidirect(abelian(2,2),cyclic(3),cycle3)",
    "semidirect(cyclic(5),cyclic(4),pow(2))",
    "semidirect(cyclic(7),cyclic(3),pow(2))",
    "semidirect(cyclic(7),cyclic(6),pow(3))",
    "semidirect(abelian(3,3),cyclic(2),inv)",
    "semidirect(abelian(3,3),cyclic(4),inv)",
    "semidirect(cyclic(8),cyclic(2),pow(3))",
    "semidirect(cyclic(8),cyclic(2),pow(5))",
    "semidirect(cyclic(9),cyclic(3),pow(4))",
    "semidirect(cyclic(16),cyclic(2),pow(9))",
    "semidirect(abelian(5,5),cyclic(2),inv)",
]

_FAMILY_RANK = {
    "cyclic": 0,
    "abelian": 1,
    "dihedral": 2,
    "dicyclic": 3,
    "symmetric": 4,
    "alternating": 5,
    "sl23": 6,
    "semidirect": 7,
    "product": 8,
}


def base_specs(max_order: int) -> list[GroupSpec]:
    out: list[GroupSpec] = []
    out += [GroupSpec("cyclic", (n,)) for n in range(1, max_order + 1)]
    out += [GroupSpec("abelian", fs) for fs in _abelian_factor_lists(max_order)]
    out += [GroupSpec("dihedral", (2 * n,)) for n in range(3, max_order // 2 + 1)]
    out += [GroupSpec("dicyclic", (4 * n,)) for n in range(2, max_order // 4 + 1)]
    out += [GroupSpec("symmetric", (n,)) for n in range(2, 6) if _factorial(n) <= max_order]
    out += [GroupSpec("alternating", (n,)) for n in range(3, 6) if _factorial(n) // 2 <= max_order]
    if max_order >= 24:
        out.append(GroupSpec("sl23"))
    for s in SEMIDIRECT_EXEMPLARS:
        spec = parse_spec(s)
        if _spec_order(spec) <= max_order:
            out.append(spec)
    return out


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _spec_order(spec: GroupSpec) -> int:
    if spec.kind == "cyclic":
        return spec.args[0]
    if spec.kind == "abelian":
        p = 1
        for d in spec.args:
            p *= d
        return p
    if spec.kind in ("dihedral", "dicyclic"):
        return spec.args[0]
    if spec.kind == "symmetric":
        return _factorial(spec.args[0])
    if spec.kind == "alternating":
        return max(1, _factorial(spec.args[0]) // 2)
    if spec.kind == "sl23":
        return 24
    if spec.kind == "product":
        return _spec_order(spec.args[0]) * _spec_order(spec.args[1])
    if spec.kind == "semidirect":
        return _spec_order(spec.args[0]) * _spec_order(spec.args[1])
    raise UnknownId(spec.kind)


def generate_corpus(max_order: int, include_products: bool = True) -> list[CorpusEntry]:
    """All family instances (plus pairwise products) up to max_order, deduped.

    Deterministic: candidates are ordered by (order, family rank, spec string),
    deduplicated by fingerprint and then are_isomorphic.  Not a complete
    census of isomorphism types.
    """
    specs = base_specs(max_order)
    if include_products:
        bases = list(specs)
        for i, a in enumerate(bases):
            if _spec_order(a) < 2:
                continue
            for b in bases[i:]:
                if _spec_order(b) < 2:
                    continue
                if _spec_order(a) * _spec_order(b) <= max_order:
                    specs.append(GroupSpec("product", (a, b)))
    specs.sort(key=lambda s: (_spec_order(s), _FAMILY_RANK[s.kind], str(s)))
    entries: list[CorpusEntry] = []
    by_fp: dict[tuple, list[int]] = {}
    for spec in specs:
        G = build(spec, max_order=max_order)
        fp = fingerprint(G)
        dup = False
        for j in by_fp.get(fp, ()):
            if are_isomorphic(entries[j].group, G):
                dup = True
                break
        if dup:
            continue
        by_fp.setdefault(fp, []).append(len(entries))
        entries.append(CorpusEntry(spec, G, fp))
    return entries


# ---------------------------------------------------------------------------
# persistence: cayley v1 and perm v1


def save_group(G: Group, path: str) -> None:
    lines = [f"cayley 1 {G.order}"]
    for a in range(G.order):
        lines.append(" ".join(str(int(x)) for x in G.table[a]))
    if G.labels is not None:
        for i, lab in enumerate(G.labels):
            lines.append(f"# label {i} {lab}")
    _atomic_write_text(path, "\n".join(lines) + "\n")


def load_group(path: str, max_order: int = MAX_GROUP_ORDER) -> Group:
    """Load cayley v1 or perm v1; untrusted input, fully re-validated."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError("empty file", line=1)
    head = lines[0].split()
    if head[:2] == ["cayley", "1"]:
        return _load_cayley(lines, path)
    if head[:2] == ["perm", "1"]:
        return _load_perm(lines, path, max_order)
    raise ParseError(f"unknown header {lines[0]!r}", line=1)


def _load_cayley(lines: list[str], path: str) -> Group:
    head = lines[0].split()
    if len(head) != 3:
        raise ParseError("header must be 'cayley 1 <order>'", line=1)
    try:
        n = int(head[2])
    except ValueError:
        raise ParseError("order is not an integer", line=1, field="order")
    if n < 1:
        raise ParseError("order must be positive", line=1, field="order")
    if len(lines) < 1 + n:
        raise ParseError(f"expected {n} table rows", line=len(lines))
    table = np.empty((n, n), dtype=np.int64)
    for r in range(n):
        parts = lines[1 + r].split()
        if len(parts) != n:
            raise ParseError(f"row has {len(parts)} entries, expected {n}", line=2 + r)
        for c, tok in enumerate(parts):
            try:
                table[r, c] = int(tok)
            except ValueError:
                raise ParseError(f"bad entry {tok!r}", line=2 + r, field=f"column {c}")
    labels: Optional[list[str]] = None
    for ln, raw in enumerate(lines[1 + n:], start=2 + n):
        if not raw.strip():
            continue
        parts = raw.split(maxsplit=3)
        if parts[:2] != ["#", "label"] or len(parts) < 4:
            raise ParseError(f"bad trailer {raw!r}", line=ln)
        try:
            i = int(parts[2])
        except ValueError:
            raise ParseError("label index not an integer", line=ln)
        if not 0 <= i < n:
            raise ParseError("label index out of range", line=ln)
        if labels is None:
            labels = [str(k) for k in range(n)]
        labels[i] = parts[3]
    return Group(table, labels=labels, name=os.path.basename(path))


def _parse_cycles(s: str, degree: int, line: int) -> tuple[int, ...]:
    perm = list(range(degree))
    depth = 0
    cur: list[int] = []
    tok = ""

    def close_point():
        nonlocal tok
        if tok:
            pt = int(tok)
            if not 1 <= pt <= degree:
                raise ParseError(f"point {pt} out of range", line=line)
            cur.append(pt - 1)
            tok = ""

    for ch in s:
        if ch == "(":
            if depth:
                raise ParseError("nested parentheses", line=line)
            depth = 1
            cur.clear()
        elif ch == ")":
            close_point()
            if len(cur) != len(set(cur)):
                raise ParseError("repeated point in cycle", line=line)
            for i, pt in enumerate(cur):
                perm[pt] = cur[(i + 1) % len(cur)]
            depth = 0
        elif ch.isdigit():
            tok += ch
        elif ch in " \t":
            close_point()
        else:
            raise ParseError(f"unexpected character {ch!r}", line=line)
    if depth:
        raise ParseError("unbalanced parentheses", line=line)
    return tuple(perm)


def _load_perm(lines: list[str], path: str, max_order: int) -> Group:
    head = lines[0].split()
    if len(head) != 3:
        raise ParseError("header must be 'perm 1 <degree>'", line=1)
    try:
        degree = int(head[2])
    except ValueError:
        raise ParseError("degree is not an integer", line=1, field="degree")
    gens = []
    for ln, raw in enumerate(lines[1:], start=2):
        if raw.strip():
            gens.append(_parse_cycles(raw.strip(), degree, ln))
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = tuple(g[p[i]] for i in range(degree))
            if q not in elems:
                if len(elems) >= max_order:
                    raise TooLarge(f"permutation group exceeds cap {max_order}")
                elems.add(q)
                frontier.append(q)
    return _perm_group(sorted(elems), os.path.basename(path))


def _atomic_write_text(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".orelab-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _atomic_write_bytes(path: str, blob: bytes) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".orelab-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# lattice cache (binary, versioned, checksummed)

_LATTICE_MAGIC = b"OLAT1\n"


def group_digest(G: Group) -> str:
    return hashlib.sha256(np.ascontiguousarray(G.table, dtype=np.int32).tobytes()).hexdigest()


def lattice_cache_path(cache_dir: str, G: Group) -> str:
    return os.path.join(cache_dir, f"{group_digest(G)}.olat")


def cache_lattice(entry_or_group, cache_dir: str) -> str:
    """Serialize a group's lattice; atomic write-to-temp-then-rename."""
    G = entry_or_group.group if isinstance(entry_or_group, CorpusEntry) else entry_or_group
    lat = get_lattice(G)
    n = G.order
    nwords = (n + 63) // 64
    parts = [_LATTICE_MAGIC]
    parts.append(struct.pack("<III", 1, n, len(lat.masks)))
    parts.append(struct.pack("<I", nwords))
    parts.append(bytes.fromhex(group_digest(G)))
    body = bytearray()
    for m in lat.masks:
        body += m.to_bytes(nwords * 8, "little")
    for gens in lat.gens_of:
        body += struct.pack("<H", len(gens))
        for g in gens:
            body += struct.pack("<H", g)
    parts.append(bytes(body))
    blob = b"".join(parts)
    blob += hashlib.sha256(blob).digest()
    path = lattice_cache_path(cache_dir, G)
    os.makedirs(cache_dir, exist_ok=True)
    _atomic_write_bytes(path, blob)
    return path


def load_lattice(entry_or_group, cache_dir: str) -> Optional[SubgroupLattice]:
    """Load a cached lattice; corrupted or mismatched caches return None.

    Loaded member masks are re-validated as subgroups (untrusted input); the
    structural flags are recomputed from the masks rather than trusted.
    """
    G = entry_or_group.group if isinstance(entry_or_group, CorpusEntry) else entry_or_group
    path = lattice_cache_path(cache_dir, G)
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except OSError:
        return None
    if len(blob) < len(_LATTICE_MAGIC) + 16 + 32 + 32:
        return None
    payload, digest = blob[:-32], blob[-32:]
    if hashlib.sha256(payload).digest() != digest:
        return None
    if not payload.startswith(_LATTICE_MAGIC):
        return None
    off = len(_LATTICE_MAGIC)
    version, n, count = struct.unpack_from("<III", payload, off)
    off += 12
    (nwords,) = struct.unpack_from("<I", payload, off)
    off += 4
    gdig = payload[off:off + 32].hex()
    off += 32
    if version != 1 or n != G.order or gdig != group_digest(G):
        return None
    try:
        masks = []
        for _ in range(count):
            masks.append(int.from_bytes(payload[off:off + nwords * 8], "little"))
            off += nwords * 8
        gens_of = []
        for _ in range(count):
            (k,) = struct.unpack_from("<H", payload, off)
            off += 2
            gens = struct.unpack_from(f"<{k}H", payload, off)
            off += 2 * k
            gens_of.append(tuple(int(g) for g in gens))
        from .groups import closure_mask
        from ._bits import mask_from_indices

        for m, gens in zip(masks, gens_of):
            Subgroup(G, m)  # full subgroup validation
            if closure_mask(G, mask_from_indices(gens)) != m:
                return None
        lat = SubgroupLattice(G, masks, gens_of)
    except Exception:
        return None
    return lat


def with_cached_lattice(G: Group, cache_dir: Optional[str]) -> SubgroupLattice:
    """Fetch the lattice through the disk cache when a directory is given."""
    if cache_dir:
        lat = load_lattice(G, cache_dir)
        if lat is not None:
            set_lattice(G, lat)
            return lat
        lat = get_lattice(G)
        cache_lattice(G, cache_dir)
        return lat
    return get_lattice(G)


def emit_corpus(dir_path: str, max_order: int) -> list[str]:
    """Write every corpus entry as a cayley v1 file; returns the paths."""
    os.makedirs(dir_path, exist_ok=True)
    out = []
    for i, entry in enumerate(generate_corpus(max_order)):
        safe = str(entry.spec).replace("(", "_").replace(")", "").replace(",", "-")
        path = os.path.join(dir_path, f"{i:04d}_{safe}.cayley")
        save_group(entry.group, path)
        out.append(path)
    return out
