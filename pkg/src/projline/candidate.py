"""Finite labeled composition tables and their consistency checkers.

A candidate table is a transitive groupoid presented concretely: a
finite object list, per-object scalar names for the endo arrows, and a
complete composition table.  Arrows between two distinct objects are
named by the remaining objects (the label bijection is built into the
arrow space itself), so a table is exactly the data of the composition
map plus the identity designations.

Everything here is exact and deterministic.  Checks report counts and
capped witness samples; sweeps can be sharded across processes without
changing any output byte.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .model import label_to_arrow, points
from .reports import CheckReport, ReportGroup, make_check
from .scalars import PrimeField


class CandidateFormatError(ValueError):
    """The input does not describe a well-formed candidate table."""


@dataclass(frozen=True)
class NonEndo:
    """An arrow between distinct objects, named by a third object."""

    src: str
    dst: str
    label: str

    def __str__(self) -> str:
        return f"{self.src}>{self.label}>{self.dst}"


@dataclass(frozen=True)
class Endo:
    """A scalar: an arrow from an object to itself, named per object."""

    obj: str
    scalar: str

    def __str__(self) -> str:
        return f"{self.obj}#{self.scalar}"


AbstractArrow = Union[NonEndo, Endo]

_BAD_NAME = re.compile(r"[>#,\s]")


def _check_name(kind: str, name: str) -> None:
    if not isinstance(name, str) or not name or _BAD_NAME.search(name):
        raise CandidateFormatError(
            f"{kind} name {name!r} is invalid (nonempty, no '>', '#', ',' or whitespace)"
        )


def format_arrow(arrow: AbstractArrow) -> str:
    return str(arrow)


def parse_arrow(text: str) -> AbstractArrow:
    if not isinstance(text, str):
        raise CandidateFormatError(f"arrow must be a string, got {text!r}")
    if "#" in text:
        parts = text.split("#")
        if len(parts) != 2 or ">" in text:
            raise CandidateFormatError(f"bad endo arrow syntax {text!r}, want obj#scalar")
        return Endo(parts[0], parts[1])
    parts = text.split(">")
    if len(parts) != 3:
        raise CandidateFormatError(f"bad arrow syntax {text!r}, want src>label>dst")
    return NonEndo(src=parts[0], dst=parts[2], label=parts[1])


class CandidateTable:
    """A complete composition table over a finite labeled arrow space."""

    def __init__(
        self,
        objects: Sequence[str],
        scalars: dict[str, Sequence[str]],
        identities: dict[str, str],
        entries: Iterable[tuple[AbstractArrow, AbstractArrow, AbstractArrow]],
    ):
        self._init_space(objects, scalars, identities)
        comp = np.full((self.n_arrows, self.n_arrows), -1, dtype=np.int32)
        count = 0
        for a, b, r in entries:
            ia, ib, ir = self.arrow_index(a), self.arrow_index(b), self.arrow_index(r)
            if self._dst_i[ia] != self._src_i[ib]:
                raise CandidateFormatError(f"entry ({a}, {b}) is not composable")
            if comp[ia, ib] != -1:
                raise CandidateFormatError(f"duplicate entry for ({a}, {b})")
            comp[ia, ib] = ir
            count += 1
        expected = int(sum(len(self._in[o]) * len(self._out[o]) for o in range(self.n_objects)))
        if count != expected:
            raise CandidateFormatError(
                f"compose table has {count} entries but {expected} composable pairs exist"
            )
        self._comp = comp
        self._inv: Optional[np.ndarray] = None

    # -- construction helpers -------------------------------------------------

    def _init_space(
        self,
        objects: Sequence[str],
        scalars: dict[str, Sequence[str]],
        identities: dict[str, str],
    ) -> None:
        objects = list(objects)
        if len(objects) < 3:
            raise CandidateFormatError("at least three objects are required")
        if len(set(objects)) != len(objects):
            raise CandidateFormatError("object names must be unique")
        for o in objects:
            _check_name("object", o)
        if set(scalars) != set(objects):
            raise CandidateFormatError("scalars must be declared for exactly the objects")
        norm_scalars: dict[str, tuple[str, ...]] = {}
        for o in objects:
            ids = list(scalars[o])
            if not ids or len(set(ids)) != len(ids):
                raise CandidateFormatError(f"scalar ids at {o!r} must be nonempty and unique")
            for s in ids:
                _check_name("scalar", s)
            norm_scalars[o] = tuple(ids)
        if set(identities) != set(objects):
            raise CandidateFormatError("an identity must be declared for exactly the objects")
        for o in objects:
            if identities[o] not in norm_scalars[o]:
                raise CandidateFormatError(
                    f"identity {identities[o]!r} at {o!r} is not a declared scalar"
                )

        self.objects: tuple[str, ...] = tuple(objects)
        self.scalars: dict[str, tuple[str, ...]] = norm_scalars
        self.identities: dict[str, str] = dict(identities)
        self._obj_i: dict[str, int] = {o: i for i, o in enumerate(self.objects)}

        arrows: list[AbstractArrow] = []
        src_i: list[int] = []
        dst_i: list[int] = []
        self._ne3: dict[tuple[int, int, int], int] = {}
        self._endo_i: dict[tuple[int, str], int] = {}
        n = len(self.objects)
        for si, s in enumerate(self.objects):
            for di, d in enumerate(self.objects):
                if si == di:
                    for sid in self.scalars[s]:
                        self._endo_i[(si, sid)] = len(arrows)
                        arrows.append(Endo(s, sid))
                        src_i.append(si)
                        dst_i.append(si)
                else:
                    for li, lab in enumerate(self.objects):
                        if li in (si, di):
                            continue
                        self._ne3[(si, di, li)] = len(arrows)
                        arrows.append(NonEndo(s, d, lab))
                        src_i.append(si)
                        dst_i.append(di)
        self.arrows: tuple[AbstractArrow, ...] = tuple(arrows)
        self._arrow_i: dict[AbstractArrow, int] = {a: i for i, a in enumerate(arrows)}
        self._src_i = np.array(src_i, dtype=np.int32)
        self._dst_i = np.array(dst_i, dtype=np.int32)
        self._out: list[list[int]] = [[] for _ in range(n)]
        self._in: list[list[int]] = [[] for _ in range(n)]
        for i in range(len(arrows)):
            self._out[src_i[i]].append(i)
            self._in[dst_i[i]].append(i)
        self._id_idx = [self._endo_i[(oi, self.identities[o])] for oi, o in enumerate(self.objects)]

    @classmethod
    def _bare(
        cls,
        objects: Sequence[str],
        scalars: dict[str, Sequence[str]],
        identities: dict[str, str],
    ) -> "CandidateTable":
        t = object.__new__(cls)
        t._init_space(objects, scalars, identities)
        t._comp = None
        t._inv = None
        return t

    # -- basic accessors -------------------------------------------------------

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def arrow_index(self, arrow: AbstractArrow) -> int:
        try:
            return self._arrow_i[arrow]
        except KeyError:
            raise CandidateFormatError(f"unknown arrow {arrow}") from None

    def identity_arrow(self, obj: str) -> Endo:
        return Endo(obj, self.identities[obj])

    def hom(self, a: str, b: str) -> tuple[AbstractArrow, ...]:
        ai, bi = self._obj_i[a], self._obj_i[b]
        if ai == bi:
            return tuple(Endo(a, s) for s in self.scalars[a])
        return tuple(
            NonEndo(a, b, lab)
            for li, lab in enumerate(self.objects)
            if li not in (ai, bi)
        )

    def compose_idx(self, i: int, j: int) -> int:
        return int(self._comp[i, j])

    def compose(self, f: AbstractArrow, g: AbstractArrow) -> AbstractArrow:
        """Left-to-right composite: ``f`` then ``g``."""
        i, j = self.arrow_index(f), self.arrow_index(g)
        r = int(self._comp[i, j])
        if r < 0:
            raise ValueError(f"cannot compose {f} then {g}")
        return self.arrows[r]

    def _ensure_inverses(self) -> np.ndarray:
        """Two-sided inverse index per arrow, -1 where none exists."""
        if self._inv is not None:
            return self._inv
        comp = self._comp
        inv = np.full(self.n_arrows, -1, dtype=np.int32)
        for i in range(self.n_arrows):
            si, di = int(self._src_i[i]), int(self._dst_i[i])
            want_l, want_r = self._id_idx[si], self._id_idx[di]
            for j in self._out[di]:
                if self._dst_i[j] == si and comp[i, j] == want_l and comp[j, i] == want_r:
                    inv[i] = j
                    break
        self._inv = inv
        return inv

    def inverse_arrow(self, f: AbstractArrow) -> AbstractArrow:
        inv = self._ensure_inverses()
        j = int(inv[self.arrow_index(f)])
        if j < 0:
            raise ValueError(f"{f} has no two-sided inverse in this table")
        return self.arrows[j]

    # -- serialization ---------------------------------------------------------

    FORMAT = 1

    def to_doc(self) -> dict:
        entries = []
        comp = self._comp
        for i in range(self.n_arrows):
            for j in self._out[int(self._dst_i[i])]:
                entries.append(
                    [str(self.arrows[i]), str(self.arrows[j]), str(self.arrows[int(comp[i, j])])]
                )
        entries.sort(key=lambda e: (e[0], e[1]))
        return {
            "format": self.FORMAT,
            "objects": list(self.objects),
            "scalars": {o: list(self.scalars[o]) for o in self.objects},
            "identity": {o: self.identities[o] for o in self.objects},
            "compose": entries,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "CandidateTable":
        if not isinstance(doc, dict):
            raise CandidateFormatError("candidate document must be a JSON object")
        for key in ("format", "objects", "scalars", "identity", "compose"):
            if key not in doc:
                raise CandidateFormatError(f"missing key {key!r}")
        if doc["format"] != cls.FORMAT:
            raise CandidateFormatError(f"unsupported format {doc['format']!r}, want {cls.FORMAT}")
        if not isinstance(doc["objects"], list) or not isinstance(doc["scalars"], dict):
            raise CandidateFormatError("objects must be a list and scalars a mapping")
        if not isinstance(doc["identity"], dict) or not isinstance(doc["compose"], list):
            raise CandidateFormatError("identity must be a mapping and compose a list")
        entries = []
        for e in doc["compose"]:
            if not isinstance(e, list) or len(e) != 3:
                raise CandidateFormatError(f"compose entries are [a, b, ab] triples, got {e!r}")
            entries.append(tuple(parse_arrow(s) for s in e))
        return cls(doc["objects"], doc["scalars"], doc["identity"], entries)

    def to_json_bytes(self) -> bytes:
        return json.dumps(self.to_doc(), separators=(",", ":")).encode("ascii") + b"\n"

    def save(self, path: str) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_json_bytes())

    @classmethod
    def load(cls, path: str) -> "CandidateTable":
        with open(path, "rb") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise CandidateFormatError(f"not valid JSON: {exc}") from exc
        return cls.from_doc(doc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CandidateTable):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.scalars == other.scalars
            and self.identities == other.identities
            and np.array_equal(self._comp, other._comp)
        )

    def __repr__(self) -> str:
        return f"CandidateTable({self.n_objects} objects, {self.n_arrows} arrows)"


def from_model(p: int) -> CandidateTable:
    """The candidate table of the projective line over F_p.

    Objects are the p+1 points in canonical order, scalars at every
    object are the nonzero residues, and composition follows the
    concrete arrows (factors multiply).
    """
    field = PrimeField(p)
    pts = points(field)
    names = [str(q) for q in pts]
    scalar_ids = [str(v) for v in range(1, p)]
    scalars = {nm: list(scalar_ids) for nm in names}
    identities = {nm: "1" for nm in names}
    t = CandidateTable._bare(names, scalars, identities)

    fac: list[int] = [0] * t.n_arrows
    for i, ar in enumerate(t.arrows):
        if isinstance(ar, Endo):
            fac[i] = int(ar.scalar)
        else:
            a = pts[t._obj_i[ar.src]]
            b = pts[t._obj_i[ar.dst]]
            c = pts[t._obj_i[ar.label]]
            fac[i] = int(label_to_arrow(a, b, c).factor.value)
    n = t.n_objects
    by_factor: list[list[dict[int, int]]] = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(t.n_arrows):
        by_factor[int(t._src_i[i])][int(t._dst_i[i])][fac[i]] = i
    comp = np.full((t.n_arrows, t.n_arrows), -1, dtype=np.int32)
    src_l = [int(v) for v in t._src_i]
    dst_l = [int(v) for v in t._dst_i]
    for i in range(t.n_arrows):
        si, fi = src_l[i], fac[i]
        for j in t._out[dst_l[i]]:
            comp[i, j] = by_factor[si][dst_l[j]][(fi * fac[j]) % p]
    t._comp = comp
    return t


# -- rapport calculus on abstract tables --------------------------------------


def cross_ratio_abs(table: CandidateTable, a: str, b: str, c: str, d: str) -> Endo:
    """The scalar at ``a`` of the round trip a -> b via c, b -> a via d."""
    if len({a, b, c}) != 3 or len({a, b, d}) != 3:
        raise ValueError(f"cross ratio needs a,b,c and a,b,d distinct: {a},{b};{c},{d}")
    out = table.compose(NonEndo(a, b, c), NonEndo(b, a, d))
    assert isinstance(out, Endo)
    return out


def tri_rapport_abs(
    table: CandidateTable, a: str, b: str, c: str, d: str, e: str, f: str
) -> Endo:
    """The scalar at ``a`` of the cycle a -> b via d, b -> c via e, c -> a via f."""
    if len({a, b, c}) != 3:
        raise ValueError(f"base objects must be pairwise distinct: {a},{b},{c}")
    if d in (a, b) or e in (b, c) or f in (c, a):
        raise ValueError(f"labels must avoid their endpoints: ({a},{b},{c};{d},{e},{f})")
    out = table.compose(
        table.compose(NonEndo(a, b, d), NonEndo(b, c, e)), NonEndo(c, a, f)
    )
    assert isinstance(out, Endo)
    return out


def conjugate(table: CandidateTable, sigma: Endo, f: NonEndo) -> Endo:
    """Transport a scalar along an arrow: the composite f^-1, sigma, f."""
    if sigma.obj != f.src:
        raise ValueError(f"{sigma} does not live at the source of {f}")
    finv = table.inverse_arrow(f)
    out = table.compose(table.compose(finv, sigma), f)
    assert isinstance(out, Endo)
    return out


def canonical_scalar(table: CandidateTable, sigma: Endo, base: str) -> Endo:
    """Transport a scalar to the base object along the least-labeled arrow.

    With commutative vertex groups the transported value is independent
    of the chosen path, so this is a canonical form for cross-object
    scalar comparison.
    """
    if sigma.obj == base:
        return sigma
    ai = table._obj_i[sigma.obj]
    bi = table._obj_i[base]
    li = min(i for i in range(table.n_objects) if i not in (ai, bi))
    f = NonEndo(sigma.obj, base, table.objects[li])
    return conjugate(table, sigma, f)


# -- structure validation ------------------------------------------------------


def _fmt_arrow_idx(table: CandidateTable, i: int) -> str:
    return str(table.arrows[i])


def _assoc_shard(
    table: CandidateTable, shard: int, nshards: int, cap: int
) -> dict:
    """Associativity over all composable triples, vectorized per object pair.

    Blocks are indexed by (mid, far) object pairs; a block covers every
    f into mid, g from mid to far, h out of far.
    """
    comp = table._comp
    n = table.n_objects
    checked = 0
    failures = 0
    witnesses: list[tuple[tuple[int, int, int], str]] = []
    block = -1
    for mid in range(n):
        f_idx = np.array(table._in[mid], dtype=np.int32)
        if f_idx.size == 0:
            continue
        for far in range(n):
            block += 1
            if block % nshards != shard:
                continue
            g_idx = np.array(
                [j for j in table._out[mid] if int(table._dst_i[j]) == far], dtype=np.int32
            )
            h_idx = np.array(table._out[far], dtype=np.int32)
            if g_idx.size == 0 or h_idx.size == 0:
                continue
            fg = comp[np.ix_(f_idx, g_idx)]
            gh = comp[np.ix_(g_idx, h_idx)]
            left = comp[fg[:, :, None], h_idx[None, None, :]]
            right = comp[f_idx[:, None, None], gh[None, :, :]]
            bad = left != right
            checked += int(bad.size)
            nbad = int(bad.sum())
            if nbad:
                failures += nbad
                for fi, gi, hi in np.argwhere(bad):
                    key = (int(f_idx[fi]), int(g_idx[gi]), int(h_idx[hi]))
                    text = (
                        f"assoc({_fmt_arrow_idx(table, key[0])}, "
                        f"{_fmt_arrow_idx(table, key[1])}, {_fmt_arrow_idx(table, key[2])}): "
                        f"grouping changes the composite"
                    )
                    witnesses.append((key, text))
                witnesses.sort(key=lambda w: w[0])
                del witnesses[cap:]
    return {"checked": checked, "failures": failures, "witnesses": witnesses}


def validate_structure(
    table: CandidateTable, max_witnesses: int = 5, jobs: int = 1
) -> ReportGroup:
    """Groupoid-structure checks, run before any axiom is interpreted.

    Layer order (later layers are only meaningful when earlier ones
    hold, and axiom checks presuppose all of them): objects, endpoints,
    identity, inverses, associativity, transitivity, homsets.
    """
    cap = max_witnesses
    comp = table._comp
    n_arr = table.n_arrows
    checks: list[CheckReport] = []

    checks.append(make_check("objects", 1, 0 if table.n_objects >= 3 else 1, []))

    pairs_i, pairs_j = np.nonzero(comp >= 0)
    res = comp[pairs_i, pairs_j]
    ok = (table._src_i[res] == table._src_i[pairs_i]) & (
        table._dst_i[res] == table._dst_i[pairs_j]
    )
    bad_at = np.nonzero(~ok)[0]
    wit = []
    for k in bad_at[: cap * 4]:
        i, j = int(pairs_i[k]), int(pairs_j[k])
        wit.append(
            (
                (i, j),
                f"endpoints({_fmt_arrow_idx(table, i)}, {_fmt_arrow_idx(table, j)}): "
                f"composite {_fmt_arrow_idx(table, int(comp[i, j]))} has wrong endpoints",
            )
        )
    wit.sort(key=lambda w: w[0])
    checks.append(
        make_check("endpoints", int(pairs_i.size), int(bad_at.size), [t for _, t in wit[:cap]])
    )

    arange = np.arange(n_arr)
    id_src = np.array([table._id_idx[int(s)] for s in table._src_i], dtype=np.int32)
    id_dst = np.array([table._id_idx[int(d)] for d in table._dst_i], dtype=np.int32)
    left_ok = comp[id_src, arange] == arange
    right_ok = comp[arange, id_dst] == arange
    bad = np.nonzero(~(left_ok & right_ok))[0]
    wit_t = [
        f"identity({_fmt_arrow_idx(table, int(i))}): declared unit does not fix it"
        for i in bad[:cap]
    ]
    checks.append(make_check("identity", 2 * n_arr, int(bad.size), wit_t))

    inv = table._ensure_inverses()
    bad = np.nonzero(inv < 0)[0]
    wit_t = [
        f"inverses({_fmt_arrow_idx(table, int(i))}): no two-sided inverse" for i in bad[:cap]
    ]
    checks.append(make_check("inverses", n_arr, int(bad.size), wit_t))

    parts = _run_sharded(table, "_assoc", jobs, cap)
    checks.append(_merge_simple("associativity", parts, cap))

    # Nonempty homsets are built into the arrow space: with >= 3 objects
    # every distinct pair has a label and every object has an identity.
    checks.append(make_check("transitivity", table.n_objects**2, 0, []))

    sizes = {o: len(table.scalars[o]) for o in table.objects}
    distinct = sorted(set(sizes.values()))
    wit_t = [] if len(distinct) == 1 else [f"endo counts differ: {sizes}"]
    checks.append(make_check("homsets", table.n_objects, 0 if len(distinct) == 1 else 1, wit_t))

    return ReportGroup("structure", checks)


# -- axiom checks ---------------------------------------------------------------

AXIOM_NAMES = ("one", "two", "pappus", "hex1", "hex2", "as")


def _axiom_one_shard(table: CandidateTable, shard: int, nshards: int, cap: int) -> dict:
    """Round trip through one label: a -> b via c then b -> a via c is the unit."""
    comp = table._comp
    n = table.n_objects
    checked = failures = 0
    witnesses = []
    for ai in range(n):
        if ai % nshards != shard:
            continue
        want = table._id_idx[ai]
        for bi in range(n):
            if bi == ai:
                continue
            for ci in range(n):
                if ci in (ai, bi):
                    continue
                checked += 1
                got = int(comp[table._ne3[(ai, bi, ci)], table._ne3[(bi, ai, ci)]])
                if got != want:
                    failures += 1
                    if len(witnesses) < cap:
                        a, b, c = table.objects[ai], table.objects[bi], table.objects[ci]
                        witnesses.append(
                            (
                                (ai, bi, ci),
                                f"one({a},{b};{c}): round trip gives "
                                f"{_fmt_arrow_idx(table, got)}, not the unit",
                            )
                        )
    return {"checked": checked, "failures": failures, "witnesses": witnesses}


def _axiom_two_shard(table: CandidateTable, shard: int, nshards: int, cap: int) -> dict:
    """Chaining through one label skips the midpoint: (a->b via c)(b->d via c) = a->d via c."""
    comp = table._comp
    n = table.n_objects
    checked = failures = 0
    witnesses = []
    for ai in range(n):
        if ai % nshards != shard:
            continue
        for bi in range(n):
            if bi == ai:
                continue
            for di in range(n):
                if di in (ai, bi):
                    continue
                for ci in range(n):
                    if ci in (ai, bi, di):
                        continue
                    checked += 1
                    got = int(comp[table._ne3[(ai, bi, ci)], table._ne3[(bi, di, ci)]])
                    want = table._ne3[(ai, di, ci)]
                    if got != want:
                        failures += 1
                        if len(witnesses) < cap:
                            a, b, d, c = (
                                table.objects[ai],
                                table.objects[bi],
                                table.objects[di],
                                table.objects[ci],
                            )
                            witnesses.append(
                                (
                                    (ai, bi, di, ci),
                                    f"two({a},{b},{d};{c}): chain gives "
                                    f"{_fmt_arrow_idx(table, got)}, want "
                                    f"{_fmt_arrow_idx(table, want)}",
                                )
                            )
    return {"checked": checked, "failures": failures, "witnesses": witnesses}


def _axiom_pappus_shard(table: CandidateTable, shard: int, nshards: int, cap: int) -> dict:
    """Commutativity of every vertex group."""
    comp = table._comp
    checked = failures = 0
    witnesses = []
    for oi in range(table.n_objects):
        if oi % nshards != shard:
            continue
        endos = [table._endo_i[(oi, s)] for s in table.scalars[table.objects[oi]]]
        for i in endos:
            for j in endos:
                checked += 1
                if comp[i, j] != comp[j, i]:
                    failures += 1
                    if len(witnesses) < cap:
                        witnesses.append(
                            (
                                (oi, i, j),
                                f"pappus({_fmt_arrow_idx(table, i)}, {_fmt_arrow_idx(table, j)}): "
                                f"products differ by order",
                            )
                        )
    return {"checked": checked, "failures": failures, "witnesses": witnesses}


def _axiom_hex1_shard(table: CandidateTable, shard: int, nshards: int, cap: int) -> dict:
    """Row swap of the cross ratio, as a commuting square.

    The scalar of (a,b;c,d) at a, pushed through the arrow a -> c named
    b, must match the scalar of (c,d;a,b) at c pulled the same way.
    """
    comp = table._comp
    n = table.n_objects
    checked = failures = 0
    witnesses = []
    for ai in range(n):
        if ai % nshards != shard:
            continue
        for bi in range(n):
            if bi == ai:
                continue
            for ci in range(n):
                if ci in (ai, bi):
                    continue
                bridge = table._ne3[(ai, ci, bi)]
                for di in range(n):
                    if di in (ai, bi, ci):
                        continue
                    checked += 1
                    cr1 = comp[table._ne3[(ai, bi, ci)], table._ne3[(bi, ai, di)]]
                    cr2 = comp[table._ne3[(ci, di, ai)], table._ne3[(di, ci, bi)]]
                    if comp[cr1, bridge] != comp[bridge, cr2]:
                        failures += 1
                        if len(witnesses) < cap:
                            quad = ",".join(
                                table.objects[i] for i in (ai, bi, ci, di)
                            )
                            witnesses.append(
                                (
                                    (ai, bi, ci, di),
                                    f"hex1({quad}): the two routes around the square differ",
                                )
                            )
    return {"checked": checked, "failures": failures, "witnesses": witnesses}


def _axiom_hex2_shard(table: CandidateTable, shard: int, nshards: int, cap: int) -> dict:
    """The three-leg cycle a->b->c->a with labels c,a,b names one scalar.

    For each base object the value must not depend on the two helper
    objects; all helper pairs are compared against the least one.
    """
    comp = table._comp
    n = table.n_objects
    checked = failures = 0
    witnesses = []
    for ai in range(n):
        if ai % nshards != shard:
            continue
        first = -1
        first_pair = None
        for bi in range(n):
            if bi == ai:
                continue
            for ci in range(n):
                if ci in (ai, bi):
                    continue
                checked += 1
                inner = comp[table._ne3[(ai, bi, ci)], table._ne3[(bi, ci, ai)]]
                val = int(comp[inner, table._ne3[(ci, ai, bi)]])
                if first < 0:
                    first = val
                    first_pair = (bi, ci)
                elif val != first:
                    failures += 1
                    if len(witnesses) < cap:
                        a = table.objects[ai]
                        b1, c1 = (table.objects[i] for i in first_pair)
                        b2, c2 = table.objects[bi], table.objects[ci]
                        witnesses.append(
                            (
                                (ai, bi, ci),
                                f"hex2({a}): helpers ({b1},{c1}) give "
                                f"{_fmt_arrow_idx(table, first)} but ({b2},{c2}) give "
                                f"{_fmt_arrow_idx(table, val)}",
                            )
                        )
    return {"checked": checked, "failures": failures, "witnesses": witnesses}


def _axiom_as_shard(table: CandidateTable, shard: int, nshards: int, cap: int) -> dict:
    """Equal cross ratios must stay equal after swapping the inner entries.

    Quadruples are grouped by the canonical form of (a,b;c,d); within a
    group every canonical (a,c;b,d) must agree.  Grouping makes the
    sweep near-linear in the quadruple count.
    """
    comp = table._comp
    n = table.n_objects
    checked = 0
    groups: dict[int, dict[int, tuple[int, ...]]] = {}
    base_i = 0
    # Conjugating arrow to the base object, per source object.
    conj_f: list[Optional[tuple[int, int]]] = []
    inv = table._ensure_inverses()
    for ai in range(n):
        if ai == base_i:
            conj_f.append(None)
        else:
            li = min(i for i in range(n) if i not in (ai, base_i))
            fi = table._ne3[(ai, base_i, li)]
            conj_f.append((int(inv[fi]), fi))

    def canon(endo_idx: int, ai: int) -> int:
        if ai == base_i:
            return int(endo_idx)
        finv, f = conj_f[ai]
        return int(comp[comp[finv, endo_idx], f])

    for ai in range(n):
        if ai % nshards != shard:
            continue
        for bi in range(n):
            if bi == ai:
                continue
            for ci in range(n):
                if ci in (ai, bi):
                    continue
                for di in range(n):
                    if di in (ai, bi, ci):
                        continue
                    checked += 1
                    key = canon(comp[table._ne3[(ai, bi, ci)], table._ne3[(bi, ai, di)]], ai)
                    val = canon(comp[table._ne3[(ai, ci, bi)], table._ne3[(ci, ai, di)]], ai)
                    quad = (ai, bi, ci, di)
                    slot = groups.setdefault(key, {})
                    if val not in slot or quad < slot[val]:
                        slot[val] = quad
    return {"checked": checked, "groups": groups}


_SHARD_FNS = {
    "_assoc": _assoc_shard,
    "one": _axiom_one_shard,
    "two": _axiom_two_shard,
    "pappus": _axiom_pappus_shard,
    "hex1": _axiom_hex1_shard,
    "hex2": _axiom_hex2_shard,
    "as": _axiom_as_shard,
}

_WORKER_TABLE: Optional[CandidateTable] = None


def _worker_entry(name: str, shard: int, nshards: int, cap: int) -> dict:
    return _SHARD_FNS[name](_WORKER_TABLE, shard, nshards, cap)


def _run_sharded(table: CandidateTable, name: str, jobs: int, cap: int) -> list[dict]:
    """Run one named sweep in shards; results merge identically for any job count."""
    jobs = max(1, int(jobs))
    if jobs == 1:
        return [_SHARD_FNS[name](table, 0, 1, cap)]
    global _WORKER_TABLE
    import concurrent.futures
    import multiprocessing

    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:
        return [_SHARD_FNS[name](table, 0, 1, cap)]
    _WORKER_TABLE = table
    try:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as ex:
            futs = [ex.submit(_worker_entry, name, s, jobs, cap) for s in range(jobs)]
            return [f.result() for f in futs]
    finally:
        _WORKER_TABLE = None


def _merge_simple(name: str, parts: list[dict], cap: int) -> CheckReport:
    checked = sum(p["checked"] for p in parts)
    failures = sum(p["failures"] for p in parts)
    witnesses = sorted((w for p in parts for w in p["witnesses"]), key=lambda w: w[0])
    return make_check(name, checked, failures, [t for _, t in witnesses[:cap]])


def _merge_as(table: CandidateTable, parts: list[dict], cap: int) -> CheckReport:
    checked = sum(p["checked"] for p in parts)
    groups: dict[int, dict[int, tuple[int, ...]]] = {}
    for p in parts:
        for key, slot in p["groups"].items():
            dst = groups.setdefault(key, {})
            for val, quad in slot.items():
                if val not in dst or quad < dst[val]:
                    dst[val] = quad
    failures = 0
    witnesses = []
    for key in sorted(groups):
        slot = groups[key]
        if len(slot) <= 1:
            continue
        failures += 1
        by_quad = sorted((quad, val) for val, quad in slot.items())
        (q1, v1), (q2, v2) = by_quad[0], by_quad[1]
        name1 = ",".join(table.objects[i] for i in q1)
        name2 = ",".join(table.objects[i] for i in q2)
        witnesses.append(
            (
                (key,),
                f"as: ({name1}) and ({name2}) share cross ratio "
                f"{_fmt_arrow_idx(table, key)} but their swaps differ: "
                f"{_fmt_arrow_idx(table, int(v1))} vs {_fmt_arrow_idx(table, int(v2))}",
            )
        )
    witnesses.sort(key=lambda w: w[0])
    return make_check("as", checked, failures, [t for _, t in witnesses[:cap]])


def check_axioms(
    table: CandidateTable,
    which: Optional[Sequence[str]] = None,
    max_witnesses: int = 5,
    jobs: int = 1,
) -> ReportGroup:
    """Run the named axiom sweeps (all six by default) over a table.

    Callers are expected to have passed validate_structure first; the
    sweeps only interpret the table, they do not re-validate it.
    Checks quantifying over more objects than the table has are
    reported as vacuous.
    """
    if which is None:
        names = list(AXIOM_NAMES)
    else:
        unknown = [w for w in which if w not in AXIOM_NAMES]
        if unknown:
            raise ValueError(f"unknown axiom names {unknown}; valid: {', '.join(AXIOM_NAMES)}")
        names = [n for n in AXIOM_NAMES if n in set(which)]
    checks = []
    for name in names:
        parts = _run_sharded(table, name, jobs, max_witnesses)
        if name == "as":
            checks.append(_merge_as(table, parts, max_witnesses))
        else:
            checks.append(_merge_simple(name, parts, max_witnesses))
    return ReportGroup("axioms", checks)
