"""Coordinatizing a candidate table: an explicit isomorphism to the model.

A frame is an ordered triple of objects playing the roles of the
points 0, infinity, and 1.  Every other object gets the coordinate cut
out by its round trip against the frame, the reconstructed field names
the scalars, and the resulting object and scalar maps determine a full
arrow map whose functoriality is checked exhaustively.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .candidate import (
    CandidateTable,
    Endo,
    NonEndo,
    canonical_scalar,
    cross_ratio_abs,
    from_model,
)
from .reconstruct import ReconstructionError, build_field, classify_prime
from .reports import CheckReport, ReportGroup, make_check
from .scalars import is_prime


class CoordinatizationError(ValueError):
    """No verified isomorphism onto the model could be produced."""


@dataclass(frozen=True)
class Frame:
    """Objects chosen to play 0, infinity, and 1, in that order."""

    zero: str
    infinity: str
    one: str

    def __post_init__(self):
        if len({self.zero, self.infinity, self.one}) != 3:
            raise CoordinatizationError("frame objects must be pairwise distinct")

    def members(self) -> tuple[str, str, str]:
        return (self.zero, self.infinity, self.one)


@dataclass(frozen=True)
class CandidateIso:
    """An object and scalar renaming onto the model over F_p."""

    base_object: str
    object_map: dict[str, str]
    scalar_map: dict[str, str]
    verified: bool = False

    def to_doc(self) -> dict:
        return {
            "base": self.base_object,
            "objects": dict(self.object_map),
            "scalars": dict(self.scalar_map),
            "verified": self.verified,
        }


def _default_frame(table: CandidateTable) -> Frame:
    a, b, c = table.objects[:3]
    return Frame(a, b, c)


def _target_model(table: CandidateTable) -> CandidateTable:
    p = table.n_objects - 1
    if not is_prime(p):
        raise CoordinatizationError(
            f"{table.n_objects} objects would need a field of order {p}, which is not prime"
        )
    return from_model(p)


def _forced_arrow_map(
    table: CandidateTable, model: CandidateTable, obj_to: list[int]
) -> np.ndarray:
    """Arrow map induced by an object bijection.

    Arrows between distinct objects go to the arrow with the image
    label.  Each scalar s at X is forced by functoriality through any
    arrow f out of X: the image of s must be (image of s.f) then the
    inverse image of f.  The least outgoing arrow is used.
    """
    F = np.full(table.n_arrows, -1, dtype=np.int32)
    for i, ar in enumerate(table.arrows):
        if isinstance(ar, NonEndo):
            key = (
                obj_to[table._obj_i[ar.src]],
                obj_to[table._obj_i[ar.dst]],
                obj_to[table._obj_i[ar.label]],
            )
            F[i] = model._ne3[key]
    m_inv = model._ensure_inverses()
    comp = table._comp
    for xi in range(table.n_objects):
        f = next(j for j in table._out[xi] if int(table._dst_i[j]) != xi)
        Ff = int(F[f])
        Ff_inv = int(m_inv[Ff])
        for sid in table.scalars[table.objects[xi]]:
            si = table._endo_i[(xi, sid)]
            F[si] = model._comp[int(F[int(comp[si, f])]), Ff_inv]
    return F


def verify_iso(
    table: CandidateTable, iso: CandidateIso, max_witnesses: int = 5
) -> ReportGroup:
    """Exhaustively verify a claimed isomorphism onto the model.

    Malformed maps (not bijections onto the model's objects and scalar
    ids, or an unknown base) raise CoordinatizationError; structural
    failures of a well-formed map are reported as check failures.
    """
    cap = max_witnesses
    model = _target_model(table)
    if set(iso.object_map) != set(table.objects):
        raise CoordinatizationError("object map must be defined on exactly the objects")
    if sorted(iso.object_map.values()) != sorted(model.objects):
        raise CoordinatizationError("object map must be a bijection onto the model points")
    if iso.base_object not in table.identities:
        raise CoordinatizationError(f"unknown base object {iso.base_object!r}")
    base_scalars = table.scalars[iso.base_object]
    if set(iso.scalar_map) != set(base_scalars):
        raise CoordinatizationError("scalar map must be defined on exactly the base scalars")
    model_ids = model.scalars[model.objects[0]]
    if sorted(iso.scalar_map.values()) != sorted(model_ids):
        raise CoordinatizationError("scalar map must be a bijection onto the model scalars")

    obj_to = [model._obj_i[iso.object_map[o]] for o in table.objects]
    F = _forced_arrow_map(table, model, obj_to)

    checks: list[CheckReport] = []
    base_i = table._obj_i[iso.base_object]
    img_base_i = obj_to[base_i]
    bad = []
    for sid in base_scalars:
        fi = int(F[table._endo_i[(base_i, sid)]])
        want = model._endo_i[(img_base_i, iso.scalar_map[sid])]
        if fi != want:
            bad.append(
                f"scalar-map({iso.base_object}#{sid}): structure forces "
                f"{model.arrows[fi]}, map says {model.arrows[want]}"
            )
    checks.append(make_check("scalar-map", len(base_scalars), len(bad), bad[:cap]))

    distinct = int(np.unique(F).size)
    checks.append(
        make_check(
            "arrows-bijective",
            table.n_arrows,
            table.n_arrows - distinct,
            []
            if distinct == table.n_arrows
            else [f"only {distinct} of {table.n_arrows} arrow images are distinct"],
        )
    )

    comp = table._comp
    I, J = np.nonzero(comp >= 0)
    lhs = model._comp[F[I], F[J]]
    rhs = F[comp[I, J]]
    bad_at = np.nonzero(lhs != rhs)[0]
    wit = []
    for k in bad_at[:cap]:
        i, j = int(I[k]), int(J[k])
        res = table.arrows[int(comp[i, j])]
        kind = "label-compatibility" if isinstance(res, NonEndo) else "functoriality"
        wit.append(
            f"{kind}({table.arrows[i]}; {table.arrows[j]}): composite maps to "
            f"{model.arrows[int(rhs[k])]} but images compose to {model.arrows[int(lhs[k])]}"
        )
    checks.append(make_check("functorial", int(I.size), int(bad_at.size), wit))
    return ReportGroup("iso", checks)


def coordinatize(table: CandidateTable, frame: Optional[Frame] = None) -> CandidateIso:
    """Produce a verified isomorphism onto the model over F_p.

    The frame objects go to 0:1, 1:0, and 1:1.  Every other object X
    gets coordinate d:1 where d is the residue of the round trip scalar
    of (infinity, zero; one, X), transported to the base and read
    through the reconstructed field.  The result is verified before it
    is returned; failure raises CoordinatizationError.
    """
    if frame is None:
        frame = _default_frame(table)
    for o in frame.members():
        if o not in table.identities:
            raise CoordinatizationError(f"frame object {o!r} is not in the table")
    f0, f1, f2 = frame.members()
    model = _target_model(table)
    p = table.n_objects - 1
    try:
        ft = build_field(table, base=f0)
        cl = classify_prime(ft)
    except ReconstructionError as exc:
        raise CoordinatizationError(f"field reconstruction failed: {exc}") from exc
    if not cl.is_prime_field or cl.order != p:
        raise CoordinatizationError(
            f"reconstructed field has order {cl.order}; the model needs prime order {p}"
        )
    res = cl.residue_map
    omap: dict[str, str] = {}
    for x in table.objects:
        if x == f0:
            omap[x] = "0:1"
        elif x == f1:
            omap[x] = "1:0"
        else:
            sigma = cross_ratio_abs(table, f1, f0, f2, x)
            moved = canonical_scalar(table, sigma, f0)
            omap[x] = f"{res[moved.scalar]}:1"
    if sorted(omap.values()) != sorted(model.objects):
        raise CoordinatizationError("coordinates do not exhaust the model points")
    smap = {sid: str(res[sid]) for sid in table.scalars[f0]}
    iso = CandidateIso(base_object=f0, object_map=omap, scalar_map=smap, verified=False)
    report = verify_iso(table, iso)
    if not report.passed:
        bad = [c for c in report.checks if c.status == "fail"]
        first = bad[0].witnesses[0] if bad and bad[0].witnesses else ""
        raise CoordinatizationError(
            f"candidate map fails verification ({', '.join(c.name for c in bad)}): {first}"
        )
    return CandidateIso(
        base_object=f0, object_map=omap, scalar_map=smap, verified=True
    )


def verify_uniqueness(
    table: CandidateTable, frame: Optional[Frame] = None, max_witnesses: int = 5
) -> tuple[CheckReport, Optional[dict[str, str]]]:
    """Check that exactly one structure map extends the frame assignment.

    Every object bijection sending the frame to (0:1, 1:0, 1:1) is
    tried; the induced arrow map is accepted when fully functorial.
    Returns the check plus the unique passing object map, if unique.
    """
    if frame is None:
        frame = _default_frame(table)
    for o in frame.members():
        if o not in table.identities:
            raise CoordinatizationError(f"frame object {o!r} is not in the table")
    model = _target_model(table)
    f0, f1, f2 = frame.members()
    fixed = {f0: "0:1", f1: "1:0", f2: "1:1"}
    others = [o for o in table.objects if o not in fixed]
    targets = [m for m in model.objects if m not in ("0:1", "1:0", "1:1")]
    comp = table._comp
    I, J = np.nonzero(comp >= 0)
    RK = comp[I, J]
    passing: list[dict[str, str]] = []
    checked = 0
    for perm in itertools.permutations(targets):
        checked += 1
        omap = dict(fixed)
        omap.update(zip(others, perm))
        obj_to = [model._obj_i[omap[o]] for o in table.objects]
        F = _forced_arrow_map(table, model, obj_to)
        if bool(np.all(model._comp[F[I], F[J]] == F[RK])):
            passing.append(omap)
    assert checked == math.factorial(len(others))
    if len(passing) == 1:
        return make_check("uniqueness", checked, 0, []), passing[0]
    if not passing:
        wit = ["no object bijection extending the frame is structure preserving"]
        return make_check("uniqueness", checked, 1, wit), None
    wit = []
    for extra in passing[1 : 1 + max_witnesses]:
        diff = {k: v for k, v in extra.items() if passing[0][k] != v}
        wit.append(f"a second structure map exists, differing at {diff}")
    return make_check("uniqueness", checked, len(passing) - 1, wit), None
