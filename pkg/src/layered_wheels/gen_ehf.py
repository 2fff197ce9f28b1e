"""Generator for (l,k) even-hole-free layered wheels (K4-free, with triangles),
including the pyramid-containing variant, plus the box-parity auditor.

Every new layer is a walk over boxes made of zones; a gap between consecutive
marks is odd when the marks share an ancestor and even otherwise, always at
least k-2.  Consecutive boxes share their connecting E zone.
"""

from __future__ import annotations

from ._assembly import WheelAssembler
from .errors import FeasibilityError, InputError
from .wheel_model import (
    EHF,
    EHF_PYRAMID,
    AuditReport,
    LayeredWheel,
    LengthPolicy,
)

VARIANTS = ("standard", "pyramid")


def _godd(k: int) -> int:
    g = k - 2
    return g if g % 2 == 1 else g + 1


def _geven(k: int) -> int:
    g = k - 2
    return g if g % 2 == 0 else g + 1


def _shared_zone_target(k: int) -> int:
    """Shared-zone length used by the uniform policy: 3 odd gaps, and such
    that end-of-layer private budgets keep the right parity (z = 3 mod 4)."""
    z = 3 * _godd(k)
    while z % 4 != 3:
        z += 2
    return z


def minimal_uniform_m(l: int, k: int, variant: str = "standard") -> int:
    """Smallest m for which a uniform(m) ehf wheel with these parameters exists."""
    if l < 1:
        raise InputError("ehf wheels need l >= 1")
    godd, geven = _godd(k), _geven(k)
    z = _shared_zone_target(k)
    cands = [2 * godd + 1]
    if l >= 2:
        internal = [4 * godd, 10 * godd]
        if l >= 3:
            internal.append(
                (20 if variant == "pyramid" else 28) * godd + 4 * geven
            )
        ends = [9 * godd]
        cands += [z + p for p in internal]
        cands += [1 + (z - 1) // 2 + p for p in ends]
    m = max(cands)
    return m if m % 2 == 1 else m + 1


def _split_odd(total: int, parts: int, floor: int) -> list[int]:
    """parts odd gap lengths >= floor summing to total, spread evenly."""
    gaps = [floor] * parts
    left = total - floor * parts
    assert left >= 0 and left % 2 == 0
    i = 0
    while left > 0:
        gaps[i % parts] += 2
        left -= 2
        i += 1
    return gaps


def generate_ehf(
    l: int,
    k: int,
    policy: LengthPolicy | None = None,
    variant: str = "standard",
) -> LayeredWheel:
    if l < 1:
        raise InputError("l must be at least 1")
    if k < 4:
        raise InputError("k must be at least 4")
    if variant not in VARIANTS:
        raise InputError(f"unknown variant {variant!r}")
    policy = policy or LengthPolicy.minimal()
    flavor = EHF_PYRAMID if variant == "pyramid" else EHF
    godd = _godd(k)
    z_target = _shared_zone_target(k)
    m = None
    if policy.mode == "uniform":
        m = policy.m
        m_min = minimal_uniform_m(l, k, variant)
        if m < m_min or m % 2 == 0:
            raise FeasibilityError(
                f"uniform({m}) infeasible for ehf l={l}, k={k}; minimal feasible m "
                f"is {m_min} (odd values only)",
                m_min,
            )

    asm = WheelAssembler(flavor, l, k, policy)
    root = asm.add_root()

    # layer 1: a single 3-mark O zone owned by the root, both gaps odd
    slot = asm.new_zone("O", (root,))
    if policy.mode == "uniform":
        g1 = (m - 1) // 2
        if g1 % 2 == 0:
            g1 -= 1
        gaps1 = [g1, m - 1 - g1]
    else:
        gaps1 = [godd, godd]
    asm.add_layer([((root,), slot)] * 3, gaps1)

    for i in range(2, l + 1):
        _build_ehf_layer(asm, i, variant, k, policy, m, z_target)
    return asm.finish()


def _build_ehf_layer(asm, i, variant, k, policy, m, z_target):
    prev = asm.layers[i - 1]
    godd = _godd(k)
    marks: list[tuple[tuple[int, ...], int]] = []
    shared_slots: list[tuple[int, int]] = []  # (slot, first mark index)
    bounds: list[tuple[int, int, bool]] = []  # per u: mark-index boundaries, is_end

    def emit(kind: str, owners: tuple[int, ...]):
        slot = asm.new_zone(kind, owners)
        first = len(marks)
        for _ in range(4 if kind == "E" else 3):
            marks.append((owners, slot))
        return slot, first

    for p, u in enumerate(prev):
        anc = asm.ancestors[u]
        first_end = p == 0
        last_end = p == len(prev) - 1
        left_bound = 0 if first_end else len(marks) - 1
        if len(anc) == 0:
            emit("O", (u,))
        elif len(anc) == 1:
            emit("O", (u,))
            emit("O", (u, anc[0]))
            emit("O", (u,))
        else:
            v, w = anc
            if variant == "standard":
                emit("E", (u,))
            emit("E", (v, w))
            emit("O", (u,))
            emit("O", (u, v))
            emit("O", (u,))
            emit("O", (u, w))
            emit("O", (u,))
            emit("E", (v, w))
            if variant == "standard":
                emit("E", (u,))
        if last_end:
            right_bound = len(marks) - 1
        else:
            slot, first = emit("E", (u, prev[p + 1]))
            shared_slots.append((slot, first))
            right_bound = first
        bounds.append((left_bound, right_bound, first_end or last_end))

    # base gaps per the parity rule
    gaps = []
    for g in range(len(marks) - 1):
        common = set(marks[g][0]) & set(marks[g + 1][0])
        want_odd = bool(common)
        base = k - 2
        if base % 2 != (1 if want_odd else 0):
            base += 1
        gaps.append(base)

    if policy.mode == "uniform":
        for _, first in shared_slots:
            stretched = _split_odd(z_target, 3, godd)
            gaps[first : first + 3] = stretched
        for (left, right, is_end), u in zip(bounds, prev):
            target = (m - 1 - (z_target - 1) // 2) if is_end else (m - z_target)
            cur = sum(gaps[left:right])
            pad = target - cur
            if pad < 0 or pad % 2 != 0:
                raise FeasibilityError(
                    f"uniform({m}) cannot balance the box of vertex {u}", m
                )
            idx = left
            while pad > 0:
                gaps[idx] += 2
                pad -= 2
                idx += 1
                if idx == right:
                    idx = left
    asm.add_layer(marks, gaps)


# -- box parity audit ---------------------------------------------------------


def _zones_of_box(w: LayeredWheel, u: int) -> list:
    box = w.box(u)
    return sorted(
        (z for z in w.zones if z.span.layer == box.layer and z.span.lo >= box.lo and z.span.hi <= box.hi),
        key=lambda z: z.span.lo,
    )


def parity_audit(w: LayeredWheel) -> AuditReport:
    """Check shared parts odd, private parts even (odd at layer ends), and
    escapes even, for every box below every layer.

    The root's box (all of layer 1) has no shared part and is skipped: it is
    the only box whose owner is a type-0 layer end.
    """
    if w.flavor not in (EHF, EHF_PYRAMID):
        raise InputError("parity audit applies to ehf wheels")
    report = AuditReport()
    for i in range(1, w.l):
        layer = w.layers[i]
        for u in layer:
            zones = _zones_of_box(w, u)
            if not zones:
                report.add("B5", f"no zones found for the box of {u}", (u,))
                continue
            is_left_end = w.vinfo[u].pos == 0
            is_right_end = w.vinfo[u].pos == len(layer) - 1
            shared_left = None if is_left_end else zones[0]
            shared_right = None if is_right_end else zones[-1]
            for z in (shared_left, shared_right):
                if z is None:
                    continue
                if z.span.length % 2 != 1:
                    report.add(
                        "parity.shared",
                        f"shared part {z.owners} of box {u} has even length {z.span.length}",
                        (u,),
                    )
            priv_lo = zones[0].span.lo if is_left_end else shared_left.span.hi
            priv_hi = zones[-1].span.hi if is_right_end else shared_right.span.lo
            priv_len = priv_hi - priv_lo
            want_odd = is_left_end or is_right_end
            if priv_len % 2 != (1 if want_odd else 0):
                kind = "odd" if want_odd else "even"
                report.add(
                    "parity.private",
                    f"private part of box {u} has length {priv_len}, expected {kind}",
                    (u,),
                )
            _audit_escapes(w, report, u, zones, is_left_end, is_right_end)
    return report


def _audit_escapes(w, report, u, zones, is_left_end, is_right_end):
    anc = w.vinfo[u].ancestors
    if len(anc) == 0:
        return
    if len(anc) == 1:
        mids = [z for z in zones if set(z.owners) == {u, anc[0]}]
        if len(mids) != 1:
            report.add("B5", f"box {u} should hold one zone shared with its ancestor", (u,))
            return
        left_stop = mids[0].span.lo
        right_stop = mids[0].span.hi
    else:
        pair = [z for z in zones if set(z.owners) == set(anc)]
        if len(pair) != 2:
            report.add("B5", f"box {u} should hold two ancestor-pair zones", (u,))
            return
        left_stop = pair[0].span.lo
        right_stop = pair[1].span.hi
    if not is_left_end:
        esc = left_stop - zones[0].span.hi
        if esc % 2 != 0:
            report.add(
                "parity.escape",
                f"left escape in box {u} has odd length {esc}",
                (u,),
            )
    if not is_right_end:
        esc = zones[-1].span.lo - right_stop
        if esc % 2 != 0:
            report.add(
                "parity.escape",
                f"right escape in box {u} has odd length {esc}",
                (u,),
            )
