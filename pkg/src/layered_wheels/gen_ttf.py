"""Generator for (l,k) theta/triangle-free layered wheels.

Each layer is built from the previous one box by box: a vertex without an
ancestor receives three marked neighbors, a vertex with ancestor v receives
six plus three marks of v interleaved u1 u2 u3 v1 v2 v3 u4 u5 u6.  All gaps
between consecutive marks are at least k-2; the policy decides the slack.
"""

from __future__ import annotations

from ._assembly import WheelAssembler
from .errors import FeasibilityError, InputError
from .wheel_model import TTF, LayeredWheel, LengthPolicy


def _odd_interbox_gap(k: int) -> int:
    """Smallest gap >= k-2 whose bridge (gap minus 2) has odd length."""
    g = k - 2
    return g if g % 2 == 1 else g + 1


def minimal_uniform_m(l: int, k: int) -> int:
    """Smallest m for which a uniform(m) ttf wheel with these parameters exists."""
    if l <= 0:
        return 1
    if l == 1:
        return 2 * (k - 2) + 1
    return 8 * (k - 2) + _odd_interbox_gap(k)


def _box_gaps(n_gaps: int, total: int) -> list[int]:
    base, extra = divmod(total, n_gaps)
    return [base + 1] * extra + [base] * (n_gaps - extra)


def generate_ttf(l: int, k: int, policy: LengthPolicy | None = None) -> LayeredWheel:
    if l < 0:
        raise InputError("l must be non-negative")
    if k < 4:
        raise InputError("k must be at least 4")
    policy = policy or LengthPolicy.minimal()
    g0 = _odd_interbox_gap(k)
    m = None
    if policy.mode == "uniform":
        m = policy.m
        m_min = minimal_uniform_m(l, k)
        if m < m_min:
            raise FeasibilityError(
                f"uniform({m}) infeasible for ttf l={l}, k={k}; minimal feasible m is {m_min}",
                m_min,
            )

    asm = WheelAssembler(TTF, l, k, policy)
    asm.add_root()

    for i in range(1, l + 1):
        prev = asm.layers[i - 1]
        marks: list[tuple[tuple[int, ...], None]] = []
        boxes: list[tuple[int, int, int]] = []  # (n_gaps, first_mark, last_mark)
        for u in prev:
            anc = asm.ancestors[u]
            start = len(marks)
            if not anc:
                marks.extend([((u,), None)] * 3)
            else:
                v = anc[0]
                marks.extend([((u,), None)] * 3)
                marks.extend([((v,), None)] * 3)
                marks.extend([((u,), None)] * 3)
            boxes.append((len(marks) - start - 1, start, len(marks) - 1))

        gaps: list[int] = []
        for b, (n_gaps, _, _) in enumerate(boxes):
            if policy.mode == "uniform":
                if i == 1:
                    budget = m - 1
                elif b == 0 or b == len(boxes) - 1:
                    budget = m - 1 - (g0 - 1) // 2
                else:
                    budget = m - g0
                gaps.extend(_box_gaps(n_gaps, budget))
            else:
                gaps.extend([k - 2] * n_gaps)
            if b < len(boxes) - 1:
                gaps.append(k - 2 if policy.mode == "minimal" else g0)
        asm.add_layer(marks, gaps)

    return asm.finish()
