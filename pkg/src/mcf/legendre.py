"""Chain of convergent denominators whose approximation error beats 1/(2Q^2).

The filter keeps the convergents with Q*||Q*alpha|| < 1/2, strictly
increasing in Q.  Every consecutive pair of chain nodes either steps to the
next convergent ("adjacent") or jumps over a single failing one ("skip");
a skip forces the skipped convergent's successor quotient to be 1, and two
convergents in a row can never both fail.  All three facts are asserted, not
assumed, during construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .cf import CFExpansion, ConvergentRecord, tail
from .errors import (
    FiniteChainError,
    InsufficientHorizonError,
    InternalConsistencyError,
)
from .surd import Value

ADJACENT: Literal["adjacent"] = "adjacent"
SKIP: Literal["skip"] = "skip"

GapKind = Literal["adjacent", "skip"]


@dataclass(frozen=True)
class LegendreNode:
    n: int
    Q: int
    err: Value
    source_nu: int


@dataclass(frozen=True)
class GapClass:
    kind: GapKind
    nu: int  # adjacent: left source index; skip: the skipped index


@dataclass(frozen=True)
class LegendreChain:
    nodes: tuple[LegendreNode, ...]
    gaps: tuple[GapClass, ...]

    @property
    def denominators(self) -> tuple[int, ...]:
        return tuple(node.Q for node in self.nodes)


def is_legendre(record: ConvergentRecord, alpha_next: Value | None = None) -> bool:
    """Exact test Q*||Q*alpha|| < 1/2 for one convergent.

    When the next tail is supplied the equivalent criterion
    alpha*_nu + alpha_{nu+1} > 2 is evaluated as well and the two are
    asserted consistent.  The boundary value 1/2 is unreachable for
    irrational alpha, so strict comparison loses nothing.
    """
    passes = record.q * record.xi < Fraction(1, 2)
    if alpha_next is not None:
        dual = record.alpha_star + alpha_next > 2
        if dual != passes:
            raise InternalConsistencyError(
                f"legendre criteria disagree at nu={record.nu}"
            )
    return passes


def build_chain(cf: CFExpansion, records: list[ConvergentRecord]) -> LegendreChain:
    """Filter `records` into the strictly increasing chain with gap classes.

    Requires an irrational source; a table too short to produce two nodes
    raises InsufficientHorizonError.  Every pass/fail decision is
    dual-checked against the tail criterion.
    """
    if cf.finite:
        raise FiniteChainError("chain is finite for rational numbers")

    passing: list[ConvergentRecord] = []
    pass_flags: list[bool] = []
    for rec in records:
        ok = is_legendre(rec, tail(cf, rec.nu + 1))
        pass_flags.append(ok)
        if ok:
            if passing and rec.q <= passing[-1].q:
                # duplicate denominator q0 = q1: keep the later, better one
                if rec.q == passing[-1].q:
                    passing[-1] = rec
                    continue
                raise InternalConsistencyError("denominators not increasing")
            passing.append(rec)

    for i in range(len(pass_flags) - 1):
        if not pass_flags[i] and not pass_flags[i + 1]:
            raise InternalConsistencyError(
                f"both convergents {i}, {i + 1} fail the filter"
            )

    if len(passing) < 2:
        raise InsufficientHorizonError("need at least two chain nodes")

    nodes = tuple(
        LegendreNode(n=i, Q=rec.q, err=rec.xi, source_nu=rec.nu)
        for i, rec in enumerate(passing)
    )
    gaps: list[GapClass] = []
    for left, right in zip(passing, passing[1:]):
        step = right.nu - left.nu
        if step == 1:
            gaps.append(GapClass(kind=ADJACENT, nu=left.nu))
        elif step == 2:
            skipped = left.nu + 1
            if cf.quotient(skipped + 1) != 1:
                raise InternalConsistencyError(
                    f"skip at nu={skipped} without unit quotient"
                )
            gaps.append(GapClass(kind=SKIP, nu=skipped))
        else:
            raise InternalConsistencyError(
                f"chain jumps {step} convergents after nu={left.nu}"
            )

    for node, gap in zip(nodes, gaps):
        expected = gap.nu if gap.kind == ADJACENT else gap.nu - 1
        if node.source_nu != expected:
            raise InternalConsistencyError("gap classification out of step")

    return LegendreChain(nodes=nodes, gaps=tuple(gaps))
