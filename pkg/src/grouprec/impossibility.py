"""The star-group witness on which axioms 1-6 cannot all hold.

Given ``alpha > 1``, ``beta >= 1`` and ``r > 0`` the construction uses

* ``ell``: smallest natural number with ``ell*alpha - (ell + 2) >= 0``,
* ``k = ceil((beta - 1)/(alpha - 1)) + ell`` in-group + voters,
* ``k * ceil(r)`` nonvoters, each linked to all ``k`` voters and to
  ``s = floor(k*alpha)`` private - voters,

and a partition of the star into cells of one voter and ``ceil(r)`` nonvoters.
All arithmetic is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import InvalidParams, MalformedWitness
from .network import (
    Group,
    Recommendation,
    StarGroupSpec,
    Vote,
    VotingNetwork,
    generate_star_group,
    network_from_dict,
    network_to_dict,
    star_group_shape,
)
from .axioms import centrifugal_premise, centripetal_premise
from .systems import Recommender


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def smallest_ell(alpha: Fraction) -> int:
    ell = max(1, math.ceil(Fraction(2) / (alpha - 1)))
    while ell > 1 and (ell - 1) * alpha - ell - 1 >= 0:
        ell -= 1
    while ell * alpha - (ell + 2) < 0:
        ell += 1
    return ell


@dataclass(frozen=True)
class WitnessParams:
    alpha: Fraction
    beta: Fraction
    r: Fraction
    ell: int
    k: int
    s: int
    r_int: int

    @classmethod
    def from_values(cls, alpha, beta, r) -> "WitnessParams":
        alpha, beta, r = _frac(alpha), _frac(beta), _frac(r)
        if not alpha > 1:
            raise InvalidParams(f"alpha must exceed 1, got {alpha}")
        if not beta >= 1:
            raise InvalidParams(f"beta must be at least 1, got {beta}")
        if not r > 0:
            raise InvalidParams(f"r must be positive, got {r}")
        ell = smallest_ell(alpha)
        k = math.ceil((beta - 1) / (alpha - 1)) + ell
        s = math.floor(k * alpha)
        return cls(alpha, beta, r, ell, k, s, math.ceil(r))

    def inequalities(self) -> dict[str, bool]:
        a = self.alpha
        return {
            "ell_satisfies": self.ell * a - (self.ell + 2) >= 0,
            "ell_minimal": self.ell == 1 or (self.ell - 1) * a - self.ell - 1 < 0,
            "s_at_most_k_alpha": self.s <= self.k * a,
            "gap_at_least_beta": self.s - self.k + 1 >= self.beta,
        }

    def to_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "r": str(self.r),
            "ell": self.ell,
            "k": self.k,
            "s": self.s,
            "r_int": self.r_int,
        }


@dataclass(frozen=True)
class Witness:
    params: WitnessParams
    network: VotingNetwork
    star: Group
    partition: tuple[Group, ...]

    def to_dict(self) -> dict:
        return {
            **network_to_dict(self.network),
            "groups": {
                "star": sorted(self.star),
                "partition": [sorted(c, key=_natural_key) for c in self.partition],
            },
            "metadata": self.params.to_dict(),
        }


def _natural_key(node: str):
    head, _, idx = node.partition("_")
    parts = idx.split("_")
    return (head, *[int(p) if p.isdigit() else p for p in parts])


def partition_cells(voters, nonvoters, per_cell: int) -> tuple[Group, ...]:
    cells = []
    rest = list(nonvoters)
    for v in voters:
        take, rest = rest[:per_cell], rest[per_cell:]
        cells.append(frozenset([v, *take]))
    if rest:
        cells.append(frozenset(rest))
    return tuple(cells)


def build_witness(alpha, beta, r) -> Witness:
    params = WitnessParams.from_values(alpha, beta, r)
    m = params.k * params.r_int
    spec = StarGroupSpec(params.k, m, Vote.PLUS, (params.s,) * m)
    net, star = generate_star_group(spec)
    voters = [f"v_{j}" for j in range(1, params.k + 1)]
    nonvoters = [f"u_{i}" for i in range(1, m + 1)]
    return Witness(params, net, star, partition_cells(voters, nonvoters, params.r_int))


def witness_from_dict(data: Mapping) -> Witness:
    try:
        meta = data["metadata"]
        params = WitnessParams.from_values(meta["alpha"], meta["beta"], meta["r"])
        net = network_from_dict(data)
        star = frozenset(data["groups"]["star"])
        partition = tuple(frozenset(c) for c in data["groups"]["partition"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedWitness(f"cannot read witness: {exc}") from exc
    for key in ("ell", "k", "s"):
        if key in meta and int(meta[key]) != getattr(params, key):
            raise MalformedWitness(f"metadata {key}={meta[key]} disagrees with recomputed {getattr(params, key)}")
    return Witness(params, net, star, partition)


def validate_witness(w: Witness) -> StarGroupSpec:
    p = w.params
    shape = star_group_shape(w.network, w.star) if w.star <= set(w.network.nodes) else None
    if shape is None:
        raise MalformedWitness("star is not a star group of the network")
    if shape.inner_label is not Vote.PLUS or shape.n != p.k or shape.m != p.k * p.r_int:
        raise MalformedWitness(f"star shape {shape} does not match k={p.k}, r_int={p.r_int}")
    if set(shape.external_degrees) != {p.s}:
        raise MalformedWitness(f"nonvoters must each have s={p.s} external voters")
    union = frozenset().union(*w.partition) if w.partition else frozenset()
    if union != w.star or sum(len(c) for c in w.partition) != len(w.star):
        raise MalformedWitness("partition cells must be disjoint and cover the star")
    return shape


@dataclass(frozen=True)
class CellResult:
    cell: Group
    voters: int
    nonvoters: int
    in_situ: Recommendation
    reduced: Recommendation | None


PARTITION_NOTE = (
    "Axiom 6 is flagged only under the standing assumption that the star group admits no "
    "partition whose parts are all recommended +. The general argument obtains that by "
    "descending to a smallest + part; that descent depends on the recommender's values on "
    "every sub-part and is not carried out here."
)


@dataclass(frozen=True)
class WitnessVerdict:
    params: WitnessParams
    star_forced: Recommendation
    star_actual: Recommendation
    cells: tuple[CellResult, ...]
    reduced_spec: StarGroupSpec
    contradicted: tuple[int, ...]
    notes: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "inequalities": self.params.inequalities(),
            "star": {"forced": self.star_forced.symbol, "actual": self.star_actual.symbol},
            "reduced_cell": {
                "n": self.reduced_spec.n,
                "m": self.reduced_spec.m,
                "external_degree": self.reduced_spec.external_degrees[0],
                "forced": Recommendation.MINUS.symbol,
            },
            "cells": [
                {
                    "members": sorted(c.cell),
                    "in_situ": c.in_situ.symbol,
                    "reduced": None if c.reduced is None else c.reduced.symbol,
                }
                for c in self.cells
            ],
            "contradicted": list(self.contradicted),
            "notes": list(self.notes),
        }


def verify_witness(w: Witness, rec: Recommender) -> WitnessVerdict:
    """Evaluate ``rec`` on the star and on the partition cells.

    (a) the star meets the centripetal premise, so + is forced on it;
    (b) a cell with one voter and ``r_int`` nonvoters, after cancelling ``k-1``
        +/- pairs per nonvoter, is a star with ``s-k+1 >= beta`` external
        voters per nonvoter, so - is forced on it;
    (c) the recommender's actual values are compared against both.
    """
    p = w.params
    shape = validate_witness(w)
    ineq = p.inequalities()
    if not all(ineq.values()):
        raise MalformedWitness(f"parameter inequalities fail: {ineq}")
    notes = []
    if not centripetal_premise(p.alpha, shape):
        raise MalformedWitness("star does not satisfy the centripetal premise")

    gap = p.s - p.k + 1
    reduced_spec = StarGroupSpec(1, p.r_int, Vote.PLUS, (gap,) * p.r_int)
    if not centrifugal_premise(p.beta, p.r, reduced_spec):
        raise MalformedWitness("reduced cell does not satisfy the centrifugal premise")
    red_net, red_group = generate_star_group(reduced_spec)
    reduced_value = rec(red_net, red_group)

    star_actual = rec(w.network, w.star)
    cells = []
    for cell in w.partition:
        nv = sum(1 for c in cell if not w.network.is_voter(c))
        vv = len(cell) - nv
        full = vv == 1 and nv == p.r_int
        cells.append(CellResult(cell, vv, nv, rec(w.network, cell), reduced_value if full else None))

    contradicted = []
    if star_actual is not Recommendation.PLUS:
        contradicted.append(4)
        notes.append(f"star forced + by axiom 4, recommender gives {star_actual.symbol}")
    if reduced_value is not Recommendation.MINUS:
        contradicted.append(5)
        notes.append(f"reduced cell forced - by axiom 5, recommender gives {reduced_value.symbol}")
    mismatched = [c for c in cells if c.reduced is not None and c.in_situ != c.reduced]
    if mismatched:
        notes.append(
            f"{len(mismatched)} cell(s) differ from their reduced form; the pair cancellation "
            "relies on axioms 2 and 3, so the recommender violates one of those"
        )
    if (star_actual is Recommendation.PLUS
            and all(c.in_situ is Recommendation.MINUS for c in cells)):
        contradicted.append(6)
        notes.append("every cell is - while the star is +; " + PARTITION_NOTE)
    if p.r_int > 1:
        notes.append("with r_int > 1 the cancelled + voters are shared between the nonvoters of a cell")
    return WitnessVerdict(
        params=p,
        star_forced=Recommendation.PLUS,
        star_actual=star_actual,
        cells=tuple(cells),
        reduced_spec=reduced_spec,
        contradicted=tuple(contradicted),
        notes=tuple(notes),
    )
