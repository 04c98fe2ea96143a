"""Seeded random Reidemeister sequences for invariance testing."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import (
    LinkDiagram,
    MoveSpec,
    bigon_sites,
    kink_sites,
    prepare_triangle,
    reidemeister_move,
    triangle_sites,
)


@dataclass(frozen=True)
class FuzzResult:
    diagram: LinkDiagram
    moves: tuple[MoveSpec, ...]
    seed: int


def random_move(d: LinkDiagram, rng: random.Random) -> list[MoveSpec]:
    """Pick one legal move; a triangle preparation expands into three moves."""
    kinks = kink_sites(d)
    bigons = bigon_sites(d)
    triangles = triangle_sites(d)
    arcs = [a.id for a in d.arcs]
    options = ["R1", "R2"]
    if kinks:
        options += ["R1inv"] * 2
    if bigons:
        options += ["R2inv"] * 2
    if triangles:
        options += ["R3"] * 2
    if d.crossings:
        options.append("R3prep")
    kind = rng.choice(options)
    if kind == "R1":
        return [
            MoveSpec(
                rng.choice(["R1+", "R1-"]),
                arc=rng.choice(arcs),
                over_first=rng.random() < 0.5,
            )
        ]
    if kind == "R2":
        return [
            MoveSpec(
                "R2",
                over=rng.choice(arcs),
                arc=rng.choice(arcs),
                writhe=rng.choice([1, -1]),
                placement=rng.choice(["end", "start"]),
            )
        ]
    if kind == "R1inv":
        return [MoveSpec("R1inv", crossing=rng.choice(kinks))]
    if kind == "R2inv":
        return [MoveSpec("R2inv", crossings=rng.choice(bigons))]
    if kind == "R3":
        return [MoveSpec("R3", crossings=rng.choice(triangles))]
    z = rng.choice(d.crossings)
    top = rng.choice(arcs)
    w = rng.choice([1, -1])
    _, site = prepare_triangle(d, z.id, top, w)
    # the preparation replays as explicit moves; fresh ids are deterministic
    return [
        MoveSpec("R2", over=top, arc=z.over, writhe=w, placement="end"),
        MoveSpec("R2", over=top, arc=z.under_out, writhe=w, placement="start"),
        MoveSpec("R3", crossings=site),
    ]


def apply_moves(d: LinkDiagram, moves) -> LinkDiagram:
    for m in moves:
        d = reidemeister_move(d, m)
    return d


def fuzz(d: LinkDiagram, moves: int, seed: int) -> FuzzResult:
    """Apply up to ``moves`` random legal moves, deterministically from ``seed``."""
    rng = random.Random(seed)
    applied: list[MoveSpec] = []
    cur = d
    while len(applied) < moves:
        batch = random_move(cur, rng)
        if len(applied) + len(batch) > moves:
            batch = random_move_single(cur, rng)
        for m in batch:
            cur = reidemeister_move(cur, m)
            applied.append(m)
    return FuzzResult(cur, tuple(applied), seed)


def random_move_single(d: LinkDiagram, rng: random.Random) -> list[MoveSpec]:
    while True:
        batch = random_move(d, rng)
        if len(batch) == 1:
            return batch

