"""Shared helpers: seeded random formula generators per signature."""

from __future__ import annotations

import random

from manyval.formula import (
    And, Bot, Delta, Formula, FTImp, GImp, GNeg, Iff, Inv, LukImp, Or, Top, Var,
)

GODEL_BINARY = [And, Or, GImp, Iff]
GODEL_UNARY = [Inv, GNeg, Delta]
MV_BINARY = [And, Or, LukImp]
MV_UNARY = [Inv, Delta]
FT_BINARY = [And, Or, FTImp]
FT_UNARY = [Inv]


def _random_formula(rng: random.Random, depth: int, names: list[str],
                    binary, unary, consts) -> Formula:
    if depth == 0 or rng.random() < 0.3:
        leaves = [Var(nm) for nm in names] + consts
        return rng.choice(leaves)
    ops = binary + unary
    op = rng.choice(ops)
    if op in binary:
        return op(_random_formula(rng, depth - 1, names, binary, unary, consts),
                  _random_formula(rng, depth - 1, names, binary, unary, consts))
    return op(_random_formula(rng, depth - 1, names, binary, unary, consts))


def random_godel(rng: random.Random, depth: int = 3,
                 names: list[str] | None = None) -> Formula:
    return _random_formula(rng, depth, names or ["p", "q"],
                           GODEL_BINARY, GODEL_UNARY, [Bot(), Top()])


def random_mv(rng: random.Random, depth: int = 3,
              names: list[str] | None = None) -> Formula:
    return _random_formula(rng, depth, names or ["p", "q"],
                           MV_BINARY, MV_UNARY, [Bot(), Top()])


def random_ft(rng: random.Random, depth: int = 3,
              names: list[str] | None = None) -> Formula:
    return _random_formula(rng, depth, names or ["p", "q"],
                           FT_BINARY, FT_UNARY, [Bot()])
