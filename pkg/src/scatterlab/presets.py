"""Bundled exchange matrices and skew-symmetrizers."""

from __future__ import annotations

from .lattice import Seed

PRESETS: dict[str, tuple[list[list[int]], list[int]]] = {
    "A2": ([[0, -1], [1, 0]], [1, 1]),
    "B2": ([[0, -1], [2, 0]], [1, 2]),
    "C2": ([[0, -2], [1, 0]], [2, 1]),
    "G2": ([[0, -1], [3, 0]], [1, 3]),
    "A1(1)": ([[0, -2], [2, 0]], [2, 2]),
    "A2(2)": ([[0, -1], [4, 0]], [1, 4]),
    "A3": ([[0, -1, 0], [1, 0, -1], [0, 1, 0]], [1, 1, 1]),
    "B3": ([[0, -1, 0], [1, 0, -1], [0, 2, 0]], [1, 1, 2]),
    "C3": ([[0, -1, 0], [1, 0, -2], [0, 1, 0]], [2, 2, 1]),
    "A2(1)": ([[0, -1, -1], [1, 0, -1], [1, 1, 0]], [1, 1, 1]),
    "Markov-like": ([[0, -1, 0], [1, 0, -2], [0, 2, 0]], [1, 1, 1]),
}

FINITE_TYPES = ("A2", "B2", "C2", "G2", "A3", "B3", "C3")


def rank2(d1: int, d2: int) -> Seed:
    """Rank-2 data with B = [[0, -d1], [d2, 0]] and delta = (d1, d2)."""
    return Seed.from_exchange_matrix([[0, -d1], [d2, 0]], [d1, d2])


def preset(name: str) -> Seed:
    try:
        B, delta = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    return Seed.from_exchange_matrix(B, delta)
