"""Random assignment of vertices to players.

Players are indexed ``0..k-1``. Ownership for trial ``t`` under seed ``s`` is
drawn from a Philox stream keyed by ``(s, t)``; vertex ``v`` always consumes
the ``v``-th uniform of that stream, so an assignment depends only on
``(seed, trial_index, vertex)`` and never on scheduling.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph import Graph, induced_subgraph
from .solver import Matching

SUM_TOLERANCE = 1e-12
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class PlayerProfile:
    probabilities: tuple[float, ...]

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probabilities)
        object.__setattr__(self, "probabilities", probs)
        if not probs:
            raise ValueError("need at least one player")
        if any(p < 0 or p > 1 or math.isnan(p) for p in probs):
            raise ValueError("probabilities must lie in [0, 1]")
        if abs(math.fsum(probs) - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"probabilities sum to {math.fsum(probs)!r}, not 1")

    @classmethod
    def uniform(cls, k: int) -> "PlayerProfile":
        if k < 1:
            raise ValueError("need at least one player")
        return cls(tuple([1.0 / k] * k))

    @classmethod
    def parse(cls, text: str) -> "PlayerProfile":
        """Parse ``"0.5,0.5"``; entries may be fractions such as ``2/3``."""
        try:
            probs = [float(Fraction(x.strip())) for x in text.split(",") if x.strip()]
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad probability list {text!r}") from exc
        return cls(tuple(probs))

    @property
    def k(self) -> int:
        return len(self.probabilities)

    def __len__(self) -> int:
        return self.k

    # hypothesis flags; running outside them is allowed, just labelled

    def integral_inverse(self, tol: float = 1e-9) -> bool:
        return all(p > 0 and abs(1 / p - round(1 / p)) <= tol for p in self.probabilities)

    def at_most_half(self) -> bool:
        return all(p <= 0.5 + SUM_TOLERANCE for p in self.probabilities)

    def is_uniform(self) -> bool:
        return all(abs(p - 1 / self.k) <= SUM_TOLERANCE for p in self.probabilities)


@dataclass(frozen=True, eq=False)
class OwnershipAssignment:
    owner: np.ndarray
    seed: int = 0
    trial_index: int = 0

    def __post_init__(self) -> None:
        arr = np.asarray(self.owner, dtype=np.int64).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "owner", arr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OwnershipAssignment):
            return NotImplemented
        return (self.seed == other.seed and self.trial_index == other.trial_index
                and np.array_equal(self.owner, other.owner))

    def vertices_of(self, player: int) -> np.ndarray:
        return np.flatnonzero(self.owner == player)

    @classmethod
    def fixed(cls, owner: Sequence[int]) -> "OwnershipAssignment":
        return cls(np.asarray(owner), seed=-1, trial_index=-1)


def trial_uniforms(seed: int, trial_index: int, n: int) -> np.ndarray:
    """The first ``n`` uniforms of the stream keyed by ``(seed, trial_index)``."""
    bitgen = np.random.Philox(key=np.array([seed & _MASK64, trial_index & _MASK64],
                                           dtype=np.uint64))
    return np.random.Generator(bitgen).random(n)


def sample_ownership(g: Graph | int, profile: PlayerProfile, seed: int,
                     trial_index: int) -> OwnershipAssignment:
    """Owner of each vertex by inverse CDF on its own uniform."""
    n = g if isinstance(g, int) else g.vertex_count
    u = trial_uniforms(seed, trial_index, n)
    cdf = np.cumsum(profile.probabilities)
    owner = np.searchsorted(cdf, u, side="right")
    np.minimum(owner, profile.k - 1, out=owner)
    return OwnershipAssignment(owner, seed, trial_index)


def _check_player(a: OwnershipAssignment, player: int, k: int | None) -> None:
    if player < 0 or (k is not None and player >= k):
        raise ValueError(f"invalid player index {player}")


def internal_subgraph(g: Graph, a: OwnershipAssignment, player: int,
                      k: int | None = None) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by the player's vertices, with its id map."""
    _check_player(a, player, k)
    if len(a.owner) != g.vertex_count:
        raise ValueError("assignment does not match graph size")
    return induced_subgraph(g, a.vertices_of(player).tolist())


def restrict_matching(m: Matching, a: OwnershipAssignment, player: int) -> int:
    """How many vertices of ``player`` the matching ``m`` covers."""
    if not m.cycles:
        return 0
    verts = np.fromiter(m.matched_vertices, dtype=np.int64)
    return int(np.count_nonzero(a.owner[verts] == player))


def hypothesis_flags(profile: PlayerProfile, cap: int) -> dict[str, bool]:
    flags = {
        "two_cycles_p_le_half": cap == 2 and profile.at_most_half(),
        "integral_inverse_p": profile.integral_inverse(),
        "uniform_profile": profile.is_uniform(),
    }
    return flags


def warn_outside_hypotheses(profile: PlayerProfile, cap: int) -> bool:
    """Emit a warning when neither gap-bound hypothesis holds; returns the verdict."""
    flags = hypothesis_flags(profile, cap)
    ok = flags["two_cycles_p_le_half"] or flags["integral_inverse_p"]
    if not ok:
        warnings.warn("profile is outside both gap-bound hypotheses", stacklevel=2)
    return ok
