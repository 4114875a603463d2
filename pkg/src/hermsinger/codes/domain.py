from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..errors import BadParameter, OrbitNotOnFamily
from ..gftower import FieldTower, build_tower
from ..hermitian import HermitianFamily, family


@dataclass
class EvaluationDomain:
    """Unital points of H_tau minus the orbit G, grouped into q Singer orbits.

    Coordinate ``b * m + s`` (``m = q^2-q+1``) is the ``s``-th point of the
    ``b``-th remaining orbit, orbits taken in order of their smallest
    subplane index and points in order of successive powers of B.  The
    Singer generator therefore acts as a simultaneous cyclic shift of the q
    blocks.
    """

    tower: FieldTower
    fam: HermitianFamily
    tau_index: int
    g_orbit_index: int = 0
    orbits: list[list[int]] = field(init=False)

    def __post_init__(self) -> None:
        parts = self.fam.orbit_partition(self.tau_index)
        if not 0 <= self.g_orbit_index < len(parts):
            raise BadParameter(f"orbit index {self.g_orbit_index} out of range 0..{len(parts) - 1}")
        self.orbits = parts

    @classmethod
    def build(cls, q: int, tau_index: int = 0, g_orbit_index: int = 0) -> "EvaluationDomain":
        T = build_tower(q)
        fam = family(T)
        if not 0 <= tau_index < fam.num_curves:
            raise BadParameter(f"tau index {tau_index} out of range 0..{fam.num_curves - 1}")
        return cls(T, fam, tau_index, g_orbit_index)

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def block_length(self) -> int:
        return self.q * self.q - self.q + 1

    @property
    def G(self) -> list[int]:
        return self.orbits[self.g_orbit_index]

    @property
    def D_orbits(self) -> list[list[int]]:
        return [o for k, o in enumerate(self.orbits) if k != self.g_orbit_index]

    @cached_property
    def D(self) -> list[int]:
        return [i for o in self.D_orbits for i in o]

    @property
    def n(self) -> int:
        return len(self.D)

    @cached_property
    def points(self) -> np.ndarray:
        return self.fam.subplane.points[self.D]

    @cached_property
    def position(self) -> dict[int, int]:
        return {i: k for k, i in enumerate(self.D)}

    def curves_through(self, orbit: list[int], exclude: tuple[int, ...] = ()) -> list[int]:
        js = [j for j in self.fam.curves_through_orbit(orbit) if j not in exclude]
        if not js:
            raise OrbitNotOnFamily("no admissible curve through the orbit")
        return js

    @cached_property
    def t_index(self) -> int:
        """Smallest curve index through G other than tau."""
        return self.curves_through(self.G, (self.tau_index,))[0]

    def u_index(self, block: int) -> int:
        """Smallest curve index through the ``block``-th orbit of D other than tau."""
        return self.curves_through(self.D_orbits[block], (self.tau_index,))[0]

    def shift_permutation(self) -> np.ndarray:
        """``perm[i]`` is the coordinate that B sends coordinate ``i`` to."""
        m = self.block_length
        idx = np.arange(self.n)
        return (idx // m) * m + (idx % m + 1) % m

    def apply_shift(self, vectors: np.ndarray) -> np.ndarray:
        v = np.asarray(vectors)
        out = np.empty_like(v)
        out[..., self.shift_permutation()] = v
        return out

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "tau_index": self.tau_index,
            "g_orbit": self.G,
            "D": self.D,
            "block_length": self.block_length,
        }
