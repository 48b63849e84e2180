from __future__ import annotations

import pytest

from world.mirror import CODATA, MirrorSpec
from world.scales import ScaleSet, scales_at


@pytest.fixture
def sapphire() -> MirrorSpec:
    return MirrorSpec.material("sapphire")


@pytest.fixture
def silicon() -> MirrorSpec:
    return MirrorSpec.material("silicon")


def velocity_for_barrier(mirror: MirrorSpec, z0: float) -> float:
    """Velocity at which the barrier height in units of eps0 equals z0 (z0 scales as v^(-4/3))."""
    reference = scales_at(1000.0, mirror, CODATA)
    return 1000.0 * (reference.z0 / z0) ** 0.75


def scales_for_barrier(z0: float, mirror: MirrorSpec | None = None) -> ScaleSet:
    mirror = mirror or MirrorSpec.material("sapphire")
    return scales_at(velocity_for_barrier(mirror, z0), mirror, CODATA)
