"""Physical constants, unit conversions and mirror material presets."""

# CODATA 2018
NEUTRON_MASS = 1.67492749804e-27  # kg
HBAR = 1.054571817e-34  # J s
NEV_TO_JOULE = 1.602176634e-28  # J per neV

CM = 1e-2
UM = 1e-6
NM = 1e-9

# Materials: (Fermi potential in neV, curvature radius in cm, length in cm)
MATERIALS = {
    "sapphire": (150.0, 2.5, 5.0),
    "silicon": (54.0, 2.5, 5.0),
}

# Velocities at which the relative flux curves are normalised (m/s)
REFERENCE_VELOCITIES = {
    "sapphire": 1200.0,
    "silicon": 500.0,
}

# Default sweep windows (m/s)
SWEEP_WINDOWS = {
    "sapphire": (800.0, 2000.0),
    "silicon": (400.0, 1000.0),
}

# Velocities where the deflected flux shows its two highest steps (m/s)
BENCHMARK_STEPS = {
    "sapphire": (1700.0, 1350.0),
    "silicon": (810.0, 650.0),
}
