import numpy as np

# name, params, evolute offsets exist everywhere
CATALOG_SURFACES = [
    ("vranceanu", {"lambda": 1.0, "mu": 1.0}, True),
    ("vranceanu", {"lambda": 0.8, "mu": 0.3}, False),
    ("translation_parabola", {}, True),
    ("clifford_torus", {}, True),
    ("complex_curve", {}, False),
    ("plane", {}, False),
    ("sphere", {"radius": 2.0}, True),
]


def random_points(domain, n=25, pad=1e-3, seed=11):
    """Uniform points in the domain shrunk by pad on every side"""
    rng = np.random.default_rng(seed)
    us = rng.uniform(domain.u_min + pad, domain.u_max - pad, n)
    vs = rng.uniform(domain.v_min + pad, domain.v_max - pad, n)
    return list(zip(us.tolist(), vs.tolist()))
