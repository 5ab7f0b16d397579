import math

import numpy as np
import pytest

from tridist import CaseLabel, classify, triangle_from_degrees, triangle_from_angles

REFERENCE_ANGLES = [(130, 30, 20), (65, 60, 55), (80, 70, 30)]

# Filled in by test_acceptance.py, printed at the end of the run.
ACCEPTANCE = {}


def reference_triangles():
    return [triangle_from_degrees(*ang, a=1.0) for ang in REFERENCE_ANGLES]


def random_triangles(per_case=10, seed=2024, min_angle_deg=10.0):
    """Deterministic triangles, ``per_case`` of each case label.

    Angles are drawn uniformly on the simplex (rejecting slivers); the rare
    case is reached by rejection, which is cheap since nothing is evaluated.
    """
    rng = np.random.default_rng(seed)
    bins = {c: [] for c in CaseLabel}
    floor = math.radians(min_angle_deg)
    while any(len(v) < per_case for v in bins.values()):
        w = rng.dirichlet([1.0, 1.0, 1.0]) * math.pi
        if w.min() < floor:
            continue
        w = np.sort(w)[::-1]
        t = triangle_from_angles(w[0], w[1], math.pi - w[0] - w[1], a=float(rng.uniform(0.5, 2.0)))
        c = classify(t)
        if len(bins[c]) < per_case:
            bins[c].append(t)
    return [t for c in CaseLabel for t in bins[c]]


@pytest.fixture(scope="session")
def reference():
    return reference_triangles()


@pytest.fixture(scope="session")
def randoms():
    return random_triangles()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line("criterion %d: %s  %s" % (key, "PASS" if ok else "FAIL", detail))
