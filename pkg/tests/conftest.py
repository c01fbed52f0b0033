import math

import numpy as np
import pytest

from robustwheel.design_space import StairSpec
from robustwheel.pipeline import load_config
from robustwheel.pipeline.cli import DATA_DIR
from robustwheel.taguchi import Factor, build_l9

SHIPPED_CONFIG = DATA_DIR / "paper.config"
SHIPPED_RESPONSES = DATA_DIR / "paper_table2.csv"

POWER = np.array(
    [
        [4.02, 4.07, 5.19],
        [3.12, 3.47, 3.35],
        [3.49, 3.87, 3.79],
        [2.96, 2.90, 3.52],
        [2.99, 2.99, 3.08],
        [3.57, 3.36, 3.61],
        [4.28, 3.95, 3.70],
        [3.33, 2.90, 3.44],
        [3.96, 3.41, 4.15],
    ]
)
PRINTED_SN = [-12.98, -10.43, -11.42, -9.95, -9.61, -10.93, -12.01, -10.19, -11.72]
PRINTED_AMPLITUDE = [0.76, 0.68, 0.61, 0.60, 0.55, 0.96, 0.49, 0.86, 0.75]
PRINTED_POWER_GRC = [0.33, 0.67, 0.48, 0.83, 1.00, 0.56, 0.41, 0.74, 0.44]
PRINTED_GRADES = [0.59, 0.57, 0.49, 0.66, 0.70, 0.63, 0.58, 0.70, 0.47]
PRINTED_RANKS = [5, 7, 8, 3, 2, 4, 6, 1, 9]

# published per-level average grades, factors A, B, C
LEVEL_MEANS = np.array(
    [
        [0.554162, 0.668827, 0.587269],
        [0.615386, 0.664180, 0.530693],
        [0.646039, 0.570653, 0.593566],
    ]
)
PUBLISHED_SS = (0.020896, 0.027373, 0.008962)
PUBLISHED_ERROR_SS = 0.001618
PUBLISHED_F = (12.91703, 16.9208, 5.539721)
PUBLISHED_CONTRIB = (35.50825, 46.5144, 15.2284)
PUBLISHED_ERROR_CONTRIB = 2.748948

# fourth column of the full L9 array: orthogonal to the three factor columns,
# so variation placed on it lands entirely in the error term
L9_ERROR_COLUMN = np.array([1, 2, 3, 3, 1, 2, 2, 3, 1])

# stair + module that pin the child-count upper bound (see README)
BOUND_STAIR = StairSpec(riser=177.8, tread=279.4, overhang=31.75, nosing_thickness=25.4)
BOUND_MODULE_LENGTH = 352.37


@pytest.fixture
def study_factors():
    return (
        Factor("Module Length", (240, 260, 280), "mm"),
        Factor("Radius of Parent Circle", (40, 45, 50), "mm"),
        Factor("Number of Child Circles", (16, 18, 20)),
    )


@pytest.fixture
def study_plan(study_factors):
    return build_l9(study_factors)


@pytest.fixture(scope="session")
def study_config():
    return load_config(SHIPPED_CONFIG)


def grades_from_level_means(runs, level_means, error_ss=0.0):
    """Nine grades whose per-level averages equal ``level_means``.

    Main effects are added on the grand mean; ``error_ss`` worth of residual
    is spread along the spare L9 column so the factor averages are untouched.
    """
    grand = float(np.mean(level_means))
    g = np.full(runs.shape[0], grand)
    for j in range(runs.shape[1]):
        g += level_means[j, runs[:, j] - 1] - grand
    t = math.sqrt(error_ss / 6.0)
    g += np.array([t, -t, 0.0])[L9_ERROR_COLUMN - 1]
    return g


def brute_force_sn(replicates):
    """S/N straight from the definition, one term at a time."""
    total = 0.0
    for y in replicates:
        total += y * y
    return -10.0 * math.log10(total / len(replicates))


# acceptance reporting ----------------------------------------------------

_ACCEPTANCE = []


@pytest.fixture
def record_criterion():
    def record(number, title, passed, detail=""):
        _ACCEPTANCE.append((number, title, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] {number:>2}. {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
