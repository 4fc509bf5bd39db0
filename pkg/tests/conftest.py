import math

import numpy as np
import pytest

from proxcatch import (
    BasicTriangleParams,
    Point2,
    Triangle,
    equilateral_triangle,
)


@pytest.fixture
def t_eq() -> Triangle:
    return equilateral_triangle()


@pytest.fixture
def t_basic() -> Triangle:
    # the (0.3, 0.8) context used throughout the acceptance runs
    return Triangle(Point2(0.0, 0.0), Point2(1.0, 0.0), Point2(0.3, 0.8))


@pytest.fixture
def params_basic() -> BasicTriangleParams:
    return BasicTriangleParams(0.3, 0.8)


@pytest.fixture
def params_eq() -> BasicTriangleParams:
    return BasicTriangleParams(0.5, math.sqrt(3.0) / 2.0)


def random_triangle(rng: np.random.Generator) -> Triangle:
    """A quality random triangle (area and angles bounded away from zero)."""
    while True:
        pts = rng.uniform(-2.0, 2.0, size=(3, 2))
        t = None
        a = abs(
            (pts[1, 0] - pts[0, 0]) * (pts[2, 1] - pts[0, 1])
            - (pts[1, 1] - pts[0, 1]) * (pts[2, 0] - pts[0, 0])
        )
        sides = [np.linalg.norm(pts[i] - pts[(i + 1) % 3]) for i in range(3)]
        if a > 0.3 and min(sides) > 0.3:
            return Triangle(Point2(*pts[0]), Point2(*pts[1]), Point2(*pts[2]))


def random_interior_point(t: Triangle, rng: np.random.Generator, margin: float = 0.05) -> Point2:
    w = rng.uniform(margin, 1.0, size=3)
    w = w / w.sum()
    return t.point_at(w)
