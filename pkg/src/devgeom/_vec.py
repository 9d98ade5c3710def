"""Small 3-vector helpers; numpy's general cross/det dominate runtime otherwise."""

import numpy as np


def cross3(a, b):
    return np.array([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])


def det3(a, b, c):
    """det of the matrix with rows a, b, c."""
    return float(np.dot(cross3(a, b), c))


def norm3(a):
    return float(np.sqrt(np.dot(a, a)))
