# tests/helpers.py
# Builders and numeric checks shared by several test modules.

# Importing relevant libraries
import numpy as np

from pidispatch.grid import GeneratorKind, GeneratorSpec, LinearCost, QuadraticCost


def quadratic_unit(name, beta, gamma, p_min=0.0, p_max=100.0, alpha=0.0, kind=GeneratorKind.CHP, **kwargs):
    return GeneratorSpec(kind, QuadraticCost(alpha, beta, gamma), p_min, p_max, name=name, **kwargs)


def linear_unit(name, k_coeff, p_min=0.0, p_max=100.0, kind=GeneratorKind.PV, **kwargs):
    return GeneratorSpec(kind, LinearCost(k_coeff), p_min, p_max, name=name, **kwargs)


def relative_error(analytic, numeric):
    """||a - n|| / (||a|| + ||n||), 0 when both vanish."""
    analytic = np.asarray(analytic, dtype=float)
    numeric = np.asarray(numeric, dtype=float)
    scale = np.linalg.norm(analytic) + np.linalg.norm(numeric)
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(analytic - numeric) / scale)


def central_difference(f, x, h=1e-6, entries=None):
    """Numerical gradient of the scalar f() with respect to the array x, perturbed in place."""
    grad = np.zeros_like(x)
    flat = x.reshape(-1)
    out = grad.reshape(-1)
    for i in (range(flat.size) if entries is None else entries):
        saved = flat[i]
        flat[i] = saved + h
        plus = f()
        flat[i] = saved - h
        minus = f()
        flat[i] = saved
        out[i] = (plus - minus) / (2.0 * h)
    return grad
