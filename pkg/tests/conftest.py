"""Shared fixtures: one representative model per noise family."""

import numpy as np
import pytest

import levy_info as li

# Family name -> parameter tuple used throughout the suite.
FAMILY_PARAMS = {
    "Brownian": (),
    "Poisson": (1.0,),
    "Gamma": (2.0, 1.0),
    "VarianceGamma": (2.0,),
    "NegativeBinomial": (1.0, 0.5),
    "InverseGaussian": (1.0, 2.0),
    "NormalInverseGaussian": (2.0, 0.5, 1.0),
}


def all_models():
    return [li.make_noise_model(fam, p) for fam, p in FAMILY_PARAMS.items()]


def interior_grid(model, n):
    """Evenly spaced points covering 99% of the interior of A.

    Infinite endpoints are replaced by a finite window before trimming
    0.5% of the width from each end.
    """
    dom = li.admissible_set(model)
    lo = dom.lo if np.isfinite(dom.lo) else min(-4.0, dom.hi - 8.0)
    hi = dom.hi if np.isfinite(dom.hi) else max(4.0, dom.lo + 8.0)
    width = hi - lo
    return np.linspace(lo + 0.005 * width, hi - 0.005 * width, n)


@pytest.fixture(params=sorted(FAMILY_PARAMS), ids=str)
def model(request):
    return li.make_noise_model(request.param, FAMILY_PARAMS[request.param])
