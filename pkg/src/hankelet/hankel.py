"""Dense Hankel transform plans.

H(f)(xi) = integral of f(x) j_alpha(x xi) dmu_alpha(x).
"""

import threading
from collections import OrderedDict

import numpy as np

from .errors import GridMismatchError
from .radial import RadialFunction
from .special import bessel_j_norm

_CACHE_SIZE = 8
_cache = OrderedDict()
_cache_lock = threading.Lock()


class HankelPlan:
    """Kernel matrix j_alpha(xi_i x_j) w_j mapping samples on grid_in to grid_out."""

    def __init__(self, grid_in, grid_out=None):
        grid_out = grid_in if grid_out is None else grid_out
        if grid_in.alpha != grid_out.alpha:
            raise GridMismatchError("input and output grids have different alpha")
        self.grid_in = grid_in
        self.grid_out = grid_out
        self.alpha = grid_in.alpha
        kernel = bessel_j_norm(self.alpha, np.multiply.outer(grid_out.nodes, grid_in.nodes))
        kernel *= grid_in.weights[None, :]
        kernel.setflags(write=False)
        self.kernel_matrix = kernel

    @property
    def is_square(self):
        return self.grid_in is self.grid_out

    def apply(self, samples):
        """Transform a sample vector, or each column of a (n_in, m) matrix."""
        samples = np.asarray(samples, dtype=float)
        if samples.shape[0] != self.grid_in.size:
            raise GridMismatchError(
                f"plan expects {self.grid_in.size} input samples, got {samples.shape[0]}"
            )
        return self.kernel_matrix @ samples


def get_plan(grid_in, grid_out=None):
    """Shared, cached plan for a pair of grids."""
    grid_out = grid_in if grid_out is None else grid_out
    key = (id(grid_in), id(grid_out))
    with _cache_lock:
        hit = _cache.get(key)
        if hit is not None and hit.grid_in is grid_in and hit.grid_out is grid_out:
            _cache.move_to_end(key)
            return hit
    plan = HankelPlan(grid_in, grid_out)
    with _cache_lock:
        _cache[key] = plan
        while len(_cache) > _CACHE_SIZE:
            _cache.popitem(last=False)
    return plan


def hankel_transform(f, plan=None):
    """Hankel transform of a RadialFunction, sampled on plan.grid_out."""
    if plan is None:
        plan = get_plan(f.grid)
    if f.grid is not plan.grid_in and not f.grid.same_as(plan.grid_in):
        raise GridMismatchError("function grid differs from the plan's input grid")
    return RadialFunction(plan.grid_out, plan.apply(f.samples), label=f"H[{f.label}]" if f.label else "")
