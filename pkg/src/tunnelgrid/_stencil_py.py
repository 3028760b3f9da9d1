"""NumPy fallback for the hot stencil kernels.

Same call signatures as the compiled module `tunnelgrid._stencil`; used
when the extension is unavailable.  Arrays are flat, C-contiguous views
of the grid.
"""

import numpy as np

COMPILED = False


def diag_apply(u, diag, out):
    """out = diag * u (elementwise)."""
    np.multiply(u, diag, out=out)


def add_neighbors_axis(u, out, pre, n, post, c1, c2):
    """Accumulate off-diagonal stencil terms along one axis.

    The grid is viewed as (pre, n, post); neighbors outside the axis
    range contribute zero (Dirichlet boundary).
    """
    u3 = u.reshape(pre, n, post)
    o3 = out.reshape(pre, n, post)
    o3[:, 1:, :] += c1 * u3[:, :-1, :]
    o3[:, :-1, :] += c1 * u3[:, 1:, :]
    if c2 != 0.0 and n > 2:
        o3[:, 2:, :] += c2 * u3[:, :-2, :]
        o3[:, :-2, :] += c2 * u3[:, 2:, :]
