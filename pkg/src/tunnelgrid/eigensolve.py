"""Restarted Lanczos eigensolver for the lowest part of the spectrum.

Implicitly restarted iteration in the thick-restart formulation (restart
with the exact-shift Ritz basis), with full reorthogonalization of every
new Krylov vector against the kept basis.  Full reorthogonalization costs
extra inner products but eliminates the ghost eigenvalues that would
otherwise corrupt meV-scale doublet splittings.

The projected matrix is built from explicit Rayleigh-Ritz projections
(not the three-term recurrence alone), so restarts and breakdown repairs
need no special-cased bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import KTooLarge

DEFAULT_K = 12
DEFAULT_TOL = 1e-10
DEFAULT_SEED = 7


@dataclass
class EigenResult:
    eigenvalues: np.ndarray    # ascending, meV
    eigenvectors: np.ndarray   # (n, k); unit-norm columns
    residuals: np.ndarray      # ||H v - lambda v|| per pair, meV
    iterations: int            # matrix applications performed
    converged: bool
    seed: int
    tol_rel: float
    spectral_scale: float      # estimate used in the relative criterion

    @property
    def k(self) -> int:
        return len(self.eigenvalues)


def lowest(op, k: int = DEFAULT_K, tol_rel: float = DEFAULT_TOL,
           max_restarts: int = 200, seed: int = DEFAULT_SEED,
           ncv: int | None = None) -> EigenResult:
    """The k algebraically smallest eigenpairs of a symmetric operator.

    op needs .n and .apply(vector).  Convergence requires the estimated
    residual of each requested pair to satisfy
    ||H v - t v|| < tol_rel * max(|t|, spectral_scale).  When the restart
    budget runs out the best available pairs are returned with
    converged=False rather than raising.
    """
    n = op.n
    if k < 1 or k >= n:
        raise KTooLarge(f"need 1 <= k < grid size, got k={k}, n={n}")
    if tol_rel <= 0:
        raise ValueError("tol_rel must be > 0")
    if ncv is None:
        ncv = max(2 * k + 8, 20)
    ncv = int(min(max(ncv, k + 2), n))

    rng = np.random.default_rng(seed)
    V = np.zeros((n, ncv + 1), order="F")
    T = np.zeros((ncv, ncv))
    v0 = rng.standard_normal(n)
    V[:, 0] = v0 / np.linalg.norm(v0)

    matvecs = 0
    j0 = 0
    theta = np.zeros(0)
    S = np.zeros((0, 0))
    last_beta = 0.0
    m = ncv
    exhausted = False

    for restart in range(max_restarts + 1):
        m = ncv
        for j in range(j0, ncv):
            w = op.apply(V[:, j])
            matvecs += 1
            # full reorthogonalization against the kept basis: classical
            # Gram-Schmidt, with a second sweep whenever cancellation ate
            # a significant fraction of the vector (Kahan-Parlett rule)
            basis = V[:, : j + 1]
            norm_before = float(np.linalg.norm(w))
            h1 = basis.T @ w
            w = w - basis @ h1
            coeffs = h1
            norm_after = float(np.linalg.norm(w))
            if norm_after < 0.5 * norm_before:
                h2 = basis.T @ w
                w = w - basis @ h2
                coeffs = h1 + h2
            T[: j + 1, j] = coeffs
            T[j, : j + 1] = coeffs
            beta = float(np.linalg.norm(w))
            wscale = float(np.linalg.norm(coeffs)) + 1e-300
            if beta <= 1e-13 * wscale:
                if j + 1 >= n:
                    m = j + 1
                    last_beta = 0.0
                    break
                # invariant subspace: continue with a fresh random direction
                w = rng.standard_normal(n)
                w -= basis @ (basis.T @ w)
                w -= basis @ (basis.T @ w)
                beta_new = np.linalg.norm(w)
                V[:, j + 1] = w / beta_new
                last_beta = 0.0
            else:
                V[:, j + 1] = w / beta
                last_beta = beta

        theta, S = np.linalg.eigh(T[:m, :m])
        scale = float(max(abs(theta[0]), abs(theta[-1]), 1e-300))
        res_est = np.abs(last_beta * S[m - 1, :])
        ok = res_est[:k] < tol_rel * np.maximum(np.abs(theta[:k]), scale)
        if bool(np.all(ok)) or m >= n:
            break
        if restart == max_restarts:
            exhausted = True
            break

        # thick restart: keep the leading Ritz vectors plus the residual,
        # leaving at least ~half the window free for new Krylov directions
        ell = int(min(k + max(k, 4), m - 2, max(k + 1, m // 2)))
        Y = V[:, :m] @ S[:, :ell]
        V[:, :ell] = Y
        V[:, ell] = V[:, m]
        T[:, :] = 0.0
        T[:ell, :ell] = np.diag(theta[:ell])
        j0 = ell

    # assemble eigenpairs and true residuals
    X = V[:, :m] @ S[:, :k]
    X /= np.linalg.norm(X, axis=0)
    lam = theta[:k].copy()
    scale = float(max(abs(theta[0]), abs(theta[-1]), 1e-300))
    residuals = np.empty(k)
    for i in range(k):
        r = op.apply(X[:, i]) - lam[i] * X[:, i]
        matvecs += 1
        residuals[i] = np.linalg.norm(r)
    converged = bool(
        np.all(residuals < tol_rel * np.maximum(np.abs(lam), scale))
    ) and not exhausted

    return EigenResult(
        eigenvalues=lam,
        eigenvectors=X,
        residuals=residuals,
        iterations=matvecs,
        converged=converged,
        seed=seed,
        tol_rel=tol_rel,
        spectral_scale=scale,
    )
