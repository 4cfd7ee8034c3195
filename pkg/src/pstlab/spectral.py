"""Self-contained spectral routines for symmetric tridiagonal matrices.

The one-excitation block of an XX chain on n+1 sites is a real symmetric
tridiagonal matrix (magnetic fields on the diagonal, couplings off it), so
this is the only eigenproblem the package ever solves.  The solver is the
classic implicit-shift QL iteration with accumulated rotations -- a couple of
hundred lines of stdlib Python keeps the core dependency-free, and for the
matrix sizes involved (tens of sites) speed is a non-issue.

When the eigenvalues are known analytically to full precision (the synthesis
routines construct them exactly), :func:`refine_eigenvectors` spends one
inverse-iteration step per vector plus a Gram-Schmidt sweep to push the
eigenvector error well below what QL alone delivers on stiff spectra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

_EPS = 2.220446049250313e-16


class ConvergenceFailure(RuntimeError):
    """QL iteration failed to deflate an eigenvalue within the sweep budget."""


@dataclass(frozen=True)
class TridiagEigen:
    """Eigensystem of a real symmetric tridiagonal matrix.

    ``values`` ascend; ``vectors[x]`` is the orthonormal eigenvector for
    ``values[x]``.  Iterates as ``(values, vectors)`` so existing unpacking
    call sites keep working.
    """

    values: list[float]
    vectors: list[list[float]]

    def __iter__(self) -> Iterator:
        yield self.values
        yield self.vectors

    @property
    def n(self) -> int:
        return len(self.values)


def eigh_tridiagonal(diag: list[float], off: list[float]) -> TridiagEigen:
    """Eigenvalues (ascending) and orthonormal eigenvectors.

    ``diag`` holds the n diagonal entries, ``off`` the n-1 subdiagonal ones.
    Each eigenvector is sign-fixed so its largest-magnitude component is
    positive.
    """
    n = len(diag)
    if n == 0:
        raise ValueError("empty matrix")
    if len(off) != n - 1:
        raise ValueError("off-diagonal must have one entry fewer than diagonal")
    d = [float(v) for v in diag]
    e = [float(v) for v in off] + [0.0]
    z = [[1.0 if i == k else 0.0 for k in range(n)] for i in range(n)]

    for l in range(n):
        sweeps = 0
        while True:
            for m in range(l, n - 1):
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) + dd == dd:
                    break
            else:
                m = n - 1
            if m == l:
                break
            sweeps += 1
            if sweeps > 50:
                raise ConvergenceFailure(
                    f"eigenvalue {l} not isolated after 50 QL sweeps"
                )
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0 else -r))
            s = c = 1.0
            p = 0.0
            shortcut = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    shortcut = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for k in range(n):
                    f = z[k][i + 1]
                    z[k][i + 1] = s * z[k][i] + c * f
                    z[k][i] = c * z[k][i] - s * f
            if shortcut:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    order = sorted(range(n), key=lambda k: d[k])
    values = [d[k] for k in order]
    vectors = []
    for k in order:
        v = [z[i][k] for i in range(n)]
        peak = max(range(n), key=lambda i: abs(v[i]))
        if v[peak] < 0.0:
            v = [-t for t in v]
        vectors.append(v)
    return TridiagEigen(values, vectors)


def _solve_shifted(
    diag: list[float], off: list[float], lam: float, rhs: list[float]
) -> list[float]:
    """Solve (T - lam*I) x = rhs by Gaussian elimination with partial pivoting.

    Row swaps introduce a second superdiagonal, nothing more.  A numerically
    singular pivot is replaced by a tiny value -- for inverse iteration that
    just means the solution explodes along the eigenvector, which is the point.
    """
    n = len(diag)
    scale = max(
        max(abs(v - lam) for v in diag),
        max((abs(v) for v in off), default=0.0),
        1.0,
    )
    tiny = _EPS * scale
    b = [diag[i] - lam for i in range(n)]
    c = [off[i] if i < n - 1 else 0.0 for i in range(n)]
    f2 = [0.0] * n
    y = [float(v) for v in rhs]
    for i in range(n - 1):
        a_next = off[i]
        if abs(a_next) > abs(b[i]):
            b[i], a_next = a_next, b[i]
            c[i], b[i + 1] = b[i + 1], c[i]
            f2[i], c[i + 1] = c[i + 1], f2[i]
            y[i], y[i + 1] = y[i + 1], y[i]
        if b[i] == 0.0:
            b[i] = tiny
        fac = a_next / b[i]
        b[i + 1] -= fac * c[i]
        c[i + 1] -= fac * f2[i]
        y[i + 1] -= fac * y[i]
    if b[n - 1] == 0.0:
        b[n - 1] = tiny
    x = [0.0] * n
    for i in range(n - 1, -1, -1):
        acc = y[i]
        if i + 1 < n:
            acc -= c[i] * x[i + 1]
        if i + 2 < n:
            acc -= f2[i] * x[i + 2]
        x[i] = acc / b[i]
    return x


def refine_eigenvectors(
    diag: list[float],
    off: list[float],
    values: list[float],
    vectors: list[list[float]],
) -> list[list[float]]:
    """One inverse-iteration step per vector at the given eigenvalues.

    ``values`` should be the *accurate* eigenvalues (e.g. evaluated from an
    exact closed form); the step damps eigenvector error by the local gap
    ratio.  A double modified-Gram-Schmidt sweep then restores orthonormality
    to working precision, which the transfer-fidelity error bound relies on.
    """
    refined = []
    for lam, v in zip(values, vectors):
        w = _solve_shifted(diag, off, lam, v)
        nrm = math.sqrt(math.fsum(t * t for t in w))
        if nrm == 0.0 or not math.isfinite(nrm):
            w = list(v)
        else:
            w = [t / nrm for t in w]
            if math.fsum(a * b for a, b in zip(w, v)) < 0.0:
                w = [-t for t in w]
        refined.append(w)
    for _ in range(2):
        for x, wx in enumerate(refined):
            for prev in refined[:x]:
                dot = math.fsum(p * q for p, q in zip(wx, prev))
                wx = [p - dot * q for p, q in zip(wx, prev)]
            nrm = math.sqrt(math.fsum(p * p for p in wx))
            refined[x] = [p / nrm for p in wx]
    return refined


def reflection_signs(vectors: list[list[float]], tol: float = 1e-6) -> list[int]:
    """Mirror parity of each eigenvector: +1 symmetric, -1 antisymmetric.

    Only meaningful for persymmetric matrices, where every eigenvector is an
    exact parity eigenstate of the reversal; raises if one is not close to it.
    """
    signs = []
    for x, v in enumerate(vectors):
        overlap = math.fsum(a * b for a, b in zip(v, reversed(v)))
        if abs(abs(overlap) - 1.0) > tol:
            raise ValueError(
                f"eigenvector {x} has no definite mirror parity "
                f"(overlap {overlap:.6f})"
            )
        signs.append(1 if overlap > 0 else -1)
    return signs
