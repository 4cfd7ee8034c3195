"""QL eigensolver and inverse-iteration polish against closed-form spectra."""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pstlab.spectral import (
    TridiagEigen,
    eigh_tridiagonal,
    refine_eigenvectors,
    reflection_signs,
)


def reconstruct(values, vectors, n):
    h = [[0.0] * n for _ in range(n)]
    for lam, v in zip(values, vectors):
        for i in range(n):
            for j in range(n):
                h[i][j] += lam * v[i] * v[j]
    return h


def gram_defect(vectors):
    n = len(vectors)
    worst = 0.0
    for i in range(n):
        for j in range(n):
            dot = math.fsum(a * b for a, b in zip(vectors[i], vectors[j]))
            worst = max(worst, abs(dot - (1.0 if i == j else 0.0)))
    return worst


def test_result_record():
    eig = eigh_tridiagonal([0.0, 1.0], [0.5])
    assert isinstance(eig, TridiagEigen)
    assert eig.n == 2
    values, vectors = eig  # tuple unpacking stays supported
    assert values is eig.values and vectors is eig.vectors


def test_two_site():
    values, vectors = eigh_tridiagonal([0.0, 0.0], [1.0])
    assert values == pytest.approx([-1.0, 1.0])
    s = 1 / math.sqrt(2)
    assert vectors[0] == pytest.approx([s, -s]) or vectors[0] == pytest.approx([-s, s])
    assert vectors[1] == pytest.approx([s, s])


def test_free_chain_cosine_spectrum():
    # tridiag(0, 1) of size n has eigenvalues 2*cos(k*pi/(n+1)), k = n..1
    for n in (3, 5, 8, 13):
        values, vectors = eigh_tridiagonal([0.0] * n, [1.0] * (n - 1))
        want = sorted(2.0 * math.cos(k * math.pi / (n + 1)) for k in range(1, n + 1))
        assert values == pytest.approx(want, abs=1e-13)
        assert gram_defect(vectors) < 1e-13


def test_single_site():
    values, vectors = eigh_tridiagonal([4.2], [])
    assert values == [4.2]
    assert vectors == [[1.0]]
    with pytest.raises(ValueError):
        eigh_tridiagonal([], [])
    with pytest.raises(ValueError):
        eigh_tridiagonal([1.0, 2.0], [])


def test_reconstruction_random():
    rng = random.Random(20240917)
    for n in (2, 4, 7, 12):
        diag = [rng.uniform(-5, 5) for _ in range(n)]
        off = [rng.uniform(0.1, 3) for _ in range(n - 1)]
        values, vectors = eigh_tridiagonal(diag, off)
        assert values == sorted(values)
        h = reconstruct(values, vectors, n)
        scale = max(map(abs, values))
        for i in range(n):
            assert h[i][i] == pytest.approx(diag[i], abs=1e-12 * scale)
            if i + 1 < n:
                assert h[i][i + 1] == pytest.approx(off[i], abs=1e-12 * scale)
            for j in range(i + 2, n):
                assert abs(h[i][j]) < 1e-12 * scale


@given(
    st.lists(st.floats(-4, 4), min_size=2, max_size=9),
    st.data(),
)
def test_eigensolver_properties(diag, data):
    n = len(diag)
    off = data.draw(
        st.lists(st.floats(0.05, 2.5), min_size=n - 1, max_size=n - 1)
    )
    values, vectors = eigh_tridiagonal(diag, off)
    assert values == sorted(values)
    # accuracy contract: orthonormality and residual within 1e-12 * scale * n
    assert gram_defect(vectors) < 1e-12 * n
    norm = max(
        abs(d)
        + (off[i - 1] if i > 0 else 0.0)
        + (off[i] if i < n - 1 else 0.0)
        for i, d in enumerate(diag)
    )
    bound = 1e-12 * max(norm, 1.0) * n
    for lam, v in zip(values, vectors):
        for i in range(n):
            acc = (diag[i] - lam) * v[i]
            if i > 0:
                acc += off[i - 1] * v[i - 1]
            if i + 1 < n:
                acc += off[i] * v[i + 1]
            assert abs(acc) < bound
    # trace is preserved
    assert math.fsum(values) == pytest.approx(math.fsum(diag), abs=1e-10)


def test_refine_recovers_precision():
    rng = random.Random(7)
    n = 9
    diag = [rng.uniform(-2, 2) for _ in range(n)]
    off = [rng.uniform(0.2, 2) for _ in range(n - 1)]
    values, vectors = eigh_tridiagonal(diag, off)
    # contaminate the eigenvectors, then polish at the true eigenvalues
    noisy = []
    for v in vectors:
        w = [t + rng.uniform(-1e-7, 1e-7) for t in v]
        nrm = math.sqrt(sum(t * t for t in w))
        noisy.append([t / nrm for t in w])
    polished = refine_eigenvectors(diag, off, values, noisy)
    assert gram_defect(polished) < 5e-15
    scale = max(map(abs, values))
    for lam, v in zip(values, polished):
        res = []
        for i in range(n):
            acc = (diag[i] - lam) * v[i]
            if i > 0:
                acc += off[i - 1] * v[i - 1]
            if i + 1 < n:
                acc += off[i] * v[i + 1]
            res.append(acc)
        assert max(map(abs, res)) < 1e-13 * scale


def test_refine_keeps_good_vectors():
    values, vectors = eigh_tridiagonal([0.0, 0.0, 0.0], [1.0, 1.0])
    polished = refine_eigenvectors([0.0, 0.0, 0.0], [1.0, 1.0], values, vectors)
    for v, w in zip(vectors, polished):
        assert v == pytest.approx(w, abs=1e-12)


def test_reflection_signs_alternate():
    # persymmetric: mirror parities run (-1)**(N - x), ending symmetric on top
    for n in (2, 3, 6, 9):
        values, vectors = eigh_tridiagonal([0.0] * n, [1.0] * (n - 1))
        signs = reflection_signs(vectors)
        assert signs == [(-1) ** (n - 1 - x) for x in range(n)]
    with pytest.raises(ValueError):
        reflection_signs([[1.0, 0.0]])
