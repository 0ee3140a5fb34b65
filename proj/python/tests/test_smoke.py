import math
import os
import pathlib

import numpy as np
import pytest

import filtspec

DATA = pathlib.Path(os.environ.get("FILTSPEC_DATA", pathlib.Path(__file__).resolve().parents[2] / "tests" / "data"))


def test_free_jacobi_closed_form():
    op = filtspec.toeplitz([0.0, 1.0])
    ev = filtspec.eigenvalues(op, 50)
    ref = np.sort(2 * np.cos(np.arange(1, 51) * math.pi / 51))
    assert np.max(np.abs(ev - ref)) < 1e-12


def test_compress_matches_entries():
    op = filtspec.laurent([0.5, 1.0, -0.25])
    m = filtspec.compress(op, 3)
    assert m.shape == (7, 7)
    assert np.allclose(m, m.T)
    assert m[0, 0] == 0.5 and m[2, 0] == -0.25 and m[3, 0] == 0.0


def test_matrix_routines_against_numpy():
    rng = np.random.default_rng(5)
    a = rng.standard_normal((12, 12))
    s = a + a.T
    assert np.allclose(filtspec.symmetric_eigenvalues(s), np.linalg.eigvalsh(s), atol=1e-12)
    assert np.allclose(filtspec.singular_values(a[:, :7]), np.linalg.svd(a[:, :7], compute_uv=False), atol=1e-12)


def test_config_and_ladder():
    op = filtspec.load_config(str(DATA / "free_jacobi.cfg"))
    ladder = filtspec.build_ladder(op, [64, 128, 256, 512], workers=2)
    assert len(ladder) == 4
    assert ladder.dims == [op.dim(n) for n in ladder.ns]
    gaps = filtspec.szego_gaps(op, ladder, lambda x: x * x)
    assert gaps[-1] < gaps[0]
    est = filtspec.spectrum_estimate(ladder)
    assert len(est["intervals"]) == 1
    lo, hi = est["intervals"][0]
    assert abs(lo + 2) <= 0.1 and abs(hi - 2) <= 0.1


def test_classify_labels():
    op = filtspec.parse_config("kind = toeplitz\ncoefficients = 0, 1\n")
    ladder = filtspec.build_ladder(op, [64, 128, 256, 512])
    report = filtspec.classify(ladder, [0.0, 3.0], 0.1)
    assert report["labels"] == ["essential", "not-in-lambda"]


def test_errors_are_typed():
    with pytest.raises(filtspec.ConfigError):
        filtspec.parse_config("kind = laurent\ncolour = blue\n")
    with pytest.raises(filtspec.DiagnosticError):
        filtspec.classify(filtspec.build_ladder(filtspec.toeplitz([0.0, 1.0]), [8, 16]), [0.0], 0.1)
    with pytest.raises(filtspec.Error):
        filtspec.compress(filtspec.toeplitz([0.0, 1.0]), 0)
