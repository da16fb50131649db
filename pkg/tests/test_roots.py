import numpy as np
import pytest
from numpy.polynomial import polynomial as P

from tridiag.charpoly import CharPoly
from tridiag.errors import NoConvergence, PairingFailure
from tridiag.oracle import match_spectra
from tridiag.roots import (
    Spectrum,
    SpectrumEntry,
    cluster,
    cluster_indices,
    default_radius,
    deflate_zero_roots,
    find_roots,
    refine_cluster,
    symmetrize_pm,
)


def _as_spectrum(values):
    return Spectrum(tuple(SpectrumEntry(complex(v), 1) for v in values))


def test_find_roots_small():
    roots = find_roots(P.polyfromroots([1, 2, -3]))
    assert roots.size == 3
    np.testing.assert_allclose(np.sort_complex(roots), [-3, 1, 2], atol=1e-10)


def test_find_roots_accepts_charpoly():
    roots = find_roots(CharPoly([-1, 0, 1]))
    np.testing.assert_allclose(np.sort_complex(roots), [-1, 1], atol=1e-12)


def test_find_roots_linear_and_constant():
    np.testing.assert_array_equal(find_roots(np.array([-2, 1])), [2])
    assert find_roots(np.array([1])).size == 0


@pytest.mark.parametrize("seed", range(10))
def test_find_roots_random_separated(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 9))
    roots = []
    while len(roots) < d:
        z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if all(abs(z - r) >= 0.5 for r in roots):
            roots.append(z)
    found = find_roots(P.polyfromroots(roots))
    assert match_spectra(_as_spectrum(found), _as_spectrum(roots)) <= 1e-6


def test_find_roots_multiple_root():
    found = find_roots(np.array([0, 0, 0, 0, 0, 1], dtype=complex))
    assert found.size == 5
    assert np.max(np.abs(found)) <= 1e-2


def test_find_roots_reports_no_convergence():
    # fl(z)**2 - 2 is never exactly zero
    with pytest.raises(NoConvergence):
        find_roots(np.array([-2, 0, 1], dtype=complex), tol=0.0, max_iter=3)


def test_deflate_zero_roots():
    c, k = deflate_zero_roots([0, 0, 3, 1])
    np.testing.assert_array_equal(c, [3, 1])
    assert k == 2
    c, k = deflate_zero_roots([1e-20, 1, 1])
    assert k == 1
    c, k = deflate_zero_roots([2, 1])
    assert k == 0


def test_default_radius():
    assert default_radius([]) == 1e-8
    assert default_radius([100, 1]) == pytest.approx(1e-4)


def test_cluster_merges_close_roots():
    s = cluster([1, 1 + 1e-9, 2, -1], radius=1e-6)
    assert [e.mult for e in s.entries] == [2, 1, 1]
    assert s.entries[0].value == pytest.approx(1 + 5e-10)
    assert s.total == 4
    assert cluster([]).entries == ()


def test_cluster_is_single_linkage():
    # 0 and 2e-6 are linked through 1e-6
    assert cluster_indices([0, 1e-6, 2e-6, 1], 1.5e-6) == [[0, 1, 2], [3]]


def test_spectrum_helpers():
    s = Spectrum.from_pairs([(2, 1), (-1, 2)])
    np.testing.assert_array_equal(s.values(), [2, -1, -1])
    assert [e.value for e in s.sorted().entries] == [-1, 2]
    assert Spectrum(()).values().size == 0


def test_symmetrize_pm():
    s = Spectrum.from_pairs([(1 + 1e-12, 1), (-1, 1), (1e-12, 1), (2j, 2), (-2j + 1e-11, 2)])
    out = symmetrize_pm(s, 1e-9)
    values = out.values()
    np.testing.assert_array_equal(np.sort_complex(values), np.sort_complex(-values))
    zero = [e for e in out.entries if e.value == 0]
    assert len(zero) == 1 and zero[0].mult == 1
    assert out.total == s.total


def test_symmetrize_pm_needs_partners():
    with pytest.raises(PairingFailure):
        symmetrize_pm(Spectrum.from_pairs([(1, 1), (2, 1)]), 1e-9)
    with pytest.raises(PairingFailure):
        # multiplicities must agree too
        symmetrize_pm(Spectrum.from_pairs([(1, 2), (-1, 1)]), 1e-9)


def test_refine_cluster_recovers_double_root():
    # (w - 1)**2 (w + 2)
    coeffs = np.polynomial.polynomial.polyfromroots([1, 1, -2])
    s = Spectrum((SpectrumEntry(1 + 2e-9 - 1e-9j, 2), SpectrumEntry(-2 + 1e-13, 1)))
    refined = refine_cluster(coeffs, s, radius=1e-6)
    assert [e.mult for e in refined.entries] == [2, 1]
    assert abs(refined.entries[0].value - 1) <= 1e-14
    assert abs(refined.entries[1].value + 2) <= 1e-14


def test_refine_cluster_keeps_centroid_that_would_jump():
    coeffs = np.polynomial.polynomial.polyfromroots([1, 1, -2])
    s = Spectrum((SpectrumEntry(0.5, 2),))
    assert refine_cluster(coeffs, s, radius=1e-6).entries == s.entries
