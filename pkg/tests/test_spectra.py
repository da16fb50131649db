"""σ(J), the closed-form mappings to σ(A) and σ(B), and the determinants."""

import numpy as np
import pytest

from tridiag.core import PerturbationParams, make_zero_diag, nilpotent_example, sylvester_kac
from tridiag.errors import NonZeroDiagonalInput, OddOrder, ParityError
from tridiag.roots import Spectrum, SpectrumEntry
from tridiag.spectra import (
    PairedSpectrum,
    det_alternating,
    det_j_even,
    det_two_periodic,
    expand_paired,
    is_degenerate,
    lambdas,
    map_to_alternating,
    map_to_two_periodic,
    merge_spectrum,
    pair_spectrum,
    solve_zero_diagonal,
)

ONES_2 = make_zero_diag([1], [1])
# χ = (z**2 - 1)**2: λ = 1 with a Jordan block of size 2
DOUBLE_4 = make_zero_diag([1, 1, 1], [-1, 4, -1])


def _values(s: Spectrum) -> dict:
    return {(round(e.value.real, 8), round(e.value.imag, 8)): e.mult for e in s.entries}


def test_two_by_two():
    ps = solve_zero_diagonal(ONES_2)
    assert ps.zero_mult == 0
    assert len(ps.pairs) == 1
    assert ps.pairs[0].value == 1
    assert ps.pairs[0].mult == 1


def test_sylvester_kac_3():
    ps = solve_zero_diagonal(sylvester_kac(3))
    assert sorted(round(e.value.real, 10) for e in ps.pairs) == [1, 3]
    assert ps.zero_mult == 0


def test_nilpotent_example_has_only_zero():
    ps = solve_zero_diagonal(nilpotent_example())
    assert ps.pairs == ()
    assert ps.zero_mult == 5
    assert ps.zero_chain_rank == 2
    assert expand_paired(ps).entries == (SpectrumEntry(0j, 5),)


def test_multiple_eigenvalue():
    ps = solve_zero_diagonal(DOUBLE_4)
    assert len(ps.pairs) == 1
    assert ps.pairs[0].mult == 2
    # the double root of p(w) is refined, not just averaged
    assert abs(ps.pairs[0].value - 1) <= 1e-12


def test_solve_rejects_nonzero_diagonal():
    with pytest.raises(NonZeroDiagonalInput):
        solve_zero_diagonal(ONES_2.with_diagonal([1, -1]))


@pytest.mark.parametrize("seed", range(10))
def test_random_spectrum_is_negation_closed(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 10))
    size = n - 1
    J = make_zero_diag(rng.uniform(0.1, 2, size) * np.exp(2j * np.pi * rng.uniform(size=size)),
                       rng.uniform(0.1, 2, size) * np.exp(2j * np.pi * rng.uniform(size=size)))
    ps = solve_zero_diagonal(J)
    values = expand_paired(ps).values()
    assert values.size == n
    np.testing.assert_array_equal(np.sort_complex(values), np.sort_complex(-values))
    assert ps.zero_mult == n % 2
    for e in ps.pairs:
        assert e.value.real > 0 or (e.value.real == 0 and e.value.imag > 0)


def test_paired_spectrum_invariants():
    with pytest.raises(ParityError):
        PairedSpectrum(pairs=(), zero_mult=2, n=2)
    with pytest.raises(ParityError):
        PairedSpectrum(pairs=(SpectrumEntry(1, 1),), zero_mult=2, n=4)
    with pytest.raises(ParityError):
        pair_spectrum(Spectrum.from_pairs([(1, 1), (-1, 1)]), 3)
    ps = pair_spectrum(Spectrum.from_pairs([(1j, 1), (-1j, 1), (0, 1)]), 3)
    assert ps.pairs == (SpectrumEntry(1j, 1),)
    assert ps.half_order == 1


def test_lambdas_include_zero_pairs():
    ps = PairedSpectrum(pairs=(SpectrumEntry(2, 2),), zero_mult=3, n=7)
    np.testing.assert_array_equal(lambdas(ps), [2, 2, 0])


# =============================================================================
# MAPPINGS
# =============================================================================

def test_map_two_by_two():
    mapped = map_to_alternating(solve_zero_diagonal(ONES_2), 0.75)
    assert _values(mapped) == {(1.25, 0.0): 1, (-1.25, 0.0): 1}


def test_map_nilpotent():
    mapped = map_to_alternating(solve_zero_diagonal(nilpotent_example()), 1)
    assert mapped.sorted().entries == (SpectrumEntry(-1, 2), SpectrumEntry(1, 3))


def test_map_at_zero_is_identity():
    ps = solve_zero_diagonal(sylvester_kac(4))
    mapped = map_to_alternating(ps, 0)
    np.testing.assert_array_equal(np.sort_complex(mapped.values()), np.sort_complex(expand_paired(ps).values()))


def test_map_degenerate():
    mapped = map_to_alternating(solve_zero_diagonal(ONES_2), 1j)
    assert mapped.entries == (SpectrumEntry(0j, 2),)


@pytest.mark.parametrize("x", [1j, -1j])
def test_map_degenerate_multiple_pair(x):
    # λ = 1 has multiplicity 2, so x = ±i gives 0 with multiplicity 4
    mapped = map_to_alternating(solve_zero_diagonal(DOUBLE_4), x)
    assert mapped.entries == (SpectrumEntry(0j, 4),)


def test_map_odd_order_adds_plus_minus_x():
    ps = solve_zero_diagonal(sylvester_kac(2))  # ±2, 0
    mapped = map_to_alternating(ps, 1.5)
    assert _values(mapped) == {(2.5, 0.0): 1, (-2.5, 0.0): 1, (1.5, 0.0): 1}


def test_map_merges_coincident_values():
    # at x = 0 the +x and -x entries of an odd order coincide again
    mapped = map_to_alternating(solve_zero_diagonal(nilpotent_example()), 0)
    assert mapped.entries == (SpectrumEntry(0j, 5),)


def test_map_two_periodic():
    mapped = map_to_two_periodic(solve_zero_diagonal(ONES_2), PerturbationParams(1, 2))
    expected = sorted([(3 - np.sqrt(5)) / 2, (3 + np.sqrt(5)) / 2])
    got = sorted(e.value.real for e in mapped.entries)
    np.testing.assert_allclose(got, expected, atol=1e-12)


def test_two_periodic_is_shifted_alternating():
    ps = solve_zero_diagonal(sylvester_kac(5))
    p = PerturbationParams(0.3 + 1j, -0.7)
    shifted = [e.value + p.half_sum for e in map_to_alternating(ps, p.half_difference).entries]
    assert [e.value for e in map_to_two_periodic(ps, p).entries] == shifted


def test_merge_spectrum():
    entries = [SpectrumEntry(1 + 1e-12, 1), SpectrumEntry(1, 3), SpectrumEntry(2.5, 1)]
    merged = merge_spectrum(entries, radius=1e-9)
    assert merged.entries[0].mult == 4
    assert merged.entries[0].value == pytest.approx(1 + 0.25e-12)
    # singletons are kept bit for bit
    assert merged.entries[1] == SpectrumEntry(2.5, 1)
    assert merge_spectrum([SpectrumEntry(1, 0)]).entries == ()


def test_is_degenerate():
    assert is_degenerate(1, 1j)
    assert is_degenerate(2j, 2)
    assert not is_degenerate(1, 1)


# =============================================================================
# DETERMINANTS
# =============================================================================

def test_det_j_even():
    assert det_j_even(ONES_2) == -1
    assert det_j_even(sylvester_kac(3)) == 9
    with pytest.raises(OddOrder):
        det_j_even(nilpotent_example())


def test_det_alternating():
    assert det_alternating(solve_zero_diagonal(nilpotent_example()), 1) == 1
    assert det_alternating(solve_zero_diagonal(ONES_2), 0.75) == pytest.approx(-25 / 16)


def test_det_two_periodic():
    assert det_two_periodic(solve_zero_diagonal(ONES_2), PerturbationParams(1, 2)) == 1
    # J_3 with σ = {±sqrt(2), 0}: det B_3 = x (xy - 2)
    ps = solve_zero_diagonal(make_zero_diag([1, 1], [1, 1]))
    assert det_two_periodic(ps, PerturbationParams(2, 3)) == pytest.approx(8)


def _random_zero_diag(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 10))

    def draw():
        return rng.uniform(0.1, 2, n - 1) * np.exp(2j * np.pi * rng.uniform(size=n - 1))

    x, y = rng.uniform(-2, 2, 2) + 1j * rng.uniform(-2, 2, 2)
    return make_zero_diag(draw(), draw()), PerturbationParams(x, y)


@pytest.mark.parametrize("seed", range(8))
def test_two_periodic_eigenvalue_product_is_determinant(seed):
    J, p = _random_zero_diag(seed)
    ps = solve_zero_diagonal(J)
    product = np.prod(map_to_two_periodic(ps, p).values())
    lam = lambdas(ps)
    mu = np.abs(np.sqrt(lam * lam + p.half_difference ** 2))
    factors = (abs(p.half_sum) + mu) ** 2 + abs(p.x) * abs(p.y) + np.abs(lam) ** 2
    scale = np.prod(factors) * (abs(p.x) if J.n % 2 else 1.0)
    assert abs(product - det_two_periodic(ps, p)) <= 1e-9 * scale


def test_two_periodic_merges_after_shift():
    # x and y differ by 2e-3, below the radius relative to |x| = 1e6
    ps = solve_zero_diagonal(nilpotent_example())
    p = PerturbationParams(1e6 + 1e-3, 1e6 - 1e-3)
    mapped = map_to_two_periodic(ps, p)
    assert mapped.total == 5
    assert len(mapped.entries) == 1
    assert mapped.entries[0].mult == 5
