import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg
import scipy.special

from fockmoments.fock import CapExceeded, JacobiSequence, STANDARD
from fockmoments.laws import arcsine_cdf
from fockmoments.moments import moment_by_tridiagonal
from fockmoments.spectral import (
    DiscreteMeasure,
    EIGEN_DIM_CAP,
    Tridiagonal,
    TruncationTooSmall,
    density_cdf,
    density_spectrum_sup,
    eigendecompose,
    hermite_state_density,
    ks_distance_to_arcsine,
    lossless_order,
    reconstruct_state_measure,
    truncated_position_matrix,
)

Q_HALF = JacobiSequence.q_deformed(Fraction(1, 2))


def test_truncated_position_matrix_standard():
    tri = truncated_position_matrix(STANDARD, 3)
    assert tri.diag == (0.0, 0.0, 0.0)
    assert tri.offdiag == pytest.approx((math.sqrt(0.5), 1.0))
    with pytest.raises(ValueError):
        truncated_position_matrix(STANDARD, 0)


def test_eigendecompose_dimension_one():
    spec = eigendecompose(Tridiagonal(diag=(0.0,), offdiag=()), row=0)
    assert spec.eigenvalues == (0.0,)
    assert spec.squared_components == (1.0,)


def test_eigendecompose_two_levels():
    # X restricted to two levels has eigenvalues +-sqrt(1/2), each seen
    # with weight 1/2 from either basis row
    spec = eigendecompose(truncated_position_matrix(STANDARD, 2), row=0)
    b = math.sqrt(0.5)
    assert spec.eigenvalues == pytest.approx((-b, b), abs=1e-12)
    assert spec.squared_components == pytest.approx((0.5, 0.5), abs=1e-12)


def test_eigendecompose_three_levels_hand_values():
    # char poly x(x^2 - 3/2): eigenvalues -sqrt(3/2), 0, sqrt(3/2); the
    # null vector (b2, 0, -b1)/|.| puts weight 2/3 on row 0, symmetry
    # splits the rest evenly
    spec = eigendecompose(truncated_position_matrix(STANDARD, 3), row=0)
    r = math.sqrt(1.5)
    assert spec.eigenvalues == pytest.approx((-r, 0.0, r), abs=1e-12)
    assert spec.squared_components == pytest.approx(
        (1 / 6, 2 / 3, 1 / 6), abs=1e-12
    )


def test_eigendecompose_matches_scipy():
    for seq, dim, row in ((STANDARD, 10, 0), (STANDARD, 50, 3), (Q_HALF, 40, 5), (STANDARD, 200, 7)):
        tri = truncated_position_matrix(seq, dim)
        spec = eigendecompose(tri, row=row)
        evals, evecs = scipy.linalg.eigh_tridiagonal(
            np.array(tri.diag), np.array(tri.offdiag)
        )
        assert np.allclose(spec.eigenvalues, evals, atol=1e-10)
        assert np.allclose(
            spec.squared_components, evecs[row, :] ** 2, atol=1e-10
        )


def test_eigendecompose_spectra_symmetric_and_normalized():
    for dim in (5, 33, 128):
        spec = eigendecompose(truncated_position_matrix(STANDARD, dim), row=0)
        vals = spec.eigenvalues
        assert all(b > a for a, b in zip(vals, vals[1:]))
        for i in range(dim):
            assert vals[i] == pytest.approx(-vals[dim - 1 - i], abs=1e-10)
        assert math.fsum(spec.squared_components) == pytest.approx(1.0, abs=1e-12)


def test_eigendecompose_validation():
    tri = truncated_position_matrix(STANDARD, 4)
    with pytest.raises(ValueError):
        eigendecompose(tri, row=4)
    with pytest.raises(ValueError):
        eigendecompose(tri, row=-1)
    with pytest.raises(ValueError):
        eigendecompose(Tridiagonal(diag=(0.0, 0.0), offdiag=()), row=0)
    big = Tridiagonal(
        diag=(0.0,) * (EIGEN_DIM_CAP + 1), offdiag=(1.0,) * EIGEN_DIM_CAP
    )
    with pytest.raises(CapExceeded):
        eigendecompose(big, row=0)


def test_discrete_measure_validation():
    with pytest.raises(ValueError):
        DiscreteMeasure(atoms=())
    with pytest.raises(ValueError):
        DiscreteMeasure(atoms=((0.0, 0.6), (0.0, 0.4)))
    with pytest.raises(ValueError):
        DiscreteMeasure(atoms=((0.0, 1.5), (1.0, -0.5)))
    with pytest.raises(ValueError):
        DiscreteMeasure(atoms=((0.0, 0.5), (1.0, 0.4)))


def test_discrete_measure_accessors():
    measure = DiscreteMeasure(atoms=((-1.0, 0.5), (1.0, 0.5)))
    assert measure.locations == (-1.0, 1.0)
    assert measure.weights == (0.5, 0.5)
    assert measure.moment(0) == pytest.approx(1.0)
    assert measure.moment(1) == pytest.approx(0.0)
    assert measure.moment(2) == pytest.approx(1.0)
    assert measure.cdf(-2.0) == 0.0
    assert measure.cdf(-1.0) == pytest.approx(0.5)
    assert measure.cdf(0.5) == pytest.approx(0.5)
    assert measure.cdf(1.0) == pytest.approx(1.0)
    assert measure.to_csv() == "location,weight\n-1.0,0.5\n1.0,0.5\n"
    assert measure.to_json() == {"locations": [-1.0, 1.0], "weights": [0.5, 0.5]}
    with pytest.raises(ValueError):
        measure.moment(-1)


def test_reconstruct_requires_headroom():
    with pytest.raises(TruncationTooSmall):
        reconstruct_state_measure(STANDARD, 5, 6)
    with pytest.raises(ValueError):
        reconstruct_state_measure(STANDARD, 5, 20, scale=0)
    # the minimum allowed dimension works
    measure = reconstruct_state_measure(STANDARD, 5, 7)
    assert len(measure.atoms) == 7


def test_reconstruct_vacuum_variance():
    measure = reconstruct_state_measure(STANDARD, 0, 50)
    assert measure.moment(2) == pytest.approx(0.5, abs=1e-12)
    assert measure.moment(1) == pytest.approx(0.0, abs=1e-12)


def test_reconstruct_scaling_divides_locations():
    plain = reconstruct_state_measure(STANDARD, 2, 30, scale=1)
    scaled = reconstruct_state_measure(STANDARD, 2, 30, scale=4)
    for (x1, w1), (x2, w2) in zip(plain.atoms, scaled.atoms):
        assert x2 == pytest.approx(x1 / 2.0, abs=1e-14)
        assert w2 == pytest.approx(w1, abs=1e-14)


def test_lossless_order_boundary():
    # the truncated walk matches exact moments up to 2(K - 1 - N) and
    # deviates visibly just beyond
    n, dim = 3, 6
    assert lossless_order(n, dim) == 4
    measure = reconstruct_state_measure(STANDARD, n, dim)
    for order in (0, 2, 4):
        exact = float(moment_by_tridiagonal(STANDARD, n, order))
        assert measure.moment(order) == pytest.approx(exact, rel=1e-12)
    exact6 = float(moment_by_tridiagonal(STANDARD, n, 6))
    assert abs(measure.moment(6) - exact6) > 1e-6 * exact6


def test_reconstructed_moments_match_exact():
    for n in (0, 1, 4):
        dim = n + 40
        measure = reconstruct_state_measure(STANDARD, n, dim, scale=1)
        for order in range(0, 13):
            exact = float(moment_by_tridiagonal(STANDARD, n, order))
            assert measure.moment(order) == pytest.approx(
                exact, rel=1e-10, abs=1e-10
            )


def test_reconstruct_q_sequence():
    seq = Q_HALF
    measure = reconstruct_state_measure(seq, 2, 40, scale=1)
    for order in (2, 4, 6):
        exact = float(moment_by_tridiagonal(seq, 2, order))
        assert measure.moment(order) == pytest.approx(exact, rel=1e-10)


def test_hermite_state_density_values():
    # ground state: exp(-x^2)/sqrt(pi)
    assert hermite_state_density(0, 0.0) == pytest.approx(
        1.0 / math.sqrt(math.pi), rel=1e-14
    )
    for x in (-1.3, 0.2, 2.5):
        assert hermite_state_density(0, x) == pytest.approx(
            math.exp(-x * x) / math.sqrt(math.pi), rel=1e-13
        )
    # first excited state vanishes at the origin
    assert hermite_state_density(1, 0.0) == pytest.approx(0.0, abs=1e-30)


def test_hermite_state_density_matches_scipy():
    for n in (1, 2, 3, 6):
        poly = scipy.special.hermite(n)
        norm = 2.0**n * math.gamma(n + 1) * math.sqrt(math.pi)
        for x in (-2.1, -0.4, 0.0, 0.9, 3.3):
            expected = poly(x) ** 2 * math.exp(-x * x) / norm
            assert hermite_state_density(n, x) == pytest.approx(
                expected, rel=1e-10, abs=1e-13
            )


def test_hermite_state_density_normalization_and_variance():
    # total mass 1 and second moment N + 1/2, the exact operator value
    for n in (0, 1, 5, 40):
        xs = np.linspace(-14.0, 14.0, 200_001)
        dens = np.array([hermite_state_density(n, x) for x in xs])
        assert np.trapezoid(dens, xs) == pytest.approx(1.0, abs=1e-8)
        assert np.trapezoid(xs**2 * dens, xs) == pytest.approx(
            n + 0.5, abs=1e-6
        )


def test_hermite_state_density_cap():
    with pytest.raises(CapExceeded):
        hermite_state_density(201, 0.0)
    assert hermite_state_density(200, 0.1) >= 0.0


def test_density_cdf_monotone_and_total():
    xs = [(-10.0 + 20.0 * i / 2000) for i in range(2001)]
    cdf = density_cdf(2, xs)
    assert cdf[0] == 0.0
    assert cdf[-1] == pytest.approx(1.0, abs=1e-8)
    assert all(b >= a for a, b in zip(cdf, cdf[1:]))
    with pytest.raises(ValueError):
        density_cdf(2, [0.0])
    with pytest.raises(ValueError):
        density_cdf(2, [0.0, 0.0])


def test_ks_distance_hand_case():
    # two atoms at +-1 with mass 1/2: F jumps 0 -> 1/2 -> 1 while the
    # arcsine CDF passes 1/4 and 3/4: distance exactly 1/4
    measure = DiscreteMeasure(atoms=((-1.0, 0.5), (1.0, 0.5)))
    assert ks_distance_to_arcsine(measure) == pytest.approx(0.25, abs=1e-12)


def test_ks_distance_decreases_with_resolution():
    prev = None
    for n in (5, 20, 80):
        measure = reconstruct_state_measure(STANDARD, n, 2 * n + 64, scale=n)
        ks = ks_distance_to_arcsine(measure)
        if prev is not None:
            assert ks < prev
        prev = ks


def test_reconstructed_odd_moments_vanish_at_canonical_scale():
    # at canonical scale the cancelling odd sums stay below 1e-10; the
    # unscaled ones only cancel to machine epsilon relative to the
    # absolute moment, which grows like |x|^order
    for n in (1, 4, 10):
        measure = reconstruct_state_measure(STANDARD, n, n + 64, scale=n)
        for order in (1, 3, 5, 7, 9, 11):
            assert abs(measure.moment(order)) <= 1e-10


def test_reconstructed_odd_moments_cancel_to_conditioning():
    measure = reconstruct_state_measure(STANDARD, 10, 74, scale=1)
    for order in (1, 3, 5, 7, 9, 11):
        absolute = math.fsum(w * abs(x) ** order for x, w in measure.atoms)
        assert abs(measure.moment(order)) <= 1e-12 * absolute


def test_density_spectrum_sup_small():
    assert density_spectrum_sup(0, 96, panels=6000) < 5e-3
    assert density_spectrum_sup(2, 98, panels=6000) < 5e-3
