import numpy as np
import pytest
from scipy.integrate import quad
from scipy.linalg import expm

from tsmengine.channels import (
    UnitaryKind,
    UnitarySpec,
    apply_channel,
    bloch_affine_from_kraus,
    build_unitary,
    choi_matrix,
    gaussian_povm_channel,
    identity_channel,
    kraus_completeness,
    projective_channel,
)
from tsmengine.qops import (
    HADAMARD,
    I2,
    I4,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_X,
    DimensionError,
    from_bloch,
    hamiltonian,
    tensor,
)

from conftest import PI, random_density_matrix

X_PLUS = np.array([1, 1]) / np.sqrt(2)
X_MINUS = np.array([1, -1]) / np.sqrt(2)
PI_XP = np.outer(X_PLUS, X_PLUS)
PI_XM = np.outer(X_MINUS, X_MINUS)

CHANNELS = ([gaussian_povm_channel(b) for b in (0.0, 0.3, 2.0, 10.0)]
            + [projective_channel(p) for p in np.linspace(0, PI / 2, 5)])
AXIS_STATES = [from_bloch(s * e) for e in np.eye(3) for s in (1, -1)]


def gaussian_povm_by_quadrature(rho, beta_M, sigma=1.0):
    """Integrate M_q rho M_q over the measurement record numerically."""
    q0 = np.sqrt(beta_M) * sigma
    norm = (2 * np.pi * sigma ** 2) ** -0.25

    def m(q):
        return norm * (np.exp(-(q - q0) ** 2 / (4 * sigma ** 2)) * PI_XP
                       + np.exp(-(q + q0) ** 2 / (4 * sigma ** 2)) * PI_XM)

    lo, hi = -q0 - 10 * sigma, q0 + 10 * sigma
    out = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            re = quad(lambda q: (m(q) @ rho @ m(q))[i, j].real, lo, hi, epsabs=1e-13, epsrel=1e-13)[0]
            im = quad(lambda q: (m(q) @ rho @ m(q))[i, j].imag, lo, hi, epsabs=1e-13, epsrel=1e-13)[0]
            out[i, j] = re + 1j * im
    return out


def test_gaussian_zero_strength_is_identity(rng):
    rho = random_density_matrix(2, rng)
    np.testing.assert_allclose(gaussian_povm_channel(0.0)(rho), rho, atol=1e-15)


def test_gaussian_strong_limit_is_x_dephasing(rng):
    for _ in range(5):
        rho = random_density_matrix(2, rng)
        expected = PI_XP @ rho @ PI_XP + PI_XM @ rho @ PI_XM
        np.testing.assert_allclose(gaussian_povm_channel(200.0)(rho), expected, atol=1e-12)


def test_gaussian_overlap_matches_quadrature(rng):
    rho = random_density_matrix(2, rng)
    numeric = gaussian_povm_by_quadrature(rho, 2.0)
    closed = gaussian_povm_channel(2.0)(rho)
    np.testing.assert_allclose(closed, numeric, atol=1e-8)
    # suppression of the x-basis coherence
    factor = (X_PLUS @ numeric @ X_MINUS) / (X_PLUS @ rho @ X_MINUS)
    assert abs(factor - np.exp(-1)) < 1e-8
    assert round(np.exp(-1), 6) == 0.367879


def test_gaussian_rejects_negative():
    with pytest.raises(ValueError):
        gaussian_povm_channel(-0.1)
    with pytest.raises(ValueError):
        gaussian_povm_channel(np.inf)


def test_projective_z_dephasing():
    ch = projective_channel(PI / 2)
    rho = from_bloch([0.3, 0.4, 0.2])
    out = apply_channel(ch, rho)
    np.testing.assert_allclose(out, from_bloch([0, 0, 0.2]), atol=1e-15)


def test_projective_x_equals_strong_gaussian(rng):
    for _ in range(5):
        rho = random_density_matrix(2, rng)
        np.testing.assert_allclose(projective_channel(0.0)(rho),
                                   gaussian_povm_channel(200.0)(rho), atol=1e-12)


def test_projective_idempotent(rng):
    for phi in np.linspace(0, PI, 7):
        ch = projective_channel(phi)
        for _ in range(100 // 7 + 1):
            once = ch(random_density_matrix(2, rng))
            np.testing.assert_allclose(ch(once), once, atol=1e-12)


@pytest.mark.parametrize("ch", CHANNELS, ids=lambda c: c.name)
def test_channel_is_cptp_and_unital(ch):
    np.testing.assert_allclose(kraus_completeness(ch), I2, atol=1e-12)
    assert np.linalg.eigvalsh(choi_matrix(ch)).min() >= -1e-10
    np.testing.assert_allclose(ch(I2 / 2), I2 / 2, atol=1e-12)


@pytest.mark.parametrize("ch", CHANNELS, ids=lambda c: c.name)
def test_bloch_affine_agrees_with_kraus(ch):
    m, v = bloch_affine_from_kraus(ch)
    np.testing.assert_allclose(m, ch.bloch_matrix, atol=1e-12)
    np.testing.assert_allclose(v, ch.bloch_offset, atol=1e-12)
    for rho in AXIS_STATES:
        r = np.array([np.trace(rho @ s).real for s in (SIGMA_X, np.array([[0, -1j], [1j, 0]]),
                                                        np.diag([1, -1]))])
        np.testing.assert_allclose(from_bloch(ch.bloch_matrix @ r + ch.bloch_offset), ch(rho),
                                   atol=1e-12)


def test_measurement_pumps_energy():
    h = hamiltonian(1.0)
    for beta_M in (0.1, 1.0, 5.0):
        assert np.linalg.norm(gaussian_povm_channel(beta_M)(h) - h) > 1e-8
    for phi in np.linspace(0, PI / 2, 9)[:-1]:
        assert np.linalg.norm(projective_channel(phi)(h) - h) > 1e-8
    # the commuting point leaves H_A alone
    np.testing.assert_allclose(projective_channel(PI / 2)(h), h, atol=1e-15)


def test_apply_channel_checks():
    with pytest.raises(DimensionError):
        apply_channel(identity_channel(), I4 / 4)


def test_identity_channel(rng):
    rho = random_density_matrix(2, rng)
    np.testing.assert_allclose(apply_channel(identity_channel(), rho), rho)


def test_partial_swap_matches_expm():
    gen = tensor(SIGMA_PLUS, SIGMA_MINUS) + tensor(SIGMA_MINUS, SIGMA_PLUS)
    for theta in np.linspace(0, PI, 11):
        u = build_unitary(UnitarySpec(UnitaryKind.PARTIAL_SWAP, theta))
        np.testing.assert_allclose(u, expm(1j * theta * gen), atol=1e-13)


def test_partial_swap_special_angles():
    u0 = build_unitary(UnitarySpec(UnitaryKind.PARTIAL_SWAP, 0.0))
    np.testing.assert_array_equal(u0, I4)
    u = build_unitary(UnitarySpec(UnitaryKind.PARTIAL_SWAP, PI / 2))
    pm = np.array([0, 1, 0, 0])
    np.testing.assert_allclose(u @ pm, [0, 0, 1j, 0], atol=1e-15)


def test_augmented_swap_at_zero_is_hadamard():
    u = build_unitary(UnitarySpec(UnitaryKind.AUGMENTED_SWAP, 0.0))
    np.testing.assert_allclose(u, np.kron(HADAMARD, I2), atol=1e-15)
    np.testing.assert_allclose(HADAMARD @ [1, 0], X_PLUS, atol=1e-15)


@pytest.mark.parametrize("kind", list(UnitaryKind))
def test_unitarity_over_theta(kind):
    for theta in np.linspace(0, PI, 31):
        u = build_unitary(UnitarySpec(kind, theta))
        np.testing.assert_allclose(u.conj().T @ u, I4, atol=1e-12)
