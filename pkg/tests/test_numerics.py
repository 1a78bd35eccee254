import numpy as np
import pytest

from qba.numerics import (
    as_complex_vector,
    bluestein_classical,
    chirp_phases,
    convolve_circular,
    dft_direct,
    fft_radix2,
    relative_l2_error,
    workspace_qubits,
    wrapped_chirp_kernel,
)


def random_vector(n, seed):
    rng = np.random.default_rng(seed)
    return rng.normal(size=n) + 1j * rng.normal(size=n)


class TestDftDirect:
    def test_three_point_basis_state(self):
        # DFT of the second basis vector is the column of third roots of unity.
        y = dft_direct([0, 1, 0])
        expected = np.exp(-2j * np.pi * np.arange(3) / 3)
        np.testing.assert_allclose(y, expected, atol=1e-14)
        np.testing.assert_allclose(y, [1, -0.5 - 0.866j, -0.5 + 0.866j], atol=1e-3)

    def test_six_point_step_input(self):
        y = dft_direct([1, 1, 1, 0, 0, 0])
        s3 = np.sqrt(3.0)
        np.testing.assert_allclose(y, [3, 1 - 1j * s3, 0, 1, 0, 1 + 1j * s3], atol=1e-13)

    def test_single_point_is_identity(self):
        c = 0.3 - 1.7j
        np.testing.assert_allclose(dft_direct([c]), [c], atol=1e-15)

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            dft_direct([])

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            dft_direct([1.0, np.nan])


class TestFftRadix2:
    def test_two_point(self):
        np.testing.assert_allclose(fft_radix2([1, 0]), [1, 1], atol=1e-15)

    def test_constant_to_delta(self):
        np.testing.assert_allclose(fft_radix2([1, 1, 1, 1]), [4, 0, 0, 0], atol=1e-14)

    def test_matches_direct_oracle(self):
        x = random_vector(8, seed=11)
        np.testing.assert_allclose(fft_radix2(x), dft_direct(x), atol=1e-12)

    @pytest.mark.parametrize("n", [2, 8, 64, 1024, 1 << 16])
    def test_round_trip(self, n):
        x = random_vector(n, seed=n)
        back = fft_radix2(fft_radix2(x), inverse=True)
        assert np.max(np.abs(back - x)) < 1e-12

    def test_non_power_of_two_rejected(self):
        with pytest.raises(ValueError):
            fft_radix2([1, 2, 3])


class TestConvolveCircular:
    def test_delta_is_identity(self):
        b = random_vector(4, seed=3)
        np.testing.assert_allclose(convolve_circular([1, 0, 0, 0], b), b, atol=1e-14)

    def test_shifted_delta_rotates(self):
        b = random_vector(4, seed=4)
        np.testing.assert_allclose(
            convolve_circular([0, 1, 0, 0], b), [b[3], b[0], b[1], b[2]], atol=1e-14
        )

    def test_fft_path_matches_direct(self):
        a = random_vector(8, seed=5)
        b = random_vector(8, seed=6)
        direct = convolve_circular(a, b, method="direct")
        fast = convolve_circular(a, b, method="fft")
        assert np.max(np.abs(fast - direct)) < 1e-11

    def test_direct_used_for_odd_lengths(self):
        a = random_vector(5, seed=7)
        b = random_vector(5, seed=8)
        # brute-force oracle written out independently of the implementation
        expected = np.array(
            [sum(a[j] * b[(k - j) % 5] for j in range(5)) for k in range(5)]
        )
        np.testing.assert_allclose(convolve_circular(a, b), expected, atol=1e-12)

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            convolve_circular([1, 0], [1, 0, 0])


class TestBluesteinClassical:
    def test_six_point_step_input(self):
        s3 = np.sqrt(3.0)
        y = bluestein_classical([1, 1, 1, 0, 0, 0])
        np.testing.assert_allclose(y, [3, 1 - 1j * s3, 0, 1, 0, 1 + 1j * s3], atol=1e-12)

    def test_single_point(self):
        c = -2.0 + 0.25j
        np.testing.assert_allclose(bluestein_classical([c]), [c], atol=1e-15)

    def test_prime_size_matches_oracle(self):
        x = random_vector(7, seed=17)
        assert np.max(np.abs(bluestein_classical(x) - dft_direct(x))) < 1e-11

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            bluestein_classical([])

    def test_oracle_equivalence_sweep(self):
        # every 1 <= N <= 64, ten random vectors each
        for n in range(1, 65):
            for trial in range(10):
                x = random_vector(n, seed=1000 * n + trial)
                err = relative_l2_error(bluestein_classical(x), dft_direct(x))
                assert err < 1e-10, f"n={n} trial={trial}: {err:.3e}"


class TestProperties:
    @pytest.mark.parametrize("n", [1, 2, 5, 16, 37, 128])
    def test_parseval(self, n):
        x = random_vector(n, seed=n + 50)
        y = dft_direct(x)
        lhs = np.sum(np.abs(y) ** 2)
        rhs = n * np.sum(np.abs(x) ** 2)
        assert abs(lhs - rhs) / rhs < 1e-9

    @pytest.mark.parametrize("n", [3, 8, 21])
    def test_linearity(self, n):
        rng = np.random.default_rng(n)
        x, z = random_vector(n, seed=n + 1), random_vector(n, seed=n + 2)
        a = complex(rng.normal(), rng.normal())
        b = complex(rng.normal(), rng.normal())
        lhs = dft_direct(a * x + b * z)
        rhs = a * dft_direct(x) + b * dft_direct(z)
        assert relative_l2_error(lhs, rhs) < 1e-10


class TestChirpHelpers:
    def test_chirp_sign_conventions(self):
        fwd = chirp_phases(3, 3, sign=-1)
        np.testing.assert_allclose(fwd[1], np.exp(-1j * np.pi / 3), atol=1e-15)
        np.testing.assert_allclose(chirp_phases(3, 3, sign=+1), np.conj(fwd), atol=1e-15)

    def test_chirp_large_index_stays_exact(self):
        # t^2 mod 2n keeps the phase argument small; compare against mpmath-free
        # exact reduction done by hand for one big t.
        n, t = 6, 10**6 + 3
        val = chirp_phases(n, t + 1, sign=-1)[t]
        reduced = (t * t) % (2 * n)
        np.testing.assert_allclose(val, np.exp(-1j * np.pi * reduced / n), atol=1e-15)

    def test_wrapped_kernel_layout(self):
        b = wrapped_chirp_kernel(3, 8)
        w = np.exp(1j * np.pi / 3)
        np.testing.assert_allclose(b[0], 1.0, atol=1e-15)
        np.testing.assert_allclose(b[1], w, atol=1e-15)
        np.testing.assert_allclose(b[7], w, atol=1e-15)  # offset -1 wraps to M-1
        np.testing.assert_allclose(b[2], w**4, atol=1e-14)
        np.testing.assert_allclose(b[6], w**4, atol=1e-14)
        np.testing.assert_allclose(b[3:6], 0.0, atol=0)

    def test_wrapped_kernel_reproduces_offsets(self):
        # circular indexing must give exp(i*pi*(k-j)^2/n) for all |k-j| < n
        n, big_m = 5, 16
        b = wrapped_chirp_kernel(n, big_m)
        for d in range(-(n - 1), n):
            np.testing.assert_allclose(
                b[d % big_m], np.exp(1j * np.pi * d * d / n), atol=1e-14
            )

    @pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (3, 3), (4, 3), (5, 4), (6, 4), (9, 5)])
    def test_workspace_qubits(self, n, m):
        assert workspace_qubits(n) == m
        assert (1 << m) >= 2 * n - 1

    def test_as_complex_vector_rejects_matrix(self):
        with pytest.raises(ValueError):
            as_complex_vector(np.ones((2, 2)))
