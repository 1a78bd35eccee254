"""Complex-vector utilities and the classical reference stack.

Provides:
 - dft_direct(x): O(N^2) discrete Fourier transform, the ground-truth oracle
 - fft_radix2(x, inverse): iterative radix-2 FFT (bit reversal + butterflies)
 - convolve_circular(a, b, method): circular convolution, direct or FFT-based
 - bluestein_classical(x): arbitrary-N DFT via chirp + power-of-two convolution
 - chirp_phases / wrapped_chirp_kernel: quadratic-phase sequences shared with
   the quantum pipeline

Conventions: the forward transform is unnormalized with kernel
exp(-2*pi*i*j*k/N); the inverse conjugates the kernel and divides by the
length. All vectors are 1-D complex128 numpy arrays ("ComplexVec").
"""

from __future__ import annotations

import numpy as np

# Entries per block when evaluating the direct DFT, keeps memory bounded for
# large N without giving up vectorization.
_DFT_BLOCK_ENTRIES = 1 << 22


def as_complex_vector(x) -> np.ndarray:
    """Validate and convert input to a 1-D complex128 array.

    Raises ValueError for empty input, non-1-D shapes, or non-finite entries.
    """
    a = np.asarray(x, dtype=np.complex128)
    if a.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {a.shape}")
    if a.size == 0:
        raise ValueError("vector must have length >= 1")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("vector entries must be finite")
    return a


def relative_l2_error(approx, exact) -> float:
    """||approx - exact|| / ||exact||, with ||exact|| = 0 falling back to absolute."""
    approx = np.asarray(approx, dtype=np.complex128)
    exact = np.asarray(exact, dtype=np.complex128)
    denom = np.linalg.norm(exact)
    diff = np.linalg.norm(approx - exact)
    return float(diff / denom) if denom > 0 else float(diff)


def dft_direct(x) -> np.ndarray:
    """Unnormalized N-point DFT by direct summation, y_k = sum_j x_j e^{-2pi i jk/N}.

    O(N^2); this is the reference oracle for everything else in the package.
    The phase index j*k is reduced mod N in integer arithmetic before
    exponentiation, so accuracy does not degrade with N.
    """
    x = as_complex_vector(x)
    n = x.size
    idx = np.arange(n, dtype=np.int64)
    out = np.empty(n, dtype=np.complex128)
    block = max(1, _DFT_BLOCK_ENTRIES // n)
    base = -2j * np.pi / n
    for start in range(0, n, block):
        rows = idx[start:start + block, None]
        out[start:start + block] = np.exp(base * ((rows * idx[None, :]) % n)) @ x
    return out


def _bit_reversal_permutation(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    rev = np.zeros(n, dtype=np.int64)
    for i in range(1, n):
        rev[i] = (rev[i >> 1] >> 1) | ((i & 1) << (bits - 1))
    return rev


def fft_radix2(x, inverse: bool = False) -> np.ndarray:
    """Iterative radix-2 FFT; length must be a power of two.

    Forward matches dft_direct elementwise; inverse conjugates the twiddles
    and divides by the length, so inverse(forward(x)) == x.
    """
    x = as_complex_vector(x)
    n = x.size
    if n & (n - 1):
        raise ValueError(f"fft_radix2 requires a power-of-two length, got {n}")
    a = x[_bit_reversal_permutation(n)]
    sign = 1.0 if inverse else -1.0
    width = 2
    while width <= n:
        half = width // 2
        tw = np.exp(sign * 2j * np.pi * np.arange(half) / width)
        blocks = a.reshape(-1, width)
        top = blocks[:, :half].copy()
        bot = blocks[:, half:] * tw
        blocks[:, :half] = top + bot
        blocks[:, half:] = top - bot
        width *= 2
    if inverse:
        a /= n
    return a


def convolve_circular(a, b, method: str = "auto") -> np.ndarray:
    """Circular convolution c_k = sum_j a_j b_{(k-j) mod M} of equal-length vectors.

    method: "direct" (O(M^2), oracle), "fft" (power-of-two lengths only), or
    "auto" (fft when the length is a power of two, else direct).
    """
    a = as_complex_vector(a)
    b = as_complex_vector(b)
    if a.size != b.size:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    m = a.size
    if method == "auto":
        method = "direct" if m & (m - 1) else "fft"
    if method == "fft":
        if m & (m - 1):
            raise ValueError(f"fft convolution requires a power-of-two length, got {m}")
        return fft_radix2(fft_radix2(a) * fft_radix2(b), inverse=True)
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")
    k = np.arange(m)
    return (b[(k[:, None] - k[None, :]) % m] * a[None, :]).sum(axis=1)


def chirp_phases(n: int, length: int, sign: int = -1) -> np.ndarray:
    """Quadratic-phase sequence exp(sign * i*pi*t^2/n) for t in [0, length).

    t^2 is reduced mod 2n in integer arithmetic (the sequence has period 2n
    in t^2), so the phases stay exact for large t.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    t = np.arange(length, dtype=np.int64)
    return np.exp(sign * 1j * np.pi * ((t * t) % (2 * n)) / n)


def wrapped_chirp_kernel(n: int, big_m: int) -> np.ndarray:
    """Length-M chirp kernel whose circular indexing reproduces exp(i*pi*(k-j)^2/n).

    b[t] = exp(+i*pi*t^2/n) for 0 <= t <= n-1, b[M-t] carries the same value
    for 1 <= t <= n-1 (the negative offsets), and the middle is zero. Needs
    M >= 2n-1 so the two ranges cannot collide.
    """
    if big_m < 2 * n - 1:
        raise ValueError(f"workspace {big_m} too small for kernel of size n={n}")
    pos = chirp_phases(n, n, sign=+1)
    b = np.zeros(big_m, dtype=np.complex128)
    b[:n] = pos
    if n > 1:
        b[big_m - n + 1:] = pos[1:][::-1]
    return b


def workspace_qubits(n: int) -> int:
    """Minimal m with 2^m >= 2n-1; at least one qubit even for n = 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return max(1, int(2 * n - 2).bit_length())


def bluestein_classical(x) -> np.ndarray:
    """N-point DFT for arbitrary N via the chirp-z reduction.

    Chirps the input, zero-pads to M = 2^ceil(log2(2N-1)), circularly
    convolves with the wrapped chirp kernel using power-of-two FFTs, and
    de-chirps the first N outputs. Matches dft_direct for any N.
    """
    x = as_complex_vector(x)
    n = x.size
    if n == 1:
        return x.copy()
    big_m = 1 << workspace_qubits(n)
    chirp = chirp_phases(n, n, sign=-1)
    a = np.zeros(big_m, dtype=np.complex128)
    a[:n] = x * chirp
    b = wrapped_chirp_kernel(n, big_m)
    c = fft_radix2(fft_radix2(a) * fft_radix2(b), inverse=True)
    return c[:n] * chirp
