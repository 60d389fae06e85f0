"""JIT-compiled kernels for Hardy's Z function, ζ on the critical line and trigonometric sums.

All kernels run with fastmath=False so repeated runs are bit-for-bit identical. Vector kernels
parallelise over evaluation points with prange; every point owns its own accumulator and
summation order, so the parallel schedule never changes a result.

Riemann–Siegel remainder coefficients C0, C1, C2 are the standard Taylor expansions in
z = 2p - 1 (p the fractional part of sqrt(t / 2π)), Gabcke's tables.
"""

import math

import numpy as np
from numba import njit, prange

TWO_PI = 2.0 * math.pi

# C0: even powers z^0 .. z^42
RS_C0 = np.array([
    0.38268343236508977173, 0.43724046807752044936, 0.13237657548034352333,
    -0.01360502604767418865, -0.01356762197010358088, -0.00162372532314446528,
    0.00029705353733379691, 0.00007943300879521469, 0.00000046556124614504,
    -0.00000143272516309551, -0.00000010354847112313, 0.00000001235792708386,
    0.00000000178810838580, -0.00000000003391414390, -0.00000000001632663390,
    -0.00000000000037851093, 0.00000000000009327423, 0.00000000000000522184,
    -0.00000000000000033507, -0.00000000000000003412, 0.00000000000000000058,
    0.00000000000000000015,
])

# C1: odd powers z^1 .. z^45
RS_C1 = np.array([
    -0.02682510262837534703, 0.01378477342635185305, 0.03849125048223508223,
    0.00987106629906207647, -0.00331075976085840433, -0.00146478085779541508,
    -0.00001320794062487696, 0.00005922748701847141, 0.00000598024258537345,
    -0.00000096413224561698, -0.00000018334733722714, 0.00000000446708756272,
    0.00000000270963508218, 0.00000000007785288654, -0.00000000002343762601,
    -0.00000000000158301728, 0.00000000000012119942, 0.00000000000001458378,
    -0.00000000000000028786, -0.00000000000000008663, -0.00000000000000000084,
    0.00000000000000000036, 0.00000000000000000001,
])

# C2: even powers z^0 .. z^46
RS_C2 = np.array([
    0.00518854283029316849, 0.00030946583880634746, -0.01133594107822937338,
    0.00223304574195814477, 0.00519663740886233021, 0.00034399144076208337,
    -0.00059106484274705828, -0.00010229972547935857, 0.00002088839221699276,
    0.00000592766549309654, -0.00000016423838362436, -0.00000015161199700941,
    -0.00000000590780369821, 0.00000000209115148595, 0.00000000017815649583,
    -0.00000000001616407246, -0.00000000000238069625, 0.00000000000005398265,
    0.00000000000001975014, 0.00000000000000023333, -0.00000000000000011188,
    -0.00000000000000000416, 0.00000000000000000044, 0.00000000000000000003,
])


@njit(cache=True)
def _theta_numba(t: float) -> float:
    """Riemann–Siegel θ(t), asymptotic series through the t^-9 term."""
    inv = 1.0 / t
    inv2 = inv * inv
    tail = inv * (
        1.0 / 48.0
        + inv2 * (7.0 / 5760.0
                  + inv2 * (31.0 / 80640.0
                            + inv2 * (127.0 / 430080.0
                                      + inv2 * (511.0 / 1216512.0))))
    )
    return 0.5 * t * math.log(t / TWO_PI) - 0.5 * t - math.pi / 8.0 + tail


@njit(cache=True)
def _horner_z2(coeffs: np.ndarray, z2: float) -> float:
    acc = 0.0
    for i in range(coeffs.shape[0] - 1, -1, -1):
        acc = acc * z2 + coeffs[i]
    return acc


@njit(cache=True)
def _hardy_z_rs_numba(
    t: float, c0: np.ndarray, c1: np.ndarray, c2: np.ndarray
) -> float:
    """Riemann–Siegel main sum plus remainder terms C0, C1, C2."""
    tau = math.sqrt(t / TWO_PI)
    n = int(tau)
    th = _theta_numba(t)

    main = 0.0
    for k in range(1, n + 1):
        main += math.cos(th - t * math.log(k)) / math.sqrt(k)

    z = 2.0 * (tau - n) - 1.0
    z2 = z * z
    r0 = _horner_z2(c0, z2)
    r1 = z * _horner_z2(c1, z2)
    r2 = _horner_z2(c2, z2)
    remainder = r0 + r1 / tau + r2 / (tau * tau)

    sign = 1.0 if (n - 1) % 2 == 0 else -1.0
    return 2.0 * main + sign * remainder / math.sqrt(tau)


@njit(cache=True)
def _zeta_em_numba(t: float, bernoulli_ratio: np.ndarray) -> complex:
    """ζ(1/2 + it) by Euler–Maclaurin summation.

    bernoulli_ratio[j] holds B_{2j+2} / (2j+2)!. With N = t/π + 10 the correction terms
    decay at least like 4^-j.
    """
    s = complex(0.5, t)
    n_terms = int(t / math.pi) + 10

    acc_re = 0.0
    acc_im = 0.0
    for n in range(1, n_terms):
        ln = math.log(n)
        mag = math.exp(-0.5 * ln)
        acc_re += mag * math.cos(t * ln)
        acc_im -= mag * math.sin(t * ln)
    acc = complex(acc_re, acc_im)

    big_n = float(n_terms)
    ln_n = math.log(big_n)
    n_pow = complex(math.cos(t * ln_n), -math.sin(t * ln_n)) * math.exp(-0.5 * ln_n)

    acc += big_n * n_pow / (s - 1.0)
    acc += 0.5 * n_pow

    q = s / big_n
    for j in range(bernoulli_ratio.shape[0]):
        acc += bernoulli_ratio[j] * q * n_pow
        q = q * (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0) / (big_n * big_n)
    return acc


@njit(cache=True)
def _hardy_z_em_numba(t: float, bernoulli_ratio: np.ndarray) -> float:
    """Z(t) = Re(exp(iθ(t)) ζ(1/2 + it)) via Euler–Maclaurin."""
    th = _theta_numba(t)
    zeta = _zeta_em_numba(t, bernoulli_ratio)
    return math.cos(th) * zeta.real - math.sin(th) * zeta.imag


@njit(cache=True)
def _hardy_z_numba(
    t: float,
    em_cutoff: float,
    bernoulli_ratio: np.ndarray,
    c0: np.ndarray,
    c1: np.ndarray,
    c2: np.ndarray,
) -> float:
    if t < em_cutoff:
        return _hardy_z_em_numba(t, bernoulli_ratio)
    return _hardy_z_rs_numba(t, c0, c1, c2)


@njit(cache=True, parallel=True)
def _hardy_z_vector_numba(
    ts: np.ndarray,
    em_cutoff: float,
    bernoulli_ratio: np.ndarray,
    c0: np.ndarray,
    c1: np.ndarray,
    c2: np.ndarray,
) -> np.ndarray:
    out = np.empty(ts.shape[0], dtype=np.float64)
    for i in prange(ts.shape[0]):
        out[i] = _hardy_z_numba(ts[i], em_cutoff, bernoulli_ratio, c0, c1, c2)
    return out


@njit(cache=True, parallel=True)
def _theta_vector_numba(ts: np.ndarray) -> np.ndarray:
    out = np.empty(ts.shape[0], dtype=np.float64)
    for i in prange(ts.shape[0]):
        out[i] = _theta_numba(ts[i])
    return out


@njit(cache=True, parallel=True)
def _sine_sum_numba(ts: np.ndarray, log_n: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """out[i] = Σ_j weights[j] · sin(ts[i] · log_n[j]), Neumaier-compensated per point."""
    out = np.empty(ts.shape[0], dtype=np.float64)
    for i in prange(ts.shape[0]):
        t = ts[i]
        total = 0.0
        comp = 0.0
        for j in range(log_n.shape[0]):
            term = weights[j] * math.sin(t * log_n[j])
            tmp = total + term
            if abs(total) >= abs(term):
                comp += (total - tmp) + term
            else:
                comp += (term - tmp) + total
            total = tmp
        out[i] = total + comp
    return out


@njit(cache=True)
def _compensated_exp_sum_numba(phases: np.ndarray, weights: np.ndarray) -> tuple[float, float]:
    """Σ weights[j] · exp(i · phases[j]) with Neumaier compensation on both components."""
    re = 0.0
    re_c = 0.0
    im = 0.0
    im_c = 0.0
    for j in range(phases.shape[0]):
        a = weights[j] * math.cos(phases[j])
        tmp = re + a
        if abs(re) >= abs(a):
            re_c += (re - tmp) + a
        else:
            re_c += (a - tmp) + re
        re = tmp

        b = weights[j] * math.sin(phases[j])
        tmp = im + b
        if abs(im) >= abs(b):
            im_c += (im - tmp) + b
        else:
            im_c += (b - tmp) + im
        im = tmp
    return re + re_c, im + im_c
