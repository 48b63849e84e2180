"""Airy functions Ai, Bi and their derivatives, plain and in overflow-safe scaled form."""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple, Tuple

import numpy as np
from scipy import special

from config import tuning
from world.errors import AiryDomainError


class AiryQuad(NamedTuple):
    ai: complex
    ai_prime: complex
    bi: complex
    bi_prime: complex
    at: complex

    def wronskian(self) -> complex:
        return self.ai * self.bi_prime - self.ai_prime * self.bi


class ScaledAiryQuad(NamedTuple):
    """Mantissas of Ai, Ai', Bi, Bi' with one real exponent per family.

    Ai(z) = ai * exp(ai_exponent), Bi(z) = bi * exp(bi_exponent); the
    derivatives share the exponent of their family.
    """

    ai: complex
    ai_prime: complex
    bi: complex
    bi_prime: complex
    ai_exponent: float
    bi_exponent: float
    at: complex

    def unscaled(self) -> AiryQuad:
        with np.errstate(over="ignore"):
            ai_factor = float(np.exp(self.ai_exponent))
            bi_factor = float(np.exp(self.bi_exponent))
        return AiryQuad(
            _times(self.ai, ai_factor),
            _times(self.ai_prime, ai_factor),
            _times(self.bi, bi_factor),
            _times(self.bi_prime, bi_factor),
            self.at,
        )


def _times(mantissa: complex, factor: float) -> complex:
    # component-wise so that a zero component stays zero when factor is inf
    return complex(mantissa.real * factor if mantissa.real else 0.0, mantissa.imag * factor if mantissa.imag else 0.0)


def _near_real_axis(z: complex) -> bool:
    return abs(z.imag) * math.sqrt(max(1.0, abs(z.real))) <= tuning.AIRY_TAYLOR_REACH


def _taylor_shift(x: float, value: float, slope: float, h: complex) -> Tuple[complex, complex]:
    """Continue a solution of y'' = x*y from the real point x to x + h."""
    if h == 0:
        return complex(value), complex(slope)
    # Taylor coefficients obey c[k+2] = (x*c[k] + c[k-1]) / ((k+1)(k+2))
    c_before, c_here, c_next = 0.0, value, slope
    total = value + slope * h
    derivative = complex(slope)
    h_power = h
    quiet = 0
    for k in range(tuning.AIRY_TAYLOR_MAX_TERMS):
        c_new = (x * c_here + c_before) / ((k + 1) * (k + 2))
        term = c_new * h_power * h
        d_term = (k + 2) * c_new * h_power
        total += term
        derivative += d_term
        c_before, c_here, c_next = c_here, c_next, c_new
        h_power *= h
        scale = abs(total) + abs(derivative)
        if k > 2 and abs(term) + abs(d_term) <= tuning.AIRY_TAYLOR_TOL * scale:
            quiet += 1
            if quiet >= 2:
                break
        else:
            quiet = 0
    return complex(total), derivative


def airy_eval_scaled(z: complex) -> ScaledAiryQuad:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise AiryDomainError(f"Airy functions need a finite argument, got {z!r}")

    if _near_real_axis(z):
        x = z.real
        if x > 0:
            ai, aip, bi, bip = (float(v) for v in special.airye(x))
            zeta = 2.0 / 3.0 * x * math.sqrt(x)
            ai_exponent, bi_exponent = -zeta, zeta
        else:
            ai, aip, bi, bip = (float(v) for v in special.airy(x))
            ai_exponent = bi_exponent = 0.0
        shift = complex(0.0, z.imag)
        ai_c, aip_c = _taylor_shift(x, ai, aip, shift)
        bi_c, bip_c = _taylor_shift(x, bi, bip, shift)
        return ScaledAiryQuad(ai_c, aip_c, bi_c, bip_c, ai_exponent, bi_exponent, z)

    eai, eaip, ebi, ebip = (complex(v) for v in special.airye(z))
    zeta = 2.0 / 3.0 * z * cmath.sqrt(z)
    phase = cmath.exp(-1j * zeta.imag)
    return ScaledAiryQuad(
        eai * phase,
        eaip * phase,
        ebi,
        ebip,
        -zeta.real,
        abs(zeta.real),
        z,
    )


def airy_eval(z: complex) -> AiryQuad:
    z = complex(z)
    if abs(z) > tuning.AIRY_UNSCALED_LIMIT:
        raise AiryDomainError(
            f"|z| = {abs(z):.6g} exceeds {tuning.AIRY_UNSCALED_LIMIT:g}; use airy_eval_scaled"
        )
    return airy_eval_scaled(z).unscaled()


def scaled_real_arrays(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised scaled Airy values on the real axis.

    Returns the four mantissas and the Bi-family exponent (the Ai-family
    exponent is its negative where x > 0 and zero elsewhere).
    """
    x = np.asarray(x, dtype=float)
    positive = x > 0
    ai, aip, bi, bip = special.airy(np.where(positive, 0.0, x))
    eai, eaip, ebi, ebip = special.airye(np.where(positive, x, 0.0))
    exponent = np.where(positive, 2.0 / 3.0 * np.abs(x) ** 1.5, 0.0)
    return (
        np.where(positive, eai, ai),
        np.where(positive, eaip, aip),
        np.where(positive, ebi, bi),
        np.where(positive, ebip, bip),
        exponent,
    )


def airy_ai(z: np.ndarray) -> np.ndarray:
    """Ai on an array of (possibly complex) arguments."""
    return special.airy(z)[0]
