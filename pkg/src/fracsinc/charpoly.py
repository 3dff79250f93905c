"""Characteristic analysis of the reduced scalar ODE d^p y/dt^p = (-1)^p a^q y.

Reducing the fractional problem with rational order nu = p/q to an integer
ODE leaves the characteristic equation lambda^p = (-1)^p a^q, whose roots sit
on the circle of radius a^(q/p):

    lambda_k = a^(q/p) (cos((p + 2k) pi / p) + i sin((p + 2k) pi / p)),
    k = 0 .. p-1.

For p = 1 the single root -a^q is negative; for every p >= 2 some root has a
positive real part, so the convolution kernel K(t) = sum c_j exp(lambda_j t)
grows and the reduction is only usable at p = 1 (orders alpha = 1/q - 1).
The c_j solve the Vandermonde system K(0) = ... = K^(p-2)(0) = 0,
K^(p-1)(0) = 1; they are computed from the closed-form ratio of Vandermonde
determinants and cross-checked against a direct linear solve.

Scalar analysis only (a > 0, p capped at 12); no confluent roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RepeatedRoot

MAX_P = 12


@dataclass(frozen=True)
class KernelSpec:
    """Roots and kernel coefficients for one (a, p, q) triple."""

    a: float
    p: int
    q: int
    roots: tuple
    coeffs: tuple


@dataclass(frozen=True)
class RootSignReport:
    has_positive_real_part: bool
    witness: complex | None


def characteristic_roots(a: float, p: int, q: int) -> np.ndarray:
    """The p distinct roots of lambda^p = (-1)^p a^q on the circle a^(q/p)."""
    if a <= 0.0:
        raise ValueError(f"a must be positive, got {a!r}")
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive integers")
    if p > MAX_P:
        raise ValueError(f"p is capped at {MAX_P}, got {p}")
    radius = a ** (q / p)
    k = np.arange(p)
    angles = (p + 2 * k) * math.pi / p
    return radius * (np.cos(angles) + 1j * np.sin(angles))


def kernel_coefficients(roots) -> np.ndarray:
    """Solve sum_j lambda_j^k c_j = delta_{k, p-1} by Vandermonde determinant ratios.

    Cramer's rule on the Vandermonde system collapses to

        c_k = (-1)^(k+p-1) prod_{i<j, i,j != k} (lambda_j - lambda_i)
                          / prod_{i<j} (lambda_j - lambda_i),

    which is cross-checked against a direct linear solve to 1e-10.
    """
    lam = np.asarray(roots, dtype=complex)
    p = lam.size
    scale = float(np.max(np.abs(lam)))
    for i in range(p):
        for j in range(i + 1, p):
            if abs(lam[j] - lam[i]) < 1e-12 * max(scale, 1.0):
                raise RepeatedRoot(f"roots {lam[i]} and {lam[j]} coincide")

    def vdm_product(indices) -> complex:
        prod = 1.0 + 0.0j
        for ii in range(len(indices)):
            for jj in range(ii + 1, len(indices)):
                prod *= lam[indices[jj]] - lam[indices[ii]]
        return prod

    full = vdm_product(range(p))
    coeffs = np.empty(p, dtype=complex)
    for k in range(p):
        others = [i for i in range(p) if i != k]
        coeffs[k] = (-1) ** (k + p - 1) * vdm_product(others) / full

    if p > 1:
        vdm = np.vander(lam, p, increasing=True).T
        rhs = np.zeros(p, dtype=complex)
        rhs[p - 1] = 1.0
        direct = np.linalg.solve(vdm, rhs)
        err = float(np.max(np.abs(coeffs - direct)))
        if err > 1e-10 * max(1.0, float(np.max(np.abs(direct)))):
            raise RepeatedRoot(
                f"closed-form coefficients disagree with direct solve by {err:g}; "
                f"roots too close to confluent"
            )
    return coeffs


def make_kernel_spec(a: float, p: int, q: int) -> KernelSpec:
    roots = characteristic_roots(a, p, q)
    coeffs = kernel_coefficients(roots)
    return KernelSpec(a=a, p=p, q=q, roots=tuple(roots), coeffs=tuple(coeffs))


def kernel_eval(spec: KernelSpec, t: float) -> complex:
    """K(t) = sum_j c_j exp(lambda_j t); real up to roundoff for real a."""
    roots = np.asarray(spec.roots)
    coeffs = np.asarray(spec.coeffs)
    return complex(np.sum(coeffs * np.exp(roots * t)))


def classify_root_signs(spec: KernelSpec) -> RootSignReport:
    """Report whether some root has positive real part (true for all p >= 2)."""
    roots = np.asarray(spec.roots)
    idx = int(np.argmax(roots.real))
    if roots[idx].real > 0.0:
        return RootSignReport(has_positive_real_part=True, witness=complex(roots[idx]))
    return RootSignReport(has_positive_real_part=False, witness=None)
