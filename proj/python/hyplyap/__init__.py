"""Lyapunov spectra of hypergeometric local systems, Hodge-bundle degrees and
period series.

Thin wrapper over the compiled ``_hyplyap`` module. Exact values come back as
``fractions.Fraction``; rational inputs may be given as Fraction, int or
strings such as ``"1/5"``.
"""

from fractions import Fraction

from . import _hyplyap as _core
from ._hyplyap import HyplyapError

__all__ = [
    "HyplyapError",
    "version",
    "mobius_apply",
    "geodesic_step",
    "basepoint",
    "reduce_to_domain",
    "catalog",
    "check_nonexpanding",
    "hodge_numbers",
    "cy_hodge_degrees",
    "main_bound",
    "orbifold_chi",
    "hyperelliptic_quotient_degree",
    "large_genus_bound",
    "estimate",
    "symmetry_defect",
    "psi0_series",
    "wronskian_series",
    "lambda_q_series",
    "inverse_F_coefficients",
    "growth_fit",
]

version = _core.version
mobius_apply = _core.mobius_apply
geodesic_step = _core.geodesic_step
basepoint = _core.basepoint
reduce_to_domain = _core.reduce_to_domain
symmetry_defect = _core.symmetry_defect


def _q(x):
    return str(Fraction(x)) if not isinstance(x, str) else x


def _qs(xs):
    return None if xs is None else [_q(x) for x in xs]


def _fractions(xs):
    return [Fraction(x) for x in xs]


def catalog():
    rows = _core.catalog()
    for row in rows:
        row["mu1"] = Fraction(row["mu1"])
        row["mu2"] = Fraction(row["mu2"])
    return rows


def check_nonexpanding(case=None, alpha=None, beta=None):
    return _core.check_nonexpanding(case, _qs(alpha), _qs(beta))


def hodge_numbers(alpha, beta):
    return _core.hodge_numbers(_qs(alpha), _qs(beta))


def cy_hodge_degrees(mu1, mu2):
    """(deg E^{3,0}, deg E^{2,1}, deg E^{1,2}, deg E^{0,3})"""
    return tuple(_fractions(_core.cy_hodge_degrees(_q(mu1), _q(mu2))))


def main_bound(deg_par, genus, cusps):
    return Fraction(_core.main_bound(_q(deg_par), genus, cusps))


def orbifold_chi(mu1, mu2):
    return Fraction(_core.orbifold_chi(_q(mu1), _q(mu2)))


def hyperelliptic_quotient_degree(genus, k, stratum="minimal"):
    return Fraction(_core.hyperelliptic_quotient_degree(genus, k, stratum))


def large_genus_bound(genus, k, stratum="minimal"):
    """(bound for lambda_1 + ... + lambda_k, bound for lambda_k)"""
    total, last = _core.large_genus_bound(genus, k, stratum)
    return Fraction(total), Fraction(last)


def estimate(case=None, alpha=None, beta=None, **config):
    """Simulated Lyapunov spectrum. Keyword arguments override the simulation
    defaults (dt, steps, burn_in, qr_interval, trajectories, seed, y_guard,
    cusp_rotation) and set the worker count (threads)."""
    return _core.estimate(case, _qs(alpha), _qs(beta), **config)


def psi0_series(n):
    return _fractions(_core.psi0_series(n))


def wronskian_series(n):
    return _fractions(_core.wronskian_series(n))


def lambda_q_series(n):
    return _fractions(_core.lambda_q_series(n))


def inverse_F_coefficients(n):
    return _fractions(_core.inverse_F_coefficients(n))


def growth_fit(coeffs, n0, N=0):
    return _core.growth_fit([_q(c) for c in coeffs], n0, N)
