"""Numerical tolerances used across the package, kept in one place."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # integer-hit detection, in pivot units
    integer_hit: float = 1e-10
    # bisection stopping rule (relative width) and iteration cap
    bisection_rel: float = 1e-13
    bisection_max_iter: int = 200
    # a side "equals the sum of the other two" below this fraction of the perimeter
    degenerate_rel: float = 1e-12
    # critical-radius zero flag for the derivative sign of omega_star
    critical_rel: float = 1e-12
    # |B(r0)| below this fraction of the side sum means the gap has collapsed
    collapsed_gap_rel: float = 1e-12
    # count warnings when a jump radius sits this close to the query radius
    boundary_rel: float = 1e-9
    closed_disk_rel: float = 1e-12
    # analytic roots on a jump circle
    congruence: float = 1e-8
    circle_residual: float = 1e-8
    # pivot shift used by the perturbation fallback, and the required clearance
    # of every perturbed endpoint value from the integers
    perturb_shift: float = 1e-6
    perturb_clearance: float = 1e-7
    perturb_attempts: int = 6
    perturb_match_rel: float = 1e-4
    # radii closer than this (relative) are reported as one step of the profile
    same_radius_rel: float = 1e-9
    # accepted coefficient moduli
    coeff_min: float = 1e-8
    coeff_max: float = 1e8


DEFAULT_TOLERANCES = Tolerances()
