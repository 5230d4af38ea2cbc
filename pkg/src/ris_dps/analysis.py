"""Empty-region analytics.

Around every separation line there is an arc that the argument of the
optimal channel provably avoids: close enough to the line, swapping the
owning element's starting choice for its ending choice would lengthen the
channel, contradicting optimality.  This module computes those arcs, the
fraction of the circle their union covers, and the closed-form large-N
approximation of the summed-width upper bound.
"""

import csv
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .channel import OFF, ChannelRealization, PhaseShiftSet
from .geometry import ANGLE_EPS, TWO_PI, wrap_angle
from .optimizer import SeparationLine, separation_lines


@dataclass(frozen=True)
class EmptyRegion:
    """Arc around one separation line that cannot contain arg(h*)."""

    line: SeparationLine
    half_width: float

    @property
    def center(self) -> float:
        return self.line.argument

    @property
    def kind(self) -> str:
        """"between_phases" for a line separating two applied phases,
        "off_boundary" for a line bordering the off region."""
        if self.line.starting != OFF and self.line.ending != OFF:
            return "between_phases"
        return "off_boundary"

    def interval(self) -> Tuple[float, float]:
        """The excluded arc as (center - w, center + w), not re-wrapped."""
        return (self.center - self.half_width, self.center + self.half_width)


@dataclass(frozen=True)
class EmptyRatioReport:
    """Coverage of the circle by the empty-region union.

    sum_ratio_ub is the summed-width upper bound (may exceed 1);
    overlap_fraction is the share of the summed width lost to overlap.
    """

    measured_ratio: float
    sum_ratio_ub: float
    overlap_fraction: float


def _arcsin_clamped(ratio: float) -> float:
    # The width derivation assumes |h*| large; for tiny |h*| the ratio can
    # pass 1, meaning the whole half-plane is excluded.
    return math.asin(min(ratio, 1.0))


def omega_small_gap(v_amp: float, phi_lo: float, phi_hi: float,
                    h_star_amp: float) -> float:
    """Empty-region half-width for a line between two applied phases.

    The swap across the line changes the channel by a vector of length
    2*|v_n|*|sin(gap/2)|, so the half-width is
    arcsin(|v_n|*|sin(gap/2)| / |h*|), clamped at pi/2.

    Args:
        v_amp: |v_n| of the owning element.
        phi_lo, phi_hi: the two phases, counterclockwise gap
            (phi_hi - phi_lo) mod 2*pi at most pi.
        h_star_amp: amplitude of the optimal channel.

    Raises:
        ValueError: if h_star_amp is not positive or the gap exceeds pi.
    """
    if h_star_amp <= 0.0:
        raise ValueError("h_star_amp must be positive")
    gap = (phi_hi - phi_lo) % TWO_PI
    if gap > math.pi + ANGLE_EPS:
        raise ValueError("phase gap exceeds pi; the off region applies there")
    return _arcsin_clamped(v_amp * abs(math.sin(gap / 2.0)) / h_star_amp)


def omega_large_gap(v_amp: float, h_star_amp: float) -> float:
    """Empty-region half-width for a line bordering the off region.

    The swap toggles the element, changing the channel by a vector of
    length |v_n|: arcsin(|v_n| / (2*|h*|)), clamped at pi/2.  Applies to
    both lines bracketing an off region.

    Raises:
        ValueError: if h_star_amp is not positive.
    """
    if h_star_amp <= 0.0:
        raise ValueError("h_star_amp must be positive")
    return _arcsin_clamped(v_amp / (2.0 * h_star_amp))


def empty_regions(real: ChannelRealization, phase_set: PhaseShiftSet,
                  h_star_amp: float) -> List[EmptyRegion]:
    """One empty region per separation line of the realization.

    Args:
        h_star_amp: amplitude of the optimal channel; pass the sweep
            optimum, or the continuous upper bound for the conservative
            (narrowest-region) variant.
    """
    if h_star_amp <= 0.0:
        raise ValueError("h_star_amp must be positive")
    phases = phase_set.phases
    v_amp = np.abs(real.v)
    regions = []
    for row in separation_lines(real, phase_set):
        for ln in row:
            if ln.starting != OFF and ln.ending != OFF:
                w = omega_small_gap(float(v_amp[ln.element]),
                                    phases[ln.starting - 1],
                                    phases[ln.ending - 1], h_star_amp)
            else:
                w = omega_large_gap(float(v_amp[ln.element]), h_star_amp)
            regions.append(EmptyRegion(ln, w))
    return regions


def circle_union_length(arcs: Sequence[Tuple[float, float]]) -> float:
    """Total length of the union of arcs on the circle.

    Arcs are (start, end) with end >= start; they may wrap past 2*pi and
    are reduced modulo 2*pi.
    """
    segments = []
    for lo, hi in arcs:
        width = hi - lo
        if width <= 0.0:
            continue
        if width >= TWO_PI:
            return TWO_PI
        lo = wrap_angle(lo)
        hi = lo + width
        if hi > TWO_PI:
            segments.append((lo, TWO_PI))
            segments.append((0.0, hi - TWO_PI))
        else:
            segments.append((lo, hi))
    if not segments:
        return 0.0
    segments.sort()
    total = 0.0
    cur_lo, cur_hi = segments[0]
    for lo, hi in segments[1:]:
        if lo <= cur_hi:
            cur_hi = max(cur_hi, hi)
        else:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
    total += cur_hi - cur_lo
    return min(total, TWO_PI)


def measured_empty_ratio(regions: Sequence[EmptyRegion]) -> EmptyRatioReport:
    """Union coverage of the circle, the summed-width bound, and their gap."""
    union = circle_union_length([r.interval() for r in regions])
    summed = 2.0 * sum(r.half_width for r in regions)
    overlap = 0.0 if summed == 0.0 else 1.0 - union / summed
    return EmptyRatioReport(measured_ratio=union / TWO_PI,
                            sum_ratio_ub=summed / TWO_PI,
                            overlap_fraction=overlap)


def empty_ratio_upper_bound_approx(k: int) -> float:
    """Large-N closed form of the summed-width upper bound: K*sin(pi/K)/pi.

    Assumes K uniform-ish gaps and the perfectly aligned |h*|; exact for
    the approximation chain, an upper bound in simulation.
    """
    if k < 1:
        raise ValueError("need at least one phase shift")
    return k * math.sin(math.pi / k) / math.pi


def write_regions_csv(regions: Sequence[EmptyRegion], fh) -> None:
    """Dump regions as CSV rows (center_rad, half_width_rad, element, kind)."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["center_rad", "half_width_rad", "element", "kind"])
    for r in regions:
        writer.writerow([repr(float(r.center)), repr(float(r.half_width)),
                         r.line.element, r.kind])
