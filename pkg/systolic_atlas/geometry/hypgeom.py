"""
Double-precision hyperbolic trigonometry: the square built from four trirectangles with an
angle of pi/4, the right-angled pentagon that fixes the lengths s, b and c, distances between
cuffs of a pair of pants and collar widths.
"""

import math
import warnings
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import root_scalar

from ..exceptions import ConvergenceError, DomainError

SCAN_START = 0.1
SCAN_STOP = 20.0
SCAN_STEP = 0.1
RESIDUAL_THRESHOLD = 1e-6


def epsilon0() -> float:
    """Length 2 arcsinh(1) whose collar has width exactly half of it."""
    return 2 * math.asinh(1.0)


def collar_width(length: float) -> float:
    """
    Width arcsinh(1 / sinh(l/2)) of the embedded collar around a closed geodesic of length l.
    """
    if not length > 0:
        raise DomainError(f"Geodesic length must be positive, got {length}.")
    return math.asinh(1.0 / math.sinh(length / 2))


def pants_cuff_distance(l1: float, l2: float, l3: float) -> float:
    """
    Distance between the cuffs of lengths l1 and l2 of a pair of pants with third cuff l3:
    cosh d = (cosh(l3/2) + cosh(l1/2) cosh(l2/2)) / (sinh(l1/2) sinh(l2/2)).
    """
    for value in (l1, l2, l3):
        if not value > 0:
            raise DomainError(f"Cuff lengths must be positive, got {(l1, l2, l3)}.")
    numerator = math.cosh(l3 / 2) + math.cosh(l1 / 2) * math.cosh(l2 / 2)
    return math.acosh(numerator / (math.sinh(l1 / 2) * math.sinh(l2 / 2)))


def pants_cuff_distance_derivative(l1: float, l2: float, l3: float) -> float:
    """Derivative of pants_cuff_distance in l3."""
    x = (math.cosh(l3 / 2) + math.cosh(l1 / 2) * math.cosh(l2 / 2)) / (
        math.sinh(l1 / 2) * math.sinh(l2 / 2)
    )
    dx = 0.5 * math.sinh(l3 / 2) / (math.sinh(l1 / 2) * math.sinh(l2 / 2))
    return dx / math.sqrt(x * x - 1)


def triangle_side(opposite_angle: float, angle_b: float, angle_c: float) -> float:
    """
    Side of a hyperbolic triangle from its angles (second law of cosines).
    """
    cosh_side = (math.cos(opposite_angle) + math.cos(angle_b) * math.cos(angle_c)) / (
        math.sin(angle_b) * math.sin(angle_c)
    )
    return math.acosh(cosh_side)


def trirectangle_identities(t: float, alpha: float, phi: float) -> Dict[str, float]:
    """
    Residuals of the trirectangle relations for a quadrilateral with three right angles, acute
    angle phi, both sides at the vertex opposite phi of length t and both sides at phi of length alpha.
    """
    return {
        "sinh2_t": math.sinh(t) ** 2 - math.cos(phi),
        "tanh2_alpha": math.tanh(alpha) ** 2 - math.cos(phi),
        "tanh_alpha": math.tanh(alpha) - math.cosh(t) * math.tanh(t),
        "sinh_alpha": math.sinh(alpha) - math.sinh(t) * math.cosh(alpha),
        "sin_phi": math.cosh(t) / math.cosh(alpha) - math.sin(phi),
    }


@dataclass
class SquareData:
    """
    Regular square with corner angle pi/4, cut into four trirectangles.

    Variables:
    t: half the distance between opposite sides, sinh^2(t) = cos(pi/4)
    side_half: alpha with tanh^2(alpha) = cos(pi/4)
    """

    t: float
    opposite_side_distance: float
    side_half: float
    side: float
    basic_pair_distance: float
    systole_length: float
    residuals: Dict[str, float] = field(default_factory=dict)
    triangulation: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return asdict(self)


def triangulation_oracle() -> Tuple[float, float]:
    """
    (t, alpha) from the triangle with angles pi/2, pi/4, pi/8 cut out of the square by its
    center, a side midpoint and a corner.
    """
    alpha = triangle_side(math.pi / 4, math.pi / 2, math.pi / 8)
    t = triangle_side(math.pi / 8, math.pi / 2, math.pi / 4)
    return t, alpha


def square_data() -> SquareData:
    phi = math.pi / 4
    t = math.asinh(2 ** (-0.25))
    alpha = math.atanh(2 ** (-0.25))
    oracle_t, oracle_alpha = triangulation_oracle()
    return SquareData(
        t=t,
        opposite_side_distance=2 * t,
        side_half=alpha,
        side=2 * alpha,
        basic_pair_distance=2 * alpha,
        systole_length=4 * alpha,
        residuals=trirectangle_identities(t, alpha, phi),
        triangulation={
            "t": oracle_t,
            "alpha": oracle_alpha,
            "t_error": oracle_t - t,
            "alpha_error": oracle_alpha - alpha,
        },
    )


@dataclass
class PentagonData:
    """
    Right-angled pentagon with sides, in cyclic order, s/2, s/6, s/4, b/4, c.
    """

    s: float
    b: float
    c: float
    sides: List[float]
    residuals: List[float]
    c_fit: float
    closed_form_s: float
    method: str = "newton"
    iterations: int = 0

    @property
    def defining_residuals(self) -> Tuple[float, float]:
        return self.residuals[0], self.residuals[2]

    def to_dict(self) -> Dict:
        return asdict(self)

    @classmethod
    def from_lengths(cls, s: float, b: float, method: str = "given", iterations: int = 0) -> "PentagonData":
        """Pentagon record for arbitrary (s, b), with c = s/12; residuals show how far off it is."""
        c = s / 12
        sides = [s / 2, s / 6, s / 4, b / 4, c]
        return cls(
            s=s,
            b=b,
            c=c,
            sides=sides,
            residuals=cyclic_residuals(sides),
            c_fit=math.acosh(max(1.0, math.sinh(s / 6) * math.sinh(s / 4))),
            closed_form_s=symmetric_pentagon_closed_form(),
            method=method,
            iterations=iterations,
        )


def cyclic_residuals(sides: List[float]) -> List[float]:
    """
    sinh(a_i) sinh(a_{i+1}) - cosh(a_{i+3}) for the five consecutive side pairs of a right-angled pentagon.
    """
    return [
        math.sinh(sides[i]) * math.sinh(sides[(i + 1) % 5]) - math.cosh(sides[(i + 3) % 5])
        for i in range(5)
    ]


def symmetric_pentagon_closed_form() -> float:
    """
    With c = s/12 all sides are multiples of c and the relations reduce to cosh(5c) = 3 cosh(c),
    whose positive solution is cosh^2(c) = (5 + sqrt(17)) / 8.
    """
    return 12 * math.acosh(math.sqrt((5 + math.sqrt(17)) / 8))


def _quarter_b(s: float) -> Optional[float]:
    value = math.sinh(s / 2) * math.sinh(s / 6)
    if value < 1:
        return None
    return math.acosh(value)


def reduced_pentagon_function(s: float) -> Optional[float]:
    """
    sinh(s/4) sinh(b/4) - cosh(s/2) with b/4 = arccosh(sinh(s/2) sinh(s/6)); None outside the domain.
    """
    quarter_b = _quarter_b(s)
    if quarter_b is None:
        return None
    return math.sinh(s / 4) * math.sinh(quarter_b) - math.cosh(s / 2)


def _reduced_derivative(s: float) -> float:
    product = math.sinh(s / 2) * math.sinh(s / 6)
    dproduct = 0.5 * math.cosh(s / 2) * math.sinh(s / 6) + math.sinh(s / 2) * math.cosh(s / 6) / 6
    quarter_b = math.acosh(product)
    dquarter_b = dproduct / math.sqrt(product * product - 1)
    return (
        0.25 * math.cosh(s / 4) * math.sinh(quarter_b)
        + math.sinh(s / 4) * math.cosh(quarter_b) * dquarter_b
        - 0.5 * math.sinh(s / 2)
    )


def bracket_pentagon_root(
    start: float = SCAN_START, stop: float = SCAN_STOP, step: float = SCAN_STEP
) -> Tuple[float, float]:
    """
    First sign change of the reduced function on a coarse grid, skipping grid points outside its domain.
    """
    grid = np.round(np.arange(start, stop + step / 2, step), 10)
    previous = None
    for s in grid:
        value = reduced_pentagon_function(float(s))
        if value is None:
            previous = None
            continue
        if previous is not None and np.sign(previous[1]) != np.sign(value):
            return previous[0], float(s)
        previous = (float(s), value)
    raise ConvergenceError(f"No sign change of the pentagon equation on [{start}, {stop}].")


def solve_pentagon(tolerance: float = 1e-12, residual_threshold: float = RESIDUAL_THRESHOLD) -> PentagonData:
    """
    Solves sinh(s/2) sinh(s/6) = cosh(b/4) and sinh(s/4) sinh(b/4) = cosh(s/2) by eliminating b,
    bracketing s with a coarse scan and polishing with Newton's method (brentq if Newton leaves
    the bracket).
    :param tolerance: absolute tolerance on s
    :param residual_threshold: a warning is raised when one of the other three relations is off by more
    :return: PentagonData with c = s/12
    """
    if not tolerance > 0:
        raise DomainError(f"Tolerance must be positive, got {tolerance}.")
    low, high = bracket_pentagon_root()
    method = "newton"
    try:
        solution = root_scalar(
            reduced_pentagon_function,
            x0=(low + high) / 2,
            fprime=_reduced_derivative,
            method="newton",
            xtol=tolerance,
        )
        converged = solution.converged and low <= solution.root <= high
    except (ValueError, TypeError, ZeroDivisionError):
        converged = False
    if not converged:
        method = "brentq"
        solution = root_scalar(
            reduced_pentagon_function, bracket=(low, high), method="brentq", xtol=tolerance
        )
        if not solution.converged:
            raise ConvergenceError(f"Pentagon solver failed: {solution.flag}")
    s = float(solution.root)
    b = 4 * _quarter_b(s)
    pentagon = PentagonData.from_lengths(s, b, method=method, iterations=int(solution.iterations))
    off = [abs(r) for i, r in enumerate(pentagon.residuals) if i not in (0, 2)]
    if max(off) > residual_threshold:
        warnings.warn(
            f"Pentagon relations with c = s/12 are off by {max(off):.3e}; best fit c = {pentagon.c_fit}."
        )
    return pentagon
