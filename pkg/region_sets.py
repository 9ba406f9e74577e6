#!/usr/bin/env python3
"""
Region Predicates
=================

Exact membership tests for the parameter regions J1, J2 (points (sigma, tau))
and K1, K1', K2, K2' (points (sigma, tau, theta)) that govern positivity of
the coupled operator W, and the dispatch over the four hypothesis cases:

    (a) sigma = theta != tau,   tau - sigma not in -N
    (b) sigma != theta = tau,   sigma - tau not in -N
    (c) sigma != theta = tau+1, sigma - tau - 1 not in -N
    (d) sigma != theta != tau,  sigma - theta, tau - theta not in -N

Each region is a list of guarded implications; a point belongs to the region
iff every implication whose guard holds has a true consequent. Arithmetic is
Fraction only. Floats are refused with TypeError.

Usage: imported by elliptic_complexes and the acceptance suite.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from numerics import require_rational

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

SATISFIED = 'satisfied'
VIOLATED = 'violated'
NOT_APPLICABLE = 'not-applicable'

Rule = Tuple[str, Callable[..., bool], Callable[..., bool]]


def _holds(rules: List[Rule], *point: Fraction) -> bool:
    for _, guard, consequent in rules:
        if guard(*point) and not consequent(*point):
            return False
    return True


def failing_rules(rules: List[Rule], *point: Fraction) -> List[str]:
    """Names of the implications a point violates"""
    return [name for name, guard, consequent in rules if guard(*point) and not consequent(*point)]


J1_RULES: List[Rule] = [
    ('1/2<=tau<sigma',
     lambda s, t: HALF <= t < s,
     lambda s, t: s - 1 < t < s / 2 + QUARTER),
    ('1/2,sigma<=tau',
     lambda s, t: HALF <= t and s <= t,
     lambda s, t: t < s / 2 + QUARTER and t < s + 1),
    ('tau<1/2,sigma',
     lambda s, t: t < HALF and t < s,
     lambda s, t: s / 3 < t and s - 1 < t and t < s / 2 + QUARTER),
    ('sigma<=tau<1/2',
     lambda s, t: s <= t < HALF,
     lambda s, t: -s < t < s / 2 + QUARTER and t < s + 1),
]

J2_RULES: List[Rule] = [
    ('1/2<=tau<sigma-1/2',
     lambda s, t: HALF <= t < s - HALF,
     lambda s, t: s - 1 < t < s / 2 + QUARTER),
    ('1/2,sigma-1/2<=tau',
     lambda s, t: HALF <= t and s - HALF <= t,
     lambda s, t: t < s / 2 + QUARTER and t < s),
    ('0<tau<1/2,sigma-1/2',
     lambda s, t: 0 < t < HALF and t < s - HALF,
     lambda s, t: (-s / 3 < t and s - 1 < t < s / 2 + QUARTER) or (s - 1 < t < s / 2 - QUARTER)),
    ('0<tau<1/2,sigma-1/2<=tau',
     lambda s, t: 0 < t < HALF and s - HALF <= t,
     lambda s, t: (1 - s < t < s / 2 + QUARTER and t < s) or (t < s / 2 - QUARTER and t < s)),
    ('0=tau<sigma-1/2',
     lambda s, t: t == 0 and t < s - HALF,
     lambda s, t: HALF < s < 1),
    ('sigma-1/2<=tau=0',
     lambda s, t: t == 0 and s - HALF <= t,
     lambda s, t: HALF < s),
    ('tau<0,sigma-1/2',
     lambda s, t: t < 0 and t < s - HALF,
     lambda s, t: QUARTER - s / 2 < t and (s - 1) / 3 < t and s - 1 < t),
    ('sigma-1/2<=tau<0',
     lambda s, t: s - HALF <= t < 0,
     lambda s, t: QUARTER - s / 2 < t and -s < t < s),
]

K1_RULES: List[Rule] = [
    ('theta<=sigma-1,theta<tau+1',
     lambda s, t, h: h <= s - 1 and h < t + 1,
     lambda s, t, h: h > s / 2 - Fraction(3, 4) and h > (s + t) / 4),
    ('tau+1<=theta<=sigma-1',
     lambda s, t, h: t + 1 <= h <= s - 1,
     lambda s, t, h: h > s / 2 - Fraction(3, 4) and h > (s - t) / 2 - 1),
    ('sigma-1<theta<tau+1',
     lambda s, t, h: s - 1 < h < t + 1,
     lambda s, t, h: h > s / 2 - Fraction(3, 4) and h > (t - s) / 2 + 1 and h > (s + t) / 4),
    ('sigma-1<theta,tau+1<=theta',
     lambda s, t, h: s - 1 < h and t + 1 <= h,
     lambda s, t, h: h > s / 2 - Fraction(3, 4) and h > (s - t) / 2 - 1 and s + t > 0),
]

K1P_RULES: List[Rule] = [
    ('theta<sigma,theta<=tau',
     lambda s, t, h: h < s and h <= t,
     lambda s, t, h: h > t / 2 - QUARTER and h > (s + t) / 4),
    ('sigma<=theta<=tau',
     lambda s, t, h: s <= h <= t,
     lambda s, t, h: h > t / 2 - QUARTER and h > (t - s) / 2),
    ('tau<theta<sigma',
     lambda s, t, h: t < h < s,
     lambda s, t, h: h > t / 2 - QUARTER and h > (s - t) / 2 and h > (s + t) / 4),
    ('sigma<=theta,tau<theta',
     lambda s, t, h: s <= h and t < h,
     lambda s, t, h: h > t / 2 - QUARTER and h > (t - s) / 2 and s + t > 0),
]

K2_RULES: List[Rule] = [
    ('theta<=sigma-1,theta<tau+1/2',
     lambda s, t, h: h <= s - 1 and h < t + HALF,
     lambda s, t, h: h > s / 2 - Fraction(3, 4) and h > (s + t) / 4),
    ('tau+1/2<=theta<=sigma-1',
     lambda s, t, h: t + HALF <= h <= s - 1,
     lambda s, t, h: h > s / 2 - Fraction(3, 4) and h > (s - t - 1) / 2),
    ('sigma-1<theta<sigma-1/2,tau+1/2',
     lambda s, t, h: s - 1 < h < s - HALF and h < t + HALF,
     lambda s, t, h: (h > s / 2 - Fraction(3, 4) and h > (t - s) / 2 + 1 and h > (s + t) / 4)
     or (h > s / 2 - QUARTER and h > (s + t) / 4)),
    ('sigma-1<theta<sigma-1/2,tau+1/2<=theta',
     lambda s, t, h: s - 1 < h < s - HALF and t + HALF <= h,
     lambda s, t, h: (h > s / 2 - Fraction(3, 4) and h > (s - t - 1) / 2 and s + t > 1)
     or (h > s / 2 - QUARTER and h > (s - t - 1) / 2)),
    ('sigma-1/2=theta<tau+1/2',
     lambda s, t, h: h == s - HALF and h < t + HALF,
     lambda s, t, h: s > HALF and s > (t + 2) / 3),
    ('tau+1/2<=theta=sigma-1/2',
     lambda s, t, h: h == s - HALF and t + HALF <= h,
     lambda s, t, h: s > HALF and s > -t),
    ('sigma-1/2<theta<tau+1/2',
     lambda s, t, h: s - HALF < h < t + HALF,
     lambda s, t, h: h > s / 2 - QUARTER and h > (t - s + 1) / 2 and h > (s + t) / 4),
    ('sigma-1/2<theta,tau+1/2<=theta',
     lambda s, t, h: s - HALF < h and t + HALF <= h,
     lambda s, t, h: h > s / 2 - QUARTER and h > (s - t - 1) / 2 and s + t > 0),
]

K2P_RULES: List[Rule] = [
    ('theta<=sigma-1/2,theta<tau',
     lambda s, t, h: h <= s - HALF and h < t,
     lambda s, t, h: h > t / 2 - QUARTER and h > (s + t) / 4),
    ('sigma-1/2<=theta<=tau',
     lambda s, t, h: s - HALF <= h <= t,
     lambda s, t, h: h > t / 2 - QUARTER and h > (t - s + 1) / 2),
    ('tau<theta<sigma-1/2,tau+1/2',
     lambda s, t, h: t < h < s - HALF and h < t + HALF,
     lambda s, t, h: (h > t / 2 - QUARTER and h > (s - t) / 2 and h > (s + t) / 4)
     or (h > t / 2 + QUARTER and h > (s + t) / 4)),
    ('sigma-1/2<=theta,tau<theta<tau+1/2',
     lambda s, t, h: s - HALF <= h and t < h < t + HALF,
     lambda s, t, h: (h > t / 2 - QUARTER and h > (t - s + 1) / 2 and s + t > 1)
     or (h > t / 2 + QUARTER and h > (t - s + 1) / 2)),
    ('tau+1/2=theta<sigma-1/2',
     lambda s, t, h: h == t + HALF and h < s - HALF,
     lambda s, t, h: t > -HALF and t > (s - 2) / 3),
    ('sigma-1/2<=theta=tau+1/2',
     lambda s, t, h: h == t + HALF and s - HALF <= h,
     lambda s, t, h: t > -HALF and t > -s),
    ('tau+1/2<theta<sigma-1/2',
     lambda s, t, h: t + HALF < h < s - HALF,
     lambda s, t, h: h > t / 2 + QUARTER and h > (s - t - 1) / 2 and h > (s + t) / 4),
    ('sigma-1/2<=theta,tau+1/2<theta',
     lambda s, t, h: s - HALF <= h and t + HALF < h,
     lambda s, t, h: h > t / 2 + QUARTER and h > (t - s + 1) / 2 and s + t > 0),
]


def _pair(sigma, tau) -> Tuple[Fraction, Fraction]:
    return require_rational(sigma, 'sigma'), require_rational(tau, 'tau')


def _triple(sigma, tau, theta) -> Tuple[Fraction, Fraction, Fraction]:
    return (require_rational(sigma, 'sigma'), require_rational(tau, 'tau'),
            require_rational(theta, 'theta'))


def in_J1(sigma, tau) -> bool:
    return _holds(J1_RULES, *_pair(sigma, tau))


def in_J2(sigma, tau) -> bool:
    return _holds(J2_RULES, *_pair(sigma, tau))


def in_K1(sigma, tau, theta) -> bool:
    return _holds(K1_RULES, *_triple(sigma, tau, theta))


def in_K1p(sigma, tau, theta) -> bool:
    return _holds(K1P_RULES, *_triple(sigma, tau, theta))


def in_K2(sigma, tau, theta) -> bool:
    return _holds(K2_RULES, *_triple(sigma, tau, theta))


def in_K2p(sigma, tau, theta) -> bool:
    return _holds(K2P_RULES, *_triple(sigma, tau, theta))


def in_K_combined(sigma, tau, theta) -> bool:
    """(sigma, tau, theta) in (K1 u K2) n (K1' u K2')"""
    point = _triple(sigma, tau, theta)
    return (in_K1(*point) or in_K2(*point)) and (in_K1p(*point) or in_K2p(*point))


def in_negative_naturals(x: Fraction) -> bool:
    """x in -N with N = {0, 1, 2, ...}"""
    return x.denominator == 1 and x <= 0


@dataclass(frozen=True)
class HypothesisResult:
    """Outcome of the W hypothesis dispatch"""
    status: str
    cases: Tuple[str, ...] = ()
    clause: Optional[str] = None

    @property
    def valid(self) -> bool:
        return self.status != VIOLATED


def basic_constraints(sigma, tau, theta, u) -> Optional[str]:
    """First failing clause of sigma > u-1/2, tau > u-3/2, theta > -1/2, or None"""
    sigma, tau, theta = _triple(sigma, tau, theta)
    u = require_rational(u, 'u')
    if not sigma > u - HALF:
        return 'sigma > u - 1/2'
    if not tau > u - Fraction(3, 2):
        return 'tau > u - 3/2'
    if not theta > -HALF:
        return 'theta > -1/2'
    return None


def ww_hypotheses(sigma, tau, theta, u) -> HypothesisResult:
    """Check the basic constraints and every applicable hypothesis case (a)-(d)"""
    sigma, tau, theta = _triple(sigma, tau, theta)
    failed = basic_constraints(sigma, tau, theta, u)
    if failed:
        return HypothesisResult(VIOLATED, (), failed)

    applied: List[str] = []
    if sigma == theta != tau and not in_negative_naturals(tau - sigma):
        applied.append('a')
        if not (sigma - 1 < tau < sigma + 1 and tau < 2 * sigma + HALF):
            return HypothesisResult(VIOLATED, tuple(applied), '(a) sigma-1 < tau < sigma+1, 2 sigma+1/2')
    if sigma != theta == tau and not in_negative_naturals(sigma - tau):
        applied.append('b')
        if not (in_J1(sigma, tau) or in_J2(sigma, tau)):
            return HypothesisResult(VIOLATED, tuple(applied), '(b) (sigma, tau) in J1 u J2')
    if sigma != theta == tau + 1 and not in_negative_naturals(sigma - tau - 1):
        applied.append('c')
        if not (tau < 3 * sigma / 2 - Fraction(9, 4) and tau < sigma - Fraction(5, 3)):
            return HypothesisResult(VIOLATED, tuple(applied), '(c) tau < 3 sigma/2 - 9/4, sigma - 5/3')
    if (sigma != theta != tau and not in_negative_naturals(sigma - theta)
            and not in_negative_naturals(tau - theta)):
        applied.append('d')
        if not in_K_combined(sigma, tau, theta):
            return HypothesisResult(VIOLATED, tuple(applied), '(d) (K1 u K2) n (K1\' u K2\')')

    if not applied:
        return HypothesisResult(NOT_APPLICABLE)
    return HypothesisResult(SATISFIED, tuple(applied))
