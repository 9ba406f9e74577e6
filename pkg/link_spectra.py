#!/usr/bin/env python3
"""
Link Spectral Data
==================

Harmonic dimensions and the positive eigenvalues mu of the link operator for
the built-in compact links. A pair (r, mu, m) means m independent couples
(beta, alpha) of co-exact (r-1)-forms and exact r-forms with d beta = mu alpha;
each couple contributes one length-two complex at degrees r-1, r, r+1 of the
cone. Harmonic generators contribute length-one complexes.

Oracles are the classical Fourier spectra:

    circle S^1   harmonic (1, 1)      mu = j (j >= 1), multiplicity 2, r = 1
    sphere S^2   harmonic (1, 0, 1)   mu = sqrt(l(l+1)), multiplicity 2l+1, r = 1, 2
    torus T^2    harmonic (1, 2, 1)   mu = |m| (m in Z^2 - 0), r = 1, 2

Usage: imported by elliptic_complexes.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

from numerics import DomainError

logger = logging.getLogger(__name__)

DEFAULT_MU_CUTOFF = 6.0


@dataclass(frozen=True)
class LinkSpectralData:
    """Spectral data of a compact link of dimension dim"""
    name: str
    dim: int
    harmonic: Tuple[int, ...]
    pairs: Tuple[Tuple[int, float, int], ...]

    def __post_init__(self):
        if len(self.harmonic) != self.dim + 1:
            raise DomainError(f"link {self.name}: {self.dim + 1} harmonic dimensions expected, "
                              f"got {len(self.harmonic)}")
        for r, mu, mult in self.pairs:
            if not 1 <= r <= self.dim:
                raise DomainError(f"link {self.name}: pair degree {r} outside 1..{self.dim}")
            if not mu > 0 or mult < 1:
                raise DomainError(f"link {self.name}: pairs need mu > 0 and positive multiplicity")

    @property
    def pair_count(self) -> int:
        return sum(mult for _, _, mult in self.pairs)


def point_link() -> LinkSpectralData:
    return LinkSpectralData('point', 0, (1,), ())


def circle_link(cutoff: float = DEFAULT_MU_CUTOFF) -> LinkSpectralData:
    pairs = tuple((1, float(j), 2) for j in range(1, int(math.floor(cutoff)) + 1))
    return LinkSpectralData('S1', 1, (1, 1), pairs)


def sphere2_link(cutoff: float = DEFAULT_MU_CUTOFF) -> LinkSpectralData:
    pairs = []
    ell = 1
    while math.sqrt(ell * (ell + 1)) <= cutoff:
        mu = math.sqrt(ell * (ell + 1))
        pairs.extend([(1, mu, 2 * ell + 1), (2, mu, 2 * ell + 1)])
        ell += 1
    return LinkSpectralData('S2', 2, (1, 0, 1), tuple(pairs))


def torus2_link(cutoff: float = DEFAULT_MU_CUTOFF) -> LinkSpectralData:
    bound = int(math.floor(cutoff))
    norms = Counter(m1 * m1 + m2 * m2
                    for m1 in range(-bound, bound + 1)
                    for m2 in range(-bound, bound + 1)
                    if (m1, m2) != (0, 0) and m1 * m1 + m2 * m2 <= cutoff * cutoff)
    pairs = []
    for norm in sorted(norms):
        mu = math.sqrt(norm)
        pairs.extend([(1, mu, norms[norm]), (2, mu, norms[norm])])
    return LinkSpectralData('T2', 2, (1, 2, 1), tuple(pairs))


BUILTIN_LINKS: Dict[str, Callable[..., LinkSpectralData]] = {
    'point': lambda cutoff=DEFAULT_MU_CUTOFF: point_link(),
    'S1': circle_link,
    'S2': sphere2_link,
    'T2': torus2_link,
}


def link_by_name(name: str, cutoff: float = DEFAULT_MU_CUTOFF) -> LinkSpectralData:
    if name not in BUILTIN_LINKS:
        raise DomainError(f"no spectral data for link {name!r}; built-ins are {sorted(BUILTIN_LINKS)}")
    data = BUILTIN_LINKS[name](cutoff)
    logger.debug(f"link {name}: {data.pair_count} mu-couples up to mu <= {cutoff}")
    return data
