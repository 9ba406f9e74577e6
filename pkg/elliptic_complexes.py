#!/usr/bin/env python3
"""
Elliptic Complexes on the Half Line
===================================

The length-one complex  d = d/drho - kappa rho^{-1} +- s rho  and the
length-two complex with d_{0,1} = mu rho^{-u}, their max/min realizations,
spectra, sign tables and harmonic dimensions, and the assembly of the Witten
Laplacian of a cone out of these pieces.

Laplacian components (sign '+' is f = +rho^2/2):

    length one    Delta_0 = H + kappa(kappa-1) rho^-2 -+ s(1+2 kappa)          (A1, A2)
                  Delta_1 = H + kappa(kappa+1) rho^-2 +- s(1-2 kappa)          (B1, B2)
    length two    Delta_0 = P + mu^2 rho^-2u -+ s(1+2(kappa+u))                (P1, P2)
                  Delta_2 = Q + mu^2 rho^-2u +- s(1-2 kappa)                   (Q1, Q2)
                  Delta_1 = W -+ s diag(1+2 kappa, -1+2(kappa+u))              (W11, W22, W21)

Spectra are derived from these operators: base (2k+1+2 varsigma) s plus the
shift. Two printed eigenvalue formulas for A1 and A2 coincide; the
derivation is checked against the sign table instead. The sign table lists
B2^- as "0 if k=0" while B indices are odd; the zero is at k=1.

Grey cells of the realization tables are returned as UNKNOWN and never
guessed. For u = 1 the length-two complex is solved exactly: the potential
(kappa(kappa-1) + mu^2) rho^-2 is absorbed in sigma (larger root).

Usage: imported by the acceptance suite and the CLI.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from link_spectra import LinkSpectralData
from model_operators import DEFAULT_BASIS, STUDY_BASIS, HalfLineOperatorSpec, make_spec, ritz_spectrum
from numerics import DomainError, SymMatrix, require_rational, sym_eigen
from region_sets import ww_hypotheses
from stratified_spaces import goodness_condition

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
SIGNS = ('+', '-')
CHOICES = ('max', 'min')
UNKNOWN = 'Unknown'
COMPLEX1_TAGS = ('A1', 'A2', 'B1', 'B2')
COMPLEX2_TAGS = ('P1', 'P2', 'Q1', 'Q2', 'W11', 'W22', 'W21', 'W12')
KERNEL_THRESHOLD = 1e-8
EVODD_TOLERANCE = 1e-2
ORACLE_TOLERANCE = 1e-9


class UnknownAssignmentError(DomainError):
    """The realization is a grey cell of the tables"""


def _sign(sign: str) -> int:
    if sign not in SIGNS:
        raise DomainError(f"sign must be '+' or '-', got {sign!r}")
    return 1 if sign == '+' else -1


def _choice(choice: str) -> str:
    if choice not in CHOICES:
        raise DomainError(f"choice must be 'max' or 'min', got {choice!r}")
    return choice


def kappa(n: int, r: int, u) -> Fraction:
    """kappa = (n - 2r - 1) u / 2"""
    if not 0 <= r <= n:
        raise DomainError(f"degree r={r} outside 0..{n}")
    return (n - 2 * r - 1) * require_rational(u, 'u') / 2


@dataclass(frozen=True)
class Complex1Spec:
    s: float
    kappa: Fraction
    sign: str

    def __post_init__(self):
        _sign(self.sign)
        if not self.s > 0:
            raise DomainError(f"scale s must be positive, got {self.s}")


@dataclass(frozen=True)
class Complex2Spec:
    s: float
    kappa: Fraction
    u: Fraction
    mu: float
    sign: str

    def __post_init__(self):
        _sign(self.sign)
        if not self.s > 0:
            raise DomainError(f"scale s must be positive, got {self.s}")
        if not 0 < self.u <= 1:
            raise DomainError(f"exponent u must lie in (0, 1], got {self.u}")
        if not self.mu > 0:
            raise DomainError(f"mu must be positive, got {self.mu}")


@dataclass
class OperatorAssignment:
    """Realization tag per degree"""
    choice: str
    tags: Dict[int, str]

    @property
    def known(self) -> bool:
        return UNKNOWN not in self.tags.values()


@dataclass(frozen=True)
class HarmonicDims:
    dims: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.dims)


# ---------------------------------------------------------------------------
# Length-one complex
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Complex1Table:
    parameters: Dict[str, Optional[Fraction]]
    a_equal: bool
    b_equal: bool

    def defined(self, tag: str) -> bool:
        return self.parameters[tag] is not None


def complex1_operator_table(kappa_value) -> Complex1Table:
    """sigma of A1/A2 and tau of B1/B2 where defined"""
    k = require_rational(kappa_value, 'kappa')
    parameters = {
        'A1': k if k > -HALF else None,
        'A2': 1 - k if k < Fraction(3, 2) else None,
        'B1': k if k > -Fraction(3, 2) else None,
        'B2': -1 - k if k < HALF else None,
    }
    return Complex1Table(parameters, a_equal=k == HALF, b_equal=k == -HALF)


def complex1_assignment(kappa_value, choice: str) -> OperatorAssignment:
    k = require_rational(kappa_value, 'kappa')
    choice = _choice(choice)
    if k >= HALF:
        tags = ('A1', 'B1')
    elif k <= -HALF:
        tags = ('A2', 'B2')
    else:
        tags = ('A1', 'B1') if choice == 'max' else ('A2', 'B2')
    return OperatorAssignment(choice, {0: tags[0], 1: tags[1]})


def _complex1_shift(k: Fraction, sign: str, tag: str) -> Fraction:
    if tag.startswith('A'):
        return -_sign(sign) * (1 + 2 * k)
    return _sign(sign) * (1 - 2 * k)


def complex1_value(kappa_value, sign: str, tag: str, k: int) -> Fraction:
    """Exact eigenvalue of chi_k in units of s"""
    kv = require_rational(kappa_value, 'kappa')
    table = complex1_operator_table(kv)
    if tag not in COMPLEX1_TAGS:
        raise DomainError(f"unknown length-one tag {tag!r}")
    if not table.defined(tag):
        raise DomainError(f"{tag} is not defined at kappa={kv}")
    if (k % 2 == 0) != tag.startswith('A'):
        raise DomainError(f"{tag} acts on {'even' if tag.startswith('A') else 'odd'} indices, got k={k}")
    return 2 * k + 1 + 2 * table.parameters[tag] + _complex1_shift(kv, sign, tag)


def complex1_spectrum(kappa_value, sign: str, tag: str, K: int, s: float = 1.0) -> np.ndarray:
    """First K eigenvalues of the realization tag (even k for A, odd k for B)"""
    start = 0 if tag.startswith('A') else 1
    return np.array([float(complex1_value(kappa_value, sign, tag, start + 2 * j)) * s for j in range(K)])


def complex1_sign_table(kappa_value, tag: str, sign: str, k_max: int = 9) -> Dict[int, str]:
    """Sign of each eigenvalue, '?' where the realization is undefined"""
    start = 0 if tag.startswith('A') else 1
    indices = range(start, k_max + 1, 2)
    if not complex1_operator_table(kappa_value).defined(tag):
        return {k: '?' for k in indices}
    cells = {}
    for k in indices:
        value = complex1_value(kappa_value, sign, tag, k)
        cells[k] = '0' if value == 0 else ('+' if value > 0 else '-')
    return cells


# ---------------------------------------------------------------------------
# Length-two complex
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Complex2Row:
    tag: str
    sigma: Optional[Fraction]
    tau: Optional[Fraction]
    theta: Optional[Fraction]
    table_valid: bool
    predicate_valid: bool
    clause: Optional[str] = None

    @property
    def agrees(self) -> bool:
        return self.table_valid == self.predicate_valid


def _row_parameters(tag: str, k: Fraction, u: Fraction) -> Tuple[Optional[Fraction], ...]:
    return {
        'P1': (k + u, None, None),
        'P2': (1 - k - u, None, None),
        'Q1': (None, k, None),
        'Q2': (None, -1 - k, None),
        'W11': (k, k + u, k),
        'W22': (1 - k, -1 - k - u, -k - u),
        'W21': (1 - k, k + u, HALF),
        'W12': (k, -1 - k - u, -HALF - u),
    }[tag]


def _table_condition(tag: str, k: Fraction, u: Fraction) -> bool:
    return {
        'P1': k > -HALF,
        'P2': k < Fraction(3, 2) - 2 * u,
        'Q1': k > u - Fraction(3, 2),
        'Q2': k < HALF - u,
        'W11': k > u - HALF,
        'W22': k < HALF - 2 * u,
        'W21': -(1 + u) / 2 < k < (1 - u) / 2 or k in (-HALF - u, HALF),
        'W12': False,
    }[tag]


def complex2_parameters(kappa_value, u) -> Dict[str, Complex2Row]:
    """Rows P1..W12 with parameters, printed validity and re-derived validity"""
    k = require_rational(kappa_value, 'kappa')
    u = require_rational(u, 'u')
    if not 0 < u < 1:
        raise DomainError(f"the realization tables need 0 < u < 1, got {u}")
    rows = {}
    for tag in COMPLEX2_TAGS:
        sigma, tau, theta = _row_parameters(tag, k, u)
        clause = None
        if tag.startswith('P'):
            derived = sigma > u - HALF
        elif tag.startswith('Q'):
            derived = tau > u - Fraction(3, 2)
        else:
            result = ww_hypotheses(sigma, tau, theta, u)
            derived, clause = result.valid, result.clause
        rows[tag] = Complex2Row(tag, sigma, tau, theta, _table_condition(tag, k, u), derived, clause)
    return rows


def complex2_assignment(kappa_value, u, choice: str, degree: int) -> str:
    """Realization tag of Delta_max/min at the degree, or UNKNOWN on grey ranges"""
    k = require_rational(kappa_value, 'kappa')
    u = require_rational(u, 'u')
    choice = _choice(choice)
    if not 0 < u < 1:
        raise DomainError(f"the realization tables need 0 < u < 1, got {u}")
    if degree == 0:
        if choice == 'max':
            if k > -HALF:
                return 'P1'
            return 'P2' if k <= -HALF - u else UNKNOWN
        return 'P1' if k >= HALF - u else 'P2'
    if degree == 2:
        if choice == 'max':
            return 'Q1' if k > -HALF else 'Q2'
        if k >= HALF:
            return 'Q1'
        return 'Q2' if k < HALF - u else UNKNOWN
    if degree == 1:
        if choice == 'max':
            if k > u - HALF:
                return 'W11'
            if k > -HALF:
                return UNKNOWN
            if k > -(1 + u) / 2:
                return 'W21'
            return 'W22' if k <= -HALF - u else UNKNOWN
        if k >= HALF:
            return 'W11'
        if k >= (1 - u) / 2:
            return UNKNOWN
        if k >= HALF - u:
            return 'W21'
        return 'W22' if k < HALF - 2 * u else UNKNOWN
    raise DomainError(f"the length-two complex has degrees 0, 1, 2; got {degree}")


def complex2_full_assignment(kappa_value, u, choice: str) -> OperatorAssignment:
    return OperatorAssignment(choice, {d: complex2_assignment(kappa_value, u, choice, d) for d in (0, 1, 2)})


def complex2_spectrum_source(kappa_value, u, choice: str, part: str) -> Optional[Tuple[str, ...]]:
    """Realizations whose spectrum is the spectrum of the even part or of Delta_1

    None on grey ranges. The row [1/2 - 2u, 1/2 - u) of the minimal Delta_1
    table is P2 + Q2; its printed left end -1/2 - 2u would overlap the W22 row.
    """
    k = require_rational(kappa_value, 'kappa')
    u = require_rational(u, 'u')
    choice = _choice(choice)
    if part not in ('ev', 'odd'):
        raise DomainError(f"part must be 'ev' or 'odd', got {part!r}")
    if not 0 < u < 1:
        raise DomainError(f"the spectrum tables need 0 < u < 1, got {u}")
    if choice == 'max':
        if part == 'odd' and k > u - HALF:
            return ('W11',)
        if k > -HALF:
            return ('P1', 'Q1')
        if k > -(1 + u) / 2:
            return ('W21',)
        if k > -HALF - u:
            return None
        return ('P2', 'Q2') if part == 'ev' else ('W22',)
    if k >= HALF:
        return ('P1', 'Q1') if part == 'ev' else ('W11',)
    if k >= (1 - u) / 2:
        return None
    if k >= HALF - u:
        return ('W21',)
    if part == 'ev' or k >= HALF - 2 * u:
        return ('P2', 'Q2')
    return ('W22',)


def _degree_of(tag: str) -> int:
    return {'P': 0, 'W': 1, 'Q': 2}[tag[0]]


def complex2_shift(kappa_value, u, sign: str, degree: int) -> Tuple[Fraction, ...]:
    """Constant shift in units of s; two entries (even, odd block) at degree 1"""
    k = require_rational(kappa_value, 'kappa')
    u = require_rational(u, 'u')
    sg = _sign(sign)
    if degree == 0:
        return (-sg * (1 + 2 * (k + u)),)
    if degree == 2:
        return (sg * (1 - 2 * k),)
    return (-sg * (1 + 2 * k), -sg * (-1 + 2 * (k + u)))


def complex2_first_terms(kappa_value, u, tag: str, sign: str, degree: int,
                         count: int = 6) -> List[Tuple[int, Fraction]]:
    """First terms (k, value/s) of the eigenvalue lower bounds of a shifted realization"""
    if tag not in COMPLEX2_TAGS:
        raise DomainError(f"unknown length-two tag {tag!r}")
    if _degree_of(tag) != degree:
        raise DomainError(f"{tag} realizes degree {_degree_of(tag)}, not {degree}")
    k0 = require_rational(kappa_value, 'kappa')
    u = require_rational(u, 'u')
    sigma, tau, _ = _row_parameters(tag, k0, u)
    shift = complex2_shift(k0, u, sign, degree)
    if tag.startswith('P'):
        return [(k, 2 * k + 1 + 2 * sigma + shift[0]) for k in range(0, 2 * count, 2)]
    if tag.startswith('Q'):
        return [(k, 2 * k + 1 + 2 * tau + shift[0]) for k in range(1, 2 * count, 2)]
    return [(k, 2 * k + 1 + 2 * (sigma if k % 2 == 0 else tau) + shift[k % 2]) for k in range(count)]


def _w_companions(tag: str, u: float) -> Tuple[Optional[float], Optional[float]]:
    # the odd component of W11 carries rho^{-u} Q1, the even component of W22 carries rho^{-u} P2
    return {'W11': (None, -2 * u), 'W22': (-2 * u, None)}.get(tag, (None, None))


def operator_spec(spec: Complex2Spec, tag: str) -> HalfLineOperatorSpec:
    """Model operator realizing tag for the length-two complex of spec"""
    sigma, tau, theta = _row_parameters(tag, spec.kappa, spec.u)
    xi = spec.mu ** 2
    if tag.startswith('P'):
        return make_spec('P', spec.s, float(spec.u), float(sigma), xi=xi)
    if tag.startswith('Q'):
        return make_spec('Q', spec.s, float(spec.u), float(tau), tau=float(tau), xi=xi)
    return make_spec('W', spec.s, float(spec.u), float(sigma), tau=float(tau), theta=float(theta),
                     xi=xi, eta=-2 * spec.mu * float(spec.u), companions=_w_companions(tag, float(spec.u)))


def tag_spectrum(spec: Complex2Spec, tag: str, K: int = DEFAULT_BASIS) -> np.ndarray:
    """Ascending Ritz eigenvalues of the shifted realization tag"""
    degree = _degree_of(tag)
    shift = [float(x) * spec.s for x in complex2_shift(spec.kappa, spec.u, spec.sign, degree)]
    shift = shift if degree == 1 else shift[0]
    return ritz_spectrum(operator_spec(spec, tag), K, shift=shift).eigenvalues


def _unit_exponent_spectra(spec: Complex2Spec, K: int) -> Dict[int, np.ndarray]:
    root = math.sqrt(float(spec.kappa + HALF) ** 2 + spec.mu ** 2)
    sigma, tau = 0.5 + root, -0.5 + root
    shift0 = float(complex2_shift(spec.kappa, 1, spec.sign, 0)[0])
    shift2 = float(complex2_shift(spec.kappa, 1, spec.sign, 2)[0])
    even = np.array([(2 * k + 1 + 2 * sigma + shift0) * spec.s for k in range(0, 2 * K, 2)])
    odd = np.array([(2 * k + 1 + 2 * tau + shift2) * spec.s for k in range(1, 2 * K, 2)])
    return {0: even, 1: np.sort(np.concatenate([even, odd])), 2: odd}


def complex2_spectra(spec: Complex2Spec, choice: str, K: int = DEFAULT_BASIS,
                     degrees: Sequence[int] = (0, 1, 2)) -> Dict[int, np.ndarray]:
    """Per-degree spectra of Delta_max/min of the length-two complex"""
    if spec.u == 1:
        exact = _unit_exponent_spectra(spec, K)
        return {d: exact[d] for d in degrees}
    spectra = {}
    for degree in degrees:
        tag = complex2_assignment(spec.kappa, spec.u, choice, degree)
        if tag == UNKNOWN:
            raise UnknownAssignmentError(
                f"Delta_{choice},{degree} at kappa={spec.kappa}, u={spec.u} lies on a grey range")
        spectra[degree] = tag_spectrum(spec, tag, K)
    return spectra


def source_spectrum(spec: Complex2Spec, source: Sequence[str], K: int) -> np.ndarray:
    return np.sort(np.concatenate([tag_spectrum(spec, tag, K) for tag in source]))


@dataclass
class EvOddReport:
    even_source: Tuple[str, ...]
    odd_source: Tuple[str, ...]
    even_values: np.ndarray
    odd_values: np.ndarray
    deviation: float
    passed: bool


def ev_odd_match(spec: Complex2Spec, choice: str, K: int = STUDY_BASIS, count: int = 5,
                 tolerance: float = EVODD_TOLERANCE) -> EvOddReport:
    """Compare the lowest eigenvalues of Delta_0 + Delta_2 against Delta_1"""
    even_source = complex2_spectrum_source(spec.kappa, spec.u, choice, 'ev')
    odd_source = complex2_spectrum_source(spec.kappa, spec.u, choice, 'odd')
    if even_source is None or odd_source is None:
        raise UnknownAssignmentError(
            f"no spectrum description for {choice} at kappa={spec.kappa}, u={spec.u}")
    even = source_spectrum(spec, even_source, K)[:count]
    odd = source_spectrum(spec, odd_source, K)[:count]
    scale = np.maximum(np.maximum(np.abs(even), np.abs(odd)), spec.s)
    deviation = float(np.max(np.abs(even - odd) / scale))
    logger.debug(f"ev/odd {'+'.join(even_source)} vs {'+'.join(odd_source)}: deviation {deviation:.3g}")
    return EvOddReport(even_source, odd_source, even, odd, deviation, deviation < tolerance)


# ---------------------------------------------------------------------------
# Exclusion lemma
# ---------------------------------------------------------------------------

def in_excluded_set(kappa_value, u) -> bool:
    """kappa in (-1/2-u, -(1+u)/2] u [(1-u)/2, 1/2)"""
    k = require_rational(kappa_value, 'kappa')
    u = require_rational(u, 'u')
    return -HALF - u < k <= -(1 + u) / 2 or (1 - u) / 2 <= k < HALF


@dataclass
class ExclusionReport:
    n: int
    u: Fraction
    applicable: bool
    condition: bool
    avoids: bool
    hits: List[Tuple[int, Fraction]] = field(default_factory=list)

    @property
    def equivalent(self) -> bool:
        return not self.applicable or self.condition == self.avoids


def exclusion_lemma_check(n: int, u) -> ExclusionReport:
    """Goodness at codimension n versus kappa(n, r, u) avoiding the excluded set"""
    u = require_rational(u, 'u')
    if not 0 < u <= 1:
        raise DomainError(f"u must lie in (0, 1], got {u}")
    condition = goodness_condition(n, u)
    if u == 1:
        return ExclusionReport(n, u, False, condition, True)
    hits = [(r, kappa(n, r, u)) for r in range(n + 1) if in_excluded_set(kappa(n, r, u), u)]
    return ExclusionReport(n, u, True, condition, not hits, hits)


# ---------------------------------------------------------------------------
# Cones
# ---------------------------------------------------------------------------

def cone_harmonic_dims(link_betti: Sequence[int], n: int, u, sign: str, choice: str) -> HarmonicDims:
    """Dimensions of the Witten harmonic space of the cone of dimension n, per degree"""
    choice = _choice(choice)
    positive = _sign(sign) > 0
    if len(link_betti) != n:
        raise DomainError(f"a cone of dimension {n} needs {n} link Betti numbers, got {len(link_betti)}")
    dims = [0] * (n + 1)
    for r, beta in enumerate(link_betti):
        k = kappa(n, r, u)
        if choice == 'max':
            plus, minus = k > -HALF, k <= -HALF
        else:
            plus, minus = k >= HALF, k < HALF
        if positive and plus:
            dims[r] += beta
        elif not positive and minus:
            dims[r + 1] += beta
    return HarmonicDims(tuple(dims))


@dataclass
class ConeSpectrum:
    per_degree: Dict[int, np.ndarray]
    contributions: int

    def kernel_dims(self, s: float) -> Tuple[int, ...]:
        return kernel_dims(self.per_degree, s)


def kernel_dims(per_degree: Dict[int, np.ndarray], s: float) -> Tuple[int, ...]:
    """Eigenvalues with |lambda| <= 1e-8 s, counted per degree"""
    top = max(per_degree) if per_degree else -1
    return tuple(int(np.sum(np.abs(per_degree.get(d, np.array([]))) <= KERNEL_THRESHOLD * s))
                 for d in range(top + 1))


def cone_witten_spectrum(link: LinkSpectralData, n: int, u, s: float, sign: str, choice: str,
                         K: int = 20) -> ConeSpectrum:
    """Lowest eigenvalues of the Witten Laplacian of c(link), assembled per degree"""
    if n != link.dim + 1:
        raise DomainError(f"a cone over {link.name} has dimension {link.dim + 1}, got n={n}")
    u = require_rational(u, 'u')
    choice = _choice(choice)
    collected: Dict[int, List[np.ndarray]] = {d: [] for d in range(n + 1)}
    contributions = 0
    for r, beta in enumerate(link.harmonic):
        if beta == 0:
            continue
        k = kappa(n, r, u)
        tags = complex1_assignment(k, choice).tags
        collected[r].append(np.repeat(complex1_spectrum(k, sign, tags[0], K, s), beta))
        collected[r + 1].append(np.repeat(complex1_spectrum(k, sign, tags[1], K, s), beta))
        contributions += beta
    for r, mu, mult in link.pairs:
        spec = Complex2Spec(s, kappa(n, r, u), u, mu, sign)
        if u == 1:
            spectra = complex2_spectra(spec, choice, K)
        else:
            spectra = {}
            for degree in (0, 1, 2):
                tag = complex2_assignment(spec.kappa, u, choice, degree)
                if tag != UNKNOWN:
                    spectra[degree] = tag_spectrum(spec, tag, K)
                    continue
                source = complex2_spectrum_source(spec.kappa, u, choice, 'odd') if degree == 1 else None
                if source is None:
                    raise UnknownAssignmentError(
                        f"Delta_{choice},{degree} of the pair mu={mu:g} at kappa={spec.kappa} is unknown")
                spectra[degree] = source_spectrum(spec, source, K)
        for degree, values in spectra.items():
            collected[r - 1 + degree].append(np.repeat(values, mult))
        contributions += mult
    per_degree = {d: np.sort(np.concatenate(parts)) if parts else np.array([])
                  for d, parts in collected.items()}
    logger.debug(f"cone over {link.name}: {contributions} contributions, kernels {kernel_dims(per_degree, s)}")
    return ConeSpectrum(per_degree, contributions)


# ---------------------------------------------------------------------------
# Finite Hilbert complexes
# ---------------------------------------------------------------------------

@dataclass
class OracleReport:
    dims: Tuple[int, ...]
    kernel_dims: Tuple[int, ...]
    even_positive: np.ndarray
    odd_positive: np.ndarray
    deviation: float
    passed: bool


def _laplacians(dims: Sequence[int], differentials: Sequence[np.ndarray]) -> List[np.ndarray]:
    laplacians = []
    for i, dim in enumerate(dims):
        lap = np.zeros((dim, dim))
        if i < len(differentials):
            lap += differentials[i].T @ differentials[i]
        if i > 0:
            lap += differentials[i - 1] @ differentials[i - 1].T
        laplacians.append(lap)
    return laplacians


def hilbert_complex_check(differentials: Sequence[np.ndarray],
                          tolerance: float = ORACLE_TOLERANCE) -> OracleReport:
    """Positive spectra of the even and odd Laplacians of a finite complex"""
    if not differentials:
        raise DomainError("a complex needs at least one differential")
    dims = [differentials[0].shape[1]] + [d.shape[0] for d in differentials]
    for i, (a, b) in enumerate(zip(differentials, differentials[1:])):
        if b.shape[1] != a.shape[0]:
            raise DomainError(f"differential {i + 1} does not compose with differential {i}")
        if np.max(np.abs(b @ a), initial=0.0) > 1e-10 * (1 + np.linalg.norm(a) * np.linalg.norm(b)):
            raise DomainError(f"d_{i + 1} d_{i} is not zero")
    spectra = [sym_eigen(SymMatrix.symmetrized(lap))[0] for lap in _laplacians(dims, differentials)]
    scale = max(1.0, max(float(np.max(np.abs(v))) for v in spectra))
    threshold = tolerance * scale
    kernels = tuple(int(np.sum(v <= threshold)) for v in spectra)
    even = np.sort(np.concatenate([v[v > threshold] for v in spectra[0::2]]))
    odd = np.sort(np.concatenate([v[v > threshold] for v in spectra[1::2]]))
    if even.size != odd.size:
        return OracleReport(tuple(dims), kernels, even, odd, math.inf, False)
    deviation = float(np.max(np.abs(even - odd), initial=0.0)) / scale
    return OracleReport(tuple(dims), kernels, even, odd, deviation, deviation <= tolerance)


def _image_projector(matrix: np.ndarray) -> np.ndarray:
    if matrix.size == 0:
        return np.zeros((matrix.shape[0], matrix.shape[0]))
    u, singular, _ = np.linalg.svd(matrix)
    rank = int(np.sum(singular > 1e-12 * max(1.0, singular[0])))
    basis = u[:, :rank]
    return basis @ basis.T


def random_complex(seed: int, max_dim: int = 6, length: Optional[int] = None) -> List[np.ndarray]:
    """Random differentials with d_{i+1} d_i = 0"""
    rng = np.random.default_rng(seed)
    length = length or int(rng.integers(1, 4))
    dims = [int(rng.integers(1, max_dim + 1)) for _ in range(length + 1)]
    differentials = []
    for i in range(length):
        raw = rng.standard_normal((dims[i + 1], dims[i]))
        if differentials:
            raw = raw @ (np.eye(dims[i]) - _image_projector(differentials[-1]))
        differentials.append(raw)
    return differentials


def finite_complex_oracle(seed: int, max_dim: int = 6) -> OracleReport:
    """Random finite complex: even and odd positive spectra must coincide"""
    return hilbert_complex_check(random_complex(seed, max_dim))
