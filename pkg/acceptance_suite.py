#!/usr/bin/env python3
"""
Acceptance Suite
================

Runs the acceptance criteria of the lab as checks that land in a Report:

    C1  exact spectra of the uncoupled form matrices
    C2  chi-orthonormality (Gram matrix against the identity)
    C3  positivity of the assigned P/Q/W realizations
    C4  even/odd spectral matching of the length-two complex
    C5  growth exponent s^u of the first gap
    C6  overlap of chi_k with its Ritz eigenspace as s grows
    C7  region equivalences (W21 region, realization table vs hypotheses)
    C8  exclusion lemma
    C9  nu_local against the Kunneth assembly of cone harmonic dimensions
    C10 perversity form of nu against nu_local on associated exponents
    C11 Morse inequalities, Euler equality and duality on suspensions
    C12 finite Hilbert-complex oracle

Every check method accepts its grid as keyword arguments so the tests can
run reduced grids.

Usage: driven by `master_verifier.py verify`; also importable.
"""

import logging
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from elliptic_complexes import (CHOICES, SIGNS, UNKNOWN, Complex2Spec, UnknownAssignmentError,
                                complex2_assignment, complex2_parameters, ev_odd_match,
                                exclusion_lemma_check, finite_complex_oracle, tag_spectrum)
from hermite_basis import ChiBasis, GenHermiteParams, gram_negative_power
from ih_oracle import ih_betti
from lab_report import Report, RunConfig
from model_operators import exact_base_spectrum, form_matrix, growth_exponent, make_spec, overlap_norm
from morse_homology import (BettiVector, ConeFactor, RelCriticalPoint, model_harmonic_dims,
                            morse_inequalities, nu_local, nu_perversity, suspension_points, total_nu)
from region_sets import in_K_combined
from stratified_spaces import (Perversity, Suspension, admissible_perversities, associated_range, complement,
                               good_associated_range, goodness_condition, point, sphere,
                               standard_perversities, torus)

logger = logging.getLogger(__name__)

F = Fraction
EXACT_GRID = (F(0), F(1, 4), F(1, 2), F(1), F(2))
POSITIVITY_KAPPAS = (F(-9, 10), F(-1, 2), F(-1, 4), F(0), F(1, 4), F(1, 2), F(9, 10))
POSITIVITY_US = (F(3, 10), F(1, 2), F(9, 10))
POSITIVITY_MUS = (1.0, 3.0)
POSITIVITY_SCALES = (1.0, 10.0)
GROWTH_CASES = ((1.0, 0.4), (1.0, 0.7), (1.5, 0.5))
GROWTH_SCALES = (1.0, 10.0, 100.0, 1000.0)
GROWTH_WINDOW = 0.15
NU_LINKS = {'point': point(), 'S1': sphere(1), 'S2': sphere(2), 'T2': torus(2)}
SUSPENSIONS = {'Sigma S2': sphere(2), 'Sigma T2': torus(2), 'Sigma T3': torus(3)}

GROUPS = {
    'spectra': ('C1', 'C2', 'C5', 'C6'),
    'complexes': ('C3', 'C4', 'C12'),
    'regions': ('C7', 'C8'),
    'morse': ('C9', 'C10', 'C11'),
}


def _unit_fractions(max_denominator: int) -> List[Fraction]:
    """All rationals in (0, 1) with denominator <= max_denominator"""
    return sorted({F(a, b) for b in range(2, max_denominator + 1) for a in range(1, b)})


def _good_exponent(rng: np.random.Generator, k: int, max_denominator: int = 12) -> Fraction:
    candidates = [u for u in _unit_fractions(max_denominator) + [F(1)] if goodness_condition(k, u)]
    return candidates[int(rng.integers(len(candidates)))]


def random_critical_point(rng: np.random.Generator, max_factors: int = 3) -> RelCriticalPoint:
    """Random local model over the built-in links with good exponents"""
    factors = []
    for _ in range(int(rng.integers(max_factors + 1))):
        name = list(NU_LINKS)[int(rng.integers(len(NU_LINKS)))]
        link = NU_LINKS[name]
        side = SIGNS[int(rng.integers(2))]
        factors.append(ConeFactor(link, _good_exponent(rng, link.dim + 1), side))
    return RelCriticalPoint(int(rng.integers(3)), int(rng.integers(3)), tuple(factors))


def perversity_with(k: int, value: int) -> Perversity:
    """Perversity of length k with p_k = value"""
    return Perversity(tuple(min(j - 2, value) for j in range(2, k + 1)))


class AcceptanceSuite:
    """Runs the acceptance criteria and collects the records"""

    def __init__(self, config: Optional[RunConfig] = None):
        self.config = config or RunConfig.from_env('verify')
        self.report = Report('verify')
        self.timings: Dict[str, float] = {}

    def _guarded(self, check_id: str, body: Callable[[], bool]) -> bool:
        start = time.time()
        try:
            ok = body()
        except Exception as e:
            logger.error(f"❌ {check_id} raised {type(e).__name__}: {e}")
            self.report.add(check_id, {}, 'no error', f"{type(e).__name__}: {e}", False)
            ok = False
        self.timings[check_id] = time.time() - start
        logger.info(f"{'✅' if ok else '❌'} {check_id} finished in {self.timings[check_id]:.1f}s")
        return ok

    # ------------------------------------------------------------------
    # Half-line operators
    # ------------------------------------------------------------------

    def check_exact_spectra(self, grid: Sequence[Fraction] = EXACT_GRID, scales=(1.0, 2.0), K: int = 20) -> bool:
        ok = True
        for sigma in grid:
            for tau in grid:
                for s in scales:
                    spec = make_spec('W', s, 0.5, float(sigma), tau=float(tau))
                    matrix = form_matrix(spec, K).entries
                    base = exact_base_spectrum(float(sigma), float(tau), s, 2 * K)
                    expected = np.concatenate([base[0::2], base[1::2]])
                    off = matrix - np.diag(np.diag(matrix))
                    deviation = max(float(np.max(np.abs(off))),
                                    float(np.max(np.abs(np.diag(matrix) - expected) / np.maximum(1, expected))))
                    ok &= self.report.add(f"C1 sigma={sigma} tau={tau} s={s:g}",
                                          {'sigma': sigma, 'tau': tau, 's': s, 'K': K},
                                          '<= 1e-10', deviation, deviation <= 1e-10, 'exact spectra')
        return ok

    def check_orthonormality(self, grid: Sequence[Fraction] = EXACT_GRID, K: int = 30) -> bool:
        ok = True
        for sigma in grid:
            for parity in ('even', 'odd'):
                basis = ChiBasis(GenHermiteParams(1.0, float(sigma), parity), float(sigma), 0.0, K)
                gram = gram_negative_power(basis, 0.0).entries
                deviation = float(np.max(np.abs(gram - np.eye(K))))
                ok &= self.report.add(f"C2 sigma={sigma} {parity}", {'sigma': sigma, 'parity': parity, 'K': K},
                                      '< 1e-10', deviation, deviation < 1e-10, 'chi orthonormality')
        return ok

    def check_growth(self, cases=GROWTH_CASES, ks=(0, 2), scales=GROWTH_SCALES) -> bool:
        ok = True
        for sigma, u in cases:
            spec = make_spec('P', 1.0, u, sigma, xi=1.0)
            for k in ks:
                slope = growth_exponent(spec, k, scales)
                inside = u - GROWTH_WINDOW <= slope <= u + GROWTH_WINDOW
                ok &= self.report.add(f"C5 sigma={sigma:g} u={u:g} k={k}", {'sigma': sigma, 'u': u, 'k': k},
                                      [u - GROWTH_WINDOW, u + GROWTH_WINDOW], slope, inside, 'growth s^u')
        return ok

    def check_overlap(self, large_s: float = 1e4) -> bool:
        small = overlap_norm(make_spec('P', 1.0, 0.5, 1.0, xi=1.0), 0)
        large = overlap_norm(make_spec('P', large_s, 0.5, 1.0, xi=1.0), 0)
        return self.report.add('C6 overlap', {'sigma': 1, 'u': F(1, 2), 'k': 0, 's': [1.0, large_s]},
                               '>= 0.99 and increasing', [small, large], large >= 0.99 and large > small,
                               'overlap limit')

    # ------------------------------------------------------------------
    # Length-two complex
    # ------------------------------------------------------------------

    def _positivity_grid(self, kappas, us, mus, scales):
        for kappa in kappas:
            for u in us:
                for mu in mus:
                    for s in scales:
                        for sign in SIGNS:
                            yield Complex2Spec(s, kappa, u, mu, sign)

    def check_positivity(self, kappas=POSITIVITY_KAPPAS, us=POSITIVITY_US, mus=POSITIVITY_MUS,
                         scales=POSITIVITY_SCALES, K: int = 40) -> bool:
        ok = True
        for spec in self._positivity_grid(kappas, us, mus, scales):
            tags = {complex2_assignment(spec.kappa, spec.u, choice, d) for choice in CHOICES for d in (0, 1, 2)}
            for tag in sorted(tags - {UNKNOWN}):
                lowest = float(tag_spectrum(spec, tag, K)[0])
                ok &= self.report.add(
                    f"C3 {tag}{spec.sign} kappa={spec.kappa} u={spec.u} mu={spec.mu:g} s={spec.s:g}",
                    {'tag': tag, 'kappa': spec.kappa, 'u': spec.u, 'mu': spec.mu, 's': spec.s, 'sign': spec.sign},
                    '> 0', lowest, lowest > 0, 'positive realization')
        return ok

    def check_even_odd(self, kappas=POSITIVITY_KAPPAS, us=POSITIVITY_US, mus=POSITIVITY_MUS,
                       scales=POSITIVITY_SCALES, K: int = 60) -> bool:
        ok = True
        for spec in self._positivity_grid(kappas, us, mus, scales):
            for choice in CHOICES:
                try:
                    result = ev_odd_match(spec, choice, K)
                except UnknownAssignmentError:
                    continue
                ok &= self.report.add(
                    f"C4 {choice}{spec.sign} kappa={spec.kappa} u={spec.u} mu={spec.mu:g} s={spec.s:g}",
                    {'choice': choice, 'kappa': spec.kappa, 'u': spec.u, 'mu': spec.mu, 's': spec.s,
                     'sign': spec.sign, 'even': '+'.join(result.even_source), 'odd': '+'.join(result.odd_source)},
                    '< 1e-2', result.deviation, result.passed, 'even/odd spectra')
        return ok

    def check_hilbert_oracle(self, count: int = 50) -> bool:
        ok = True
        for i in range(count):
            seed = self.config.seed + i
            result = finite_complex_oracle(seed)
            ok &= self.report.add(f"C12 seed={seed}", {'seed': seed, 'dims': result.dims},
                                  '<= 1e-9', result.deviation, result.passed, 'finite Hilbert complex')
        return ok

    # ------------------------------------------------------------------
    # Regions
    # ------------------------------------------------------------------

    def check_regions(self, kappas: Optional[Sequence[Fraction]] = None,
                      us: Optional[Sequence[Fraction]] = None) -> bool:
        kappas = kappas or [F(-2) + F(i, 40) for i in range(161)]
        us = us or [F(j, 10) for j in range(1, 10)]
        w21_mismatches, table_mismatches = [], []
        for u in us:
            for kappa in kappas:
                if in_K_combined(1 - kappa, kappa + u, F(1, 2)) != (-(1 + u) / 2 < kappa < (1 - u) / 2):
                    w21_mismatches.append((kappa, u))
                for tag, row in complex2_parameters(kappa, u).items():
                    if not row.agrees:
                        table_mismatches.append((tag, kappa, u))
        inputs = {'kappa': [kappas[0], kappas[-1], len(kappas)], 'u': list(us)}
        ok = self.report.add('C7 W21 region', inputs, [], w21_mismatches[:10], not w21_mismatches,
                             'W21 combined region')
        return self.report.add('C7 realization table', inputs, [], table_mismatches[:10], not table_mismatches,
                               'operator table') and ok

    def check_exclusion(self, n_max: int = 8, max_denominator: int = 24) -> bool:
        failures = []
        for n in range(1, n_max + 1):
            for u in _unit_fractions(max_denominator):
                result = exclusion_lemma_check(n, u)
                if not result.equivalent:
                    failures.append((n, u))
        return self.report.add('C8 exclusion lemma', {'n_max': n_max, 'max_denominator': max_denominator},
                               [], failures[:10], not failures, 'exclusion lemma')

    # ------------------------------------------------------------------
    # Morse numbers
    # ------------------------------------------------------------------

    def check_nu_kunneth(self, count: int = 200) -> bool:
        rng = np.random.default_rng(self.config.seed)
        failures = []
        for _ in range(count):
            candidate = random_critical_point(rng)
            for choice in CHOICES:
                if nu_local(candidate, choice) != model_harmonic_dims(candidate, choice):
                    failures.append((choice, candidate.m_plus, candidate.m_minus,
                                     [(f.link.dim, f.u, f.side) for f in candidate.factors]))
        return self.report.add('C9 nu vs Kunneth', {'count': count, 'seed': self.config.seed}, [],
                               failures[:5], not failures, 'nu against harmonic dimensions')

    def check_perversity_nu(self, k_max: int = 9, samples: int = 5) -> bool:
        failures = []
        for k in range(2, k_max + 1):
            for value in range(0, (k - 2) // 2 + 1):
                p = perversity_with(k, value)
                q = complement(p)
                for link in (sphere(k - 1), torus(k - 1)):
                    for side in SIGNS:
                        for u in good_associated_range(p, k).sample(samples):
                            candidate = RelCriticalPoint(0, 1, (ConeFactor(link, u, side),))
                            if nu_perversity(candidate, p, 'pbar_max') != nu_local(candidate, 'max'):
                                failures.append(('max', k, value, side, u))
                            if nu_perversity(candidate, q, 'qbar_min') != nu_local(candidate, 'min'):
                                failures.append(('min', k, value, side, u))
        return self.report.add('C10 nu perversity', {'k_max': k_max, 'samples': samples}, [], failures[:5],
                               not failures, 'independence of the associated exponent')

    def check_association(self, k_max: int = 9, max_denominator: int = 24) -> bool:
        failures = []
        grid = _unit_fractions(max_denominator) + [F(1)]
        for k in range(2, k_max + 1):
            for value in range(0, (k - 2) // 2 + 1):
                p = perversity_with(k, value)
                good, associated = good_associated_range(p, k), associated_range(p, k)
                for u in grid:
                    if (u in good) != (u in associated and goodness_condition(k, u)):
                        failures.append((k, value, u))
        return self.report.add('C10 good associated range', {'k_max': k_max, 'max_denominator': max_denominator},
                               [], failures[:5], not failures, 'double condition on u')

    def check_suspensions(self, spaces: Dict[str, object] = None) -> bool:
        ok = True
        for name, link in (spaces or SUSPENSIONS).items():
            space = Suspension(link, F(1))
            n = space.dim
            points = suspension_points(space)
            for p in admissible_perversities(n, standard_perversities(n)['lower_middle']):
                q = complement(p)
                beta_p = ih_betti(space, p)
                nu_p = total_nu(points, n, perversity=p)
                morse = morse_inequalities(BettiVector(beta_p, f"perversity{p}"), nu_p)
                ok &= self.report.add(f"C11 {name} p={p}", {'space': name, 'p': str(p)},
                                      'inequalities and Euler', {'beta': beta_p, 'nu': nu_p},
                                      morse.passed, 'Morse inequalities')
                beta_q = ih_betti(space, q)
                dual = all(beta_q[r] == beta_p[n - r] for r in range(n + 1))
                ok &= self.report.add(f"C11 {name} duality p={p}", {'space': name, 'p': str(p), 'q': str(q)},
                                      list(reversed(beta_p)), beta_q, dual, 'duality')
                nu_q = total_nu(points, n, perversity=q, convention='qbar_min')
                euler_p = sum((-1) ** r * v for r, v in enumerate(nu_p))
                euler_q = sum((-1) ** r * v for r, v in enumerate(nu_q))
                ok &= self.report.add(f"C11 {name} Euler q={q}", {'space': name, 'q': str(q)},
                                      (-1) ** n * euler_p, euler_q, euler_q == (-1) ** n * euler_p,
                                      'Euler characteristic of the dual perversity')
        return ok

    # ------------------------------------------------------------------

    def checks(self) -> Dict[str, Callable[[], bool]]:
        return {
            'C1': self.check_exact_spectra,
            'C2': self.check_orthonormality,
            'C3': self.check_positivity,
            'C4': self.check_even_odd,
            'C5': self.check_growth,
            'C6': self.check_overlap,
            'C7': self.check_regions,
            'C8': self.check_exclusion,
            'C9': self.check_nu_kunneth,
            'C10': lambda: self.check_perversity_nu() & self.check_association(),
            'C11': self.check_suspensions,
            'C12': self.check_hilbert_oracle,
        }

    def selected(self, only: Sequence[str] = ()) -> List[str]:
        """Check ids for group names or ids in only; all when empty"""
        if not only:
            return list(self.checks())
        ids = []
        for item in only:
            if item in GROUPS:
                ids.extend(GROUPS[item])
            elif item in self.checks():
                ids.append(item)
            else:
                raise ValueError(f"unknown check or group {item!r}; groups are {sorted(GROUPS)}")
        return sorted(set(ids), key=lambda c: int(c[1:]))

    def run(self, only: Sequence[str] = ()) -> Tuple[bool, Report]:
        ids = self.selected(only or self.config.only)
        logger.info(f"🔧 Running {len(ids)} acceptance checks: {', '.join(ids)}")
        results = {check_id: self._guarded(check_id, self.checks()[check_id]) for check_id in ids}
        passed = sum(results.values())
        logger.info(f"📊 Acceptance: {passed}/{len(ids)} criteria passed, "
                    f"{self.report.passed_count}/{len(self.report.records)} records")
        return all(results.values()), self.report
