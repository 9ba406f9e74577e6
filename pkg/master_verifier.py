#!/usr/bin/env python3
"""
Master Verifier
===============

Command-line front end of the lab:

    spectra   exact vs Ritz spectra, growth exponents, sign tables, even/odd matching
    regions   exact region and table equivalences on rational grids
    morse     nu tables, Morse inequalities and the Euler equality for a document
    verify    the full acceptance suite

Usage:
    python master_verifier.py spectra --kind P --sigma 1 --u 1/2 --xi 1 --s 1,10,100,1000 -K 60
    python master_verifier.py spectra --complex1 --kappa 0 --sign +
    python master_verifier.py spectra --evodd --kappa 1 --u 1/2 --mu 1
    python master_verifier.py regions --w21 --grid kappa=-2:2:1/40,u=1/10:9/10:1/10
    python master_verifier.py morse documents/suspension_s2.json
    python master_verifier.py verify --only spectra --format json --report out.json

Exit status is 0 iff every check passes.
"""

import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

import typer

from acceptance_suite import AcceptanceSuite
from elliptic_complexes import (CHOICES, COMPLEX1_TAGS, Complex2Spec, UnknownAssignmentError,
                                complex1_assignment, complex1_operator_table, complex1_sign_table,
                                ev_odd_match)
from ih_oracle import ih_betti
from lab_report import Report, RunConfig, parse_grid, parse_s_grid, save_report
from model_operators import first_term, growth_exponent, make_spec, ritz_monotonicity, ritz_spectrum
from morse_homology import BettiVector, load_points, morse_inequalities, nu_local, nu_perversity, \
    suspension_points, total_nu
from numerics import LabError, parse_rational
from stratified_spaces import DocumentError, Manifold, Suspension, load_space, perversity_from_document

logger = logging.getLogger(__name__)

app = typer.Typer(help="Spectral and Morse-theoretic verification lab", add_completion=False)


def configure_logging(log_file: Optional[str] = None, verbose: bool = False):
    """One-time logging setup: file plus console, coloured when colorlog is installed"""
    log_file = log_file or os.getenv('LAB_LOG_FILE', 'master_verifier.log')
    fmt = '%(asctime)s - %(levelname)s - %(message)s'
    stream = logging.StreamHandler()
    try:
        import colorlog
        stream.setFormatter(colorlog.ColoredFormatter('%(log_color)s' + fmt))
    except ImportError:
        pass  # plain console output
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format=fmt,
        handlers=[
            logging.FileHandler(log_file),
            stream
        ]
    )


def _finish(report: Report, config: RunConfig):
    save_report(report, config)
    if report.all_passed:
        logger.info(f"✅ {report.suite}: all {len(report.records)} checks passed")
        raise typer.Exit(0)
    logger.error(f"❌ {report.suite}: {report.failed_count} of {len(report.records)} checks failed")
    raise typer.Exit(1)


def _config(subcommand: str, **overrides) -> RunConfig:
    try:
        return RunConfig.from_env(subcommand, **overrides)
    except LabError as e:
        raise typer.BadParameter(str(e))


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

def spectra_operator(config: RunConfig, kind: str, sigma: str, tau: Optional[str], u: str,
                     xi: float, eta: float, count: int = 5) -> Report:
    report = Report('spectra')
    K = config.basis_size
    sigma_q, u_q = parse_rational(sigma), parse_rational(u)
    tau_f = float(parse_rational(tau)) if tau is not None else None
    for s in config.s_grid:
        spec = make_spec(kind, s, float(u_q), float(sigma_q), tau=tau_f, xi=xi, eta=eta)
        result = ritz_spectrum(spec, K)
        start = 1 if kind == 'Q' else 0
        step = 1 if kind == 'W' else 2
        bases = sorted(first_term(spec, start + step * j) for j in range(result.eigenvalues.size))[:count]
        ritz = result.eigenvalues[:count]
        bound_ok = eta != 0 or bool(all(r >= b - 1e-9 * s for r, b in zip(ritz, bases)))
        report.add(f"{kind} s={s:g} lower bound", {'kind': kind, 'sigma': sigma_q, 'u': u_q, 'xi': xi, 's': s, 'K': K},
                   bases, ritz, bound_ok, 'first term bounds the Ritz values')
        monotone = ritz_monotonicity(spec, K)
        report.add(f"{kind} s={s:g} monotone", {'K': K, 'step': 4}, True, monotone, monotone,
                   'min-max monotonicity')
    if kind != 'W' and xi > 0 and len(config.s_grid) >= 4:
        k = 1 if kind == 'Q' else 0
        slope = growth_exponent(make_spec(kind, 1.0, float(u_q), float(sigma_q), tau=tau_f, xi=xi), k,
                                config.s_grid, K)
        window = config.tolerance('growth', 0.15)
        report.add(f"{kind} growth k={k}", {'s': list(config.s_grid)}, [float(u_q) - window, float(u_q) + window],
                   slope, abs(slope - float(u_q)) <= window, 'growth s^u')
    return report


def spectra_complex1(config: RunConfig, kappa: str, sign: str) -> Report:
    report = Report('spectra')
    kappa_q = parse_rational(kappa)
    table = complex1_operator_table(kappa_q)
    for tag in COMPLEX1_TAGS:
        cells = complex1_sign_table(kappa_q, tag, sign)
        zeros = [k for k, c in cells.items() if c == '0']
        report.add(f"{tag}{sign} sign table", {'kappa': kappa_q, 'sign': sign, 'parameter': table.parameters[tag]},
                   'defined' if table.defined(tag) else '?', cells, True,
                   f"zero modes at k={zeros}" if zeros else 'no zero mode')
    for choice in CHOICES:
        assignment = complex1_assignment(kappa_q, choice)
        for degree, tag in assignment.tags.items():
            cells = complex1_sign_table(kappa_q, tag, sign)
            report.add(f"{choice} degree {degree} ({tag}{sign})", {'kappa': kappa_q, 'choice': choice},
                       'no negative eigenvalue', cells, '-' not in cells.values(), 'non-negative Laplacian')
    return report


def spectra_evodd(config: RunConfig, kappa: str, u: str, mu: float, sign: str) -> Report:
    report = Report('spectra')
    spec = Complex2Spec(config.s_grid[0], parse_rational(kappa), parse_rational(u), mu, sign)
    for choice in CHOICES:
        try:
            result = ev_odd_match(spec, choice, max(config.basis_size, 8))
        except UnknownAssignmentError as e:
            logger.warning(f"⚠️ {choice}: {e}")
            continue
        report.add(f"ev/odd {choice}", {'kappa': spec.kappa, 'u': spec.u, 'mu': mu, 'sign': sign,
                                        'even': '+'.join(result.even_source), 'odd': '+'.join(result.odd_source)},
                   result.even_values, result.odd_values, result.passed, f"deviation {result.deviation:.3g}")
    return report


@app.command()
def spectra(
        kind: str = typer.Option('P', help="model operator kind P, Q or W"),
        sigma: str = typer.Option('1', help="sigma as num/den"),
        tau: Optional[str] = typer.Option(None, help="tau as num/den (Q and W)"),
        u: str = typer.Option('1/2', help="exponent u as num/den"),
        xi: float = typer.Option(0.0, help="potential coefficient xi"),
        eta: float = typer.Option(0.0, help="coupling coefficient eta (W)"),
        complex1: bool = typer.Option(False, '--complex1', help="length-one complex sign tables"),
        evodd: bool = typer.Option(False, '--evodd', help="even/odd matching of the length-two complex"),
        kappa: str = typer.Option('0', help="kappa as num/den"),
        mu: float = typer.Option(1.0, help="link eigenvalue mu"),
        sign: str = typer.Option('+', help="sign of f = +-rho^2/2"),
        s: Optional[str] = typer.Option(None, '--s', '-s', help="comma separated scales"),
        basis_size: Optional[int] = typer.Option(None, '--basis-size', '-K', help="basis size K"),
        output_format: str = typer.Option('table', '--format', help="table, json or csv"),
        report: Optional[Path] = typer.Option(None, help="report file"),
):
    """Exact and Ritz spectra of the model operators and complexes"""
    config = _config('spectra', basis_size=basis_size, output_format=output_format, report_path=report,
                     s_grid=parse_s_grid(s) if s else None)
    logger.info(f"🔧 spectra with K={config.basis_size}, s={config.s_grid}")
    try:
        if complex1:
            result = spectra_complex1(config, kappa, sign)
        elif evodd:
            result = spectra_evodd(config, kappa, u, mu, sign)
        else:
            result = spectra_operator(config, kind, sigma, tau, u, xi, eta)
    except (LabError, TypeError) as e:
        logger.error(f"❌ spectra failed: {e}")
        raise typer.Exit(2)
    _finish(result, config)


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------

@app.command()
def regions(
        w21: bool = typer.Option(False, '--w21', help="W21 region and realization table equivalences"),
        exclusion: bool = typer.Option(False, '--exclusion', help="exclusion lemma"),
        association: bool = typer.Option(False, '--association', help="good associated exponent ranges"),
        grid: Optional[str] = typer.Option(None, help="kappa=start:end:step,u=start:end:step"),
        nmax: int = typer.Option(8, help="largest codimension for the exclusion lemma"),
        kmax: int = typer.Option(9, help="largest codimension for the association check"),
        output_format: str = typer.Option('table', '--format', help="table, json or csv"),
        report: Optional[Path] = typer.Option(None, help="report file"),
):
    """Exact equivalences between region predicates and tables"""
    config = _config('regions', output_format=output_format, report_path=report)
    suite = AcceptanceSuite(config)
    suite.report = Report('regions')
    try:
        parsed = parse_grid(grid) if grid else {}
        if not (w21 or exclusion or association):
            w21 = exclusion = association = True
        if w21:
            suite.check_regions(parsed.get('kappa'), parsed.get('u'))
        if exclusion:
            suite.check_exclusion(nmax)
        if association:
            suite.check_association(kmax)
    except (LabError, TypeError) as e:
        logger.error(f"❌ regions failed: {e}")
        raise typer.Exit(2)
    _finish(suite.report, config)


# ---------------------------------------------------------------------------
# morse
# ---------------------------------------------------------------------------

def morse_document(doc: dict) -> Report:
    """nu tables, inequalities and Euler equality for one space document"""
    report = Report('morse')
    if not isinstance(doc, dict) or 'space' not in doc:
        raise DocumentError("$: expected an object with a 'space' entry")
    space = load_space(doc['space'], '$.space')
    n = space.dim
    if 'points' in doc:
        points = load_points(doc['points'], '$.points')
    elif isinstance(space, Suspension):
        points = suspension_points(space)
    else:
        raise DocumentError("$.points: required unless the space is a suspension")
    choice = doc.get('choice', 'max')
    if 'perversity' in doc:
        p = perversity_from_document(doc['perversity'])
        if p.n != n:
            raise DocumentError(f"$.perversity: length must match dimension {n} (p_2..p_{n})")
        betti = BettiVector(ih_betti(space, p), f"perversity{p}")
        per_point = [nu_perversity(x, p) for x in points]
        nu = total_nu(points, n, perversity=p)
    elif isinstance(space, Manifold):
        betti = BettiVector(space.betti, choice)
        per_point = [nu_local(x, choice) for x in points]
        nu = total_nu(points, n, choice)
    else:
        raise DocumentError("$.perversity: required for singular spaces")
    for i, values in enumerate(per_point):
        report.add(f"nu point {i}", {'m_plus': points[i].m_plus, 'm_minus': points[i].m_minus,
                                     'factors': len(points[i].factors)}, None, values, True, 'local Morse numbers')
    result = morse_inequalities(betti, nu, per_point)
    for k, lhs, rhs in result.partial:
        report.add(f"inequality k={k}", {'k': k}, f"<= {rhs}", lhs, lhs <= rhs, 'Morse inequality')
    report.add('Euler equality', {'betti': betti.values, 'nu': nu}, result.euler_nu, result.euler_betti,
               result.euler_holds, 'Euler characteristic')
    return report


@app.command()
def morse(
        document: Path = typer.Argument(..., help="JSON space/critical-point document"),
        output_format: str = typer.Option('table', '--format', help="table, json or csv"),
        report: Optional[Path] = typer.Option(None, help="report file"),
):
    """Morse inequalities for a space document"""
    config = _config('morse', input_path=document, output_format=output_format, report_path=report)
    logger.info(f"📁 Reading {document}")
    try:
        with open(document, 'r', encoding='utf-8') as f:
            doc = json.load(f)
        result = morse_document(doc)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"❌ cannot read {document}: {e}")
        raise typer.Exit(2)
    except (LabError, TypeError) as e:
        logger.error(f"❌ {e}")
        raise typer.Exit(2)
    _finish(result, config)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

@app.command()
def verify(
        only: Optional[List[str]] = typer.Option(None, help="group (spectra, complexes, regions, morse) or check id"),
        seed: Optional[int] = typer.Option(None, help="seed of the randomized oracles"),
        output_format: str = typer.Option('table', '--format', help="table, json or csv"),
        report: Optional[Path] = typer.Option(None, help="report file"),
        deterministic: bool = typer.Option(True, help="omit the timestamp from JSON reports"),
):
    """Run the acceptance suite"""
    config = _config('verify', seed=seed, output_format=output_format, report_path=report,
                     only=tuple(only or ()), deterministic=deterministic)
    suite = AcceptanceSuite(config)
    try:
        _, result = suite.run()
    except ValueError as e:
        raise typer.BadParameter(str(e))
    _finish(result, config)


@app.callback()
def main_callback(
        log_file: Optional[str] = typer.Option(None, help="log file (default LAB_LOG_FILE or master_verifier.log)"),
        verbose: bool = typer.Option(False, '--verbose', '-v', help="debug logging"),
):
    configure_logging(log_file, verbose)


def main():
    """Main entry point"""
    try:
        app()
    except KeyboardInterrupt:
        print("\n\n⏹️ Verification interrupted by user")
        logger.info("⏹️ Verification interrupted")
        sys.exit(130)


if __name__ == "__main__":
    main()
