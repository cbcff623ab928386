# cli/suites.py - Named verification suites run by `drwlab verify`
import logging
import time

from core.models import CheckResult, Report
from drw_forms.verification import check_relations
from duality_engine import verification as duality
from filtrations import verification as filtrations
from filtrations.models import FilKind
from modulus_spaces import verification as modulus
from witt_core.verification import witt_suite

logger = logging.getLogger(__name__)


def _flatten(*parts):
    checks = []
    for part in parts:
        if isinstance(part, CheckResult):
            checks.append(part)
        else:
            checks.extend(part)
    return checks


def run_witt(cfg):
    return witt_suite(cfg.ctx, cfg.samples, cfg.seed)


def run_operators(cfg):
    return check_relations(cfg.ctx, cfg.samples, cfg.seed)


def run_filp(cfg):
    ctx, q, r, window = cfg.ctx, cfg.q, cfg.r, cfg.window
    return _flatten(
        filtrations.check_filp_base(ctx, window),
        filtrations.check_monotonicity(ctx, q, r, window),
        filtrations.check_filp_stability(ctx, q, r, window),
        filtrations.check_wo_module(ctx, q, r, window),
        filtrations.check_fillog_explicit(ctx, r, window),
    )


def run_rfil(cfg):
    return [filtrations.check_rfil(cfg.ctx, cfg.q, cfg.r, cfg.window)]


def run_closed_form(cfg):
    return [filtrations.check_closed_form(cfg.ctx, cfg.q, cfg.r, cfg.window)]


def run_fvr(cfg):
    ctx, q, r, window = cfg.ctx, cfg.q, cfg.r, cfg.window
    parts = [filtrations.check_fvr_stability(ctx, kind, q, r, window)
             for kind in (FilKind.LOG, FilKind.LOG_PRIME, FilKind.FIL)]
    parts += [filtrations.check_filp_round(ctx, q, max(r, 1), s, window) for s in range(ctx.n)]
    if ctx.n >= 2:
        parts.append(filtrations.check_filp_fvr(ctx, q, r, window))
    return _flatten(*parts)


def run_conductor(cfg):
    return filtrations.check_conductor_axioms(cfg.ctx, cfg.q, cfg.window, cfg.samples, cfg.seed)


def run_duality(cfg):
    ctx, q, r, window = cfg.ctx, cfg.q, cfg.r, cfg.window
    checks, _ = duality.verify_local_duality(ctx, q, r, window)
    return _flatten(
        checks,
        duality.check_balancedness(ctx, q, window, cfg.samples, cfg.seed),
        duality.check_residue_cartier(ctx, window, cfg.samples, cfg.seed),
    )


def run_strhwm(cfg):
    ctx, q, r, window = cfg.ctx, cfg.q, cfg.r, cfg.window
    return _flatten(
        modulus.verify_bnzn(ctx, q, r, window),
        modulus.verify_rhwm(ctx, q, r, window),
        modulus.verify_strHWM(ctx, q, r, window),
    )


def run_long_mod_seq(cfg):
    return _flatten(*(modulus.verify_long_mod_seq(cfg.ctx, cfg.q, cfg.r, r_w, cfg.window) for r_w in (1, 2)))


def run_zero_side(cfg):
    ctx, q, r, window = cfg.ctx, cfg.q, cfg.r, cfg.window
    return _flatten(
        modulus.verify_zero_side(ctx, q, r, window),
        modulus.check_sandwich(ctx, q, r, window),
        modulus.check_zero_stability(ctx, q, r, window),
    )


def run_cartier_duality(cfg):
    parts = []
    for index in sorted({0, cfg.n}):
        checks, _ = duality.verify_cartier_duality(cfg.p, index, cfg.q, cfg.r, cfg.window)
        parts.append(checks)
    return _flatten(*parts)


def run_graded(cfg):
    return filtrations.graded_char_check(cfg.ctx, cfg.q, max(cfg.r, 2), cfg.window)


def run_artin_schreier(cfg):
    ctx, q, r = cfg.ctx, cfg.q, cfg.r

    def fixed_points(window):
        return duality.check_fixed_points(ctx, q, r, window)

    return [fixed_points(cfg.window), filtrations.check_window_stability(fixed_points, cfg.window)]


SUITES = {
    'witt': run_witt,
    'operators': run_operators,
    'filp': run_filp,
    'rfil': run_rfil,
    'closed-form': run_closed_form,
    'fvr': run_fvr,
    'conductor': run_conductor,
    'duality': run_duality,
    'strhwm': run_strhwm,
    'long-mod-seq': run_long_mod_seq,
    'zero-side': run_zero_side,
    'cartier-duality': run_cartier_duality,
    'graded': run_graded,
    'artin-schreier': run_artin_schreier,
}


def suite_names(selection):
    """'all' expands to every suite, ordered by name"""
    if selection == 'all':
        return sorted(SUITES)
    return [selection]


def run_suite(name, cfg):
    start = time.perf_counter()
    report = Report(name, cfg.to_dict())
    report.extend(SUITES[name](cfg))
    report.elapsed = time.perf_counter() - start
    logger.info(f"Suite {name}: {len(report.checks)} checks, {len(report.failures())} failed, "
                f"{report.elapsed:.2f}s")
    return report
