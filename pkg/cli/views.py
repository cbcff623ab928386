# cli/views.py - Text renderers
from drw_forms.utils import FormPrinter


def render_check(check):
    line = f"[{check.verdict.value.upper()}] {check.name}  ({check.reference})"
    if check.lengths:
        lengths = ', '.join(f"{key}={value}" for key, value in check.lengths.items())
        line += f"\n        lengths: {lengths}"
    if check.witness is not None:
        line += f"\n        witness: {check.witness}"
    return line


def render_report(report):
    lines = [f"== {report.suite} ({len(report.checks)} checks, {report.elapsed:.2f}s)"]
    lines.extend(render_check(check) for check in report.checks)
    failed = len(report.failures())
    lines.append(f"-- {report.suite}: {'pass' if not failed else f'{failed} failed'}")
    return '\n'.join(lines)


def render_pairing(report, label=''):
    lines = [
        f"{label}{report.verdict.value}, lengths {report.left_length}/{report.right_length}",
        f"  kernels: left {report.left_kernel_length}, right {report.right_kernel_length}",
        f"  elementary divisors: {list(report.divisors)}",
    ]
    if report.witness is not None:
        lines.append(f"  witness: {report.witness}")
    return '\n'.join(lines)


def render_family(family):
    lines = [f"{family.fid} on {family.window}: {len(family)} generators"]
    for member in family:
        lines.append(f"  {FormPrinter.render(member.form)}    [{member.recipe}]")
    return '\n'.join(lines)
