# cli/tests.py
import json
import random

import jsonschema
import pytest
from click.testing import CliRunner

from cli.commands import _collect, drwlab, exit_code_for
from cli.models import RunConfig
from cli.parser import degree_of, parse, parse_element, tokenize, unparse
from cli.serializers import report_schema
from cli.suites import SUITES, run_suite, suite_names
from core.exceptions import DegreeError, ParseError, ResourceError, SearchExhausted, ValidationError, WindowTooSmall
from drw_forms.models import make_form
from drw_forms.utils import FormConstructors, FormPrinter
from drw_forms.verification import sample_form
from witt_core.models import PrimeContext

P2N1 = PrimeContext(2, 1)
P2N2 = PrimeContext(2, 2)
P3N2 = PrimeContext(3, 2)


@pytest.fixture
def runner():
    return CliRunner()


# parser

def test_teichmuller_literal():
    assert parse_element('T(1,-2)', P2N2) == FormConstructors.teich_form(P2N2, 1, -2)


def test_dv_literal():
    assert parse_element('dV^1(T(1,3))', P2N2) == make_form(P2N2, 1, {(1, 3): 1})


def test_scalar_times_dlog():
    assert parse_element('3*dlogt', P3N2) == make_form(P3N2, 1, {(0, 0): 3})


def test_coefficient_is_read_mod_p():
    assert parse_element('T(4,1)', PrimeContext(3, 1)) == parse_element('T(1,1)', PrimeContext(3, 1))
    assert parse_element('T(3,1)', PrimeContext(3, 1)).is_zero()


def test_operator_levels():
    assert parse_element('F(V^1(T(1,2)))', P2N2) == parse_element('2*T(1,2)', P2N2)
    assert parse_element('R(p_(T(1,1)))', P2N2) == parse_element('2*T(1,1)', P2N2)
    assert parse_element('d(T(1,3))', P3N2) == make_form(P3N2, 1, {(0, 3): 3})


def test_product_of_one_forms_is_rejected():
    with pytest.raises(DegreeError):
        parse_element('V^1(T(1,-2)) + d(T(1,3))*dlogt', P2N2)


def test_mixed_degree_sum_is_rejected():
    with pytest.raises(DegreeError):
        degree_of(parse('T(1,1) + dlogt'))


def test_verschiebung_deeper_than_level():
    with pytest.raises(ValidationError):
        parse_element('V^2(T(1,1))', P2N2)


@pytest.mark.parametrize('source, line, column', [
    ('T(1,2', 1, 6),
    ('V^1(x)', 1, 5),
    ('T(1,2) +\n  * dlogt', 2, 3),
    ('', 1, 1),
])
def test_parse_error_positions(source, line, column):
    with pytest.raises(ParseError) as info:
        parse(source)
    assert (info.value.line, info.value.column) == (line, column)
    assert info.value.to_dict()['error'] == 'parse'


def test_tokens_carry_positions():
    tokens = tokenize('T(1,2)\n+ dlogt')
    assert [(t.kind, t.line, t.column) for t in tokens if t.kind in ('call', 'dlogt')] == [
        ('call', 1, 1), ('dlogt', 2, 3)]


@pytest.mark.parametrize('source', [
    'T(1,2) - (T(1,3) - T(1,1))',
    '(T(1,1) + 2)*dlogt',
    'dV^1(T(1,3) + T(1,-1)) + d(T(1,2)*T(1,-5))',
    'p_(T(1,-3)) + V^1(T(1,1))',
])
def test_unparse_round_trip(source):
    tree = parse(source)
    assert parse_element(unparse(tree), P2N2) == parse_element(source, P2N2)


@pytest.mark.parametrize('ctx', [P2N1, P2N2, P3N2])
@pytest.mark.parametrize('q', [0, 1])
def test_printer_output_parses_back(ctx, q):
    rng = random.Random(7)
    for _ in range(10):
        x = sample_form(ctx, q, rng)
        assert parse_element(FormPrinter.render(x), ctx) == x


# configuration

def test_run_config_validation():
    with pytest.raises(ValidationError):
        RunConfig(4, 1, '-2:2')
    with pytest.raises(ValidationError):
        RunConfig(2, 1, '2:-2')
    with pytest.raises(ValidationError):
        RunConfig(2, 1, 'wide')
    assert RunConfig(2, 2, '-3:3', r=2).to_dict()['window'] == '-3:3'


@pytest.mark.parametrize('error, code', [
    (ParseError('bad', 1, 1), 2),
    (DegreeError('bad'), 2),
    (ResourceError('big'), 3),
    (WindowTooSmall('small'), 3),
    (SearchExhausted('open'), 3),
])
def test_exit_codes(error, code):
    assert exit_code_for(error) == code


# suites

def test_all_expands_in_name_order():
    assert suite_names('all') == sorted(SUITES)
    assert suite_names('rfil') == ['rfil']


def test_run_suite_report():
    report = run_suite('closed-form', RunConfig(2, 1, '-5:3', r=3, q=1))
    assert report.suite == 'closed-form'
    assert report.passed
    assert report.config['r'] == 3


# commands

def test_conductor_of_dlog_t(runner):
    result = runner.invoke(drwlab, ['conductor', '--p', '2', '--n', '2', 'dlogt'])
    assert result.exit_code == 0
    assert result.output.strip() == '1'


def test_conductor_of_teichmuller_pole(runner):
    result = runner.invoke(drwlab, ['conductor', '--p', '2', '--n', '1', '--format', 'json', 'T(1,-2)'])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data['conductor'] == 2
    assert data['degree'] == 0


def test_conductor_parse_error(runner):
    result = runner.invoke(drwlab, ['conductor', '--p', '2', 'T(1,'])
    assert result.exit_code == 2
    assert '"error": "parse"' in result.output
    assert '"column"' in result.output


def test_conductor_degree_error(runner):
    result = runner.invoke(drwlab, ['conductor', '--p', '2', '--n', '2', 'dlogt*dlogt'])
    assert result.exit_code == 2
    assert '"error": "degree"' in result.output


def test_non_prime_is_a_usage_error(runner):
    result = runner.invoke(drwlab, ['conductor', '--p', '4', 'dlogt'])
    assert result.exit_code == 2
    assert '"error": "validation"' in result.output


def test_duality_report(runner):
    result = runner.invoke(drwlab, ['duality', '--p', '2', '--n', '2', '--r', '3', '--window', '-5:5'])
    assert result.exit_code == 0, result.output
    assert 'perfect, lengths 6/6' in result.output


def test_duality_json(runner):
    result = runner.invoke(drwlab, ['duality', '--p', '2', '--n', '1', '--r', '3', '--window', '-5:5',
                                    '--format', 'json'])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data['pairing']['verdict'] == 'perfect'
    assert data['pairing']['left_length'] == data['pairing']['right_length'] == 3
    assert all(check['verdict'] == 'pass' for check in data['checks'])


def test_fil_basis_json(runner):
    result = runner.invoke(drwlab, ['fil-basis', '--p', '2', '--n', '1', '--r', '2', '--q', '1',
                                    '--window', '-3:2', '--format', 'json'])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data['generators']
    assert {'form', 'recipe'} <= set(data['generators'][0])


def test_fil_basis_text(runner):
    result = runner.invoke(drwlab, ['fil-basis', '--p', '3', '--n', '2', '--r', '1', '--kind', 'log',
                                    '--q', '0', '--window', '-2:1'])
    assert result.exit_code == 0
    assert 'generators' in result.output


def test_verify_schema(runner):
    result = runner.invoke(drwlab, ['verify', 'rfil', '--p', '2', '--n', '1', '--r', '3', '--window', '-4:3',
                                    '--format', 'json'])
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert set(data) == {'config', 'suite', 'checks', 'elapsed'}
    assert data['suite'] == 'rfil'
    assert set(data['checks'][0]) == {'name', 'paper_ref', 'verdict', 'lengths', 'witness'}
    jsonschema.validate(instance=data, schema=report_schema())


def test_report_schema_rejects_missing_paper_ref():
    report = {'config': {'p': 2, 'n': 1, 'window': '-4:3', 'r': 3, 'q': 1, 'seed': 0}, 'suite': 'rfil',
              'elapsed': 0.1, 'checks': [{'name': 'x', 'verdict': 'pass', 'lengths': {}, 'witness': None}]}
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(instance=report, schema=report_schema())


def test_verify_suite_option(runner):
    result = runner.invoke(drwlab, ['verify', '--suite', 'closed-form', '--p', '3', '--r', '3',
                                    '--window', '-4:2'])
    assert result.exit_code == 0
    assert '[PASS]' in result.output


def test_verify_strhwm(runner):
    result = runner.invoke(drwlab, ['verify', 'strhwm', '--p', '2', '--n', '2', '--r', '3', '--q', '1',
                                    '--window', '-8:4'])
    assert result.exit_code == 0, result.output


def test_verify_window_too_small(runner):
    result = runner.invoke(drwlab, ['verify', 'strhwm', '--p', '2', '--n', '2', '--r', '5', '--q', '0',
                                    '--window', '-2:2'])
    assert result.exit_code == 3
    assert 'window_too_small' in result.output


def test_parallel_collection_keeps_name_order():
    cfg = RunConfig(2, 1, '-4:3', r=2, q=1, jobs=2)
    reports = _collect(['rfil', 'closed-form'], cfg)
    assert [report.suite for report in reports] == ['closed-form', 'rfil']
    assert all(report.passed for report in reports)


def test_typo_suggestion(runner):
    result = runner.invoke(drwlab, ['dualty', '--p', '2'])
    assert result.exit_code == 2
    assert 'duality' in result.output
