# cli/serializers.py - DRF serializers for JSON reports
import json
from enum import Enum
from fractions import Fraction
from pathlib import Path

from rest_framework import serializers
from rest_framework.utils.encoders import JSONEncoder

from drw_forms.utils import FormPrinter

REPORT_SCHEMA = Path(__file__).resolve().parent / 'schema' / 'report.json'


class CheckResultSerializer(serializers.Serializer):
    """One verified identity with the source result it checks"""
    name = serializers.CharField()
    paper_ref = serializers.CharField(source='reference')
    verdict = serializers.SerializerMethodField()
    lengths = serializers.DictField()
    witness = serializers.SerializerMethodField()

    def get_verdict(self, obj):
        return obj.verdict.value

    def get_witness(self, obj):
        return None if obj.witness is None else str(obj.witness)


class ReportSerializer(serializers.Serializer):
    config = serializers.DictField()
    suite = serializers.CharField()
    checks = CheckResultSerializer(many=True)
    elapsed = serializers.SerializerMethodField()

    def get_elapsed(self, obj):
        return round(obj.elapsed, 4)


class PairingReportSerializer(serializers.Serializer):
    """Gram matrix, Smith divisors and kernel lengths of a residue pairing"""
    verdict = serializers.SerializerMethodField()
    left_length = serializers.IntegerField()
    right_length = serializers.IntegerField()
    left_kernel_length = serializers.IntegerField()
    right_kernel_length = serializers.IntegerField()
    divisors = serializers.ListField(child=serializers.IntegerField())
    gram = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    witness = serializers.SerializerMethodField()

    def get_verdict(self, obj):
        return obj.verdict.value

    def get_witness(self, obj):
        return None if obj.witness is None else str(obj.witness)


class GeneratorSerializer(serializers.Serializer):
    form = serializers.SerializerMethodField()
    recipe = serializers.CharField()

    def get_form(self, obj):
        return FormPrinter.render(obj.form)


class ReportEncoder(JSONEncoder):
    """DRF's encoder plus exact fractions and enum members"""

    def default(self, obj):
        if isinstance(obj, Fraction):
            return str(obj)
        if isinstance(obj, Enum):
            return obj.value
        return super().default(obj)


def to_json(data):
    return json.dumps(data, cls=ReportEncoder, indent=2, ensure_ascii=False)


def report_schema():
    """JSON Schema of the verify --format json output"""
    return json.loads(REPORT_SCHEMA.read_text(encoding='utf-8'))
