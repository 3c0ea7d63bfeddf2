from pytest import fixture, mark

from ginigap.core.verify.suite_enum import SuiteEnum
from ginigap.core.verify.suite_result_ie import SuiteResultIe
from ginigap.core.verify.suites import (
    REPORT_SCHEMA, run_suites, verification_report)
from ginigap.core.verify.verify_profile_ie import VerifyProfileIe


@fixture
def quick_profile() -> VerifyProfileIe:
    return VerifyProfileIe(
        suites=[SuiteEnum.IDENTITIES, SuiteEnum.RECURRENCES], seed=1)


class TestSuiteResult():
    def test_from_checks(self):
        result = SuiteResultIe.from_checks(
            'demo', {'a': (1e-10, 1e-9), 'b': (2e-9, 1e-9)})
        assert not result.passed
        assert result.max_residual == 2e-9
        assert result.details == {'a': 1e-10, 'b': 2e-9}

    def test_empty(self):
        result = SuiteResultIe.from_checks('empty', {})
        assert result.passed
        assert result.max_residual == 0.0


class TestSuites():
    def test_report(self, quick_profile: VerifyProfileIe):
        report = verification_report(run_suites(quick_profile))
        assert report['schema'] == REPORT_SCHEMA
        assert [x['name'] for x in report['suites']] == [
            'identities', 'recurrences']
        assert all(x['pass'] for x in report['suites'])
        assert report['suites'][0]['max_residual'] == 0.0

    def test_small_mc(self):
        profile = VerifyProfileIe(suites=[SuiteEnum.MC], samples=1000)
        result = run_suites(profile)[0]
        assert set(result.details) == {
            'normalization_lock', 'exponential_law', 'two_factors_fredholm'}


@mark.slow
class TestDeskProfile():
    def test_all_suites_pass(self):
        results = run_suites(VerifyProfileIe())
        failed = [x.name for x in results if not x.passed]
        assert not failed, failed

    def test_routes_cover_integer_nu(self):
        result = run_suites(VerifyProfileIe(suites=[SuiteEnum.ROUTES]))[0]
        assert result.details['integer_nu_gap'] <= 1e-6
        assert result.passed
