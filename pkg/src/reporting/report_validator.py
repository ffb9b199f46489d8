"""
Report Validator
Validates emitted reports against the report schema
"""

from typing import Any, Dict, List

import pandas as pd

from src.reporting.report import INCONCLUSIVE, PASS, RECORD_FIELDS, STATUSES
from src.utils.logger import get_logger

logger = get_logger(__name__)

ENV_FIELDS = ('seed', 'config_hash', 'timestamp')


class ReportValidator:
    """Validate JSON reports (one suite object or an array of them)"""

    def validate(self, payload: Any) -> Dict:
        """
        Run all schema and sanity checks

        Args:
            payload: parsed JSON report

        Returns:
            Dictionary with validation results
        """
        suites = payload if isinstance(payload, list) else [payload]
        logger.info(f"Validating {len(suites)} suite report(s)")

        try:
            results = []
            for suite in suites:
                results.extend(self._validate_suite(suite))

            failures = []
            for check in results:
                if not check['passed']:
                    failures.extend(check['failures'])

            passed = len(failures) == 0
            if passed:
                logger.info("Report schema checks passed")
            else:
                logger.warning(f"Report schema checks failed: {failures}")

            return {
                'passed': passed,
                'total_checks': len(results),
                'failed_checks': len(failures),
                'failures': failures,
                'suite_count': len(suites),
            }

        except Exception as e:
            logger.error(f"Report validation error: {e}")
            return {
                'passed': False,
                'message': str(e),
                'failures': [str(e)],
            }

    def _validate_suite(self, suite: Any) -> List[Dict]:
        if not isinstance(suite, dict):
            return [{'check': 'structure', 'passed': False, 'failures': [f"Suite report is not an object: {suite!r}"]}]

        structure = self._check_structure(suite)
        if not structure['passed']:
            return [structure]

        df = pd.DataFrame(suite['checks'], columns=list(RECORD_FIELDS))
        return [
            structure,
            self._check_completeness(df, suite['suite']),
            self._check_status_vocabulary(df, suite['suite']),
            self._check_value_ranges(df, suite['suite']),
            self._check_duplicates(df, suite['suite']),
        ]

    def _check_structure(self, suite: Dict) -> Dict:
        """Top-level keys, env fields and per-record keys"""
        failures = []
        for key in ('suite', 'checks', 'env'):
            if key not in suite:
                failures.append(f"Missing top-level field: {key}")
        if not failures:
            if not isinstance(suite['checks'], list):
                failures.append("'checks' must be a list")
            else:
                for i, record in enumerate(suite['checks']):
                    missing = [f for f in RECORD_FIELDS if not isinstance(record, dict) or f not in record]
                    if missing:
                        failures.append(f"Check #{i} missing fields {missing}")
            env = suite['env'] if isinstance(suite['env'], dict) else {}
            for key in ENV_FIELDS:
                if key not in env:
                    failures.append(f"Missing env field: {key}")

        return {'check': 'structure', 'passed': len(failures) == 0, 'failures': failures}

    def _check_completeness(self, df: pd.DataFrame, suite_id: str) -> Dict:
        """Required fields are populated; max_error may be null only when inconclusive"""
        failures = []
        for col in ('id', 'paper_ref', 'status', 'tolerance', 'points'):
            missing = int(df[col].isna().sum())
            if missing:
                failures.append(f"{suite_id}: {missing} records without {col}")

        decided = df[df['status'] != INCONCLUSIVE]
        missing_error = int(decided['max_error'].isna().sum())
        if missing_error:
            failures.append(f"{suite_id}: {missing_error} decided records without max_error")

        return {'check': 'completeness', 'passed': len(failures) == 0, 'failures': failures}

    def _check_status_vocabulary(self, df: pd.DataFrame, suite_id: str) -> Dict:
        failures = []
        invalid = df[~df['status'].isin(STATUSES)]
        if len(invalid) > 0:
            failures.append(f"{suite_id}: unknown status values {sorted(invalid['status'].astype(str).unique())}")

        # pass requires max_error < tolerance
        passed = df[df['status'] == PASS]
        if len(passed) > 0:
            errors = pd.to_numeric(passed['max_error'], errors='coerce')
            tolerances = pd.to_numeric(passed['tolerance'], errors='coerce')
            inconsistent = passed[~(errors < tolerances)]
            if len(inconsistent) > 0:
                failures.append(f"{suite_id}: {len(inconsistent)} passing records with max_error >= tolerance")

        return {'check': 'status_vocabulary', 'passed': len(failures) == 0, 'failures': failures}

    def _check_value_ranges(self, df: pd.DataFrame, suite_id: str) -> Dict:
        failures = []
        tolerances = pd.to_numeric(df['tolerance'], errors='coerce')
        if (tolerances < 0).any() or tolerances.isna().any():
            failures.append(f"{suite_id}: tolerances must be non-negative numbers")

        errors = pd.to_numeric(df['max_error'], errors='coerce')
        if (errors < 0).any():
            failures.append(f"{suite_id}: negative max_error values")

        points = pd.to_numeric(df['points'], errors='coerce')
        if (points < 0).any():
            failures.append(f"{suite_id}: negative point counts")

        return {'check': 'value_ranges', 'passed': len(failures) == 0, 'failures': failures}

    def _check_duplicates(self, df: pd.DataFrame, suite_id: str) -> Dict:
        failures = []
        duplicates = df['id'].duplicated().sum()
        if duplicates > 0:
            failures.append(f"{suite_id}: {duplicates} duplicate check ids")

        return {'check': 'duplicates', 'passed': len(failures) == 0, 'failures': failures}
