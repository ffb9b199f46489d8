"""
Verification Report
Per-check records, suite reports and their JSON/text renderings
"""

import json
import math
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import pandas as pd

from src.reporting.report_store import ReportStore
from src.utils.logger import get_logger

logger = get_logger(__name__)

PASS = 'pass'
FAIL = 'fail'
INCONCLUSIVE = 'inconclusive'
STATUSES = (PASS, FAIL, INCONCLUSIVE)

RECORD_FIELDS = ('id', 'paper_ref', 'status', 'max_error', 'tolerance', 'points', 'notes')


@dataclass(frozen=True)
class CheckRecord:
    """
    Outcome of one check in a report

    Attributes:
        id: check id
        paper_ref: citation of the checked identity
        status: 'pass', 'fail' or 'inconclusive'
        max_error: measured error, None when the check could not produce one
        tolerance: pass threshold (max_error < tolerance)
        points: points or samples used
        notes: free text
    """

    id: str
    paper_ref: str
    status: str
    max_error: Optional[float]
    tolerance: float
    points: int
    notes: str = ''

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"Unknown status: {self.status}")
        if self.max_error is not None and not math.isfinite(self.max_error):
            object.__setattr__(self, 'max_error', None)

    def to_dict(self) -> Dict:
        return {name: getattr(self, name) for name in RECORD_FIELDS}


@dataclass
class Report:
    """
    Report of one suite run

    Attributes:
        suite: suite id
        checks: records in suite order
        env: {'seed', 'config_hash', 'timestamp'}
    """

    suite: str
    checks: List[CheckRecord] = field(default_factory=list)
    env: Dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(record.status != FAIL for record in self.checks)

    def counts(self) -> Dict[str, int]:
        return {status: sum(r.status == status for r in self.checks) for status in STATUSES}

    def to_dict(self) -> Dict:
        return {
            'suite': self.suite,
            'checks': [record.to_dict() for record in self.checks],
            'env': dict(self.env),
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([record.to_dict() for record in self.checks], columns=list(RECORD_FIELDS))


def _numeric(value) -> str:
    # repr matches json.dumps, so both renderings carry the same digits
    return '-' if pd.isna(value) else repr(float(value))


def render_text(reports: Sequence[Report]) -> str:
    """Fixed-width table per suite"""
    blocks = []
    for report in reports:
        counts = report.counts()
        header = (f"suite {report.suite}  seed={report.env.get('seed')}  "
                  f"pass={counts[PASS]} fail={counts[FAIL]} inconclusive={counts[INCONCLUSIVE]}")
        df = report.to_frame().drop(columns=['paper_ref'])
        if df.empty:
            blocks.append(f"{header}\n(no checks)")
            continue
        df['max_error'] = df['max_error'].map(_numeric)
        df['tolerance'] = df['tolerance'].map(_numeric)
        blocks.append(f"{header}\n{df.to_string(index=False)}")
    return '\n\n'.join(blocks) + '\n'


def render_json(reports: Sequence[Report]) -> str:
    """One object for a single suite, an array otherwise"""
    payload = [report.to_dict() for report in reports]
    if len(payload) == 1:
        payload = payload[0]
    return json.dumps(payload, indent=2) + '\n'


def emit_report(reports: Sequence[Report], fmt: str = 'json', path: Optional[str] = None) -> str:
    """
    Render reports and write them to path (stdout when path is None)

    Args:
        reports: suite reports
        fmt: 'json' or 'text'
        path: output file

    Returns:
        The rendered text
    """
    if fmt == 'json':
        text = render_json(reports)
    elif fmt == 'text':
        text = render_text(reports)
    else:
        raise ValueError(f"Unknown report format: {fmt}")

    if path is None:
        sys.stdout.write(text)
    else:
        ReportStore().write_text(text, path)
    return text
