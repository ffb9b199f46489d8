from .report_store import ReportStore
from .report import (
    CheckRecord,
    Report,
    PASS,
    FAIL,
    INCONCLUSIVE,
    STATUSES,
    RECORD_FIELDS,
    render_text,
    render_json,
    emit_report,
)
from .report_validator import ReportValidator

__all__ = [
    'ReportStore', 'CheckRecord', 'Report', 'PASS', 'FAIL', 'INCONCLUSIVE', 'STATUSES',
    'RECORD_FIELDS', 'render_text', 'render_json', 'emit_report', 'ReportValidator',
]
