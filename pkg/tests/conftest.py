import json
import os
from pathlib import Path

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

REPORT_PATH = Path(__file__).resolve().parent.parent / "acceptance_reports.jsonl"


def pytest_terminal_summary(terminalreporter):
    import helpers

    if not helpers.ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(helpers.ACCEPTANCE):
        title, ok, detail = helpers.ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {title}: {detail}")
    if helpers.REPORT_LINES:
        REPORT_PATH.write_text("".join(json.dumps(d) + "\n" for d in helpers.REPORT_LINES))
        terminalreporter.write_line(f"reports written to {REPORT_PATH.name}")
