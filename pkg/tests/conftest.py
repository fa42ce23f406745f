from __future__ import annotations

import re

_ACCEPTANCE: dict[str, dict] = {}
_TEST_ID = re.compile(r"test_acceptance\.py::test_ac(\d+)_")


def pytest_runtest_logreport(report):
    m = _TEST_ID.search(report.nodeid)
    if not m:
        return
    entry = _ACCEPTANCE.setdefault(m.group(1), {"ok": True, "notes": [], "duration": 0.0})
    entry["duration"] += report.duration
    if report.failed:
        entry["ok"] = False
    if report.skipped:
        entry["ok"] = None
    if report.when == "call":
        entry["name"] = report.nodeid.split("::")[-1]
        entry["notes"] += [v for k, v in report.user_properties if k == "note"]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE, key=int):
        e = _ACCEPTANCE[num]
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[e["ok"]]
        tr.write_line(f"AC{int(num):02d} {status}  {e.get('name', '')}  ({e['duration']:.2f}s)")
        for note in e["notes"]:
            tr.write_line(f"       note: {note}")
