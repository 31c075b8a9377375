import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", rep.nodeid)
            if m and rep.when == "call":
                rows.append((int(m.group(1)), m.group(2), "PASS" if outcome == "passed" else "FAIL", rep.duration))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, verdict, dur in sorted(rows):
        terminalreporter.write_line(f"criterion {num:02d} {name}: {verdict} ({dur:.2f}s)")
